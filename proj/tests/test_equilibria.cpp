#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include <Eigen/Geometry>

#include "tricenter/equilibria.hpp"
#include "tricenter/errors.hpp"
#include "tricenter/verification.hpp"

using namespace tricenter;

namespace {
const double s3 = std::sqrt(3.0);
}

TEST_CASE("pole chart of the first reduced space") {
    // the first equilibrium sits at the origin of its chart
    const auto e1 = EquilibriumSpec::first_reduced(1, 1.0);
    CHECK(to_chart_first(e1.first_point(), ChartSign::upper).norm() < 1e-15);
    const auto e2 = EquilibriumSpec::first_reduced(2, 1.0);
    CHECK(to_chart_first(e2.first_point(), ChartSign::lower).norm() < 1e-15);

    // round trip on random chart points
    std::mt19937_64 rng(41);
    std::uniform_real_distribution<double> uni(-0.6, 0.6);
    double worst = 0.0;
    for (int i = 0; i < 200; ++i) {
        const double L = 1.2;
        Eigen::Vector4d z(uni(rng), uni(rng), uni(rng), uni(rng));
        for (const ChartSign sign : {ChartSign::upper, ChartSign::lower}) {
            const ReducedPoint r = from_chart_first(z, L, sign);
            CHECK(r.casimir_defect() < 1e-12);
            worst = std::max(worst, (to_chart_first(r, sign) - z).norm());
        }
    }
    CHECK(worst < 1e-12);

    // chart positions of the translated equilibria
    for (int idx = 1; idx <= 6; ++idx) {
        const auto e = EquilibriumSpec::first_reduced(idx, 0.9);
        const Eigen::Vector4d z = to_chart_first(e.first_point(), first_chart_sign(idx));
        CHECK((z - equilibrium_chart_position(idx, 0.9)).norm() < 1e-13);
    }
}

TEST_CASE("pole chart is canonical for the doubled sphere bracket") {
    // {f, g} = 2 x.(grad f x grad g) + 2 y.(...): conjugate pairs give 1
    const double L = 1.1;
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> uni(-0.5, 0.5);
    auto chart_fn = [L](int comp) {
        return [comp, L](const ReducedPoint& r) {
            return to_chart_first(r, ChartSign::upper)(comp);
        };
    };
    auto sphere_bracket = [&](int a, int b, const ReducedPoint& r) {
        const double h = 1e-5;
        auto grad6 = [&](int comp) {
            Eigen::Matrix<double, 6, 1> g;
            for (int i = 0; i < 6; ++i) {
                ReducedPoint rp = r, rm = r;
                (i < 3 ? rp.x(i) : rp.y(i - 3)) += h;
                (i < 3 ? rm.x(i) : rm.y(i - 3)) -= h;
                g(i) = (chart_fn(comp)(rp) - chart_fn(comp)(rm)) / (2.0 * h);
            }
            return g;
        };
        const auto ga = grad6(a), gb = grad6(b);
        const Eigen::Vector3d gax = ga.segment<3>(0), gbx = gb.segment<3>(0);
        const Eigen::Vector3d gay = ga.segment<3>(3), gby = gb.segment<3>(3);
        return 2.0 * r.x.dot(gax.cross(gbx)) + 2.0 * r.y.dot(gay.cross(gby));
    };
    double worst = 0.0;
    for (int trial = 0; trial < 5; ++trial) {
        const Eigen::Vector4d z(uni(rng), uni(rng), uni(rng), uni(rng));
        const ReducedPoint r = from_chart_first(z, L, ChartSign::upper);
        // order (Q1, Q2, P1, P2): {Q_i, P_i} = 1, all other pairs 0
        worst = std::max(worst, std::abs(sphere_bracket(0, 2, r) - 1.0));
        worst = std::max(worst, std::abs(sphere_bracket(1, 3, r) - 1.0));
        worst = std::max(worst, std::abs(sphere_bracket(0, 1, r)));
        worst = std::max(worst, std::abs(sphere_bracket(0, 3, r)));
        worst = std::max(worst, std::abs(sphere_bracket(2, 3, r)));
    }
    CHECK(worst < 1e-6);
}

TEST_CASE("hessians reproduce the reference closed forms") {
    for (const double L : {0.8, 1.0, 1.3}) {
        for (int idx = 1; idx <= 6; ++idx) {
            const Eigen::Matrix4d h = hessian_at(EquilibriumSpec::first_reduced(idx, L));
            const Eigen::Matrix4d ref = reference_hessian(idx, L);
            CHECK((h - ref).cwiseAbs().maxCoeff() / ref.cwiseAbs().maxCoeff() < 1e-9);
            CHECK(std::abs(h.determinant() - reference_hessian_det(idx, L)) /
                      std::abs(reference_hessian_det(idx, L)) <
                  1e-9);
        }
    }
    // spot values at L = 1
    const Eigen::Matrix4d h1 = hessian_at(EquilibriumSpec::first_reduced(1, 1.0));
    CHECK(h1(0, 0) == doctest::Approx(-5.0 / 24.0).epsilon(1e-9));
    CHECK(h1(0, 1) == doctest::Approx(19.0 / 24.0).epsilon(1e-9));
    CHECK(h1.determinant() == doctest::Approx(5.0 / 12.0).epsilon(1e-9));
    CHECK(hessian_at(EquilibriumSpec::first_reduced(3, 1.0)).determinant() ==
          doctest::Approx(5.0 / 288.0).epsilon(1e-9));
    CHECK(hessian_at(EquilibriumSpec::first_reduced(5, 1.0)).determinant() ==
          doctest::Approx(-1.0 / 96.0).epsilon(1e-9));
}

TEST_CASE("classification: spectra, verdicts, spectrum symmetry") {
    const StabilityReport r1 = classify(EquilibriumSpec::first_reduced(1, 1.0));
    CHECK(r1.verdict == Verdict::parametrically_stable);
    std::array<double, 4> imags;
    for (int i = 0; i < 4; ++i) {
        CHECK(std::abs(r1.eigenvalues[std::size_t(i)].real()) < 1e-10);
        imags[std::size_t(i)] = r1.eigenvalues[std::size_t(i)].imag();
    }
    std::sort(imags.begin(), imags.end());
    CHECK(imags[3] == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(imags[2] == doctest::Approx(std::sqrt(5.0) / (2.0 * s3)).epsilon(1e-9));
    // the two restricted quadratic forms have opposite definiteness signs
    REQUIRE(r1.subspace_definiteness.size() == 2);
    CHECK(r1.subspace_definiteness[0] * r1.subspace_definiteness[1] == -1);

    const StabilityReport r3 = classify(EquilibriumSpec::first_reduced(3, 1.0));
    CHECK(r3.verdict == Verdict::parametrically_stable);
    double upper = 0.0;
    for (const auto& ev : r3.eigenvalues) upper = std::max(upper, std::abs(ev.imag()));
    CHECK(upper == doctest::Approx(std::sqrt(2.5) / 3.0).epsilon(1e-9));

    const StabilityReport r5 = classify(EquilibriumSpec::first_reduced(5, 1.0));
    CHECK(r5.verdict == Verdict::unstable);
    double remax = 0.0;
    for (const auto& ev : r5.eigenvalues) remax = std::max(remax, std::abs(ev.real()));
    CHECK(remax == doctest::Approx(1.0 / std::sqrt(6.0)).epsilon(1e-9));

    // characteristic polynomial: lambda^4 - 5 lambda^2/48 - 1/96 for E5
    CHECK(r5.char_poly[2] == doctest::Approx(-5.0 / 48.0).epsilon(1e-9));
    CHECK(r5.char_poly[4] == doctest::Approx(-1.0 / 96.0).epsilon(1e-9));
    CHECK(std::abs(r5.char_poly[1]) < 1e-10);
    CHECK(std::abs(r5.char_poly[3]) < 1e-10);

    // eigenvalues closed under negation and conjugation
    for (const auto& rep : {r1, r3, r5}) {
        for (const auto& ev : rep.eigenvalues) {
            double best_neg = 1e300, best_conj = 1e300;
            for (const auto& other : rep.eigenvalues) {
                best_neg = std::min(best_neg, std::abs(other + ev));
                best_conj = std::min(best_conj, std::abs(other - std::conj(ev)));
            }
            CHECK(best_neg < 1e-10);
            CHECK(best_conj < 1e-10);
        }
        // roots of the characteristic polynomial
        for (const auto& ev : rep.eigenvalues) {
            std::complex<double> acc(0.0, 0.0);
            for (int k = 0; k < 5; ++k)
                acc += rep.char_poly[std::size_t(k)] * std::pow(ev, 4 - k);
            CHECK(std::abs(acc) < 1e-10);
        }
    }
}

TEST_CASE("verdicts are independent of L") {
    for (const double L : {0.8, 1.0, 1.3}) {
        for (int idx = 1; idx <= 6; ++idx) {
            const StabilityReport r = classify(EquilibriumSpec::first_reduced(idx, L));
            if (idx <= 4)
                CHECK(r.verdict == Verdict::parametrically_stable);
            else
                CHECK(r.verdict == Verdict::unstable);
        }
    }
}

TEST_CASE("reeb data: period and multipliers") {
    const ReebData r = reeb_data(EquilibriumSpec::first_reduced(1, 1.0), 0.1);
    CHECK(r.period == doctest::Approx(2.0 * M_PI).epsilon(1e-15));
    CHECK(std::abs(r.multipliers[0] - 1.0) < 1e-15);
    CHECK(std::abs(r.multipliers[1] - 1.0) < 1e-15);
    std::array<double, 4> im;
    for (int j = 0; j < 4; ++j) {
        CHECK(r.multipliers[std::size_t(j + 2)].real() == doctest::Approx(1.0).epsilon(1e-10));
        im[std::size_t(j)] = r.multipliers[std::size_t(j + 2)].imag();
    }
    std::sort(im.begin(), im.end());
    CHECK(im[3] == doctest::Approx(0.01 * 2.0 * M_PI).epsilon(1e-8));
    CHECK(im[2] == doctest::Approx(0.01 * 2.0 * M_PI * std::sqrt(5.0) / (2.0 * s3))
                       .epsilon(1e-8));

    const ReebData r0 = reeb_data(EquilibriumSpec::first_reduced(3, 1.0), 0.0);
    for (const auto& m : r0.multipliers) CHECK(std::abs(m - 1.0) < 1e-15);

    CHECK(reeb_data(EquilibriumSpec::first_reduced(1, 2.0), 0.1).period ==
          doctest::Approx(16.0 * M_PI).epsilon(1e-15));
}

TEST_CASE("reconstruct_orbit: geometry of the circular orbits") {
    // equatorial, unit radius, unit speed, orthogonal q and p
    const CartesianState s1 = reconstruct_orbit(EquilibriumSpec::first_reduced(1, 1.0), 0.1);
    CHECK(s1.q.norm() == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(s1.p.norm() == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(std::abs(s1.q.dot(s1.p)) < 1e-14);
    CHECK((s1.q.cross(s1.p) - Eigen::Vector3d(0, 0, 1)).norm() < 1e-14);
    CHECK(std::abs(0.5 * s1.p.squaredNorm() - 1.0 / s1.q.norm() + 0.5) < 1e-12);

    // retrograde twin
    const CartesianState s2 = reconstruct_orbit(EquilibriumSpec::first_reduced(2, 1.0), 0.1);
    CHECK((s2.q.cross(s2.p) + Eigen::Vector3d(0, 0, 1)).norm() < 1e-14);

    // the polar orbits have their angular momentum in the equatorial plane
    const CartesianState s3s = reconstruct_orbit(EquilibriumSpec::first_reduced(3, 1.0), 0.1);
    const Eigen::Vector3d g3 = s3s.q.cross(s3s.p);
    CHECK((g3 - Eigen::Vector3d(s3 / 2.0, 0.5, 0.0)).norm() < 1e-14);
    CHECK(std::abs(g3.z()) < 1e-15);

    // scaling with L: radius L^2, energy -1/(2 L^2)
    const double L = 1.3;
    const CartesianState sL = reconstruct_orbit(EquilibriumSpec::first_reduced(1, L), 0.1);
    CHECK(sL.q.norm() == doctest::Approx(L * L).epsilon(1e-14));
    CHECK(std::abs(0.5 * sL.p.squaredNorm() - 1.0 / sL.q.norm() + 1.0 / (2.0 * L * L)) <
          1e-13);
}

TEST_CASE("near-return distance: exact Kepler periodicity at eps = 0") {
    const SystemConfig cfg = SystemConfig::paper(0.0, 1e-12, 1e-12);
    const ReturnDistance rd =
        near_return_distance(EquilibriumSpec::first_reduced(1, 1.0), 0.0, cfg);
    CHECK(rd.period == doctest::Approx(2.0 * M_PI).epsilon(1e-15));
    CHECK(rd.min_near_period < 1e-8);
    CHECK(std::abs(rd.t_min - 2.0 * M_PI) < 1e-3);
}

TEST_CASE("near-return distance: reference parameters stay below threshold") {
    const SystemConfig cfg = SystemConfig::paper(0.1, 1e-12, 1e-12);
    const ReturnDistance rd =
        near_return_distance(EquilibriumSpec::first_reduced(1, 1.0), 0.1, cfg);
    CHECK(rd.min_near_period <= 0.05);
    REQUIRE(!rd.f.empty());
    CHECK(rd.times.size() == rd.f.size());
}
