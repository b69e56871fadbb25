#include <doctest.h>

#include <cmath>
#include <random>

#include <Eigen/Geometry>

#include "tricenter/delaunay.hpp"
#include "tricenter/errors.hpp"

using namespace tricenter;

namespace {

double angdiff(double a, double b) {
    const double r = std::abs(wrap_angle(a) - wrap_angle(b));
    return std::min(r, 2.0 * M_PI - r);
}

DelaunayElements random_elements(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    DelaunayElements d;
    d.L = 0.5 + 1.5 * uni(rng);
    d.G = d.L * (0.1 + 0.89 * uni(rng));
    d.H = d.G * (-0.99 + 1.98 * uni(rng));
    d.ell = 2.0 * M_PI * uni(rng);
    d.g = 2.0 * M_PI * uni(rng);
    d.h = 2.0 * M_PI * uni(rng);
    return d;
}

} // namespace

TEST_CASE("kepler solver") {
    CHECK(solve_kepler(1.234, 0.0) == doctest::Approx(1.234).epsilon(1e-15));
    CHECK(solve_kepler(M_PI, 0.7) == doctest::Approx(M_PI).epsilon(1e-13));

    // independent bisection oracle for e = 0.5, ell = 1
    double lo = 0.0, hi = 2.0 * M_PI;
    for (int i = 0; i < 80; ++i) {
        const double mid = 0.5 * (lo + hi);
        ((mid - 0.5 * std::sin(mid) - 1.0) < 0.0 ? lo : hi) = mid;
    }
    CHECK(solve_kepler(1.0, 0.5) == doctest::Approx(0.5 * (lo + hi)).epsilon(1e-12));

    // residual contract across the domain
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    for (int i = 0; i < 200; ++i) {
        const double e = 0.999 * uni(rng);
        const double ell = 2.0 * M_PI * uni(rng);
        const double E = solve_kepler(ell, e, 1e-13);
        CHECK(std::abs(E - e * std::sin(E) - wrap_angle(ell)) <= 1e-13);
    }
    CHECK_THROWS_AS(solve_kepler(1.0, 1.0), domain_error);
    CHECK_THROWS_AS(solve_kepler(1.0, -0.1), domain_error);
}

TEST_CASE("delaunay_to_cartesian: circular equatorial limit") {
    DelaunayElements d;
    d.L = 1.0;
    d.G = 1.0 - 1e-12;
    d.H = d.G;
    d.ell = d.g = d.h = 0.0;
    // e = sqrt(1 - G^2) ~ 1.4e-6 at this collar; geometry holds to that scale
    const CartesianState s = delaunay_to_cartesian(d);
    CHECK(s.q.norm() == doctest::Approx(1.0).epsilon(1e-5));
    CHECK(s.p.norm() == doctest::Approx(1.0).epsilon(1e-5));
    CHECK(std::abs(s.q.dot(s.p)) < 1e-5);
    CHECK(std::abs(s.q.z()) < 1e-12); // equatorial plane
}

TEST_CASE("delaunay_to_cartesian: energy and angular momentum invariants") {
    std::mt19937_64 rng(9);
    for (int i = 0; i < 100; ++i) {
        const DelaunayElements d = random_elements(rng);
        const CartesianState s = delaunay_to_cartesian(d);
        const double h0 = 0.5 * s.p.squaredNorm() - 1.0 / s.q.norm();
        CHECK(std::abs(h0 + 1.0 / (2.0 * d.L * d.L)) < 1e-12);
        const Eigen::Vector3d gv = s.q.cross(s.p);
        CHECK(std::abs(gv.norm() - d.G) < 1e-12);
        CHECK(std::abs(gv.z() - d.H) < 1e-12);
        // inclination of the reconstructed plane
        CHECK(std::abs(gv.z() / gv.norm() - d.H / d.G) < 1e-10);
    }
}

TEST_CASE("delaunay domain errors") {
    DelaunayElements d;
    d.L = 1.0;
    d.G = 1.2; // G > L
    d.H = 0.5;
    CHECK_THROWS_AS(delaunay_to_cartesian(d), domain_error);
    d.G = 0.8;
    d.H = 0.9; // |H| > G
    CHECK_THROWS_AS(delaunay_to_cartesian(d), domain_error);

    CartesianState hyper;
    hyper.q = {1.0, 0.0, 0.0};
    hyper.p = {0.0, 2.0, 0.0}; // H0 = 1 > 0
    CHECK_THROWS_AS(cartesian_to_delaunay(hyper), domain_error);
}

TEST_CASE("cartesian_to_delaunay: round trip on 1000 random elements") {
    std::mt19937_64 rng(2);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const DelaunayElements d = random_elements(rng);
        const DelaunayConversion c = cartesian_to_delaunay(delaunay_to_cartesian(d));
        worst = std::max({worst, angdiff(c.elements.ell, d.ell), angdiff(c.elements.g, d.g),
                          angdiff(c.elements.h, d.h), std::abs(c.elements.L - d.L),
                          std::abs(c.elements.G - d.G), std::abs(c.elements.H - d.H)});
    }
    CHECK(worst < 1e-10);
}

TEST_CASE("cartesian_to_delaunay: circular state is flagged") {
    CartesianState s;
    s.q = {1.0, 0.0, 0.0};
    s.p = {0.0, 1.0, 0.0};
    const DelaunayConversion c = cartesian_to_delaunay(s);
    CHECK(c.circular);
    CHECK(c.equatorial);
    CHECK(c.elements.L == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(c.elements.G == doctest::Approx(1.0).epsilon(1e-13));
    // energy read back
    const double h0 = 0.5 * s.p.squaredNorm() - 1.0 / s.q.norm();
    CHECK(std::abs(-1.0 / (2.0 * c.elements.L * c.elements.L) - h0) < 1e-12);
}

TEST_CASE("delaunay chart is canonical (finite-difference brackets)") {
    // brackets {ell,L}, {g,G}, {h,H} = 1 and all cross pairs = 0, computed by
    // pulling the elements back through Cartesian phase space
    std::mt19937_64 rng(31);
    auto element = [](int which) {
        return [which](const CartesianState& s) {
            const DelaunayElements d = cartesian_to_delaunay(s).elements;
            switch (which) {
                case 0: return d.ell;
                case 1: return d.g;
                case 2: return d.h;
                case 3: return d.L;
                case 4: return d.G;
                default: return d.H;
            }
        };
    };
    auto bracket_qp = [&](int a, int b, const CartesianState& s) {
        const double h = 1e-6;
        auto deriv = [&](int e, int comp, bool momentum, double hh) {
            CartesianState sp = s, sm = s;
            (momentum ? sp.p(comp) : sp.q(comp)) += hh;
            (momentum ? sm.p(comp) : sm.q(comp)) -= hh;
            double diff = element(e)(sp) - element(e)(sm);
            if (e < 3) { // angles wrap
                if (diff > M_PI) diff -= 2.0 * M_PI;
                if (diff < -M_PI) diff += 2.0 * M_PI;
            }
            return diff / (2.0 * hh);
        };
        auto once = [&](double hh) {
            double acc = 0.0;
            for (int c = 0; c < 3; ++c)
                acc += deriv(a, c, false, hh) * deriv(b, c, true, hh) -
                       deriv(a, c, true, hh) * deriv(b, c, false, hh);
            return acc;
        };
        const double b1 = once(h), b2 = once(h / 2.0);
        return (4.0 * b2 - b1) / 3.0;
    };

    double worst = 0.0;
    int tested = 0;
    while (tested < 20) {
        const DelaunayElements d = random_elements(rng);
        if (d.eccentricity() < 0.2 || d.G - std::abs(d.H) < 0.05) continue;
        const CartesianState s = delaunay_to_cartesian(d);
        ++tested;
        for (int a = 0; a < 3; ++a)
            for (int b = 3; b < 6; ++b) {
                const double expect = (b - a == 3) ? 1.0 : 0.0;
                worst = std::max(worst, std::abs(bracket_qp(a, b, s) - expect));
            }
    }
    CHECK(worst < 1e-6);
}
