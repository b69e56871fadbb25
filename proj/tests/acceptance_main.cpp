// Acceptance suite: one pass/fail line per criterion, exit code = number of
// failed criteria.  Thresholds are pinned here, not configurable.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <random>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Geometry>

#include "tricenter/delaunay.hpp"
#include "tricenter/dynamics.hpp"
#include "tricenter/equilibria.hpp"
#include "tricenter/kam.hpp"
#include "tricenter/normal_form.hpp"
#include "tricenter/reduction.hpp"
#include "tricenter/verification.hpp"

using namespace tricenter;

namespace {

int failures = 0;

void report(int number, const char* name, bool pass, const std::string& detail) {
    std::printf("[%s] %2d. %s — %s\n", pass ? "PASS" : "FAIL", number, name, detail.c_str());
    if (!pass) ++failures;
}

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.3e", v);
    return buf;
}

DelaunayElements random_elements(std::mt19937_64& rng, double e_lo, double e_hi) {
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    DelaunayElements d;
    d.L = 0.7 + 0.8 * uni(rng);
    const double e = e_lo + (e_hi - e_lo) * uni(rng);
    d.G = d.L * std::sqrt(1.0 - e * e);
    d.H = d.G * (-0.9 + 1.8 * uni(rng));
    d.ell = 2.0 * M_PI * uni(rng);
    d.g = 2.0 * M_PI * uni(rng);
    d.h = 2.0 * M_PI * uni(rng);
    return d;
}

// 1. Hessian oracles at three L values
void criterion_1() {
    double worst = 0.0;
    for (const double L : {0.8, 1.0, 1.3})
        for (int idx = 1; idx <= 6; ++idx) {
            const Eigen::Matrix4d h = hessian_at(EquilibriumSpec::first_reduced(idx, L));
            const Eigen::Matrix4d ref = reference_hessian(idx, L);
            worst = std::max(worst,
                             (h - ref).cwiseAbs().maxCoeff() / ref.cwiseAbs().maxCoeff());
            worst = std::max(worst, std::abs(h.determinant() - reference_hessian_det(idx, L)) /
                                        std::abs(reference_hessian_det(idx, L)));
        }
    report(1, "Hessian oracles (entries and determinants, L in {0.8,1,1.3})", worst <= 1e-9,
           "max relative deviation " + num(worst));
}

// 2. Spectral oracles: eigenvalues and characteristic polynomials
void criterion_2() {
    double worst_eig = 0.0, worst_poly = 0.0;
    bool real_pair = true;
    for (const double L : {0.8, 1.0, 1.3})
        for (int idx = 1; idx <= 6; ++idx) {
            const StabilityReport r = classify(EquilibriumSpec::first_reduced(idx, L));
            const double L7 = std::pow(L, 7);
            const auto f = reference_frequencies(idx, L);
            if (idx <= 4) {
                std::array<double, 4> got, expect{f[0], -f[0], f[1], -f[1]};
                for (int k = 0; k < 4; ++k) {
                    got[std::size_t(k)] = r.eigenvalues[std::size_t(k)].imag();
                    worst_eig = std::max(worst_eig,
                                         std::abs(r.eigenvalues[std::size_t(k)].real()) * L7);
                }
                std::sort(got.begin(), got.end());
                std::sort(expect.begin(), expect.end());
                for (int k = 0; k < 4; ++k)
                    worst_eig = std::max(worst_eig, std::abs(got[std::size_t(k)] -
                                                             expect[std::size_t(k)]) * L7);
            } else {
                double remax = 0.0, immax = 0.0;
                for (const auto& ev : r.eigenvalues) {
                    remax = std::max(remax, std::abs(ev.real()));
                    immax = std::max(immax, std::abs(ev.imag()));
                }
                if (remax * L7 < 1e-3) real_pair = false;
                worst_eig = std::max(worst_eig, std::abs(remax - f[0]) * L7);
                worst_eig = std::max(worst_eig, std::abs(immax - f[1]) * L7);
            }
            const auto rp = reference_char_poly(idx, L);
            for (int k = 0; k < 5; ++k)
                worst_poly = std::max(worst_poly,
                                      std::abs(r.char_poly[std::size_t(k)] -
                                               rp[std::size_t(k)]) /
                                          std::max(std::abs(rp[std::size_t(k)]), 1.0));
        }
    report(2, "Spectral oracles (eigenvalues, characteristic polynomials)",
           worst_eig <= 1e-9 && worst_poly <= 1e-9 && real_pair,
           "max eigenvalue deviation " + num(worst_eig) + ", max poly deviation " +
               num(worst_poly));
}

// 3. Stability verdicts
void criterion_3() {
    bool ok = true;
    for (const double L : {0.8, 1.0, 1.3})
        for (int idx = 1; idx <= 6; ++idx) {
            const StabilityReport r = classify(EquilibriumSpec::first_reduced(idx, L));
            const bool stable = r.verdict == Verdict::parametrically_stable;
            const bool unstable = r.verdict == Verdict::unstable;
            if (idx <= 4 && !stable) ok = false;
            if (idx >= 5 && !unstable) ok = false;
        }
    report(3, "Stability verdicts (1..4 parametrically stable, 5..6 unstable)", ok,
           ok ? "all verdicts as expected" : "verdict mismatch");
}

// 4. Normal-form identity on the 5^4 grid
void criterion_4() {
    const int grid = 5;
    double worst_avg = 0.0, worst_h1 = 0.0, worst_axi = 0.0;
    const DelaunayFunction h1f = [](const DelaunayElements& x) { return h1_delaunay(x); };
    for (int ig = 0; ig < grid; ++ig)
        for (int ih = 0; ih < grid; ++ih)
            for (int ie = 0; ie < grid; ++ie)
                for (int ic = 0; ic < grid; ++ic) {
                    DelaunayElements d;
                    d.L = 1.0;
                    d.g = 2.0 * M_PI * (ig + 0.5) / grid;
                    d.h = 2.0 * M_PI * (ih + 0.5) / grid;
                    const double e = 0.1 + 0.8 * (ie + 0.5) / grid;
                    d.G = d.L * std::sqrt(1.0 - e * e);
                    d.H = d.G * (-0.9 + 1.8 * (ic + 0.5) / grid);
                    const SecondOrderCheck chk = verify_second_order(d);
                    worst_avg = std::max(worst_avg, chk.residual);
                    worst_axi = std::max(worst_axi, chk.residual_axisym);
                    const int n_avg = e < 0.5 ? 256 : (e < 0.75 ? 512 : 2048);
                    worst_h1 = std::max(worst_h1,
                                        std::abs(average_over_ell(h1f, d, n_avg)));
                }
    report(4, "Normal-form identity <H2 + {H1,W1}> equals the normalized coefficient",
           worst_avg <= 1e-6 && worst_h1 <= 1e-10,
           "residual vs published coefficient " + num(worst_avg) + " (threshold 1e-6); "
           "<H1> residual " + num(worst_h1) +
           "; the average instead matches the axially symmetric form to " + num(worst_axi));
}

// 5. Chart composition and round trip
void criterion_5() {
    std::mt19937_64 rng(20250809);
    double worst_comp = 0.0;
    for (int i = 0; i < 200; ++i) {
        const DelaunayElements d = random_elements(rng, 0.1, 0.9);
        const ExpansionTerms t = expansion_terms(delaunay_to_cartesian(d));
        worst_comp = std::max(worst_comp, std::abs(h1_delaunay(d) - t.h1));
        worst_comp = std::max(worst_comp, std::abs(h2_delaunay(d) - t.h2));
    }
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    double worst_rt = 0.0;
    for (int i = 0; i < 1000; ++i) {
        DelaunayElements d;
        d.L = 0.5 + 1.5 * uni(rng);
        d.G = d.L * (0.1 + 0.89 * uni(rng));
        d.H = d.G * (-0.99 + 1.98 * uni(rng));
        d.ell = 2.0 * M_PI * uni(rng);
        d.g = 2.0 * M_PI * uni(rng);
        d.h = 2.0 * M_PI * uni(rng);
        const DelaunayConversion c = cartesian_to_delaunay(delaunay_to_cartesian(d));
        auto angdiff = [](double a, double b) {
            const double r = std::abs(wrap_angle(a) - wrap_angle(b));
            return std::min(r, 2.0 * M_PI - r);
        };
        worst_rt = std::max({worst_rt, angdiff(c.elements.ell, d.ell),
                             angdiff(c.elements.g, d.g), angdiff(c.elements.h, d.h),
                             std::abs(c.elements.L - d.L), std::abs(c.elements.G - d.G),
                             std::abs(c.elements.H - d.H)});
    }
    report(5, "Chart composition of H1/H2 and Delaunay round trip",
           worst_comp <= 1e-10 && worst_rt <= 1e-10,
           "composition " + num(worst_comp) + ", round trip " + num(worst_rt));
}

// 6. Bracket structure of both reduced spaces
void criterion_6() {
    const SuiteReport rep = run_brackets_suite(20250809, 50);
    double rel = 0, flow = 0, col = 0, cas = 0;
    bool pass = true;
    for (const auto& c : rep.checks) {
        if (c.name == "invariant_bracket_relations") rel = c.value, pass &= c.value <= 1e-6;
        if (c.name == "first_field_vs_bracket_flow") flow = c.value, pass &= c.value <= 1e-8;
        if (c.name == "second_field_collinear_with_poisson_gradient")
            col = c.value, pass &= c.value <= 1e-8;
        if (c.name == "casimir_tangency") cas = c.value, pass &= c.value <= 1e-12;
    }
    report(6, "Bracket structure (invariant relations, induced flows, Casimirs)", pass,
           "relations " + num(rel) + ", first flow " + num(flow) + ", second flow " +
               num(col) + ", tangency " + num(cas));
}

// 7. Equilibria zero their fields
void criterion_7() {
    double worst = 0.0;
    for (int idx = 1; idx <= 6; ++idx) {
        for (const double L : {0.8, 1.0, 1.3}) {
            const auto e = EquilibriumSpec::first_reduced(idx, L);
            const auto [dx, dy] = reduced_vector_field_first(e.first_point(), 0.1);
            worst = std::max({worst, dx.norm(), dy.norm()});
        }
        const auto e2 = EquilibriumSpec::second_reduced(idx, 0.8, 1.0);
        worst = std::max(worst, second_reduced_vector_field(e2.second_point()).norm());
    }
    report(7, "All twelve displayed equilibria zero their reduced fields", worst <= 1e-12,
           "max field residual " + num(worst));
}

// 8. Periodic-orbit reconstruction
void criterion_8() {
    const SystemConfig cfg = SystemConfig::paper(0.1, 1e-12, 1e-12);
    const ReturnDistance rd1 =
        near_return_distance(EquilibriumSpec::first_reduced(1, 1.0), 0.1, cfg);
    const bool near_ok = rd1.min_near_period <= 0.05;

    bool slopes_ok = true;
    std::string slope_text;
    for (int idx = 1; idx <= 4; ++idx) {
        std::array<double, 3> mins{};
        const std::array<double, 3> epss{0.2, 0.1, 0.05};
        for (int k = 0; k < 3; ++k) {
            const SystemConfig c = SystemConfig::paper(epss[std::size_t(k)], 1e-12, 1e-12);
            mins[std::size_t(k)] =
                near_return_distance(EquilibriumSpec::first_reduced(idx, 1.0),
                                     epss[std::size_t(k)], c)
                    .min_near_period;
        }
        // least-squares slope of log2 f against log2 eps over the three points
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (int k = 0; k < 3; ++k) {
            const double x = std::log2(epss[std::size_t(k)]);
            const double y = std::log2(mins[std::size_t(k)]);
            sx += x;
            sy += y;
            sxx += x * x;
            sxy += x * y;
        }
        const double slope = (3.0 * sxy - sx * sy) / (3.0 * sxx - sx * sx);
        if (!(slope >= 2.0 && slope <= 4.0)) slopes_ok = false;
        char buf[48];
        std::snprintf(buf, sizeof buf, " E%d:%.2f", idx, slope);
        slope_text += buf;
    }

    // instability signature: the fifth curve tops the first curve's maximum
    const ReturnDistance f1 =
        near_return_distance(EquilibriumSpec::first_reduced(1, 1.0), 0.1, cfg, 10.0, 5000);
    const ReturnDistance f5 =
        near_return_distance(EquilibriumSpec::first_reduced(5, 1.0), 0.1, cfg, 10.0, 5000);
    const double max1 = *std::max_element(f1.f.begin(), f1.f.end());
    const double max5 = *std::max_element(f5.f.begin(), f5.f.end());
    const bool exceed_ok = max5 > max1;

    report(8, "Periodic-orbit reconstruction (return distance, scaling, fifth vs first)",
           near_ok && slopes_ok && exceed_ok,
           "min near T " + num(rd1.min_near_period) + "; slopes" + slope_text +
               "; max f: first " + num(max1) + " fifth " + num(max5));
}

// 9. KAM ranks and derivative columns
void criterion_9() {
    const SuiteReport rep = run_kam_suite();
    bool ranks = false;
    double fd = 1.0;
    for (const auto& c : rep.checks) {
        if (c.name == "ranks_4_4_3_3") ranks = c.pass;
        if (c.name == "m_omega_columns_vs_finite_differences") fd = c.value;
    }
    report(9, "KAM ranks 4/4/3/3 across tolerance sweep; derivative columns", ranks && fd <= 1e-7,
           "rank sweep " + std::string(ranks ? "stable" : "unstable") + ", columns " + num(fd));
}

// 10. Energy conservation and expansion remainder
void criterion_10() {
    const SystemConfig cfg = SystemConfig::paper(0.1, 1e-12, 1e-12);
    CartesianState s0;
    s0.q = {1.0, 0.0, 0.0};
    s0.p = {0.0, 1.02, 0.08};
    const Trajectory traj = integrate(s0, 10.0 * 2.0 * M_PI, cfg, 512);
    const double drift = traj.max_relative_energy_drift();

    std::mt19937_64 rng(77);
    std::normal_distribution<double> nrm;
    double lo = 1e9, hi = 0.0;
    for (int trial = 0; trial < 5; ++trial) {
        Eigen::Vector3d q(nrm(rng), nrm(rng), nrm(rng));
        q *= 5.0 / q.norm();
        CartesianState s;
        s.q = q;
        s.p = {0.1, -0.05, 0.2};
        const ExpansionTerms t = expansion_terms(s);
        auto remainder = [&](double eps) {
            const SystemConfig c = SystemConfig::paper(eps);
            return std::abs(full_hamiltonian(s, c) -
                            (t.h0 + eps * t.h1 + 0.5 * eps * eps * t.h2));
        };
        const double r1 = remainder(0.1), r2 = remainder(0.05), r3 = remainder(0.025);
        lo = std::min({lo, r1 / r2, r2 / r3});
        hi = std::max({hi, r1 / r2, r2 / r3});
    }
    report(10, "Energy conservation over 10 periods; expansion remainder ratio",
           drift <= 1e-9 && lo >= 6.0 && hi <= 10.0,
           "drift " + num(drift) + ", halving ratios in [" + num(lo) + ", " + num(hi) + "]");
}

} // namespace

int main() {
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10();
    if (failures == 0)
        std::printf("all acceptance criteria passed\n");
    else
        std::printf("%d acceptance criterion(s) failed\n", failures);
    return failures;
}
