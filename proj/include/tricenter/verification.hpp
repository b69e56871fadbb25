#ifndef TRICENTER_VERIFICATION_HPP
#define TRICENTER_VERIFICATION_HPP

#include <array>
#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace tricenter {

/// One named residual check against a threshold.
struct Check {
    std::string name;
    double value = 0.0;     // measured residual (or quantity, see note)
    double threshold = 0.0; // pass iff value <= threshold (unless flipped)
    bool pass = false;
    std::string note;
};

struct SuiteReport {
    std::string suite;
    std::vector<Check> checks;
    bool all_pass() const;
};

/// Reference closed forms for the six first-reduced equilibria
/// (test oracles, not used by the implementation path).
Eigen::Matrix4d reference_hessian(int index, double L);
double reference_hessian_det(int index, double L);
std::array<double, 5> reference_char_poly(int index, double L);
/// Frequencies {alpha1, alpha2} of the stable pairs, or {real, imag_alpha}
/// for E5/E6 (one real pair, one imaginary pair).
std::array<double, 2> reference_frequencies(int index, double L);
bool reference_parametrically_stable(int index);

/// Normal-form checks: mean-anomaly averages, chart composition of the
/// series terms, normalized-Hamiltonian properties.
SuiteReport run_normalform_suite(int grid = 5, std::uint64_t seed = 20250809,
                                 int n_random = 200);

/// Poisson-structure checks: bracket relations of the invariants, reduced
/// flows against bracket-induced flows, Casimir tangency.
SuiteReport run_brackets_suite(std::uint64_t seed = 20250809, int n_points = 50);

/// Equilibrium catalog, Hessian/spectrum oracles, stability verdicts.
SuiteReport run_equilibria_suite();

/// Frequency vectors, derivative matrices, ranks.
SuiteReport run_kam_suite();

std::vector<SuiteReport> run_all_suites(int grid = 5, std::uint64_t seed = 20250809);

} // namespace tricenter

#endif
