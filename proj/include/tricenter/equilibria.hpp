#ifndef TRICENTER_EQUILIBRIA_HPP
#define TRICENTER_EQUILIBRIA_HPP

#include <array>
#include <complex>
#include <vector>

#include <Eigen/Core>

#include "tricenter/config.hpp"
#include "tricenter/reduction.hpp"
#include "tricenter/state.hpp"

namespace tricenter {

enum class ReducedSpace { first, second };

/// One of the six isolated relative equilibria of a reduced space.
/// First-reduced points use delta_i = (-1)^{i+1} L (the sign forced by the
/// Casimir |x| = |y| = L); second-reduced points sit on the sphere |beta| = G.
struct EquilibriumSpec {
    ReducedSpace space = ReducedSpace::first;
    int index = 1; // 1..6
    double L = 1.0;
    double G = 1.0; // second-reduced only

    static EquilibriumSpec first_reduced(int index, double L);
    static EquilibriumSpec second_reduced(int index, double G, double L);

    ReducedPoint first_point() const;
    SecondReducedPoint second_point() const;
};

/// Sign choice of the pole chart Q = x2/sqrt(L +- x3), P = -+ x1/sqrt(L +- x3).
/// The per-index assignment reproduces the reference Hessians entrywise
/// (E5 and E6 take the opposite parity from E1..E4).
ChartSign first_chart_sign(int index);

/// Forward/inverse chart between (x, y) and z = (Q1, Q2, P1, P2).
Eigen::Vector4d to_chart_first(const ReducedPoint& r, ChartSign sign);
ReducedPoint from_chart_first(const Eigen::Vector4d& z, double L, ChartSign sign);

/// Chart coordinates of the equilibrium in its own chart.
Eigen::Vector4d equilibrium_chart_position(int index, double L);

/// Time-rescaled charted perturbation (the order-eps^2 coefficient of the
/// first-reduced Hamiltonian expressed in the chart, constants dropped).
double charted_perturbation(const Eigen::Vector4d& z, double L, ChartSign sign);

/// 4x4 Hessian of the charted perturbation at the equilibrium, by central
/// finite differences with Richardson extrapolation.
Eigen::Matrix4d hessian_at(const EquilibriumSpec& e);

enum class Verdict { parametrically_stable, unstable, weakly_stable };

struct StabilityReport {
    Eigen::Matrix4d hessian;
    double hessian_det = 0.0;
    Eigen::Matrix4d linearization; // A = J * hessian
    std::array<double, 5> char_poly{}; // lambda^4 + c[1] l^3 + c[2] l^2 + c[3] l + c[4]
    std::array<std::complex<double>, 4> eigenvalues{};
    Verdict verdict = Verdict::weakly_stable;
    std::vector<int> subspace_definiteness; // +1 / -1 per imaginary pair, 0 if indefinite
    double period = 0.0; // 2 pi L^3
};

/// Linear stability analysis of a first-reduced equilibrium with the
/// Krein-Gel'fand test for parametric stability.
StabilityReport classify(const EquilibriumSpec& e);

struct ReebData {
    double period = 0.0;
    std::array<std::complex<double>, 6> multipliers{};
};

/// Characteristic data of the reconstructed periodic orbit:
/// T = 2 pi L^3 and multipliers {1, 1, 1 + eps^2 lambda_j T}.
ReebData reeb_data(const EquilibriumSpec& e, double eps);

/// Initial condition of the circular orbit the equilibrium reconstructs to.
/// The phase starts at the dipole-null direction of the orbit plane
/// (n x d, falling back to the ascending node, then to x) so that the
/// osculating energy matches the orbit-averaged level.
CartesianState reconstruct_orbit(const EquilibriumSpec& e, double eps);

struct ReturnDistance {
    std::vector<double> times;
    std::vector<double> f;      // |z(t) - z(0)| in phase space
    double period = 0.0;        // 2 pi L^3
    double min_near_period = 0.0;
    double t_min = 0.0;
};

/// Distance-from-start curve over [0, horizon*T] and its minimum over
/// [0.9T, 1.1T] (densely sampled inside the window).
ReturnDistance near_return_distance(const EquilibriumSpec& e, double eps,
                                    const SystemConfig& cfg, double horizon = 1.2,
                                    int curve_samples = 1200);

} // namespace tricenter

#endif
