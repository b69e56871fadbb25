#ifndef TRICENTER_REDUCTION_HPP
#define TRICENTER_REDUCTION_HPP

#include <utility>

#include <Eigen/Core>

#include "tricenter/state.hpp"

namespace tricenter {

/// Point of the first reduced space S^2 x S^2:
/// x = G + L*A, y = G - L*A with |x| = |y| = L (Casimirs).
struct ReducedPoint {
    Eigen::Vector3d x = Eigen::Vector3d::Zero();
    Eigen::Vector3d y = Eigen::Vector3d::Zero();
    double L = 1.0;

    double casimir_defect() const;
};

/// Point of the second reduced space: the angular momentum sphere |beta| = G.
struct SecondReducedPoint {
    Eigen::Vector3d beta = Eigen::Vector3d::Zero();
    double L = 1.0;
    double G = 1.0;

    bool degenerate() const { return G < 1e-12; }
};

/// Map a bound Kepler state to (x, y).  Throws domain_error on unbound states.
ReducedPoint to_reduced_first(const CartesianState& s);

/// First-reduced Hamiltonian truncated at second order.
/// Throws chart_singular_error at alpha = 0 (rectilinear limit).
double reduced_hamiltonian_first(const ReducedPoint& r, double eps);

/// First-reduced vector field (all six components, closed form).
std::pair<Eigen::Vector3d, Eigen::Vector3d> reduced_vector_field_first(const ReducedPoint& r,
                                                                       double eps);

/// beta = (x + y)/2, G = |beta|.  beta = 0 is returned with G = 0
/// (degenerate; outside the symplectic leaves).
SecondReducedPoint to_second_reduced(const ReducedPoint& r);

/// Second-reduced Hamiltonian truncated at second order.
/// Throws chart_singular_error at beta = 0.
double second_reduced_hamiltonian(const SecondReducedPoint& b, double eps);

/// Second-reduced equations of motion (time already rescaled; polynomial).
Eigen::Vector3d second_reduced_vector_field(const SecondReducedPoint& b);

/// Poisson matrix J(beta) with J(beta) v = beta x v.
Eigen::Matrix3d second_poisson_matrix(const Eigen::Vector3d& beta);

/// Local symplectic chart centered at the beta-sphere poles:
///   a = sqrt2 b1/sqrt(G +- b3), b = +-sqrt2 b2/sqrt(G +- b3).
enum class ChartSign { upper, lower };

std::pair<double, double> second_chart_ab(const SecondReducedPoint& b, ChartSign sign);
SecondReducedPoint second_chart_inverse(double a, double b, double G, double L, ChartSign sign);

/// The charted Hamiltonian; the leading constant follows the invariant form
/// -1/(2L^2) so that the evaluation agrees identically with
/// second_reduced_hamiltonian through the chart.
double second_chart_hamiltonian(double a, double b, double G, double L, ChartSign sign,
                                double eps);

} // namespace tricenter

#endif
