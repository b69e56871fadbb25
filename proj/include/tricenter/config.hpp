#ifndef TRICENTER_CONFIG_HPP
#define TRICENTER_CONFIG_HPP

#include <array>
#include <Eigen/Core>

#include "tricenter/errors.hpp"

namespace tricenter {

/// Three fixed attracting centers plus integrator tolerances.
///
/// The reference geometry places the centers at the vertices of an
/// equilateral triangle of side epsilon with one vertex at the origin:
///   xi1 = (0,0,0), xi2 = (eps,0,0), xi3 = (eps/2, eps*sqrt(3)/2, 0),
/// all masses 1/3. epsilon = 0 collapses to the Kepler problem.
struct SystemConfig {
    double epsilon = 0.1;
    std::array<double, 3> mu{1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0};
    std::array<Eigen::Vector3d, 3> centers{Eigen::Vector3d::Zero(),
                                           Eigen::Vector3d::Zero(),
                                           Eigen::Vector3d::Zero()};
    double integ_rel_tol = 1e-12;
    double integ_abs_tol = 1e-12;

    static SystemConfig paper(double epsilon, double rel_tol = 1e-12,
                              double abs_tol = 1e-12);

    /// Largest relative spread of the three pairwise center distances.
    double triangle_defect() const;
};

/// Minimum admissible distance from a center; closer states are rejected
/// rather than regularized.
inline constexpr double kCollisionRadius = 1e-12;

} // namespace tricenter

#endif
