#ifndef TRICENTER_STATE_HPP
#define TRICENTER_STATE_HPP

#include <vector>
#include <Eigen/Core>

namespace tricenter {

/// Phase-space point of the test particle (unit mass).
struct CartesianState {
    Eigen::Vector3d q = Eigen::Vector3d::Zero();
    Eigen::Vector3d p = Eigen::Vector3d::Zero();
};

/// Sampled solution of the full system with the energy recorded per sample.
struct Trajectory {
    std::vector<double> times;
    std::vector<CartesianState> states;
    std::vector<double> energies;

    double max_relative_energy_drift() const;
};

} // namespace tricenter

#endif
