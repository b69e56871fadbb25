#ifndef TRICENTER_DYNAMICS_HPP
#define TRICENTER_DYNAMICS_HPP

#include "tricenter/config.hpp"
#include "tricenter/state.hpp"

namespace tricenter {

/// V(q) = sum_i mu_i / |q - xi_i|.  Throws singularity_error inside the
/// collision guard of any center.
double potential(const Eigen::Vector3d& q, const SystemConfig& cfg);

/// H = |p|^2/2 - V(q), exact (no expansion).
double full_hamiltonian(const CartesianState& s, const SystemConfig& cfg);

/// Coefficients of the expansion H = H0 + eps*H1 + (eps^2/2)*H2 + O(eps^3)
/// about the coincident-center limit.
struct ExpansionTerms {
    double h0, h1, h2;
};
ExpansionTerms expansion_terms(const CartesianState& s);

/// Canonical equations: dq = p, dp = -grad V (attractive).
struct PhaseDerivative {
    Eigen::Vector3d dq, dp;
};
PhaseDerivative full_vector_field(const CartesianState& s, const SystemConfig& cfg);

/// Integrate the full system over [0, t_end], sampling `samples` points
/// (uniform, inclusive of both ends) with the energy recorded per sample.
/// Throws collision_error when the step size underflows near a center.
Trajectory integrate(const CartesianState& s0, double t_end, const SystemConfig& cfg,
                     int samples = 512);

} // namespace tricenter

#endif
