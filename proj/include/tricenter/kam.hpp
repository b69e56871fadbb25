#ifndef TRICENTER_KAM_HPP
#define TRICENTER_KAM_HPP

#include <vector>

#include <Eigen/Core>

#include "tricenter/equilibria.hpp"

namespace tricenter {

/// Which pair of equilibria the action-angle data describes.
enum class EqPair { e12, e34 };

/// Action values; first-reduced data uses (L, I1, I2), second-reduced (L, G, I).
struct ActionPoint {
    double L = 1.0;
    double G = 1.0;
    double I1 = 0.0;
    double I2 = 0.0;
    double I = 0.0;
};

/// The four graded coefficients h_k of the action-angle Hamiltonian
/// K = h0 + eta^8 h1 + eta^9 h2 + eta^10 h3 (eta = eps^(1/4)).
std::array<double, 4> action_terms(ReducedSpace space, EqPair pair, const ActionPoint& a);

/// Evaluates the truncation K at the given eta (no higher-order tail).
double action_angle_hamiltonian(ReducedSpace space, EqPair pair, const ActionPoint& a,
                                double eta);

/// Frequency vector (length 6 first-reduced, 4 second-reduced), closed form,
/// ordered slow Kepler frequency first.
Eigen::VectorXd omega(ReducedSpace space, EqPair pair, const ActionPoint& a);

/// Matrix whose columns are omega and its partial derivatives with respect
/// to each action (closed form).  6x4 or 4x4.
Eigen::MatrixXd m_omega(ReducedSpace space, EqPair pair, const ActionPoint& a);

/// Numerical rank: singular values above tol * largest.
int rank(const Eigen::MatrixXd& m, double tol = 1e-10);

struct FrequencyAnalysis {
    ReducedSpace space;
    EqPair pair;
    ActionPoint actions;
    Eigen::VectorXd omega;
    Eigen::MatrixXd m_omega;
    std::vector<double> singular_values; // descending
    int rank = 0;
    double tolerance = 1e-10;
};
FrequencyAnalysis analyze_frequencies(ReducedSpace space, EqPair pair, const ActionPoint& a,
                                      double tol = 1e-10);

} // namespace tricenter

#endif
