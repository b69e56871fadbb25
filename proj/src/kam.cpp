#include "tricenter/kam.hpp"

#include <cmath>

#include <Eigen/SVD>

#include "tricenter/errors.hpp"

namespace tricenter {

namespace {
const double kSqrt15 = std::sqrt(15.0);
const double kSqrt10 = std::sqrt(10.0);
const double kSqrt7 = std::sqrt(7.0);
const double kSqrt53 = std::sqrt(5.0 / 3.0);
const double kSqrt52 = std::sqrt(5.0 / 2.0);

void check_actions(ReducedSpace space, const ActionPoint& a) {
    if (!(a.L > 0.0)) throw domain_error("kam: L must be positive");
    if (space == ReducedSpace::second && !(a.G > 0.0))
        throw domain_error("kam: G must be positive");
    if (a.I1 < 0.0 || a.I2 < 0.0 || a.I < 0.0)
        throw domain_error("kam: oscillator actions must be nonnegative");
}
} // namespace

std::array<double, 4> action_terms(ReducedSpace space, EqPair pair, const ActionPoint& a) {
    check_actions(space, a);
    const double L = a.L;
    const double L3 = L * L * L;
    std::array<double, 4> h{};
    h[0] = -1.0 / (2.0 * L * L);
    if (space == ReducedSpace::first) {
        const double L6 = L3 * L3, L7 = L6 * L, L8 = L7 * L;
        if (pair == EqPair::e12) {
            h[1] = -1.0 / (3.0 * L6);
            h[2] = -(6.0 * a.I1 - kSqrt15 * a.I2) / (6.0 * L7);
            h[3] = -(6.0 * a.I1 * a.I1 - 2.0 * kSqrt15 * a.I1 * a.I2 + a.I2 * a.I2) /
                   (3.0 * L8);
        } else {
            h[1] = 1.0 / (8.0 * L6);
            h[2] = -(4.0 * kSqrt7 * a.I1 - 9.0 * a.I2) / (24.0 * L7);
            // sign tension: the reference frequency data carries the opposite
            // sign for the gradient of this term (see verification report)
            h[3] = (1990.0 * a.I1 * a.I1 + 1822.0 * kSqrt10 * a.I1 * a.I2 +
                    735.0 * a.I2 * a.I2) /
                   (1920.0 * L8);
        }
    } else {
        const double G = a.G;
        const double G3 = G * G * G, G4 = G3 * G, G5 = G4 * G;
        if (pair == EqPair::e12) {
            h[1] = 1.0 / (3.0 * G3 * L3);
            h[2] = -kSqrt53 * a.I / (2.0 * G4 * L3);
            h[3] = a.I * a.I / (3.0 * G5 * L3);
        } else {
            h[1] = -1.0 / (12.0 * G3 * L3);
            h[2] = kSqrt52 * a.I / (3.0 * G4 * L3);
            h[3] = 199.0 * a.I * a.I / (192.0 * G5 * L3);
        }
    }
    return h;
}

double action_angle_hamiltonian(ReducedSpace space, EqPair pair, const ActionPoint& a,
                                double eta) {
    const auto h = action_terms(space, pair, a);
    const double n8 = std::pow(eta, 8);
    return h[0] + n8 * h[1] + n8 * eta * h[2] + n8 * eta * eta * h[3];
}

Eigen::VectorXd omega(ReducedSpace space, EqPair pair, const ActionPoint& a) {
    check_actions(space, a);
    const double L = a.L;
    const double L3 = L * L * L;
    if (space == ReducedSpace::first) {
        const double L7 = std::pow(L, 7), L8 = L7 * L;
        Eigen::VectorXd w(6);
        if (pair == EqPair::e12) {
            w << 1.0 / L3, 2.0 / L7, -1.0 / L7, kSqrt53 / (2.0 * L7),
                -2.0 * (6.0 * a.I1 - kSqrt15 * a.I2) / (3.0 * L8),
                2.0 * (kSqrt15 * a.I1 - a.I2) / (3.0 * L8);
        } else {
            w << 1.0 / L3, -3.0 / (4.0 * L7), -kSqrt7 / (6.0 * L7), 3.0 / (8.0 * L7),
                -(1990.0 * a.I1 + 911.0 * kSqrt10 * a.I2) / (960.0 * L8),
                -(911.0 * kSqrt10 * a.I1 + 735.0 * a.I2) / (960.0 * L8);
        }
        return w;
    }
    const double G4 = std::pow(a.G, 4), G5 = G4 * a.G;
    Eigen::VectorXd w(4);
    if (pair == EqPair::e12) {
        w << 1.0 / L3, -1.0 / (G4 * L3), -kSqrt53 / (2.0 * G4 * L3),
            2.0 * a.I / (3.0 * G5 * L3);
    } else {
        w << 1.0 / L3, 1.0 / (4.0 * G4 * L3), kSqrt52 / (3.0 * G4 * L3),
            199.0 * a.I / (96.0 * G5 * L3);
    }
    return w;
}

Eigen::MatrixXd m_omega(ReducedSpace space, EqPair pair, const ActionPoint& a) {
    check_actions(space, a);
    const double L = a.L;
    const double L4 = std::pow(L, 4);
    if (space == ReducedSpace::first) {
        const double L8 = std::pow(L, 8), L9 = L8 * L;
        Eigen::MatrixXd m(6, 4);
        m.setZero();
        m.col(0) = omega(space, pair, a);
        if (pair == EqPair::e12) {
            m(0, 1) = -3.0 / L4;
            m(1, 1) = -14.0 / L8;
            m(2, 1) = 7.0 / L8;
            m(3, 1) = -7.0 * kSqrt53 / (2.0 * L8);
            m(4, 1) = 16.0 * (6.0 * a.I1 - kSqrt15 * a.I2) / (3.0 * L9);
            m(5, 1) = 16.0 * (a.I2 - kSqrt15 * a.I1) / (3.0 * L9);
            m(4, 2) = -4.0 / L8;
            m(4, 3) = 2.0 * kSqrt53 / L8;
            m(5, 2) = 2.0 * kSqrt53 / L8;
            m(5, 3) = -2.0 / (3.0 * L8);
        } else {
            m(0, 1) = -3.0 / L4;
            m(1, 1) = 21.0 / (4.0 * L8);
            m(2, 1) = 7.0 * kSqrt7 / (6.0 * L8);
            m(3, 1) = -21.0 / (8.0 * L8);
            m(4, 1) = (1990.0 * a.I1 + 911.0 * kSqrt10 * a.I2) / (120.0 * L9);
            m(5, 1) = (911.0 * kSqrt10 * a.I1 + 735.0 * a.I2) / (120.0 * L9);
            m(4, 2) = -199.0 / (96.0 * L8);
            m(4, 3) = -911.0 / (96.0 * kSqrt10 * L8);
            m(5, 2) = -911.0 / (96.0 * kSqrt10 * L8);
            m(5, 3) = -49.0 / (64.0 * L8);
        }
        return m;
    }
    const double L3 = L * L * L;
    const double G4 = std::pow(a.G, 4), G5 = G4 * a.G, G6 = G5 * a.G;
    Eigen::MatrixXd m(4, 4);
    m.setZero();
    m.col(0) = omega(space, pair, a);
    if (pair == EqPair::e12) {
        m(0, 1) = -3.0 / L4;
        m(1, 1) = 3.0 / (G4 * L4);
        m(2, 1) = std::sqrt(15.0) / (2.0 * G4 * L4);
        m(3, 1) = -2.0 * a.I / (G5 * L4);
        m(1, 2) = 4.0 / (G5 * L3);
        m(2, 2) = 2.0 * kSqrt53 / (G5 * L3);
        m(3, 2) = -10.0 * a.I / (3.0 * G6 * L3);
        m(3, 3) = 2.0 / (3.0 * G5 * L3);
    } else {
        m(0, 1) = -3.0 / L4;
        m(1, 1) = -3.0 / (4.0 * G4 * L4);
        m(2, 1) = -kSqrt52 / (G4 * L4);
        m(3, 1) = -199.0 * a.I / (32.0 * G5 * L4);
        m(1, 2) = -1.0 / (G5 * L3);
        m(2, 2) = -2.0 * kSqrt10 / (3.0 * G5 * L3);
        m(3, 2) = -995.0 * a.I / (96.0 * G6 * L3);
        m(3, 3) = 199.0 / (96.0 * G5 * L3);
    }
    return m;
}

int rank(const Eigen::MatrixXd& m, double tol) {
    if (!(tol > 0.0) || !(tol < 1.0)) throw domain_error("rank: tol must lie in (0, 1)");
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
    const auto& sv = svd.singularValues();
    if (sv.size() == 0 || sv(0) == 0.0) return 0;
    int r = 0;
    for (int i = 0; i < sv.size(); ++i)
        if (sv(i) > tol * sv(0)) ++r;
    return r;
}

FrequencyAnalysis analyze_frequencies(ReducedSpace space, EqPair pair, const ActionPoint& a,
                                      double tol) {
    FrequencyAnalysis out;
    out.space = space;
    out.pair = pair;
    out.actions = a;
    out.omega = omega(space, pair, a);
    out.m_omega = m_omega(space, pair, a);
    out.tolerance = tol;
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(out.m_omega);
    for (int i = 0; i < svd.singularValues().size(); ++i)
        out.singular_values.push_back(svd.singularValues()(i));
    out.rank = rank(out.m_omega, tol);
    return out;
}

} // namespace tricenter
