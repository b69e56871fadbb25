#include "tricenter/reduction.hpp"

#include <cmath>

#include <Eigen/Geometry>

#include "tricenter/errors.hpp"

namespace tricenter {

namespace {
constexpr double kSqrt3 = 1.7320508075688772935274463415058724;
}

double ReducedPoint::casimir_defect() const {
    return std::max(std::abs(x.norm() - L), std::abs(y.norm() - L));
}

ReducedPoint to_reduced_first(const CartesianState& s) {
    const double r = s.q.norm();
    if (r <= 0.0) throw domain_error("to_reduced_first: q at the origin");
    const double energy = 0.5 * s.p.squaredNorm() - 1.0 / r;
    if (!(energy < 0.0)) throw domain_error("to_reduced_first: state is not bound");

    const Eigen::Vector3d Gv = s.q.cross(s.p);
    const Eigen::Vector3d A = s.p.cross(Gv) - s.q / r;
    const double L = 1.0 / std::sqrt(-2.0 * energy);

    ReducedPoint out;
    out.L = L;
    out.x = Gv + L * A;
    out.y = Gv - L * A;
    return out;
}

double reduced_hamiltonian_first(const ReducedPoint& r, double eps) {
    const Eigen::Vector3d ax = r.x + r.y; // alpha_{x_i} = alpha_{y_i} = x_i + y_i
    const double alpha = 0.5 * ax.squaredNorm();
    if (alpha <= 0.0)
        throw chart_singular_error("reduced_hamiltonian_first: alpha = 0 (rectilinear limit)");
    const double num = ax.x() * ax.x() + 2.0 * kSqrt3 * ax.y() * ax.x() - ax.y() * ax.y() -
                       8.0 * ax.z() * ax.z();
    return -1.0 / (2.0 * r.L * r.L) +
           0.5 * eps * eps * num / (3.0 * std::pow(2.0 * alpha, 2.5) * std::pow(r.L, 3));
}

std::pair<Eigen::Vector3d, Eigen::Vector3d> reduced_vector_field_first(const ReducedPoint& r,
                                                                       double eps) {
    const double x1 = r.x.x(), x2 = r.x.y(), x3 = r.x.z();
    const double y1 = r.y.x(), y2 = r.y.y(), y3 = r.y.z();
    const Eigen::Vector3d ax = r.x + r.y;
    const double a1 = ax.x(), a2 = ax.y(), a3 = ax.z();
    const double alpha = 0.5 * ax.squaredNorm();
    if (alpha <= 0.0)
        throw chart_singular_error("reduced_vector_field_first: alpha = 0");
    const double pref =
        eps * eps / (24.0 * std::sqrt(2.0) * std::pow(alpha, 3.5) * std::pow(r.L, 3));
    const double quad = a1 * a1 + 2.0 * kSqrt3 * a2 * a1 - a2 * a2 - 8.0 * a3 * a3;

    Eigen::Vector3d dx, dy;
    dx.x() = pref * (x2 * a3 *
                         (32.0 * alpha + 5.0 * a1 * a1 + 10.0 * kSqrt3 * a2 * a1 -
                          5.0 * a2 * a2 - 40.0 * a3 * a3) +
                     x3 * (-5.0 * a2 * a1 * a1 + 2.0 * kSqrt3 * (2.0 * alpha - 5.0 * a2 * a2) * a1 +
                           a2 * (-4.0 * alpha + 5.0 * a2 * a2 + 40.0 * a3 * a3)));
    dx.y() = pref * (5.0 * x3 * a1 * a1 * a1 +
                     5.0 * (2.0 * kSqrt3 * x3 * a2 - x1 * a3) * a1 * a1 -
                     (5.0 * x3 * a2 * a2 + 10.0 * kSqrt3 * x1 * a3 * a2 +
                      4.0 * x3 * (alpha + 10.0 * a3 * a3)) *
                         a1 -
                     4.0 * kSqrt3 * alpha * x3 * a2 + 5.0 * x1 * a2 * a2 * a3 +
                     8.0 * x1 * a3 * (5.0 * a3 * a3 - 4.0 * alpha));
    dx.z() = pref * (-5.0 * x2 * a1 * a1 * a1 +
                     5.0 * (x1 - 2.0 * kSqrt3 * x2) * a2 * a1 * a1 +
                     (5.0 * (2.0 * kSqrt3 * x1 + x2) * a2 * a2 + 40.0 * x2 * a3 * a3 -
                      4.0 * kSqrt3 * alpha * x1 + 4.0 * alpha * x2) *
                         a1 +
                     a2 * (4.0 * alpha * (x1 + kSqrt3 * x2) -
                           5.0 * x1 * (a2 * a2 + 8.0 * a3 * a3)));
    dy.x() = pref * (-5.0 * quad * (y3 * a2 - y2 * a3) +
                     4.0 * alpha * (kSqrt3 * y3 * a1 - y3 * a2 + 8.0 * y2 * a3));
    dy.y() = pref * (5.0 * quad * (y3 * a1 - y1 * a3) -
                     4.0 * alpha * (y3 * a1 + kSqrt3 * y3 * a2 + 8.0 * y1 * a3));
    dy.z() = pref * (-5.0 * quad * (y2 * a1 - y1 * a2) +
                     4.0 * alpha * ((y2 - kSqrt3 * y1) * a1 + (y1 + kSqrt3 * y2) * a2));
    return {dx, dy};
}

SecondReducedPoint to_second_reduced(const ReducedPoint& r) {
    SecondReducedPoint out;
    out.beta = 0.5 * (r.x + r.y);
    out.L = r.L;
    out.G = out.beta.norm();
    return out;
}

double second_reduced_hamiltonian(const SecondReducedPoint& b, double eps) {
    const double n2 = b.beta.squaredNorm();
    if (n2 <= 0.0) throw chart_singular_error("second_reduced_hamiltonian: beta = 0");
    const double b1 = b.beta.x(), b2 = b.beta.y(), b3 = b.beta.z();
    const double num = -b1 * b1 + 2.0 * kSqrt3 * b1 * b2 + b2 * b2 + 8.0 * b3 * b3;
    return -1.0 / (2.0 * b.L * b.L) +
           0.5 * eps * eps * num / (24.0 * std::pow(b.L, 3) * std::pow(n2, 2.5));
}

Eigen::Vector3d second_reduced_vector_field(const SecondReducedPoint& b) {
    const double b1 = b.beta.x(), b2 = b.beta.y(), b3 = b.beta.z();
    return Eigen::Vector3d(b3 * (kSqrt3 * b1 - 7.0 * b2),
                           b3 * (9.0 * b1 - kSqrt3 * b2),
                           -kSqrt3 * b1 * b1 - 2.0 * b1 * b2 + kSqrt3 * b2 * b2);
}

Eigen::Matrix3d second_poisson_matrix(const Eigen::Vector3d& beta) {
    Eigen::Matrix3d j;
    j << 0.0, -beta.z(), beta.y(),
         beta.z(), 0.0, -beta.x(),
         -beta.y(), beta.x(), 0.0;
    return j;
}

std::pair<double, double> second_chart_ab(const SecondReducedPoint& b, ChartSign sign) {
    const double s = (sign == ChartSign::upper) ? 1.0 : -1.0;
    const double den = b.G + s * b.beta.z();
    if (den <= 1e-12)
        throw chart_singular_error("second_chart_ab: at the antipodal point of the chart");
    const double root = std::sqrt(den);
    return {std::sqrt(2.0) * b.beta.x() / root, s * std::sqrt(2.0) * b.beta.y() / root};
}

SecondReducedPoint second_chart_inverse(double a, double b, double G, double L,
                                        ChartSign sign) {
    const double s = (sign == ChartSign::upper) ? 1.0 : -1.0;
    const double w2 = a * a + b * b;
    const double root = std::sqrt(std::max(4.0 * G - w2, 0.0));
    SecondReducedPoint out;
    out.beta.x() = 0.5 * a * root;
    out.beta.y() = s * 0.5 * b * root;
    out.beta.z() = s * 0.5 * (2.0 * G - w2);
    out.G = G;
    out.L = L;
    return out;
}

double second_chart_hamiltonian(double a, double b, double G, double L, ChartSign sign,
                                double eps) {
    const double s = (sign == ChartSign::upper) ? 1.0 : -1.0;
    const double P = 7.0 * b * b - s * 2.0 * kSqrt3 * a * b + 9.0 * a * a;
    const double w2 = a * a + b * b;
    const double num = 32.0 * G * G - 4.0 * G * P + w2 * P;
    return -1.0 / (2.0 * L * L) +
           0.5 * eps * eps * num / (96.0 * std::pow(G, 5) * std::pow(L, 3));
}

} // namespace tricenter
