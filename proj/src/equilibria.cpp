#include "tricenter/equilibria.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "tricenter/dop853.hpp"
#include "tricenter/dynamics.hpp"
#include "tricenter/errors.hpp"

namespace tricenter {

namespace {
constexpr double kSqrt3 = 1.7320508075688772935274463415058724;

Eigen::Vector3d first_direction(int index) {
    switch (index) {
        case 1: return {0.0, 0.0, 1.0};
        case 2: return {0.0, 0.0, -1.0};
        case 3: return {kSqrt3 / 2.0, 0.5, 0.0};
        case 4: return {-kSqrt3 / 2.0, -0.5, 0.0};
        case 5: return {0.5, -kSqrt3 / 2.0, 0.0};
        case 6: return {-0.5, kSqrt3 / 2.0, 0.0};
        default: throw domain_error("equilibrium index must be 1..6");
    }
}

Eigen::Vector3d second_direction(int index) {
    switch (index) {
        case 1: return {0.0, 0.0, 1.0};
        case 2: return {0.0, 0.0, -1.0};
        case 3: return {kSqrt3 / 2.0, -0.5, 0.0};
        case 4: return {-kSqrt3 / 2.0, 0.5, 0.0};
        case 5: return {0.5, kSqrt3 / 2.0, 0.0};
        case 6: return {-0.5, -kSqrt3 / 2.0, 0.0};
        default: throw domain_error("equilibrium index must be 1..6");
    }
}

} // namespace

EquilibriumSpec EquilibriumSpec::first_reduced(int index, double L) {
    if (index < 1 || index > 6) throw domain_error("equilibrium index must be 1..6");
    if (!(L > 0.0)) throw domain_error("equilibrium: L must be positive");
    EquilibriumSpec e;
    e.space = ReducedSpace::first;
    e.index = index;
    e.L = L;
    e.G = L; // circular
    return e;
}

EquilibriumSpec EquilibriumSpec::second_reduced(int index, double G, double L) {
    if (index < 1 || index > 6) throw domain_error("equilibrium index must be 1..6");
    if (!(L > 0.0) || !(G > 0.0) || G > L)
        throw domain_error("equilibrium: require 0 < G <= L");
    EquilibriumSpec e;
    e.space = ReducedSpace::second;
    e.index = index;
    e.L = L;
    e.G = G;
    return e;
}

ReducedPoint EquilibriumSpec::first_point() const {
    if (space != ReducedSpace::first)
        throw domain_error("first_point: spec describes a second-reduced equilibrium");
    ReducedPoint r;
    r.L = L;
    r.x = L * first_direction(index);
    r.y = r.x;
    return r;
}

SecondReducedPoint EquilibriumSpec::second_point() const {
    if (space != ReducedSpace::second)
        throw domain_error("second_point: spec describes a first-reduced equilibrium");
    SecondReducedPoint b;
    b.L = L;
    b.G = G;
    b.beta = G * second_direction(index);
    return b;
}

ChartSign first_chart_sign(int index) {
    switch (index) {
        case 1: case 3: case 6: return ChartSign::upper;
        case 2: case 4: case 5: return ChartSign::lower;
        default: throw domain_error("equilibrium index must be 1..6");
    }
}

Eigen::Vector4d to_chart_first(const ReducedPoint& r, ChartSign sign) {
    const double s = (sign == ChartSign::upper) ? 1.0 : -1.0;
    const double dx = r.L + s * r.x.z();
    const double dy = r.L + s * r.y.z();
    if (dx <= 1e-12 || dy <= 1e-12)
        throw chart_singular_error("to_chart_first: at the antipodal point of the chart");
    Eigen::Vector4d z;
    z(0) = r.x.y() / std::sqrt(dx);
    z(1) = r.y.y() / std::sqrt(dy);
    z(2) = -s * r.x.x() / std::sqrt(dx);
    z(3) = -s * r.y.x() / std::sqrt(dy);
    return z;
}

ReducedPoint from_chart_first(const Eigen::Vector4d& z, double L, ChartSign sign) {
    const double s = (sign == ChartSign::upper) ? 1.0 : -1.0;
    const double v2 = z(0) * z(0) + z(2) * z(2);
    const double w2 = z(1) * z(1) + z(3) * z(3);
    const double rv = std::sqrt(std::max(2.0 * L - v2, 0.0));
    const double rw = std::sqrt(std::max(2.0 * L - w2, 0.0));
    ReducedPoint r;
    r.L = L;
    r.x = Eigen::Vector3d(-s * z(2) * rv, z(0) * rv, s * (L - v2));
    r.y = Eigen::Vector3d(-s * z(3) * rw, z(1) * rw, s * (L - w2));
    return r;
}

Eigen::Vector4d equilibrium_chart_position(int index, double L) {
    const double sq = std::sqrt(L);
    const double sq3 = std::sqrt(3.0 * L);
    switch (index) {
        case 1: case 2: return Eigen::Vector4d::Zero();
        case 3: return {sq / 2.0, sq / 2.0, -sq3 / 2.0, -sq3 / 2.0};
        case 4: return {-sq / 2.0, -sq / 2.0, -sq3 / 2.0, -sq3 / 2.0};
        case 5: return {-sq3 / 2.0, -sq3 / 2.0, sq / 2.0, sq / 2.0};
        case 6: return {sq3 / 2.0, sq3 / 2.0, sq / 2.0, sq / 2.0};
        default: throw domain_error("equilibrium index must be 1..6");
    }
}

double charted_perturbation(const Eigen::Vector4d& z, double L, ChartSign sign) {
    const ReducedPoint r = from_chart_first(z, L, sign);
    const Eigen::Vector3d ax = r.x + r.y;
    const double alpha = 0.5 * ax.squaredNorm();
    if (alpha <= 0.0) throw chart_singular_error("charted_perturbation: alpha = 0");
    const double num = ax.x() * ax.x() + 2.0 * kSqrt3 * ax.y() * ax.x() - ax.y() * ax.y() -
                       8.0 * ax.z() * ax.z();
    return num / (3.0 * std::pow(2.0 * alpha, 2.5) * std::pow(L, 3));
}

namespace {

// Second derivative matrix by centered differences on three nested steps
// (h, h/2, h/4) with two Richardson levels, O(h^6).
Eigen::Matrix4d hessian_fd(const std::function<double(const Eigen::Vector4d&)>& f,
                           double h0) {
    auto hess_h = [&f](double h) {
        Eigen::Matrix4d m;
        const double f00 = f(Eigen::Vector4d::Zero());
        for (int i = 0; i < 4; ++i) {
            for (int j = i; j < 4; ++j) {
                double v;
                if (i == j) {
                    Eigen::Vector4d zp = Eigen::Vector4d::Zero(), zm = zp;
                    zp(i) += h;
                    zm(i) -= h;
                    v = (f(zp) - 2.0 * f00 + f(zm)) / (h * h);
                } else {
                    Eigen::Vector4d zpp = Eigen::Vector4d::Zero(), zpm = zpp, zmp = zpp, zmm = zpp;
                    zpp(i) += h; zpp(j) += h;
                    zpm(i) += h; zpm(j) -= h;
                    zmp(i) -= h; zmp(j) += h;
                    zmm(i) -= h; zmm(j) -= h;
                    v = (f(zpp) - f(zpm) - f(zmp) + f(zmm)) / (4.0 * h * h);
                }
                m(i, j) = v;
                m(j, i) = v;
            }
        }
        return m;
    };
    const Eigen::Matrix4d m1 = hess_h(h0);
    const Eigen::Matrix4d m2 = hess_h(h0 / 2.0);
    const Eigen::Matrix4d m3 = hess_h(h0 / 4.0);
    const Eigen::Matrix4d r1 = (4.0 * m2 - m1) / 3.0;   // kills h^2
    const Eigen::Matrix4d r2 = (4.0 * m3 - m2) / 3.0;
    return (16.0 * r2 - r1) / 15.0;                      // kills h^4
}

Eigen::Matrix4d symplectic_j() {
    Eigen::Matrix4d j = Eigen::Matrix4d::Zero();
    j(0, 2) = 1.0;
    j(1, 3) = 1.0;
    j(2, 0) = -1.0;
    j(3, 1) = -1.0;
    return j;
}

} // namespace

Eigen::Matrix4d hessian_at(const EquilibriumSpec& e) {
    if (e.space != ReducedSpace::first)
        throw domain_error("hessian_at: defined for first-reduced equilibria");
    const ChartSign sign = first_chart_sign(e.index);
    const Eigen::Vector4d z0 = to_chart_first(e.first_point(), sign);
    const double h0 = 0.01 * std::max(1.0, std::sqrt(e.L));
    return hessian_fd(
        [&](const Eigen::Vector4d& z) { return charted_perturbation(z + z0, e.L, sign); }, h0);
}

StabilityReport classify(const EquilibriumSpec& e) {
    StabilityReport rep;
    rep.hessian = hessian_at(e);
    rep.hessian_det = rep.hessian.determinant();
    const Eigen::Matrix4d J = symplectic_j();
    rep.linearization = J * rep.hessian;
    rep.period = 2.0 * M_PI * std::pow(e.L, 3);

    // characteristic polynomial by Faddeev-LeVerrier
    {
        const Eigen::Matrix4d& A = rep.linearization;
        Eigen::Matrix4d M = A;
        double c = -M.trace();
        rep.char_poly = {1.0, c, 0.0, 0.0, 0.0};
        for (int k = 2; k <= 4; ++k) {
            M = A * (M + c * Eigen::Matrix4d::Identity());
            c = -M.trace() / double(k);
            rep.char_poly[std::size_t(k)] = c;
        }
    }

    Eigen::EigenSolver<Eigen::Matrix4d> es(rep.linearization);
    for (int i = 0; i < 4; ++i) rep.eigenvalues[std::size_t(i)] = es.eigenvalues()(i);

    double scale = 0.0;
    for (const auto& ev : rep.eigenvalues) scale = std::max(scale, std::abs(ev));
    const double re_tol = 1e-10 * std::max(scale, 1.0);

    bool all_imaginary = true;
    for (const auto& ev : rep.eigenvalues)
        if (std::abs(ev.real()) > re_tol) all_imaginary = false;

    if (!all_imaginary) {
        rep.verdict = Verdict::unstable;
        return rep;
    }

    // Krein-Gel'fand: nonsingular, diagonalizable, and the Hamiltonian
    // restricted to each invariant pair subspace definite.
    bool nonsingular = true;
    for (const auto& ev : rep.eigenvalues)
        if (std::abs(ev) < 1e-12 * std::max(scale, 1.0)) nonsingular = false;

    bool diagonalizable = true;
    double min_gap = std::numeric_limits<double>::infinity();
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            min_gap = std::min(min_gap,
                               std::abs(rep.eigenvalues[std::size_t(i)] -
                                        rep.eigenvalues[std::size_t(j)]));
    if (min_gap <= 1e-8) {
        Eigen::JacobiSVD<Eigen::Matrix4cd> svd(es.eigenvectors());
        const double cond = svd.singularValues()(0) / svd.singularValues()(3);
        diagonalizable = cond < 1e8;
    }

    // group +i alpha eigenvalues (one representative per conjugate pair)
    bool definite_on_each = true;
    std::vector<bool> used(4, false);
    for (int i = 0; i < 4; ++i) {
        if (used[std::size_t(i)] || rep.eigenvalues[std::size_t(i)].imag() <= 0.0) continue;
        // mark the conjugate partner
        for (int j = 0; j < 4; ++j) {
            if (j != i && !used[std::size_t(j)] &&
                std::abs(rep.eigenvalues[std::size_t(j)] -
                         std::conj(rep.eigenvalues[std::size_t(i)])) < 1e-8 * std::max(scale, 1.0)) {
                used[std::size_t(j)] = true;
                break;
            }
        }
        used[std::size_t(i)] = true;
        const Eigen::Vector4cd v = es.eigenvectors().col(i);
        Eigen::Matrix<double, 4, 2> B;
        B.col(0) = v.real();
        B.col(1) = v.imag();
        const Eigen::Matrix2d R = B.transpose() * rep.hessian * B;
        Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> s2(R);
        const double tol = 1e-10 * std::max(1.0, rep.hessian.norm());
        int sign = 0;
        if (s2.eigenvalues()(0) > tol && s2.eigenvalues()(1) > tol) sign = 1;
        if (s2.eigenvalues()(0) < -tol && s2.eigenvalues()(1) < -tol) sign = -1;
        rep.subspace_definiteness.push_back(sign);
        if (sign == 0) definite_on_each = false;
    }

    rep.verdict = (nonsingular && diagonalizable && definite_on_each)
                      ? Verdict::parametrically_stable
                      : Verdict::weakly_stable;
    return rep;
}

ReebData reeb_data(const EquilibriumSpec& e, double eps) {
    const StabilityReport rep = classify(e);
    ReebData out;
    out.period = rep.period;
    out.multipliers[0] = 1.0;
    out.multipliers[1] = 1.0;
    for (int j = 0; j < 4; ++j)
        out.multipliers[std::size_t(j + 2)] =
            1.0 + eps * eps * rep.eigenvalues[std::size_t(j)] * rep.period;
    return out;
}

CartesianState reconstruct_orbit(const EquilibriumSpec& e, double /*eps*/) {
    if (e.space != ReducedSpace::first)
        throw domain_error("reconstruct_orbit: defined for first-reduced equilibria");
    const Eigen::Vector3d n = first_direction(e.index);
    const Eigen::Vector3d dip(0.5, kSqrt3 / 6.0, 0.0); // triangle centroid direction

    Eigen::Vector3d u = n.cross(dip);
    if (u.norm() < 1e-9) u = Eigen::Vector3d::UnitZ().cross(n);
    if (u.norm() < 1e-9) u = Eigen::Vector3d::UnitX();
    u.normalize();

    CartesianState s;
    s.q = e.L * e.L * u;          // radius L^2
    s.p = (1.0 / e.L) * n.cross(u); // circular speed G/r with G = L
    return s;
}

ReturnDistance near_return_distance(const EquilibriumSpec& e, double eps,
                                    const SystemConfig& cfg, double horizon,
                                    int curve_samples) {
    if (horizon < 1.1) throw domain_error("near_return_distance: horizon below 1.1 periods");
    const CartesianState z0 = reconstruct_orbit(e, eps);
    const double T = 2.0 * M_PI * std::pow(e.L, 3);

    // curve samples plus a dense pass over the [0.9T, 1.1T] window
    std::vector<double> ts;
    ts.reserve(std::size_t(curve_samples) + 20001);
    for (int i = 0; i < curve_samples; ++i)
        ts.push_back(horizon * T * double(i) / double(curve_samples - 1));
    const int nw = 20000;
    for (int i = 0; i <= nw; ++i) ts.push_back(T * (0.9 + 0.2 * double(i) / double(nw)));
    std::sort(ts.begin(), ts.end());
    ts.erase(std::unique(ts.begin(), ts.end()), ts.end());

    // paper geometry at the requested eps, tolerances taken from cfg
    const SystemConfig run = SystemConfig::paper(eps, cfg.integ_rel_tol, cfg.integ_abs_tol);

    ReturnDistance out;
    out.period = T;

    Dop853::Options opt;
    opt.rel_tol = run.integ_rel_tol;
    opt.abs_tol = run.integ_abs_tol;
    Dop853 solver(6,
                  [&run](double, const double* y, double* f) {
                      CartesianState s;
                      s.q = Eigen::Vector3d(y[0], y[1], y[2]);
                      s.p = Eigen::Vector3d(y[3], y[4], y[5]);
                      const PhaseDerivative d = full_vector_field(s, run);
                      f[0] = d.dq.x(); f[1] = d.dq.y(); f[2] = d.dq.z();
                      f[3] = d.dp.x(); f[4] = d.dp.y(); f[5] = d.dp.z();
                  },
                  opt);
    const double y0[6] = {z0.q.x(), z0.q.y(), z0.q.z(), z0.p.x(), z0.p.y(), z0.p.z()};

    std::vector<double> win_t, win_f;
    win_t.reserve(ts.size());
    win_f.reserve(ts.size());
    out.times.reserve(ts.size());
    out.f.reserve(ts.size());
    solver.integrate(0.0, y0, horizon * T, ts, [&](double t, std::span<const double> y) {
        double d2 = 0.0;
        for (int i = 0; i < 6; ++i) {
            const double diff = y[std::size_t(i)] - y0[i];
            d2 += diff * diff;
        }
        const double f = std::sqrt(d2);
        out.times.push_back(t);
        out.f.push_back(f);
        if (t >= 0.9 * T && t <= 1.1 * T) {
            win_t.push_back(t);
            win_f.push_back(f);
        }
    });

    // sampled minimum, sharpened by a parabola through f^2 (locally quadratic
    // at a transversal minimum, so this removes the sampling floor)
    std::size_t imin = 0;
    for (std::size_t i = 1; i < win_f.size(); ++i)
        if (win_f[i] < win_f[imin]) imin = i;
    double fmin = win_f.empty() ? std::numeric_limits<double>::infinity() : win_f[imin];
    double tmin = win_t.empty() ? 0.0 : win_t[imin];
    if (imin > 0 && imin + 1 < win_f.size()) {
        const double y0q = win_f[imin - 1] * win_f[imin - 1];
        const double y1q = win_f[imin] * win_f[imin];
        const double y2q = win_f[imin + 1] * win_f[imin + 1];
        const double denom = y0q - 2.0 * y1q + y2q;
        if (denom > 0.0) {
            const double s = 0.5 * (y0q - y2q) / denom; // vertex offset in samples
            if (std::abs(s) <= 1.0) {
                const double fq = y1q - 0.25 * (y0q - y2q) * s;
                if (fq >= 0.0 && fq < y1q) fmin = std::sqrt(fq);
                tmin += s * (win_t[imin + 1] - win_t[imin]);
            }
        }
    }
    out.min_near_period = fmin;
    out.t_min = tmin;
    return out;
}

} // namespace tricenter
