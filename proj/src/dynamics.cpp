#include "tricenter/dynamics.hpp"

#include <cmath>
#include <string>

#include "tricenter/dop853.hpp"
#include "tricenter/errors.hpp"

namespace tricenter {

SystemConfig SystemConfig::paper(double epsilon, double rel_tol, double abs_tol) {
    if (epsilon < 0.0) throw domain_error("epsilon must be nonnegative");
    SystemConfig cfg;
    cfg.epsilon = epsilon;
    cfg.mu = {1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0};
    cfg.centers[0] = Eigen::Vector3d::Zero();
    cfg.centers[1] = Eigen::Vector3d(epsilon, 0.0, 0.0);
    cfg.centers[2] = Eigen::Vector3d(epsilon / 2.0, epsilon * std::sqrt(3.0) / 2.0, 0.0);
    cfg.integ_rel_tol = rel_tol;
    cfg.integ_abs_tol = abs_tol;
    return cfg;
}

double SystemConfig::triangle_defect() const {
    const double d12 = (centers[0] - centers[1]).norm();
    const double d13 = (centers[0] - centers[2]).norm();
    const double d23 = (centers[1] - centers[2]).norm();
    const double dmax = std::max({d12, d13, d23});
    const double dmin = std::min({d12, d13, d23});
    if (dmax == 0.0) return 0.0;
    return (dmax - dmin) / dmax;
}

double potential(const Eigen::Vector3d& q, const SystemConfig& cfg) {
    double v = 0.0;
    for (int i = 0; i < 3; ++i) {
        const double r = (q - cfg.centers[i]).norm();
        if (r < kCollisionRadius)
            throw singularity_error("potential: point within collision guard of center " +
                                    std::to_string(i + 1));
        v += cfg.mu[i] / r;
    }
    return v;
}

double full_hamiltonian(const CartesianState& s, const SystemConfig& cfg) {
    return 0.5 * s.p.squaredNorm() - potential(s.q, cfg);
}

ExpansionTerms expansion_terms(const CartesianState& s) {
    const double r2 = s.q.squaredNorm();
    if (std::sqrt(r2) < kCollisionRadius)
        throw singularity_error("expansion_terms: point at the origin");
    const double r = std::sqrt(r2);
    const double r3 = r2 * r;
    const double r5 = r3 * r2;
    const double q1 = s.q.x(), q2 = s.q.y(), q3 = s.q.z();
    const double s3 = std::sqrt(3.0);
    ExpansionTerms out;
    out.h0 = 0.5 * s.p.squaredNorm() - 1.0 / r;
    out.h1 = -(3.0 * q1 + s3 * q2) / (6.0 * r3);
    out.h2 = -(7.0 * q1 * q1 + 6.0 * s3 * q1 * q2 + q2 * q2 - 8.0 * q3 * q3) / (12.0 * r5);
    return out;
}

PhaseDerivative full_vector_field(const CartesianState& s, const SystemConfig& cfg) {
    PhaseDerivative d;
    d.dq = s.p;
    d.dp.setZero();
    for (int i = 0; i < 3; ++i) {
        const Eigen::Vector3d rel = s.q - cfg.centers[i];
        const double r = rel.norm();
        if (r < kCollisionRadius)
            throw singularity_error("full_vector_field: point within collision guard of center " +
                                    std::to_string(i + 1));
        d.dp -= cfg.mu[i] * rel / (r * r * r);
    }
    return d;
}

Trajectory integrate(const CartesianState& s0, double t_end, const SystemConfig& cfg,
                     int samples) {
    if (!(t_end > 0.0)) throw domain_error("integrate: t_end must be positive");
    if (samples < 2) throw domain_error("integrate: need at least two samples");
    // reject an initial state already inside the guard
    (void)potential(s0.q, cfg);

    Dop853::Options opt;
    opt.rel_tol = cfg.integ_rel_tol;
    opt.abs_tol = cfg.integ_abs_tol;
    Dop853 solver(6,
                  [&cfg](double, const double* y, double* f) {
                      CartesianState s;
                      s.q = Eigen::Vector3d(y[0], y[1], y[2]);
                      s.p = Eigen::Vector3d(y[3], y[4], y[5]);
                      const PhaseDerivative d = full_vector_field(s, cfg);
                      f[0] = d.dq.x(); f[1] = d.dq.y(); f[2] = d.dq.z();
                      f[3] = d.dp.x(); f[4] = d.dp.y(); f[5] = d.dp.z();
                  },
                  opt);

    std::vector<double> ts(samples);
    for (int i = 0; i < samples; ++i) ts[i] = t_end * double(i) / double(samples - 1);

    Trajectory traj;
    traj.times.reserve(samples);
    traj.states.reserve(samples);
    traj.energies.reserve(samples);

    const double y0[6] = {s0.q.x(), s0.q.y(), s0.q.z(), s0.p.x(), s0.p.y(), s0.p.z()};
    try {
        solver.integrate(0.0, y0, t_end, ts, [&](double t, std::span<const double> y) {
            CartesianState s;
            s.q = Eigen::Vector3d(y[0], y[1], y[2]);
            s.p = Eigen::Vector3d(y[3], y[4], y[5]);
            traj.times.push_back(t);
            traj.states.push_back(s);
            traj.energies.push_back(full_hamiltonian(s, cfg));
        });
    } catch (const numerical_error& e) {
        const double t_fail = traj.times.empty() ? 0.0 : traj.times.back();
        throw collision_error(std::string("integrate: ") + e.what(), t_fail);
    } catch (const singularity_error& e) {
        const double t_fail = traj.times.empty() ? 0.0 : traj.times.back();
        throw collision_error(std::string("integrate: ") + e.what(), t_fail);
    }
    return traj;
}

double Trajectory::max_relative_energy_drift() const {
    if (energies.empty()) return 0.0;
    const double e0 = energies.front();
    const double scale = std::max(std::abs(e0), 1e-300);
    double worst = 0.0;
    for (double e : energies) worst = std::max(worst, std::abs(e - e0) / scale);
    return worst;
}

} // namespace tricenter
