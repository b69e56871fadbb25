#include "tricenter/delaunay.hpp"

#include <cmath>

#include <Eigen/Geometry>

#include "tricenter/errors.hpp"

namespace tricenter {

double solve_kepler(double ell, double e, double tol) {
    if (e < 0.0 || e >= 1.0) throw domain_error("solve_kepler: need 0 <= e < 1");
    if (tol <= 0.0) throw domain_error("solve_kepler: tol must be positive");
    const double m = wrap_angle(ell);
    if (e == 0.0) return m;

    // bracket: E - e sin E is increasing, root within [m - e, m + e]
    double lo = m - e, hi = m + e;
    double E = m + 0.85 * e * (std::sin(m) >= 0.0 ? 1.0 : -1.0);
    if (E < lo || E > hi) E = m;

    for (int it = 0; it < 100; ++it) {
        const double f = E - e * std::sin(E) - m;
        if (std::abs(f) <= tol) return E;
        if (f > 0.0) hi = E; else lo = E;
        const double fp = 1.0 - e * std::cos(E);
        double En = E - f / fp;
        if (!(En > lo && En < hi)) En = 0.5 * (lo + hi); // bisection fallback
        E = En;
    }
    throw numerical_error("solve_kepler: no convergence after 100 iterations");
}

namespace {

void check_domain(const DelaunayElements& d) {
    if (!(d.L > 0.0) || !(d.G > 0.0))
        throw domain_error("delaunay: require L > 0 and G > 0");
    if (!(std::abs(d.H) <= d.G) || !(d.G <= d.L))
        throw domain_error("delaunay: require |H| <= G <= L");
}

Eigen::Matrix3d rot3(double t) {
    Eigen::Matrix3d r;
    const double c = std::cos(t), s = std::sin(t);
    r << c, -s, 0, s, c, 0, 0, 0, 1;
    return r;
}

Eigen::Matrix3d rot1(double t) {
    Eigen::Matrix3d r;
    const double c = std::cos(t), s = std::sin(t);
    r << 1, 0, 0, 0, c, -s, 0, s, c;
    return r;
}

} // namespace

CartesianState delaunay_to_cartesian(const DelaunayElements& d) {
    check_domain(d);
    const double a = d.L * d.L;
    const double e = d.eccentricity();
    const double eta = d.eta();
    const double E = solve_kepler(d.ell, e);
    const double cE = std::cos(E), sE = std::sin(E);

    const Eigen::Vector3d q_pf(a * (cE - e), a * eta * sE, 0.0);
    // dE/dt = n/(1 - e cos E), n = 1/L^3, so a*n = 1/L
    const double fac = (1.0 / d.L) / (1.0 - e * cE);
    const Eigen::Vector3d p_pf(-sE * fac, eta * cE * fac, 0.0);

    const double ci = std::clamp(d.H / d.G, -1.0, 1.0);
    const double inc = std::acos(ci);
    const Eigen::Matrix3d R = rot3(d.h) * rot1(inc) * rot3(d.g);

    CartesianState s;
    s.q = R * q_pf;
    s.p = R * p_pf;
    return s;
}

DelaunayConversion cartesian_to_delaunay(const CartesianState& s) {
    const double r = s.q.norm();
    if (r <= 0.0) throw domain_error("cartesian_to_delaunay: q at the origin");
    const double energy = 0.5 * s.p.squaredNorm() - 1.0 / r;
    if (!(energy < 0.0))
        throw domain_error("cartesian_to_delaunay: state is not bound (H0 >= 0)");

    const Eigen::Vector3d Gv = s.q.cross(s.p);
    const double G = Gv.norm();
    if (G <= 0.0) throw domain_error("cartesian_to_delaunay: rectilinear state (G = 0)");

    const double a = -1.0 / (2.0 * energy);
    const double L = std::sqrt(a);

    // Laplace-Runge-Lenz vector; |A| = e
    const Eigen::Vector3d A = s.p.cross(Gv) - s.q / r;
    const double e = A.norm();

    DelaunayConversion out;
    out.circular = e < 1e-12;
    out.equatorial = (G - std::abs(Gv.z())) < 1e-12;

    DelaunayElements d;
    d.L = L;
    d.G = std::min(G, L);       // clip roundoff above the circular limit
    d.H = std::clamp(Gv.z(), -d.G, d.G);

    // node direction z x G; falls back to x for equatorial orbits
    Eigen::Vector3d node(-Gv.y(), Gv.x(), 0.0);
    if (out.equatorial || node.norm() < 1e-300) node = Eigen::Vector3d::UnitX();
    node.normalize();
    d.h = out.equatorial ? 0.0 : wrap_angle(std::atan2(Gv.x(), -Gv.y()));

    const Eigen::Vector3d gh = Gv / G;
    if (out.circular) {
        d.g = 0.0;
    } else {
        const Eigen::Vector3d ah = A / e;
        d.g = wrap_angle(std::atan2(ah.dot(gh.cross(node)), ah.dot(node)));
    }

    // eccentric anomaly from e sin E = q.p / L, e cos E = 1 - r/a
    const double esE = s.q.dot(s.p) / L;
    const double ecE = 1.0 - r / a;
    double E = std::atan2(esE, ecE); // exact also as e -> 0 with g = 0 convention
    if (out.circular) {
        // measure the phase from the node instead
        const Eigen::Vector3d qh = s.q / r;
        E = std::atan2(qh.dot(gh.cross(node)), qh.dot(node));
    }
    d.ell = wrap_angle(E - esE);
    return {d, out.circular, out.equatorial};
}

} // namespace tricenter
