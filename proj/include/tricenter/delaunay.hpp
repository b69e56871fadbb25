#ifndef TRICENTER_DELAUNAY_HPP
#define TRICENTER_DELAUNAY_HPP

#include <cmath>

#include "tricenter/state.hpp"

namespace tricenter {

/// Action-angle chart of the Kepler flow (unit gravitational parameter).
/// Valid on |H| < G < L, G != 0; ell, g, h in radians.
struct DelaunayElements {
    double ell = 0.0; // mean anomaly
    double g = 0.0;   // argument of periapsis
    double h = 0.0;   // longitude of the ascending node
    double L = 1.0;   // sqrt(semi-major axis)
    double G = 1.0;   // angular momentum magnitude
    double H = 1.0;   // polar component of angular momentum

    double eccentricity() const {
        const double r = 1.0 - (G * G) / (L * L);
        return r > 0.0 ? std::sqrt(r) : 0.0;
    }
    double eta() const { return G / L; }
};

/// Solves E - e sin E = ell by Newton iteration with a bisection fallback.
double solve_kepler(double ell, double e, double tol = 1e-13);

/// Kepler state of the elliptic orbit described by d.  Rotation convention:
/// R3(h) R1(i) R3(g) applied to the perifocal frame, cos i = H/G.  Throws
/// domain_error outside |H| < G < L or for G, L <= 0.
CartesianState delaunay_to_cartesian(const DelaunayElements& d);

/// Inverse chart.  Near-circular and near-equatorial states are flagged,
/// not rejected; hyperbolic/parabolic states throw domain_error.
struct DelaunayConversion {
    DelaunayElements elements;
    bool circular = false;   // e below 1e-12: g ill-defined
    bool equatorial = false; // G - |H| below 1e-12: h ill-defined
};
DelaunayConversion cartesian_to_delaunay(const CartesianState& s);

inline double wrap_angle(double a) {
    const double two_pi = 2.0 * M_PI;
    a = std::fmod(a, two_pi);
    return a < 0.0 ? a + two_pi : a;
}

} // namespace tricenter

#endif
