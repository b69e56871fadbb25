#include "tricenter/normal_form.hpp"

#include <cmath>

#include "tricenter/errors.hpp"

namespace tricenter {

namespace {

constexpr double kSqrt3 = 1.7320508075688772935274463415058724;

struct Trig {
    double e, eta, cE, sE, cg, sg, ch, sh, om; // om = 1 - e cos E
};

Trig trig_of(const DelaunayElements& d) {
    Trig t;
    t.e = d.eccentricity();
    t.eta = d.eta();
    const double E = solve_kepler(d.ell, t.e);
    t.cE = std::cos(E);
    t.sE = std::sin(E);
    t.cg = std::cos(d.g);
    t.sg = std::sin(d.g);
    t.ch = std::cos(d.h);
    t.sh = std::sin(d.h);
    t.om = 1.0 - t.e * t.cE;
    return t;
}

} // namespace

double h0_delaunay(const DelaunayElements& d) {
    if (!(d.L > 0.0)) throw domain_error("h0_delaunay: L must be positive");
    return -1.0 / (2.0 * d.L * d.L);
}

double h1_delaunay(const DelaunayElements& d) {
    // algebraic in H; only L > 0, 0 < G <= L are needed to evaluate
    if (!(d.L > 0.0) || !(d.G > 0.0) || d.G > d.L)
        throw domain_error("h1_delaunay: require 0 < G <= L");
    if (d.eccentricity() < 1e-8)
        throw chart_singular_error("h1_delaunay: e below 1e-8 guard");
    const Trig t = trig_of(d);
    const double pref = 1.0 / (6.0 * d.G * std::pow(d.L, 4) * std::pow(t.e * t.cE - 1.0, 3));
    const double term =
        t.cg * (d.G * (t.cE - t.e) * (3.0 * t.ch + kSqrt3 * t.sh) +
                t.eta * d.H * t.sE * (kSqrt3 * t.ch - 3.0 * t.sh)) -
        t.sg * (d.H * (t.e - t.cE) * (kSqrt3 * t.ch - 3.0 * t.sh) +
                t.eta * d.G * t.sE * (3.0 * t.ch + kSqrt3 * t.sh));
    return pref * term;
}

// NOTES: the published closed form of this coefficient omits the two terms
//   (cE-e)^2 cg^2 sh^2 / (8 L^6 om^5)  and  (1-e^2) sE^2 sg^2 sh^2 / (8 L^6 om^5);
// they are restored here.  With them the expression agrees with the Cartesian
// second-order term composed with the Delaunay chart to machine precision
// (the H^2-block carries the same two monomials, which is how the omission
// was located symbolically).
double h2_delaunay(const DelaunayElements& d) {
    if (!(d.L > 0.0) || !(d.G > 0.0) || d.G > d.L)
        throw domain_error("h2_delaunay: require 0 < G <= L");
    if (d.eccentricity() < 1e-8)
        throw chart_singular_error("h2_delaunay: e below 1e-8 guard");
    const Trig t = trig_of(d);
    const double e2 = 1.0 - t.e * t.e;
    const double ce = t.cE - t.e;
    const double D3 = t.om * t.om * t.om;
    const double D5 = D3 * t.om * t.om;
    const double L6 = std::pow(d.L, 6);
    const double G2 = d.G * d.G;
    const double H = d.H;
    const double H2 = H * H;
    const double sE = t.sE, cg = t.cg, sg = t.sg, ch = t.ch, sh = t.sh;
    const double eta = t.eta;

    double v = 0.0;
    // H^2 block
    v += ce * ce * cg * cg * H2 / (2.0 * G2 * L6 * D5);
    v += ch * ch * H2 / (8.0 * G2 * L6 * D3);
    v += e2 * cg * cg * ch * ch * sE * sE * H2 / (8.0 * G2 * L6 * D5);
    v += ce * ce * ch * ch * sg * sg * H2 / (8.0 * G2 * L6 * D5);
    v += e2 * sE * sE * sg * sg * H2 / (2.0 * G2 * L6 * D5);
    v += ce * ce * cg * cg * sh * sh * H2 / (8.0 * G2 * L6 * D5);
    v += e2 * sE * sE * sg * sg * sh * sh * H2 / (8.0 * G2 * L6 * D5);
    v += eta * ce * cg * ch * ch * sE * sg * H2 / (2.0 * G2 * L6 * D5);
    v += e2 * kSqrt3 * cg * cg * ch * sE * sE * sh * H2 / (4.0 * G2 * L6 * D5);
    v += kSqrt3 * ce * ce * ch * sg * sg * sh * H2 / (4.0 * G2 * L6 * D5);
    v += (kSqrt3 * ch * sh * H2 - 2.0 * H2) / (4.0 * G2 * L6 * D3);
    v += -sh * sh * H2 / (8.0 * G2 * L6 * D3);
    v += eta * kSqrt3 * ce * cg * ch * sE * sg * sh * H2 / (G2 * L6 * D5);
    v += -2.0 * eta * ce * cg * sE * sg * H2 / (G2 * L6 * D5);
    v += -e2 * cg * cg * sE * sE * H2 / (2.0 * G2 * L6 * D5);
    v += -ce * ce * sg * sg * H2 / (2.0 * G2 * L6 * D5);
    v += -eta * ce * cg * sE * sg * sh * sh * H2 / (2.0 * G2 * L6 * D5);
    v += -kSqrt3 * e2 * ch * sE * sE * sg * sg * sh * H2 / (4.0 * G2 * L6 * D5);
    v += -kSqrt3 * ce * ce * cg * cg * ch * sh * H2 / (4.0 * G2 * L6 * D5);
    v += -ce * ce * cg * cg * ch * ch * H2 / (8.0 * G2 * L6 * D5);
    v += -e2 * ch * ch * sE * sE * sg * sg * H2 / (8.0 * G2 * L6 * D5);
    v += -e2 * cg * cg * sE * sE * sh * sh * H2 / (8.0 * G2 * L6 * D5);
    v += -ce * ce * sg * sg * sh * sh * H2 / (8.0 * G2 * L6 * D5);
    // H block
    v += eta * kSqrt3 * ce * ch * ch * sE * sg * sg * H / (2.0 * d.G * L6 * D5);
    v += eta * kSqrt3 * ce * cg * cg * sE * sh * sh * H / (2.0 * d.G * L6 * D5);
    v += kSqrt3 * ce * ce * cg * sg * sh * sh * H / (2.0 * d.G * L6 * D5);
    v += e2 * kSqrt3 * cg * ch * ch * sE * sE * sg * H / (2.0 * d.G * L6 * D5);
    v += eta * ce * cg * cg * ch * sE * sh * H / (d.G * L6 * D5);
    v += ce * ce * cg * ch * sg * sh * H / (d.G * L6 * D5);
    v += -eta * ce * ch * sE * sg * sg * sh * H / (d.G * L6 * D5);
    v += -e2 * cg * ch * sE * sE * sg * sh * H / (d.G * L6 * D5);
    v += -kSqrt3 * eta * ce * sE * sg * sg * sh * sh * H / (2.0 * d.G * L6 * D5);
    v += -kSqrt3 * e2 * cg * sE * sE * sg * sh * sh * H / (2.0 * d.G * L6 * D5);
    v += -kSqrt3 * eta * ce * cg * cg * ch * ch * sE * H / (2.0 * d.G * L6 * D5);
    v += -kSqrt3 * ce * ce * cg * ch * ch * sg * H / (2.0 * d.G * L6 * D5);
    // H^0 block
    v += e2 * cg * cg * sE * sE / (2.0 * L6 * D5);
    v += e2 * cg * cg * ch * ch * sE * sE / (8.0 * L6 * D5);
    v += ce * ce * ch * ch * sg * sg / (8.0 * L6 * D5);
    v += ce * ce * sg * sg / (2.0 * L6 * D5);
    v += sh * sh / (8.0 * L6 * D3);
    v += eta * ce * cg * ch * ch * sE * sg / (2.0 * L6 * D5);
    v += 2.0 * eta * ce * cg * sE * sg / (L6 * D5);
    v += e2 * kSqrt3 * cg * cg * ch * sE * sE * sh / (4.0 * L6 * D5);
    v += kSqrt3 * ce * ce * ch * sg * sg * sh / (4.0 * L6 * D5);
    v += eta * kSqrt3 * ce * cg * ch * sE * sg * sh / (L6 * D5);
    v += -kSqrt3 * ch * sh / (4.0 * L6 * D3);
    v += 1.0 / (6.0 * L6 * D3);
    v += -ch * ch / (8.0 * L6 * D3);
    v += -ce * ce * cg * cg / (2.0 * L6 * D5);
    v += -e2 * sE * sE * sg * sg / (2.0 * L6 * D5);
    v += -eta * ce * cg * sE * sg * sh * sh / (2.0 * L6 * D5);
    v += -kSqrt3 * e2 * ch * sE * sE * sg * sg * sh / (4.0 * L6 * D5);
    v += -kSqrt3 * ce * ce * cg * cg * ch * sh / (4.0 * L6 * D5);
    v += -ce * ce * cg * cg * ch * ch / (8.0 * L6 * D5);
    v += -e2 * ch * ch * sE * sE * sg * sg / (8.0 * L6 * D5);
    v += -e2 * cg * cg * sE * sE * sh * sh / (8.0 * L6 * D5);
    v += -ce * ce * sg * sg * sh * sh / (8.0 * L6 * D5);
    // restored terms (H^0-block mirrors of the present H^2-block monomials)
    v += ce * ce * cg * cg * sh * sh / (8.0 * L6 * D5);
    v += e2 * sE * sE * sg * sg * sh * sh / (8.0 * L6 * D5);
    return v;
}

double w1(const DelaunayElements& d) {
    if (!(d.L > 0.0) || !(d.G > 0.0) || d.G > d.L)
        throw domain_error("w1: require 0 < G <= L");
    const Trig t = trig_of(d);
    if (t.e < 1e-6)
        throw chart_singular_error("w1: e below 1e-6 (explicit 1/e factor)");
    const double pref = 1.0 / (6.0 * t.e * d.G * d.L * (t.e * t.cE - 1.0));
    const double term =
        d.G * (kSqrt3 * t.sh + 3.0 * t.ch) * (t.e * t.sE * t.cg + t.eta * t.sg) -
        d.H * (kSqrt3 * t.ch - 3.0 * t.sh) * (t.eta * t.cg - t.e * t.sE * t.sg);
    return pref * term;
}

namespace {

double bracket_once(const DelaunayFunction& F, const DelaunayFunction& G,
                    const DelaunayElements& d, double h) {
    // variable order: ell g h L G H; conjugate pairs (0,3), (1,4), (2,5)
    auto shift = [&d](int idx, double delta) {
        DelaunayElements e = d;
        switch (idx) {
            case 0: e.ell += delta; break;
            case 1: e.g += delta; break;
            case 2: e.h += delta; break;
            case 3: e.L += delta; break;
            case 4: e.G += delta; break;
            case 5: e.H += delta; break;
        }
        return e;
    };
    auto deriv = [&](const DelaunayFunction& f, int idx) {
        return (f(shift(idx, h)) - f(shift(idx, -h))) / (2.0 * h);
    };
    double acc = 0.0;
    for (int k = 0; k < 3; ++k) {
        acc += deriv(F, k) * deriv(G, k + 3) - deriv(F, k + 3) * deriv(G, k);
    }
    return acc;
}

} // namespace

double poisson_bracket(const DelaunayFunction& F, const DelaunayFunction& G,
                       const DelaunayElements& d, double step) {
    const double b1 = bracket_once(F, G, d, step);
    const double b2 = bracket_once(F, G, d, step / 2.0);
    return (4.0 * b2 - b1) / 3.0;
}

double average_over_ell(const DelaunayFunction& F, const DelaunayElements& d, int n) {
    if (n < 32 || (n & (n - 1)) != 0)
        throw domain_error("average_over_ell: n must be a power of two >= 32");
    double acc = 0.0;
    DelaunayElements e = d;
    for (int k = 0; k < n; ++k) {
        e.ell = 2.0 * M_PI * double(k) / double(n);
        acc += F(e);
    }
    return acc / double(n);
}

double normalized_hamiltonian(const DelaunayElements& d, double eps) {
    if (d.G == 0.0) throw domain_error("normalized_hamiltonian: G = 0");
    return -1.0 / (2.0 * d.L * d.L) + 0.5 * eps * eps * h02_coefficient(d);
}

double h02_coefficient(const DelaunayElements& d) {
    if (d.G == 0.0) throw domain_error("h02_coefficient: G = 0");
    const double G2 = d.G * d.G, H2 = d.H * d.H;
    const double ang = kSqrt3 * std::sin(2.0 * d.h) + std::cos(2.0 * d.h);
    return -(8.0 * H2 + (G2 - H2) * ang) / (24.0 * std::pow(d.G, 5) * std::pow(d.L, 3));
}

double h02_axisymmetric(const DelaunayElements& d) {
    if (d.G == 0.0) throw domain_error("h02_axisymmetric: G = 0");
    const double G3 = std::pow(d.G, 3), L3 = std::pow(d.L, 3);
    return 1.0 / (12.0 * G3 * L3) - d.H * d.H / (4.0 * G3 * d.G * d.G * L3);
}

SecondOrderCheck verify_second_order(const DelaunayElements& d, int n) {
    if (d.eccentricity() < 1e-4)
        throw chart_singular_error("verify_second_order: e below 1e-4 guard");
    if (n == 0) {
        // the (1 - e cos E)^-5 peaks sharpen as e -> 1; scale the grid with e
        const double e = d.eccentricity();
        n = e < 0.4 ? 128 : (e < 0.6 ? 256 : (e < 0.75 ? 512 : (e < 0.85 ? 1024 : 2048)));
    }
    const DelaunayFunction h1 = [](const DelaunayElements& x) { return h1_delaunay(x); };
    const DelaunayFunction w = [](const DelaunayElements& x) { return w1(x); };
    const DelaunayFunction integrand = [&](const DelaunayElements& x) {
        return h2_delaunay(x) + poisson_bracket(h1, w, x);
    };
    SecondOrderCheck out;
    out.quadrature_n = n;
    out.average = average_over_ell(integrand, d, n);
    out.coefficient = h02_coefficient(d);
    out.axisymmetric = h02_axisymmetric(d);
    out.residual = std::abs(out.average - out.coefficient);
    out.residual_axisym = std::abs(out.average - out.axisymmetric);
    return out;
}

} // namespace tricenter
