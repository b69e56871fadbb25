#include "tricenter/dop853.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "tricenter/errors.hpp"

namespace tricenter {

namespace {

// Coefficients of the Dormand-Prince 8(5,3) pair and its dense output,
// from Hairer, Norsett & Wanner, "Solving ODEs I", dop853.f.
constexpr double c2 = 0.526001519587677318785587544488e-01;
constexpr double c3 = 0.789002279381515978178381316732e-01;
constexpr double c4 = 0.118350341907227396726757197510e+00;
constexpr double c5 = 0.281649658092772603273242802490e+00;
constexpr double c6 = 0.333333333333333333333333333333e+00;
constexpr double c7 = 0.25e+00;
constexpr double c8 = 0.307692307692307692307692307692e+00;
constexpr double c9 = 0.651282051282051282051282051282e+00;
constexpr double c10 = 0.6e+00;
constexpr double c11 = 0.857142857142857142857142857142e+00;
constexpr double c14 = 0.1e+00;
constexpr double c15 = 0.2e+00;
constexpr double c16 = 0.777777777777777777777777777778e+00;

constexpr double a21 = 5.26001519587677318785587544488e-2;
constexpr double a31 = 1.97250569845378994544595329183e-2;
constexpr double a32 = 5.91751709536136983633785987549e-2;
constexpr double a41 = 2.95875854768068491816892993775e-2;
constexpr double a43 = 8.87627564304205475450678981324e-2;
constexpr double a51 = 2.41365134159266685502369798665e-1;
constexpr double a53 = -8.84549479328286085344864962717e-1;
constexpr double a54 = 9.24834003261792003115737966543e-1;
constexpr double a61 = 3.7037037037037037037037037037e-2;
constexpr double a64 = 1.70828608729473871279604482173e-1;
constexpr double a65 = 1.25467687566822425016691814123e-1;
constexpr double a71 = 3.7109375e-2;
constexpr double a74 = 1.70252211019544039314978060272e-1;
constexpr double a75 = 6.02165389804559606850219397283e-2;
constexpr double a76 = -1.7578125e-2;
constexpr double a81 = 3.70920001185047927108779319836e-2;
constexpr double a84 = 1.70383925712239993810214054705e-1;
constexpr double a85 = 1.07262030446373284651809199168e-1;
constexpr double a86 = -1.53194377486244017527936158236e-2;
constexpr double a87 = 8.27378916381402288758473766002e-3;
constexpr double a91 = 6.24110958716075717114429577812e-1;
constexpr double a94 = -3.36089262944694129406857109825e0;
constexpr double a95 = -8.68219346841726006818189891453e-1;
constexpr double a96 = 2.75920996994467083049415600797e1;
constexpr double a97 = 2.01540675504778934086186788979e1;
constexpr double a98 = -4.34898841810699588477366255144e1;
constexpr double a101 = 4.77662536438264365890433908527e-1;
constexpr double a104 = -2.48811461997166764192642586468e0;
constexpr double a105 = -5.90290826836842996371446475743e-1;
constexpr double a106 = 2.12300514481811942347288949897e1;
constexpr double a107 = 1.52792336328824235832596922938e1;
constexpr double a108 = -3.32882109689848629194453265587e1;
constexpr double a109 = -2.03312017085086261358222928593e-2;
constexpr double a111 = -9.3714243008598732571704021658e-1;
constexpr double a114 = 5.18637242884406370830023853209e0;
constexpr double a115 = 1.09143734899672957818500254654e0;
constexpr double a116 = -8.14978701074692612513997267357e0;
constexpr double a117 = -1.85200656599969598641566180701e1;
constexpr double a118 = 2.27394870993505042818970056734e1;
constexpr double a119 = 2.49360555267965238987089396762e0;
constexpr double a1110 = -3.0467644718982195003823669022e0;
constexpr double a121 = 2.27331014751653820792359768449e0;
constexpr double a124 = -1.05344954667372501984066689879e1;
constexpr double a125 = -2.00087205822486249909675718444e0;
constexpr double a126 = -1.79589318631187989172765950534e1;
constexpr double a127 = 2.79488845294199600508499808837e1;
constexpr double a128 = -2.85899827713502369474065508674e0;
constexpr double a129 = -8.87285693353062954433549289258e0;
constexpr double a1210 = 1.23605671757943030647266201528e1;
constexpr double a1211 = 6.43392746015763530355970484046e-1;

constexpr double b1 = 5.42937341165687622380535766363e-2;
constexpr double b6 = 4.45031289275240888144113950566e0;
constexpr double b7 = 1.89151789931450038304281599044e0;
constexpr double b8 = -5.8012039600105847814672114227e0;
constexpr double b9 = 3.1116436695781989440891606237e-1;
constexpr double b10 = -1.52160949662516078556178806805e-1;
constexpr double b11 = 2.01365400804030348374776537501e-1;
constexpr double b12 = 4.47106157277725905176885569043e-2;

constexpr double bhh1 = 0.244094488188976377952755905512e+00;
constexpr double bhh2 = 0.733846688281611857341361741547e+00;
constexpr double bhh3 = 0.220588235294117647058823529412e-01;

constexpr double er1 = 0.1312004499419488073250102996e-01;
constexpr double er6 = -0.1225156446376204440720569753e+01;
constexpr double er7 = -0.4957589496572501915214079952e+00;
constexpr double er8 = 0.1664377182454986536961530415e+01;
constexpr double er9 = -0.3503288487499736816886487290e+00;
constexpr double er10 = 0.3341791187130174790297318841e+00;
constexpr double er11 = 0.8192320648511571246570742613e-01;
constexpr double er12 = -0.2235530786388629525884427845e-01;

constexpr double a141 = 5.61675022830479523392909219681e-2;
constexpr double a147 = 2.53500210216624811088794765333e-1;
constexpr double a148 = -2.46239037470802489917441475441e-1;
constexpr double a149 = -1.24191423263816360469010140626e-1;
constexpr double a1410 = 1.5329179827876569731206322685e-1;
constexpr double a1411 = 8.20105229563468988491666602057e-3;
constexpr double a1412 = 7.56789766054569976138603589584e-3;
constexpr double a1413 = -8.298e-3;
constexpr double a151 = 3.18346481635021405060768473261e-2;
constexpr double a156 = 2.83009096723667755288322961402e-2;
constexpr double a157 = 5.35419883074385676223797384372e-2;
constexpr double a158 = -5.49237485713909884646569340306e-2;
constexpr double a1511 = -1.08347328697249322858509316994e-4;
constexpr double a1512 = 3.82571090835658412954920192323e-4;
constexpr double a1513 = -3.40465008687404560802977114492e-4;
constexpr double a1514 = 1.41312443674632500278074618366e-1;
constexpr double a161 = -4.28896301583791923408573538692e-1;
constexpr double a166 = -4.69762141536116384314449447206e0;
constexpr double a167 = 7.68342119606259904184240953878e0;
constexpr double a168 = 4.06898981839711007970213554331e0;
constexpr double a169 = 3.56727187455281109270669543021e-1;
constexpr double a1613 = -1.39902416515901462129418009734e-3;
constexpr double a1614 = 2.9475147891527723389556272149e0;
constexpr double a1615 = -9.15095847217987001081870187138e0;

constexpr double d41 = -0.84289382761090128651353491142e+01;
constexpr double d46 = 0.56671495351937776962531783590e+00;
constexpr double d47 = -0.30689499459498916912797304727e+01;
constexpr double d48 = 0.23846676565120698287728149680e+01;
constexpr double d49 = 0.21170345824450282767155149946e+01;
constexpr double d410 = -0.87139158377797299206789907490e+00;
constexpr double d411 = 0.22404374302607882758541771650e+01;
constexpr double d412 = 0.63157877876946881815570249290e+00;
constexpr double d413 = -0.88990336451333310820698117400e-01;
constexpr double d414 = 0.18148505520854727256656404962e+02;
constexpr double d415 = -0.91946323924783554000451984436e+01;
constexpr double d416 = -0.44360363875948939664310572000e+01;
constexpr double d51 = 0.10427508642579134603413151009e+02;
constexpr double d56 = 0.24228349177525818288430175319e+03;
constexpr double d57 = 0.16520045171727028198505394887e+03;
constexpr double d58 = -0.37454675472269020279518312152e+03;
constexpr double d59 = -0.22113666853125306036270938578e+02;
constexpr double d510 = 0.77334326684722638389603898808e+01;
constexpr double d511 = -0.30674084731089398182061213626e+02;
constexpr double d512 = -0.93321305264302278729567221706e+01;
constexpr double d513 = 0.15697238121770843886131091075e+02;
constexpr double d514 = -0.31139403219565177677282850411e+02;
constexpr double d515 = -0.93529243588444783865713862664e+01;
constexpr double d516 = 0.35816841486394083752465898540e+02;
constexpr double d61 = 0.19985053242002433820987653617e+02;
constexpr double d66 = -0.38703730874935176555105901742e+03;
constexpr double d67 = -0.18917813819516756882830838328e+03;
constexpr double d68 = 0.52780815920542364900561016686e+03;
constexpr double d69 = -0.11573902539959630126141871134e+02;
constexpr double d610 = 0.68812326946963000169666922661e+01;
constexpr double d611 = -0.10006050966910838403183860980e+01;
constexpr double d612 = 0.77771377980534432092869265740e+00;
constexpr double d613 = -0.27782057523535084065932004339e+01;
constexpr double d614 = -0.60196695231264120758267380846e+02;
constexpr double d615 = 0.84320405506677161018159903784e+02;
constexpr double d616 = 0.11992291136182789328035130030e+02;
constexpr double d71 = -0.25693933462703749003312586129e+02;
constexpr double d76 = -0.15418974869023643374053993627e+03;
constexpr double d77 = -0.23152937917604549567536039109e+03;
constexpr double d78 = 0.35763911791061412378285349910e+03;
constexpr double d79 = 0.93405324183624310003907691704e+02;
constexpr double d710 = -0.37458323136451633156875139351e+02;
constexpr double d711 = 0.10409964950896230045147246184e+03;
constexpr double d712 = 0.29840293426660503123344363579e+02;
constexpr double d713 = -0.43533456590011143754432175058e+02;
constexpr double d714 = 0.96324553959188282948394950600e+02;
constexpr double d715 = -0.39177261675615439165231486172e+02;
constexpr double d716 = -0.14972683625798562581422125276e+03;

constexpr double uround = std::numeric_limits<double>::epsilon();

} // namespace

Dop853::Dop853(int dim, Rhs rhs, Options opt)
    : n_(dim), rhs_(std::move(rhs)), opt_(opt) {
    y_.resize(n_);
    f0_.resize(n_);
    y1_.resize(n_);
    f1_.resize(n_);
    yt_.resize(n_);
    bsum_.resize(n_);
    for (auto& k : k_) k.resize(n_);
    for (auto& r : rc_) r.resize(n_);
}

// Stages k2..k12 plus the 8th-order solution y1 and its increment bsum.
// Stage index mapping: k_[i] holds stage i+2 for i = 0..10 (k2..k12).
void Dop853::take_stages(double t, double h) {
    auto& k2 = k_[0];
    auto& k3 = k_[1];
    auto& k4 = k_[2];
    auto& k5 = k_[3];
    auto& k6 = k_[4];
    auto& k7 = k_[5];
    auto& k8 = k_[6];
    auto& k9 = k_[7];
    auto& k10 = k_[8];
    auto& k11 = k_[9];
    auto& k12 = k_[10];

    for (int i = 0; i < n_; ++i) yt_[i] = y_[i] + h * a21 * f0_[i];
    rhs_(t + c2 * h, yt_.data(), k2.data());
    for (int i = 0; i < n_; ++i) yt_[i] = y_[i] + h * (a31 * f0_[i] + a32 * k2[i]);
    rhs_(t + c3 * h, yt_.data(), k3.data());
    for (int i = 0; i < n_; ++i) yt_[i] = y_[i] + h * (a41 * f0_[i] + a43 * k3[i]);
    rhs_(t + c4 * h, yt_.data(), k4.data());
    for (int i = 0; i < n_; ++i) yt_[i] = y_[i] + h * (a51 * f0_[i] + a53 * k3[i] + a54 * k4[i]);
    rhs_(t + c5 * h, yt_.data(), k5.data());
    for (int i = 0; i < n_; ++i) yt_[i] = y_[i] + h * (a61 * f0_[i] + a64 * k4[i] + a65 * k5[i]);
    rhs_(t + c6 * h, yt_.data(), k6.data());
    for (int i = 0; i < n_; ++i)
        yt_[i] = y_[i] + h * (a71 * f0_[i] + a74 * k4[i] + a75 * k5[i] + a76 * k6[i]);
    rhs_(t + c7 * h, yt_.data(), k7.data());
    for (int i = 0; i < n_; ++i)
        yt_[i] = y_[i] + h * (a81 * f0_[i] + a84 * k4[i] + a85 * k5[i] + a86 * k6[i] + a87 * k7[i]);
    rhs_(t + c8 * h, yt_.data(), k8.data());
    for (int i = 0; i < n_; ++i)
        yt_[i] = y_[i] + h * (a91 * f0_[i] + a94 * k4[i] + a95 * k5[i] + a96 * k6[i] +
                              a97 * k7[i] + a98 * k8[i]);
    rhs_(t + c9 * h, yt_.data(), k9.data());
    for (int i = 0; i < n_; ++i)
        yt_[i] = y_[i] + h * (a101 * f0_[i] + a104 * k4[i] + a105 * k5[i] + a106 * k6[i] +
                              a107 * k7[i] + a108 * k8[i] + a109 * k9[i]);
    rhs_(t + c10 * h, yt_.data(), k10.data());
    for (int i = 0; i < n_; ++i)
        yt_[i] = y_[i] + h * (a111 * f0_[i] + a114 * k4[i] + a115 * k5[i] + a116 * k6[i] +
                              a117 * k7[i] + a118 * k8[i] + a119 * k9[i] + a1110 * k10[i]);
    rhs_(t + c11 * h, yt_.data(), k11.data());
    for (int i = 0; i < n_; ++i)
        yt_[i] = y_[i] + h * (a121 * f0_[i] + a124 * k4[i] + a125 * k5[i] + a126 * k6[i] +
                              a127 * k7[i] + a128 * k8[i] + a129 * k9[i] + a1210 * k10[i] +
                              a1211 * k11[i]);
    rhs_(t + h, yt_.data(), k12.data());

    for (int i = 0; i < n_; ++i) {
        bsum_[i] = b1 * f0_[i] + b6 * k6[i] + b7 * k7[i] + b8 * k8[i] + b9 * k9[i] +
                   b10 * k10[i] + b11 * k11[i] + b12 * k12[i];
        y1_[i] = y_[i] + h * bsum_[i];
    }
}

double Dop853::error_norm(double h) const {
    const auto& k6 = k_[4];
    const auto& k7 = k_[5];
    const auto& k8 = k_[6];
    const auto& k9 = k_[7];
    const auto& k10 = k_[8];
    const auto& k11 = k_[9];
    const auto& k12 = k_[10];
    double err3 = 0.0, err5 = 0.0;
    for (int i = 0; i < n_; ++i) {
        const double sc = opt_.abs_tol + opt_.rel_tol * std::max(std::abs(y_[i]), std::abs(y1_[i]));
        const double e3 = bsum_[i] - bhh1 * f0_[i] - bhh2 * k9[i] - bhh3 * k12[i];
        const double e5 = er1 * f0_[i] + er6 * k6[i] + er7 * k7[i] + er8 * k8[i] +
                          er9 * k9[i] + er10 * k10[i] + er11 * k11[i] + er12 * k12[i];
        err3 += (e3 / sc) * (e3 / sc);
        err5 += (e5 / sc) * (e5 / sc);
    }
    double deno = err5 + 0.01 * err3;
    if (deno <= 0.0) deno = 1.0;
    return std::abs(h) * err5 * std::sqrt(1.0 / (n_ * deno));
}

void Dop853::prepare_dense(double t, double h) {
    const auto& k6 = k_[4];
    const auto& k7 = k_[5];
    const auto& k8 = k_[6];
    const auto& k9 = k_[7];
    const auto& k10 = k_[8];
    const auto& k11 = k_[9];
    const auto& k12 = k_[10];
    auto& k14 = k_[11];
    auto& k15 = k_[12];
    auto& k16 = k_[13];

    // f1 = f(t+h, y1) is stage 13 and becomes the next step's first stage.
    for (int i = 0; i < n_; ++i)
        yt_[i] = y_[i] + h * (a141 * f0_[i] + a147 * k7[i] + a148 * k8[i] + a149 * k9[i] +
                              a1410 * k10[i] + a1411 * k11[i] + a1412 * k12[i] + a1413 * f1_[i]);
    rhs_(t + c14 * h, yt_.data(), k14.data());
    for (int i = 0; i < n_; ++i)
        yt_[i] = y_[i] + h * (a151 * f0_[i] + a156 * k6[i] + a157 * k7[i] + a158 * k8[i] +
                              a1511 * k11[i] + a1512 * k12[i] + a1513 * f1_[i] + a1514 * k14[i]);
    rhs_(t + c15 * h, yt_.data(), k15.data());
    for (int i = 0; i < n_; ++i)
        yt_[i] = y_[i] + h * (a161 * f0_[i] + a166 * k6[i] + a167 * k7[i] + a168 * k8[i] +
                              a169 * k9[i] + a1613 * f1_[i] + a1614 * k14[i] + a1615 * k15[i]);
    rhs_(t + c16 * h, yt_.data(), k16.data());

    for (int i = 0; i < n_; ++i) {
        rc_[0][i] = y_[i];
        const double ydiff = y1_[i] - y_[i];
        rc_[1][i] = ydiff;
        const double bspl = h * f0_[i] - ydiff;
        rc_[2][i] = bspl;
        rc_[3][i] = ydiff - h * f1_[i] - bspl;
        rc_[4][i] = h * (d41 * f0_[i] + d46 * k6[i] + d47 * k7[i] + d48 * k8[i] + d49 * k9[i] +
                         d410 * k10[i] + d411 * k11[i] + d412 * k12[i] + d413 * f1_[i] +
                         d414 * k14[i] + d415 * k15[i] + d416 * k16[i]);
        rc_[5][i] = h * (d51 * f0_[i] + d56 * k6[i] + d57 * k7[i] + d58 * k8[i] + d59 * k9[i] +
                         d510 * k10[i] + d511 * k11[i] + d512 * k12[i] + d513 * f1_[i] +
                         d514 * k14[i] + d515 * k15[i] + d516 * k16[i]);
        rc_[6][i] = h * (d61 * f0_[i] + d66 * k6[i] + d67 * k7[i] + d68 * k8[i] + d69 * k9[i] +
                         d610 * k10[i] + d611 * k11[i] + d612 * k12[i] + d613 * f1_[i] +
                         d614 * k14[i] + d615 * k15[i] + d616 * k16[i]);
        rc_[7][i] = h * (d71 * f0_[i] + d76 * k6[i] + d77 * k7[i] + d78 * k8[i] + d79 * k9[i] +
                         d710 * k10[i] + d711 * k11[i] + d712 * k12[i] + d713 * f1_[i] +
                         d714 * k14[i] + d715 * k15[i] + d716 * k16[i]);
    }
}

void Dop853::dense_eval(double t0, double h, double t, double* out) const {
    const double s = (t - t0) / h;
    const double s1 = 1.0 - s;
    for (int i = 0; i < n_; ++i) {
        const double conpar = rc_[4][i] + s * (rc_[5][i] + s1 * (rc_[6][i] + s * rc_[7][i]));
        out[i] = rc_[0][i] +
                 s * (rc_[1][i] + s1 * (rc_[2][i] + s * (rc_[3][i] + s1 * conpar)));
    }
}

double Dop853::initial_step_guess(double t0, double t_end) const {
    double dnf = 0.0, dny = 0.0;
    for (int i = 0; i < n_; ++i) {
        const double sc = opt_.abs_tol + opt_.rel_tol * std::abs(y_[i]);
        dnf += (f0_[i] / sc) * (f0_[i] / sc);
        dny += (y_[i] / sc) * (y_[i] / sc);
    }
    double h;
    if (dnf <= 1e-10 || dny <= 1e-10)
        h = 1e-6;
    else
        h = 0.01 * std::sqrt(dny / dnf);
    h = std::min(h, std::abs(t_end - t0));

    // one explicit Euler step to estimate the second derivative
    std::vector<double> y2(n_), f2(n_);
    for (int i = 0; i < n_; ++i) y2[i] = y_[i] + h * f0_[i];
    rhs_(t0 + h, y2.data(), f2.data());
    double der2 = 0.0;
    for (int i = 0; i < n_; ++i) {
        const double sc = opt_.abs_tol + opt_.rel_tol * std::abs(y_[i]);
        der2 += ((f2[i] - f0_[i]) / sc) * ((f2[i] - f0_[i]) / sc);
    }
    der2 = std::sqrt(der2) / h;
    const double der12 = std::max(der2, std::sqrt(dnf));
    double h1;
    if (der12 <= 1e-15)
        h1 = std::max(1e-6, h * 1e-3);
    else
        h1 = std::pow(0.01 / der12, 1.0 / 8.0);
    return std::min({100.0 * h, h1, std::abs(t_end - t0)});
}

void Dop853::integrate(double t0, std::span<const double> y0, double t_end,
                       std::span<const double> sample_times, const Sink& sink) {
    if (!(t_end > t0)) throw domain_error("dop853: t_end must exceed t0");
    std::copy(y0.begin(), y0.end(), y_.begin());
    rhs_(t0, y_.data(), f0_.data());

    const double tiny = 10.0 * uround * std::max(std::abs(t0), std::abs(t_end));
    std::size_t si = 0;
    while (si < sample_times.size() && sample_times[si] <= t0 + tiny) {
        sink(sample_times[si], std::span<const double>(y_.data(), n_));
        ++si;
    }

    double h = opt_.initial_step > 0 ? opt_.initial_step : initial_step_guess(t0, t_end);
    double t = t0;
    double errold = 1e-4;
    bool last_rejected = false;
    constexpr double safe = 0.9, min_scale = 1.0 / 3.0, max_scale = 6.0;

    long step = 0;
    while (t < t_end - tiny) {
        if (++step > opt_.max_steps)
            throw numerical_error("dop853: maximum number of steps exceeded");
        if (0.1 * std::abs(h) <= std::abs(t) * uround)
            throw numerical_error("dop853: step size underflow at t=" + std::to_string(t));
        h = std::min(h, t_end - t);

        take_stages(t, h);
        const double err = error_norm(h);
        const double fac11 = std::pow(std::max(err, 1e-32), 0.125);

        if (err > 1.0) {
            h /= std::min(1.0 / min_scale, fac11 / safe);
            last_rejected = true;
            ++n_rejected_;
            continue;
        }

        // accepted
        ++n_steps_;
        rhs_(t + h, y1_.data(), f1_.data());
        if (si < sample_times.size() && sample_times[si] <= t + h + tiny) {
            prepare_dense(t, h);
            while (si < sample_times.size() && sample_times[si] <= t + h + tiny) {
                dense_eval(t, h, std::min(sample_times[si], t + h), yt_.data());
                sink(sample_times[si], std::span<const double>(yt_.data(), n_));
                ++si;
            }
        }
        t += h;
        y_.swap(y1_);
        f0_.swap(f1_);

        double scale = safe * std::pow(errold, 0.0) / fac11; // beta = 0
        scale = std::clamp(scale, min_scale, max_scale);
        if (last_rejected) scale = std::min(scale, 1.0);
        h *= scale;
        errold = std::max(err, 1e-4);
        last_rejected = false;
    }

    // samples at (or numerically past) t_end
    while (si < sample_times.size()) {
        sink(sample_times[si], std::span<const double>(y_.data(), n_));
        ++si;
    }
}

} // namespace tricenter
