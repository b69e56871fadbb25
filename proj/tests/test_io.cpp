#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "tricenter/dop853.hpp"
#include "tricenter/errors.hpp"
#include "tricenter/io.hpp"

using namespace tricenter;
namespace fs = std::filesystem;

namespace {
struct TempDir {
    fs::path path;
    TempDir() : path(fs::temp_directory_path() / "tricenter_io_test") {
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};
} // namespace

TEST_CASE("fmt17 round-trips doubles exactly") {
    for (const double v : {1.0 / 3.0, -2.718281828459045e-7, 6.283185307179586, 0.0, 1e17}) {
        CHECK(std::stod(fmt17(v)) == v);
    }
}

TEST_CASE("elements JSON round trip") {
    DelaunayElements d;
    d.ell = 0.123456789012345;
    d.g = 2.7;
    d.h = 5.1;
    d.L = 1.25;
    d.G = 0.875;
    d.H = -0.33;
    const DelaunayElements back = elements_from_json(elements_to_json(d));
    CHECK(back.ell == d.ell);
    CHECK(back.g == d.g);
    CHECK(back.h == d.h);
    CHECK(back.L == d.L);
    CHECK(back.G == d.G);
    CHECK(back.H == d.H);
}

TEST_CASE("trajectory and reduced CSV schemas") {
    TempDir tmp;
    Trajectory traj;
    traj.times = {0.0, 0.5};
    CartesianState s;
    s.q = {1.0, 2.0, 3.0};
    s.p = {-1.0, 0.5, 0.25};
    traj.states = {s, s};
    traj.energies = {-0.5, -0.5};
    write_trajectory_csv(tmp.path / "traj.csv", traj);
    std::vector<std::string> header;
    const auto cols = read_csv_columns(tmp.path / "traj.csv", &header);
    REQUIRE(header.size() == 8);
    CHECK(header[0] == "t");
    CHECK(header[7] == "energy");
    CHECK(cols[1][0] == 1.0);
    CHECK(cols[7][1] == -0.5);

    std::vector<double> ts{0.0, 1.0};
    std::vector<Eigen::Matrix<double, 6, 1>> xy(2);
    xy[0] << 1, 2, 3, 4, 5, 6;
    xy[1] << 6, 5, 4, 3, 2, 1;
    write_first_reduced_csv(tmp.path / "first.csv", ts, xy);
    const auto c1 = read_csv_columns(tmp.path / "first.csv", &header);
    CHECK(header == std::vector<std::string>{"t", "x1", "x2", "x3", "y1", "y2", "y3"});
    CHECK(c1[6][0] == 6.0);

    std::vector<Eigen::Vector3d> beta{{0.1, 0.2, 0.3}, {0.3, 0.2, 0.1}};
    write_second_reduced_csv(tmp.path / "second.csv", ts, beta);
    const auto c2 = read_csv_columns(tmp.path / "second.csv", &header);
    CHECK(header == std::vector<std::string>{"t", "b1", "b2", "b3"});
    CHECK(c2[3][1] == 0.1);

    CHECK_THROWS_AS(read_csv_columns(tmp.path / "missing.csv"), domain_error);
    std::ofstream(tmp.path / "empty.csv") << "";
    CHECK_THROWS_AS(read_csv_columns(tmp.path / "empty.csv"), domain_error);
}

TEST_CASE("svg writer emits a polyline and rejects empty data") {
    TempDir tmp;
    std::vector<double> x{0.0, 1.0, 2.0}, y{0.0, 1.0, 0.0};
    write_line_svg(tmp.path / "plot.svg", x, y, "t", "f");
    std::ifstream in(tmp.path / "plot.svg");
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    CHECK(text.find("<svg") != std::string::npos);
    CHECK(text.find("polyline") != std::string::npos);
    CHECK_THROWS_AS(write_line_svg(tmp.path / "bad.svg", {}, {}, "a", "b"), domain_error);
}

TEST_CASE("dense output interpolates between accepted steps") {
    // y' = cos t, y(0) = 0: dense samples must match sin t everywhere,
    // including points far inside large accepted steps
    Dop853::Options opt;
    opt.rel_tol = 1e-12;
    opt.abs_tol = 1e-12;
    Dop853 solver(1, [](double t, const double*, double* f) { f[0] = std::cos(t); }, opt);
    const double y0[1] = {0.0};
    std::vector<double> ts;
    for (int i = 0; i <= 200; ++i) ts.push_back(10.0 * i / 200.0);
    double worst = 0.0;
    solver.integrate(0.0, y0, 10.0, ts, [&](double t, std::span<const double> y) {
        worst = std::max(worst, std::abs(y[0] - std::sin(t)));
    });
    CHECK(worst < 1e-10);
    CHECK(solver.steps_taken() < 100); // far fewer steps than samples: the interpolant covers them
}
