#include <filesystem>
#include <fstream>
#include <sstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "tricenter/delaunay.hpp"
#include "tricenter/dynamics.hpp"
#include "tricenter/equilibria.hpp"
#include "tricenter/errors.hpp"
#include "tricenter/io.hpp"
#include "tricenter/kam.hpp"
#include "tricenter/normal_form.hpp"
#include "tricenter/verification.hpp"

namespace fs = std::filesystem;
using namespace tricenter;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitCollision = 3;
constexpr int kExitNumerical = 4;

Eigen::Vector3d parse_vec3(const std::vector<double>& v, const std::string& name) {
    if (v.size() != 3) throw domain_error(name + " needs exactly three components");
    return {v[0], v[1], v[2]};
}

DelaunayElements parse_delaunay(const std::vector<double>& v) {
    if (v.size() != 6) throw domain_error("--delaunay needs ell,g,h,L,G,H");
    DelaunayElements d;
    d.ell = v[0];
    d.g = v[1];
    d.h = v[2];
    d.L = v[3];
    d.G = v[4];
    d.H = v[5];
    return d;
}

nlohmann::ordered_json state_json(const CartesianState& s) {
    nlohmann::ordered_json j;
    j["q"] = {s.q.x(), s.q.y(), s.q.z()};
    j["p"] = {s.p.x(), s.p.y(), s.p.z()};
    return j;
}

nlohmann::ordered_json report_json(const StabilityReport& r) {
    nlohmann::ordered_json j;
    for (int i = 0; i < 4; ++i) {
        j["hessian"].push_back({r.hessian(i, 0), r.hessian(i, 1), r.hessian(i, 2),
                                r.hessian(i, 3)});
        j["linearization"].push_back({r.linearization(i, 0), r.linearization(i, 1),
                                      r.linearization(i, 2), r.linearization(i, 3)});
    }
    j["hessian_det"] = r.hessian_det;
    j["char_poly"] = r.char_poly;
    for (const auto& ev : r.eigenvalues)
        j["eigenvalues"].push_back({ev.real(), ev.imag()});
    switch (r.verdict) {
        case Verdict::parametrically_stable: j["verdict"] = "parametrically-stable"; break;
        case Verdict::unstable: j["verdict"] = "unstable"; break;
        case Verdict::weakly_stable: j["verdict"] = "weakly-stable"; break;
    }
    j["subspace_definiteness"] = r.subspace_definiteness;
    j["period"] = r.period;
    return j;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"numerical laboratory for the spatial three-fixed-center problem"};
    app.require_subcommand(1);

    std::string out_dir = ".";
    std::uint64_t seed = 20250809;
    double tol_rel = 1e-12, tol_abs = 1e-12;
    std::string format = "csv";
    app.add_option("--out-dir", out_dir, "directory for output files");
    app.add_option("--seed", seed, "seed for randomized verification checks");
    app.add_option("--tol-rel", tol_rel, "integrator relative tolerance");
    app.add_option("--tol-abs", tol_abs, "integrator absolute tolerance");
    app.add_option("--format", format, "output format (csv|json)")
        ->check(CLI::IsMember({"csv", "json"}));

    // ---- simulate ----
    auto* sim = app.add_subcommand("simulate", "integrate the full system");
    std::vector<double> sim_q, sim_p, sim_delaunay;
    double sim_eps = 0.1, sim_tend = 2.0 * M_PI;
    int sim_samples = 512;
    std::string sim_out = "trajectory.csv";
    sim->add_option("--q", sim_q, "initial position q1,q2,q3")->delimiter(',');
    sim->add_option("--p", sim_p, "initial momentum p1,p2,p3")->delimiter(',');
    sim->add_option("--delaunay", sim_delaunay, "initial elements ell,g,h,L,G,H")
        ->delimiter(',');
    sim->add_option("--eps", sim_eps, "triangle side");
    sim->add_option("--t-end", sim_tend, "integration time");
    sim->add_option("--samples", sim_samples, "number of output samples");
    sim->add_option("--out", sim_out, "trajectory CSV filename");

    // ---- elements ----
    auto* ele = app.add_subcommand("elements", "convert between charts");
    std::vector<double> ele_q, ele_p, ele_delaunay;
    std::string ele_out, ele_in;
    ele->add_option("--q", ele_q, "position q1,q2,q3")->delimiter(',');
    ele->add_option("--p", ele_p, "momentum p1,p2,p3")->delimiter(',');
    ele->add_option("--delaunay", ele_delaunay, "elements ell,g,h,L,G,H")->delimiter(',');
    ele->add_option("--in", ele_in, "read the elements from a JSON file");
    ele->add_option("--out", ele_out, "write the JSON here instead of stdout");

    // ---- reconstruct ----
    auto* rec = app.add_subcommand("reconstruct",
                                   "periodic-orbit initial condition and return curve");
    int rec_index = 1;
    double rec_L = 1.0, rec_eps = 0.1, rec_horizon = 1.2;
    rec->add_option("--index", rec_index, "equilibrium index 1..6")->required();
    rec->add_option("--L", rec_L, "Delaunay action");
    rec->add_option("--eps", rec_eps, "triangle side");
    rec->add_option("--horizon", rec_horizon, "curve length in periods");

    // ---- stability ----
    auto* sta = app.add_subcommand("stability", "stability report for an equilibrium");
    std::string sta_space = "first";
    int sta_index = 1;
    double sta_L = 1.0, sta_G = 1.0, sta_eps = 0.1;
    sta->add_option("--space", sta_space, "first|second")
        ->check(CLI::IsMember({"first", "second"}));
    sta->add_option("--index", sta_index, "equilibrium index 1..6")->required();
    sta->add_option("--L", sta_L, "Delaunay action");
    sta->add_option("--G", sta_G, "angular momentum (second space)");
    sta->add_option("--eps", sta_eps, "triangle side");

    // ---- kam ----
    auto* kam = app.add_subcommand("kam", "frequency vector, derivative matrix, rank");
    std::string kam_space = "first", kam_pair = "12";
    double kam_L = 1.0, kam_G = 1.0, kam_I1 = 0.0, kam_I2 = 0.0, kam_I = 0.0, kam_tol = 1e-10;
    kam->add_option("--space", kam_space, "first|second")
        ->check(CLI::IsMember({"first", "second"}));
    kam->add_option("--pair", kam_pair, "equilibrium pair 12|34")
        ->check(CLI::IsMember({"12", "34"}));
    kam->add_option("--L", kam_L, "Delaunay action")->required();
    kam->add_option("--G", kam_G, "angular momentum (second space)");
    kam->add_option("--I1", kam_I1, "first oscillator action");
    kam->add_option("--I2", kam_I2, "second oscillator action");
    kam->add_option("--I", kam_I, "oscillator action (second space)");
    kam->add_option("--rank-tol", kam_tol, "relative singular value threshold");

    // ---- verify ----
    auto* ver = app.add_subcommand("verify", "run a verification suite");
    std::string ver_suite = "all";
    int ver_grid = 5;
    ver->add_option("--suite", ver_suite, "normalform|brackets|equilibria|kam|all")
        ->check(CLI::IsMember({"normalform", "brackets", "equilibria", "kam", "all"}));
    ver->add_option("--grid", ver_grid, "grid resolution per coordinate");

    // ---- plot ----
    auto* plo = app.add_subcommand("plot", "render a CSV as a line SVG");
    std::string plo_input, plo_out = "plot.svg", plo_x = "", plo_y = "";
    plo->add_option("--input", plo_input, "CSV file")->required();
    plo->add_option("--x", plo_x, "x column name (default: first column)");
    plo->add_option("--y", plo_y, "y column name (default: second column)");
    plo->add_option("--out", plo_out, "SVG filename");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help
        app.exit(e);
        return kExitUsage;
    }

    try {
        fs::create_directories(out_dir);
        const fs::path dir(out_dir);

        if (*sim) {
            if (sim_eps < 0.0) throw domain_error("--eps must be nonnegative");
            CartesianState s0;
            if (!sim_delaunay.empty()) {
                s0 = delaunay_to_cartesian(parse_delaunay(sim_delaunay));
            } else if (!sim_q.empty() || !sim_p.empty()) {
                s0.q = parse_vec3(sim_q, "--q");
                s0.p = parse_vec3(sim_p, "--p");
            } else {
                throw domain_error("simulate needs --delaunay or --q/--p");
            }
            const SystemConfig cfg = SystemConfig::paper(sim_eps, tol_rel, tol_abs);
            const Trajectory traj = integrate(s0, sim_tend, cfg, sim_samples);
            fs::path csv = dir / sim_out;
            if (format == "json") {
                csv.replace_extension(".json");
                write_trajectory_json(csv, traj);
            } else {
                write_trajectory_csv(csv, traj);
            }
            RunManifest man;
            man.command = "simulate";
            man.parameters = {{"eps", fmt17(sim_eps)},
                              {"t_end", fmt17(sim_tend)},
                              {"samples", std::to_string(sim_samples)},
                              {"tol_rel", fmt17(tol_rel)},
                              {"tol_abs", fmt17(tol_abs)}};
            man.outputs = {csv.filename().string()};
            man.checks = {{"energy_drift_within_100x_rel_tol",
                           traj.max_relative_energy_drift() <= 100.0 * tol_rel}};
            write_manifest(dir / "manifest.json", man);
            std::cout << "wrote " << csv.string() << " (energy drift "
                      << fmt17(traj.max_relative_energy_drift()) << ")\n";
            return traj.max_relative_energy_drift() <= 100.0 * tol_rel ? kExitOk
                                                                       : kExitCheckFailure;
        }

        if (*ele) {
            std::string payload;
            if (!ele_in.empty()) {
                std::ifstream in(ele_in);
                if (!in) throw domain_error("cannot open " + ele_in);
                std::stringstream ss;
                ss << in.rdbuf();
                const CartesianState s = delaunay_to_cartesian(elements_from_json(ss.str()));
                payload = state_json(s).dump(2);
            } else if (!ele_delaunay.empty()) {
                const CartesianState s = delaunay_to_cartesian(parse_delaunay(ele_delaunay));
                payload = state_json(s).dump(2);
            } else if (!ele_q.empty() || !ele_p.empty()) {
                CartesianState s;
                s.q = parse_vec3(ele_q, "--q");
                s.p = parse_vec3(ele_p, "--p");
                const DelaunayConversion conv = cartesian_to_delaunay(s);
                auto j = nlohmann::ordered_json::parse(elements_to_json(conv.elements));
                j["circular_flag"] = conv.circular;
                j["equatorial_flag"] = conv.equatorial;
                payload = j.dump(2);
            } else {
                throw domain_error("elements needs --delaunay or --q/--p");
            }
            if (ele_out.empty()) {
                std::cout << payload << '\n';
            } else {
                std::ofstream out(dir / ele_out);
                out << payload << '\n';
                std::cout << "wrote " << (dir / ele_out).string() << '\n';
            }
            return kExitOk;
        }

        if (*rec) {
            const auto spec = EquilibriumSpec::first_reduced(rec_index, rec_L);
            const CartesianState s0 = reconstruct_orbit(spec, rec_eps);
            const SystemConfig cfg = SystemConfig::paper(rec_eps, tol_rel, tol_abs);
            const ReturnDistance rd =
                near_return_distance(spec, rec_eps, cfg, rec_horizon);
            const fs::path csv = dir / ("fcurve_E" + std::to_string(rec_index) + ".csv");
            write_fcurve_csv(csv, rd.times, rd.f);

            nlohmann::ordered_json j = state_json(s0);
            j["period"] = rd.period;
            j["min_near_period"] = rd.min_near_period;
            j["t_min"] = rd.t_min;
            const fs::path icp = dir / ("initial_E" + std::to_string(rec_index) + ".json");
            std::ofstream(icp) << j.dump(2) << '\n';

            RunManifest man;
            man.command = "reconstruct";
            man.parameters = {{"index", std::to_string(rec_index)},
                              {"L", fmt17(rec_L)},
                              {"eps", fmt17(rec_eps)},
                              {"horizon", fmt17(rec_horizon)}};
            man.outputs = {csv.filename().string(), icp.filename().string()};
            write_manifest(dir / "manifest.json", man);
            std::cout << j.dump(2) << '\n';
            return kExitOk;
        }

        if (*sta) {
            nlohmann::ordered_json j;
            if (sta_space == "first") {
                const auto spec = EquilibriumSpec::first_reduced(sta_index, sta_L);
                const StabilityReport r = classify(spec);
                j = report_json(r);
                const ReebData reeb = reeb_data(spec, sta_eps);
                for (const auto& m : reeb.multipliers)
                    j["reeb_multipliers"].push_back({m.real(), m.imag()});
                const ReducedPoint pt = spec.first_point();
                j["coordinates"] = {pt.x.x(), pt.x.y(), pt.x.z(),
                                    pt.y.x(), pt.y.y(), pt.y.z()};
            } else {
                const auto spec = EquilibriumSpec::second_reduced(sta_index, sta_G, sta_L);
                const SecondReducedPoint b = spec.second_point();
                j["coordinates"] = {b.beta.x(), b.beta.y(), b.beta.z()};
                j["casimir"] = b.beta.norm();
                j["field_residual"] = second_reduced_vector_field(b).norm();
                j["note"] =
                    "linear classification is defined on the first reduced space";
            }
            std::cout << j.dump(2) << '\n';
            return kExitOk;
        }

        if (*kam) {
            ActionPoint a;
            a.L = kam_L;
            a.G = kam_G;
            a.I1 = kam_I1;
            a.I2 = kam_I2;
            a.I = kam_I;
            const ReducedSpace space =
                kam_space == "first" ? ReducedSpace::first : ReducedSpace::second;
            const EqPair pair = kam_pair == "12" ? EqPair::e12 : EqPair::e34;
            const FrequencyAnalysis fa = analyze_frequencies(space, pair, a, kam_tol);
            nlohmann::ordered_json j;
            j["space"] = kam_space;
            j["pair"] = kam_pair;
            j["actions"] = {{"L", a.L}, {"G", a.G}, {"I1", a.I1}, {"I2", a.I2}, {"I", a.I}};
            for (int i = 0; i < fa.omega.size(); ++i) j["omega"].push_back(fa.omega(i));
            for (int i = 0; i < fa.m_omega.rows(); ++i) {
                nlohmann::ordered_json row = nlohmann::ordered_json::array();
                for (int c = 0; c < fa.m_omega.cols(); ++c) row.push_back(fa.m_omega(i, c));
                j["m_omega"].push_back(row);
            }
            j["singular_values"] = fa.singular_values;
            j["rank"] = fa.rank;
            j["rank_tolerance"] = fa.tolerance;
            std::cout << j.dump(2) << '\n';
            return kExitOk;
        }

        if (*ver) {
            std::vector<SuiteReport> reports;
            if (ver_suite == "all") {
                reports = run_all_suites(ver_grid, seed);
            } else if (ver_suite == "normalform") {
                reports = {run_normalform_suite(ver_grid, seed)};
            } else if (ver_suite == "brackets") {
                reports = {run_brackets_suite(seed)};
            } else if (ver_suite == "equilibria") {
                reports = {run_equilibria_suite()};
            } else {
                reports = {run_kam_suite()};
            }
            const std::string payload = suites_to_json(reports);
            const fs::path rp = dir / "verify_report.json";
            std::ofstream(rp) << payload << '\n';
            std::cout << payload << '\n';
            bool all = true;
            RunManifest man;
            man.command = "verify";
            man.parameters = {{"suite", ver_suite},
                              {"grid", std::to_string(ver_grid)},
                              {"seed", std::to_string(seed)}};
            man.outputs = {rp.filename().string()};
            for (const auto& rep : reports)
                for (const auto& c : rep.checks) {
                    man.checks.emplace_back(rep.suite + "." + c.name, c.pass);
                    all = all && c.pass;
                }
            write_manifest(dir / "manifest.json", man);
            return all ? kExitOk : kExitCheckFailure;
        }

        if (*plo) {
            std::vector<std::string> header;
            const auto cols = read_csv_columns(plo_input, &header);
            auto col_index = [&](const std::string& name, std::size_t fallback) {
                if (name.empty()) return fallback;
                for (std::size_t i = 0; i < header.size(); ++i)
                    if (header[i] == name) return i;
                throw domain_error("column '" + name + "' not in " + plo_input);
            };
            const std::size_t xi = col_index(plo_x, 0);
            const std::size_t yi = col_index(plo_y, 1);
            const fs::path svg = dir / plo_out;
            write_line_svg(svg, cols.at(xi), cols.at(yi),
                           header.at(xi), header.at(yi));
            RunManifest man;
            man.command = "plot";
            man.parameters = {{"input", plo_input},
                              {"x", header.at(xi)},
                              {"y", header.at(yi)}};
            man.outputs = {svg.filename().string()};
            write_manifest(dir / "manifest.json", man);
            std::cout << "wrote " << svg.string() << '\n';
            return kExitOk;
        }
    } catch (const collision_error& e) {
        std::cerr << "collision: " << e.what() << " (t = " << e.time << ")\n";
        return kExitCollision;
    } catch (const numerical_error& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const domain_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const singularity_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const chart_singular_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitOk;
}
