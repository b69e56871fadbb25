#include "tricenter/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "tricenter/errors.hpp"

namespace tricenter {

std::string fmt17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_trajectory_csv(const std::filesystem::path& path, const Trajectory& traj) {
    std::ofstream out(path);
    if (!out) throw domain_error("cannot open " + path.string() + " for writing");
    out << "t,q1,q2,q3,p1,p2,p3,energy\n";
    for (std::size_t i = 0; i < traj.times.size(); ++i) {
        const auto& s = traj.states[i];
        out << fmt17(traj.times[i]) << ',' << fmt17(s.q.x()) << ',' << fmt17(s.q.y()) << ','
            << fmt17(s.q.z()) << ',' << fmt17(s.p.x()) << ',' << fmt17(s.p.y()) << ','
            << fmt17(s.p.z()) << ',' << fmt17(traj.energies[i]) << '\n';
    }
}

void write_trajectory_json(const std::filesystem::path& path, const Trajectory& traj) {
    nlohmann::ordered_json j;
    for (std::size_t i = 0; i < traj.times.size(); ++i) {
        const auto& s = traj.states[i];
        j.push_back({{"t", traj.times[i]},
                     {"q", {s.q.x(), s.q.y(), s.q.z()}},
                     {"p", {s.p.x(), s.p.y(), s.p.z()}},
                     {"energy", traj.energies[i]}});
    }
    std::ofstream out(path);
    if (!out) throw domain_error("cannot open " + path.string() + " for writing");
    out << j.dump(2) << '\n';
}

void write_first_reduced_csv(const std::filesystem::path& path,
                             const std::vector<double>& t,
                             const std::vector<Eigen::Matrix<double, 6, 1>>& xy) {
    std::ofstream out(path);
    if (!out) throw domain_error("cannot open " + path.string() + " for writing");
    out << "t,x1,x2,x3,y1,y2,y3\n";
    for (std::size_t i = 0; i < t.size(); ++i) {
        out << fmt17(t[i]);
        for (int c = 0; c < 6; ++c) out << ',' << fmt17(xy[i](c));
        out << '\n';
    }
}

void write_second_reduced_csv(const std::filesystem::path& path,
                              const std::vector<double>& t,
                              const std::vector<Eigen::Vector3d>& beta) {
    std::ofstream out(path);
    if (!out) throw domain_error("cannot open " + path.string() + " for writing");
    out << "t,b1,b2,b3\n";
    for (std::size_t i = 0; i < t.size(); ++i)
        out << fmt17(t[i]) << ',' << fmt17(beta[i].x()) << ',' << fmt17(beta[i].y()) << ','
            << fmt17(beta[i].z()) << '\n';
}

void write_fcurve_csv(const std::filesystem::path& path, const std::vector<double>& t,
                      const std::vector<double>& f) {
    std::ofstream out(path);
    if (!out) throw domain_error("cannot open " + path.string() + " for writing");
    out << "t,f\n";
    for (std::size_t i = 0; i < t.size(); ++i)
        out << fmt17(t[i]) << ',' << fmt17(f[i]) << '\n';
}

std::string elements_to_json(const DelaunayElements& d) {
    nlohmann::ordered_json j;
    j["ell"] = d.ell;
    j["g"] = d.g;
    j["h"] = d.h;
    j["L"] = d.L;
    j["G"] = d.G;
    j["H"] = d.H;
    return j.dump(2);
}

DelaunayElements elements_from_json(const std::string& text) {
    const auto j = nlohmann::json::parse(text);
    DelaunayElements d;
    d.ell = j.at("ell").get<double>();
    d.g = j.at("g").get<double>();
    d.h = j.at("h").get<double>();
    d.L = j.at("L").get<double>();
    d.G = j.at("G").get<double>();
    d.H = j.at("H").get<double>();
    return d;
}

void write_line_svg(const std::filesystem::path& path, const std::vector<double>& x,
                    const std::vector<double>& y, const std::string& x_label,
                    const std::string& y_label) {
    if (x.empty() || x.size() != y.size())
        throw domain_error("write_line_svg: empty or mismatched data");
    const double w = 720.0, h = 480.0, ml = 64.0, mr = 16.0, mt = 16.0, mb = 48.0;
    double xmin = x[0], xmax = x[0], ymin = y[0], ymax = y[0];
    for (std::size_t i = 0; i < x.size(); ++i) {
        xmin = std::min(xmin, x[i]);
        xmax = std::max(xmax, x[i]);
        ymin = std::min(ymin, y[i]);
        ymax = std::max(ymax, y[i]);
    }
    if (xmax == xmin) xmax = xmin + 1.0;
    if (ymax == ymin) ymax = ymin + 1.0;
    const auto sx = [&](double v) { return ml + (v - xmin) / (xmax - xmin) * (w - ml - mr); };
    const auto sy = [&](double v) { return h - mb - (v - ymin) / (ymax - ymin) * (h - mt - mb); };

    std::ofstream out(path);
    if (!out) throw domain_error("cannot open " + path.string() + " for writing");
    char buf[128];
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"720\" height=\"480\" "
           "viewBox=\"0 0 720 480\">\n"
        << "<rect width=\"720\" height=\"480\" fill=\"white\"/>\n";
    std::snprintf(buf, sizeof buf,
                  "<line x1=\"%.2f\" y1=\"%.2f\" x2=\"%.2f\" y2=\"%.2f\" stroke=\"black\"/>\n",
                  ml, h - mb, w - mr, h - mb);
    out << buf;
    std::snprintf(buf, sizeof buf,
                  "<line x1=\"%.2f\" y1=\"%.2f\" x2=\"%.2f\" y2=\"%.2f\" stroke=\"black\"/>\n",
                  ml, mt, ml, h - mb);
    out << buf;
    out << "<text x=\"" << (ml + (w - ml - mr) / 2.0) << "\" y=\"" << (h - 12.0)
        << "\" font-size=\"14\" text-anchor=\"middle\">" << x_label << "</text>\n";
    out << "<text x=\"16\" y=\"" << (mt + (h - mt - mb) / 2.0)
        << "\" font-size=\"14\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
        << (mt + (h - mt - mb) / 2.0) << ")\">" << y_label << "</text>\n";
    // axis range labels
    std::snprintf(buf, sizeof buf,
                  "<text x=\"%.2f\" y=\"%.2f\" font-size=\"11\">%.6g</text>\n", ml, h - mb + 16.0,
                  xmin);
    out << buf;
    std::snprintf(buf, sizeof buf,
                  "<text x=\"%.2f\" y=\"%.2f\" font-size=\"11\" text-anchor=\"end\">%.6g</text>\n",
                  w - mr, h - mb + 16.0, xmax);
    out << buf;
    std::snprintf(buf, sizeof buf,
                  "<text x=\"%.2f\" y=\"%.2f\" font-size=\"11\" text-anchor=\"end\">%.6g</text>\n",
                  ml - 6.0, h - mb, ymin);
    out << buf;
    std::snprintf(buf, sizeof buf,
                  "<text x=\"%.2f\" y=\"%.2f\" font-size=\"11\" text-anchor=\"end\">%.6g</text>\n",
                  ml - 6.0, mt + 10.0, ymax);
    out << buf;
    out << "<polyline fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"1.2\" points=\"";
    for (std::size_t i = 0; i < x.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.3f,%.3f ", sx(x[i]), sy(y[i]));
        out << buf;
    }
    out << "\"/>\n</svg>\n";
}

std::vector<std::vector<double>> read_csv_columns(const std::filesystem::path& path,
                                                  std::vector<std::string>* header) {
    std::ifstream in(path);
    if (!in) throw domain_error("cannot open " + path.string());
    std::string line;
    if (!std::getline(in, line) || line.empty())
        throw domain_error(path.string() + ": empty file");
    std::vector<std::string> names;
    {
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) names.push_back(cell);
    }
    if (header) *header = names;
    std::vector<std::vector<double>> cols(names.size());
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string cell;
        std::size_t c = 0;
        while (std::getline(ss, cell, ',') && c < cols.size()) cols[c++].push_back(std::stod(cell));
    }
    if (cols.empty() || cols[0].empty())
        throw domain_error(path.string() + ": no data rows");
    return cols;
}

void write_manifest(const std::filesystem::path& path, const RunManifest& manifest) {
    nlohmann::ordered_json j;
    j["command"] = manifest.command;
    j["version"] = manifest.version.empty() ? kToolVersion : manifest.version;
    nlohmann::ordered_json params;
    for (const auto& [k, v] : manifest.parameters) params[k] = v;
    j["parameters"] = params;
    j["outputs"] = manifest.outputs;
    if (!manifest.checks.empty()) {
        nlohmann::ordered_json checks;
        for (const auto& [k, ok] : manifest.checks) checks[k] = ok ? "pass" : "fail";
        j["checks"] = checks;
    }
    std::ofstream out(path);
    if (!out) throw domain_error("cannot open " + path.string() + " for writing");
    out << j.dump(2) << '\n';
}

std::string suites_to_json(const std::vector<SuiteReport>& reports) {
    nlohmann::ordered_json root;
    bool all = true;
    for (const auto& rep : reports) {
        nlohmann::ordered_json suite;
        for (const auto& c : rep.checks) {
            nlohmann::ordered_json jc;
            jc["residual"] = c.value;
            jc["threshold"] = c.threshold;
            jc["pass"] = c.pass;
            if (!c.note.empty()) jc["note"] = c.note;
            suite[c.name] = jc;
            all = all && c.pass;
        }
        root[rep.suite] = suite;
    }
    root["all_pass"] = all;
    return root.dump(2);
}

} // namespace tricenter
