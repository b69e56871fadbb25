#ifndef TRICENTER_IO_HPP
#define TRICENTER_IO_HPP

#include <filesystem>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "tricenter/delaunay.hpp"
#include "tricenter/state.hpp"
#include "tricenter/verification.hpp"

namespace tricenter {

/// 17 significant digits, the round-trip-exact text form of a double.
std::string fmt17(double v);

void write_trajectory_csv(const std::filesystem::path& path, const Trajectory& traj);
void write_trajectory_json(const std::filesystem::path& path, const Trajectory& traj);
void write_fcurve_csv(const std::filesystem::path& path, const std::vector<double>& t,
                      const std::vector<double>& f);

/// Reduced-trajectory exports: t,x1,x2,x3,y1,y2,y3 resp. t,b1,b2,b3.
void write_first_reduced_csv(const std::filesystem::path& path,
                             const std::vector<double>& t,
                             const std::vector<Eigen::Matrix<double, 6, 1>>& xy);
void write_second_reduced_csv(const std::filesystem::path& path,
                              const std::vector<double>& t,
                              const std::vector<Eigen::Vector3d>& beta);

std::string elements_to_json(const DelaunayElements& d);
DelaunayElements elements_from_json(const std::string& text);

/// Two-column line plot as a standalone SVG (deterministic output).
void write_line_svg(const std::filesystem::path& path, const std::vector<double>& x,
                    const std::vector<double>& y, const std::string& x_label,
                    const std::string& y_label);

/// Columns of a headered CSV file; throws domain_error on missing/empty input.
std::vector<std::vector<double>> read_csv_columns(const std::filesystem::path& path,
                                                  std::vector<std::string>* header = nullptr);

/// Record of one CLI run: command, parameters, outputs, check summary.
struct RunManifest {
    std::string command;
    std::vector<std::pair<std::string, std::string>> parameters;
    std::vector<std::string> outputs;
    std::vector<std::pair<std::string, bool>> checks;
    std::string version;
};
void write_manifest(const std::filesystem::path& path, const RunManifest& manifest);

std::string suites_to_json(const std::vector<SuiteReport>& reports);

inline constexpr const char* kToolVersion = "0.1.0";

} // namespace tricenter

#endif
