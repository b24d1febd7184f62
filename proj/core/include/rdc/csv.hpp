#pragma once

#include <string>

#include "rdc/supervisor.hpp"

namespace rdc {

/// Shortest round-trip decimal form, locale-independent ('.' separator).
std::string format_double(double v);

/// Trajectory CSV: header then one row per sample,
/// t,norm,U,a_1..a_{n_max}[,theta_hat].  LF line endings.
std::string trajectory_csv(const RunResult& r, bool with_theta);

/// Profile matrix CSV: rows are samples (t then node values).
std::string profiles_csv(const RunResult& r, const SpatialGrid& grid);

/// Event log as machine-parseable key-value blocks, one per event,
/// including per-mode identifier diagnostics.
std::string event_log_text(const EventLog& log);

/// Two-channel plot bundles.
std::string norm_vs_time_csv(const RunResult& r);
std::string theta_vs_time_csv(const RunResult& r);

/// Minimal matplotlib script reading the plot bundles next to it.
std::string plot_script();

void write_file(const std::string& path, const std::string& content);

}  // namespace rdc
