#pragma once

#include <filesystem>
#include <ostream>
#include <string>

#include "elastica/flow.hpp"

namespace elastica::cli {

// Shortest form that carries 17 significant digits, '.' as decimal point,
// independent of the global locale.
std::string format_real(double value);

// t, energy, length, sigma, then err, rotation_index and monitor_dirichlet
// when the snapshots carry them.
void write_diagnostics_csv(std::ostream& out, const Trajectory& trajectory);
// One row per vertex and snapshot: t, j, u_j, x_1..x_n, y_1..y_n.
void write_snapshots_csv(std::ostream& out, const Trajectory& trajectory, const Grid& grid);

// Writes `contents` to `path` in binary mode; throws kIo on failure.
void write_file(const std::filesystem::path& path, const std::string& contents);

}  // namespace elastica::cli
