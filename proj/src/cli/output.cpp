#include "elastica/cli/output.hpp"

#include <charconv>
#include <fstream>

#include "elastica/error.hpp"

namespace elastica::cli {

std::string format_real(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::general, 17);
  if (ec != std::errc{}) throw Error(ErrorCode::kIo, "cannot format floating value");
  return std::string(buf, ptr);
}

void write_diagnostics_csv(std::ostream& out, const Trajectory& trajectory) {
  const auto& snaps = trajectory.snapshots;
  const bool err = !snaps.empty() && snaps.front().diagnostics.err.has_value();
  const bool rot = !snaps.empty() && snaps.front().diagnostics.rotation_index.has_value();
  const bool mon = !snaps.empty() && snaps.front().diagnostics.monitor_dirichlet.has_value();

  out << "t,energy,length,sigma";
  if (err) out << ",err";
  if (rot) out << ",rotation_index";
  if (mon) out << ",monitor_dirichlet";
  out << '\n';
  for (const auto& s : snaps) {
    const Diagnostics& d = s.diagnostics;
    out << format_real(s.x.t) << ',' << format_real(d.energy) << ',' << format_real(d.length)
        << ',' << format_real(d.sigma);
    if (err) out << ',' << format_real(d.err.value_or(0.0));
    if (rot) out << ',' << d.rotation_index.value_or(0);
    if (mon) out << ',' << format_real(d.monitor_dirichlet.value_or(0.0));
    out << '\n';
  }
}

void write_snapshots_csv(std::ostream& out, const Trajectory& trajectory, const Grid& grid) {
  const auto& snaps = trajectory.snapshots;
  const int dim = snaps.empty() ? 2 : snaps.front().x.dim();
  out << "t,j,u_j";
  for (int c = 1; c <= dim; ++c) out << ",x_" << c;
  for (int c = 1; c <= dim; ++c) out << ",y_" << c;
  out << '\n';
  for (const auto& s : snaps) {
    const std::string t = format_real(s.x.t);
    for (std::size_t j = 0; j < s.x.size(); ++j) {
      out << t << ',' << j << ',' << format_real(grid.node(j));
      for (double v : s.x[j]) out << ',' << format_real(v);
      for (double v : s.y[j]) out << ',' << format_real(v);
      out << '\n';
    }
  }
}

void write_file(const std::filesystem::path& path, const std::string& contents) {
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  file << contents;
  file.close();
  if (!file) throw Error(ErrorCode::kIo, "cannot write '" + path.string() + "'");
}

}  // namespace elastica::cli
