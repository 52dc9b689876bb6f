#include "elastica/cli/commands.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <future>
#include <locale>
#include <sstream>

#include "elastica/cli/config.hpp"
#include "elastica/cli/output.hpp"
#include "elastica/reference.hpp"

namespace elastica::cli {

namespace {

using Json = nlohmann::ordered_json;
namespace fs = std::filesystem;

constexpr const char* kPresetListing =
    "circle\n"
    "  radius = 1.5\n"
    "  lambda = 0.5\n"
    "  T = 1, m_T = N^2 (convergence study, N in 20 30 36 46 60)\n"
    "circle-nonequi\n"
    "  radius = 1.5\n"
    "  layout: N/2 vertices equally spaced on [pi/2, pi), the rest on [pi, 5pi/2)\n"
    "  N = 40, delta = 0.0005, T = 10\n"
    "  lambda = 0.5\n"
    "  extended: lambda_tilde = 0.5, epsilon = 0.01, monitor = constant:1\n"
    "lemniscate\n"
    "  x(u) = (cos u + 4) cos u / (1 + sin^2 u) * (1, sin u)\n"
    "  N = 100, delta = 0.001, T = 100\n"
    "  lambda = 0.1\n"
    "  extended: lambda_tilde = 0.2, epsilon = 0.004, monitor = lemniscate-quadratic, "
    "delta = 1e-05\n"
    "hypotrochoid\n"
    "  R_outer = 2, r_roll = -0.5, d_offset = -4, i.e. 2.5 e^{iu} - 4 e^{5iu}, rotation index 5\n"
    "  a negative r_roll rolls outside (epitrochoid); d_offset may be negative\n"
    "  alpha = 0 (dimension 2, T = 3000) or alpha = 0.5 (dimension 3, T = 2000)\n"
    "  N = 200, delta = 0.05\n"
    "  lambda = 0.005\n"
    "custom\n"
    "  points_file = <path>, one vertex per line, dimension coordinates each\n"
    "  lambda = 0.5\n";

std::ofstream open_output(const fs::path& path) {
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw Error(ErrorCode::kIo, "cannot open '" + path.string() + "' for writing");
  file.imbue(std::locale::classic());
  return file;
}

void close_output(std::ofstream& file, const fs::path& path) {
  file.close();
  if (!file) throw Error(ErrorCode::kIo, "cannot write '" + path.string() + "'");
}

Json preset_json(const CurvePreset& preset, std::size_t vertices) {
  Json j;
  j["name"] = preset_name(preset);
  if (const auto* c = std::get_if<CirclePreset>(&preset)) {
    j["radius"] = c->radius;
  } else if (const auto* c = std::get_if<CircleNonequiPreset>(&preset)) {
    j["radius"] = c->radius;
    j["layout"] = std::to_string(vertices / 2) + " vertices on [pi/2, pi), " +
                  std::to_string(vertices - vertices / 2) + " on [pi, 5pi/2)";
  } else if (const auto* h = std::get_if<HypotrochoidPreset>(&preset)) {
    j["R_outer"] = h->outer_radius;
    j["r_roll"] = h->rolling_radius;
    j["d_offset"] = h->offset;
    j["alpha"] = h->alpha;
  }
  return j;
}

Json config_json(const ResolvedRun& resolved) {
  const RunConfig& cfg = resolved.run;
  Json j;
  j["dimension"] = cfg.dim;
  j["N"] = cfg.vertices;
  j["T"] = cfg.final_time;
  j["m_T"] = cfg.steps;
  j["delta"] = cfg.scheme.delta;
  if (const auto* d = std::get_if<DirichletParams>(&cfg.scheme.variant)) {
    j["scheme"] = "dirichlet";
    j["lambda"] = d->lambda;
  } else {
    const auto& e = std::get<ExtendedParams>(cfg.scheme.variant);
    j["scheme"] = "extended";
    j["lambda_tilde"] = e.lambda_tilde;
    j["epsilon"] = e.epsilon;
    j["monitor"] = e.monitor.description();
  }
  j["preset"] = preset_json(cfg.preset, cfg.vertices);
  if (resolved.points_file) j["points_file"] = resolved.points_file->generic_string();
  j["record_stride"] = cfg.record_stride;
  j["reference"] = cfg.reference == Reference::kCircle ? "circle" : "none";
  j["out_dir"] = resolved.out_dir.generic_string();
  return j;
}

Json error_json(const std::optional<Error>& failure) {
  if (!failure) return nullptr;
  Json j;
  j["code"] = to_string(failure->code());
  j["message"] = failure->what();
  if (failure->index()) j["step"] = *failure->index();
  return j;
}

// Writes diagnostics.csv, snapshots.csv and manifest.json into resolved.out_dir.
void write_run_outputs(const ResolvedRun& resolved, const RunResult& result) {
  const fs::path& dir = resolved.out_dir;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::kIo, "cannot create '" + dir.string() + "': " + ec.message());

  const Grid grid = uniform_grid(resolved.run.vertices);
  {
    const fs::path path = dir / "diagnostics.csv";
    auto file = open_output(path);
    write_diagnostics_csv(file, result.trajectory);
    close_output(file, path);
  }
  {
    const fs::path path = dir / "snapshots.csv";
    auto file = open_output(path);
    write_snapshots_csv(file, result.trajectory, grid);
    close_output(file, path);
  }

  Json manifest;
  manifest["status"] = result.completed() ? "completed" : "failed";
  manifest["error"] = error_json(result.failure);
  manifest["steps_completed"] =
      result.trajectory.snapshots.empty() ? 0 : result.trajectory.snapshots.back().step;
  manifest["snapshots"] = result.trajectory.snapshots.size();
  manifest["config"] = config_json(resolved);
  manifest["files"] = {{"diagnostics", "diagnostics.csv"}, {"snapshots", "snapshots.csv"}};
  write_file(dir / "manifest.json", manifest.dump(2) + "\n");
}

std::string fixed(double value, int decimals) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::fixed, decimals);
  return std::string(buf, r.ptr);
}

std::string scientific(double value, int decimals) {
  char buf[64];
  const auto r =
      std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::scientific, decimals);
  return std::string(buf, r.ptr);
}

std::string pad(std::string s, std::size_t width) {
  if (s.size() < width) s.insert(0, width - s.size(), ' ');
  return s;
}

int cmd_run(const std::string& config_path, std::ostream& out, std::ostream& err) {
  ResolvedRun resolved;
  try {
    resolved = load_config(config_path, std::getenv("ELASTICA_OUT_DIR"));
  } catch (const Error& e) {
    err << "config error [" << to_string(e.code()) << "]: " << e.what() << '\n';
    return kExitConfig;
  }

  RunResult result;
  try {
    result = run(resolved.run);
  } catch (const Error& e) {
    err << "config error [" << to_string(e.code()) << "]: " << e.what() << '\n';
    return kExitConfig;
  }

  try {
    write_run_outputs(resolved, result);
  } catch (const Error& e) {
    err << "output error [" << to_string(e.code()) << "]: " << e.what() << '\n';
    return kExitRunFailure;
  }

  const Snapshot& last = result.trajectory.snapshots.back();
  if (result.failure) {
    err << "run failed [" << to_string(result.failure->code()) << "]: " << result.failure->what()
        << '\n';
    err << "partial output (" << last.step << " of " << resolved.run.steps << " steps) written to "
        << resolved.out_dir.string() << '\n';
    return kExitRunFailure;
  }
  out << "completed " << resolved.run.steps << " steps to t = " << format_real(last.x.t) << '\n';
  out << "energy = " << format_real(last.diagnostics.energy)
      << ", sigma = " << format_real(last.diagnostics.sigma) << '\n';
  out << "output written to " << resolved.out_dir.string() << '\n';
  return kExitOk;
}

struct SweepOptions {
  std::vector<std::size_t> vertices;
  double lambda = 0.5;
  double r0 = 1.5;
  double final_time = 1.0;
  std::size_t steps_factor = 1;
  std::string out_dir;
};

struct SweepRun {
  std::size_t vertices = 0;
  RunConfig cfg;
  RunResult result;
  std::optional<Error> error;
};

SweepRun sweep_member(const SweepOptions& opt, std::size_t n, const fs::path& dir) {
  SweepRun r;
  r.vertices = n;
  r.cfg.vertices = n;
  r.cfg.preset = CirclePreset{opt.r0};
  r.cfg.scheme.variant = DirichletParams{opt.lambda};
  r.cfg.steps = opt.steps_factor * n * n;
  r.cfg.final_time = opt.final_time;
  r.cfg.scheme.delta = opt.final_time / static_cast<double>(r.cfg.steps);
  r.cfg.record_stride = opt.steps_factor * n;
  r.cfg.reference = Reference::kCircle;
  try {
    r.result = run(r.cfg);
    fs::create_directories(dir);
    const fs::path path = dir / "diagnostics.csv";
    auto file = open_output(path);
    write_diagnostics_csv(file, r.result.trajectory);
    close_output(file, path);
  } catch (const Error& e) {
    r.error = e;
  } catch (const fs::filesystem_error& e) {
    r.error = Error(ErrorCode::kIo, e.what());
  }
  if (!r.error && r.result.failure) r.error = r.result.failure;
  return r;
}

int cmd_converge_circle(SweepOptions opt, std::ostream& out, std::ostream& err) {
  if (opt.vertices.empty()) {
    err << "config error: --n-list is empty\n";
    return kExitConfig;
  }
  for (std::size_t k = 0; k < opt.vertices.size(); ++k) {
    if (opt.vertices[k] < 3) {
      err << "config error: every N must be at least 3, got " << opt.vertices[k] << '\n';
      return kExitConfig;
    }
    if (k > 0 && opt.vertices[k] <= opt.vertices[k - 1]) {
      err << "config error: --n-list must be strictly increasing\n";
      return kExitConfig;
    }
  }
  if (!(opt.lambda > 0.0) || !(opt.r0 > 0.0) || !(opt.final_time > 0.0) ||
      opt.steps_factor < 1) {
    err << "config error: lambda, r0, t and steps-factor must be positive\n";
    return kExitConfig;
  }
  if (opt.out_dir.empty()) {
    const char* env = std::getenv("ELASTICA_OUT_DIR");
    opt.out_dir = env && *env ? env : "elastica-out";
  }
  const fs::path root = opt.out_dir;

  std::vector<std::future<SweepRun>> pending;
  for (std::size_t n : opt.vertices) {
    pending.push_back(std::async(std::launch::async, sweep_member, std::cref(opt), n,
                                 root / ("circle-N" + std::to_string(n))));
  }
  std::vector<SweepRun> runs;
  for (auto& f : pending) runs.push_back(f.get());

  std::vector<ConvergenceSample> samples;
  std::optional<Error> failure;
  std::size_t failed_n = 0;
  for (const auto& r : runs) {
    if (r.error) {
      failure = r.error;
      failed_n = r.vertices;
      break;
    }
    double worst = 0.0;
    const auto& errs = r.result.trajectory.step_errors;
    for (std::size_t m = 1; m < errs.size(); ++m) worst = std::max(worst, errs[m]);
    samples.push_back({r.vertices, r.cfg.steps, r.cfg.scheme.delta, worst});
  }

  std::vector<EocRow> rows;
  if (!samples.empty()) {
    try {
      rows = eoc_table(samples);
    } catch (const Error& e) {
      err << "eoc error [" << to_string(e.code()) << "]: " << e.what() << '\n';
      return kExitRunFailure;
    }
  }

  std::ostringstream csv;
  csv.imbue(std::locale::classic());
  csv << "N,h,m_T,delta,err,eoc\n";
  out << pad("N", 6) << pad("h", 14) << pad("m_T", 10) << pad("delta", 14) << pad("err", 14)
      << pad("eoc", 11) << '\n';
  for (const auto& row : rows) {
    csv << row.vertices << ',' << format_real(row.h) << ',' << row.steps << ','
        << format_real(row.delta) << ',' << format_real(row.err) << ','
        << (row.eoc ? format_real(*row.eoc) : std::string()) << '\n';
    out << pad(std::to_string(row.vertices), 6) << pad(scientific(row.h, 4), 14)
        << pad(std::to_string(row.steps), 10) << pad(scientific(row.delta, 4), 14)
        << pad(scientific(row.err, 4), 14) << pad(row.eoc ? fixed(*row.eoc, 4) : "undefined", 11)
        << '\n';
  }
  try {
    fs::create_directories(root);
    write_file(root / "eoc.csv", csv.str());
  } catch (const std::exception& e) {
    err << "output error: " << e.what() << '\n';
    return kExitRunFailure;
  }
  if (failure) {
    err << "run for N = " << failed_n << " failed [" << to_string(failure->code())
        << "]: " << failure->what() << '\n';
    return kExitRunFailure;
  }
  return kExitOk;
}

}  // namespace

const char* preset_listing() { return kPresetListing; }

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Semi-implicit parametric finite element solver for elastic flow of closed curves",
               "elastica"};
  app.require_subcommand(1);

  std::string config_path;
  auto* run_cmd = app.add_subcommand("run", "Run one evolution described by a config file");
  run_cmd->add_option("--config", config_path, "Path to the key = value config file")->required();

  SweepOptions sweep;
  auto* converge = app.add_subcommand(
      "converge-circle", "Shrinking-circle convergence study against the exact radius law");
  converge->add_option("--n-list", sweep.vertices, "Strictly increasing vertex counts, a,b,c")
      ->required()
      ->delimiter(',');
  converge->add_option("--lambda", sweep.lambda, "Dirichlet penalty weight")->capture_default_str();
  converge->add_option("--r0", sweep.r0, "Initial radius")->capture_default_str();
  converge->add_option("--t", sweep.final_time, "Final time")->capture_default_str();
  converge->add_option("--steps-factor", sweep.steps_factor, "m_T = factor * N^2")
      ->capture_default_str();
  converge->add_option("--out-dir", sweep.out_dir,
                       "Output directory (default: $ELASTICA_OUT_DIR, then elastica-out)");

  auto* list = app.add_subcommand("preset-list", "List curve presets and their default constants");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfig;
  }

  if (run_cmd->parsed()) return cmd_run(config_path, out, err);
  if (converge->parsed()) return cmd_converge_circle(sweep, out, err);
  if (list->parsed()) {
    out << kPresetListing;
    return kExitOk;
  }
  return kExitConfig;
}

}  // namespace elastica::cli
