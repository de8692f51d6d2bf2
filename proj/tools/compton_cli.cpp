#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "compton/compton.hpp"
#include "compton/io.hpp"

namespace fs = std::filesystem;
using namespace compton;
using compton::io::json;

namespace {

enum Exit { kOk = 0, kCalibrationFailed = 2, kInvalidSpec = 3, kAllDegenerate = 4 };

struct Options {
  double energy = 1.0;
  std::optional<double> energy_photon;
  std::optional<double> theta_e;
  std::optional<double> theta_ph;
  std::optional<double> phi_ph;
  double fig5_far_phi = 0.0;
  bool degrees = false;
  std::string figure = "4";
  std::string grid;
  std::string quantity = "exchange";
  std::string normalize = "gridmax";
  std::string out;
  std::string format = "csv";
  std::uint64_t seed = 20240601;
  std::size_t samples = 1000;
  unsigned threads = 1;
};

double angle(const Options& o, double v) { return o.degrees ? v * std::numbers::pi / 180.0 : v; }

Quantity parse_quantity(const std::string& s) { return s == "total" ? Quantity::TotalPerState : Quantity::ExchangeOnly; }

ScatterConfig point_config(const Options& o)
{
  ScatterConfig c;
  c.energy_electron = o.energy;
  c.energy_photon = o.energy_photon.value_or(o.energy);
  if (o.theta_e) c.theta_e = angle(o, *o.theta_e);
  if (o.theta_ph) c.theta_ph = angle(o, *o.theta_ph);
  if (o.phi_ph) c.phi_ph = angle(o, *o.phi_ph);
  return c;
}

// "N" or "NxM".
std::pair<std::size_t, std::optional<std::size_t>> parse_grid(const std::string& g)
{
  const auto x = g.find_first_of("xX");
  try {
    std::size_t used = 0;
    const auto rows = std::stoul(g.substr(0, x), &used);
    if (used != (x == std::string::npos ? g.size() : x)) throw std::invalid_argument(g);
    if (x == std::string::npos) return {rows, std::nullopt};
    const auto tail = g.substr(x + 1);
    const auto cols = std::stoul(tail, &used);
    if (used != tail.size()) throw std::invalid_argument(g);
    return {rows, cols};
  } catch (const std::logic_error&) {
    throw Error(ErrorCode::InvalidSpec, "--grid expects N or NxM, got '" + g + "'");
  }
}

fs::path output_dir()
{
  if (const char* d = std::getenv("COMPTON_OUT_DIR"); d && *d) return d;
  return ".";
}

void write_file(const fs::path& path, const std::string& data)
{
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path.string());
  f << data;
}

void emit(const Options& o, const json& j)
{
  const std::string text = j.dump(2) + "\n";
  if (o.out.empty()) {
    std::cout << text;
  } else {
    write_file(o.out, text);
  }
}

ScanSpec scan_spec(const Options& o, Figure fig, std::optional<double> fig5_theta)
{
  ScanSpec s;
  switch (fig) {
    case Figure::Fig3: s = ScanSpec::fig3(o.energy); break;
    case Figure::Fig4: s = ScanSpec::fig4(o.energy); break;
    case Figure::Fig5: s = ScanSpec::fig5(fig5_theta.value_or(std::numbers::pi / 2), o.energy); break;
    case Figure::Custom:
      s = ScanSpec::fig4(o.energy);
      s.figure = Figure::Custom;
      break;
  }
  s.energy_photon = o.energy_photon.value_or(o.energy);
  if (fig == Figure::Custom && o.phi_ph) s.phi_ph = angle(o, *o.phi_ph);
  s.fig5_far_phi = angle(o, o.fig5_far_phi);
  if (!o.grid.empty()) {
    const auto [rows, cols] = parse_grid(o.grid);
    s.rows = rows;
    if (cols) s.cols = *cols;
    if (fig == Figure::Fig5 && cols && *cols != 1) throw Error(ErrorCode::InvalidSpec, "figure 5 takes a single --grid N");
  }
  s.quantity = parse_quantity(o.quantity);
  s.normalization = o.normalize == "none" ? Normalization::None : Normalization::GridMax;
  s.threads = o.threads;
  return s;
}

Figure parse_figure(const std::string& f)
{
  if (f == "3") return Figure::Fig3;
  if (f == "4") return Figure::Fig4;
  if (f == "5") return Figure::Fig5;
  return Figure::Custom;
}

fs::path data_path(const Options& o, Figure fig, const std::string& suffix)
{
  const std::string ext = o.format == "structured" ? ".json" : ".csv";
  if (o.out.empty()) return output_dir() / ("fig" + std::string(to_string(fig)) + suffix + ext);
  fs::path p = o.out;
  if (suffix.empty()) return p;
  return p.parent_path() / (p.stem().string() + suffix + p.extension().string());
}

// Writes the data file and its metadata sidecar; returns the data path.
fs::path write_scan(const Options& o, const ScanResult& r, const fs::path& path)
{
  std::string data;
  if (o.format == "structured") {
    data = json{{"spec", io::to_json(r.spec)}, {"records", io::scan_records(r)}}.dump(1) + "\n";
  } else {
    data = io::scan_csv(r);
  }
  write_file(path, data);
  const auto meta = io::scan_metadata(r, path.filename().string(), io::fnv1a64(data));
  write_file(path.string() + ".meta.json", meta.dump(2) + "\n");
  return path;
}

int cmd_point(const Options& o)
{
  const auto cfg = point_config(o);
  cfg.validate();
  const auto rep = point_report(cfg, parse_quantity(o.quantity));
  emit(o, io::to_json(rep));
  if (rep.error == ErrorCode::InvalidSpec) return kInvalidSpec;
  return rep.ok() ? kOk : kAllDegenerate;
}

int cmd_scan(const Options& o)
{
  const Figure fig = parse_figure(o.figure);
  std::vector<std::pair<std::optional<double>, std::string>> runs;
  if (fig == Figure::Fig5 && !o.theta_e) {
    runs = {{std::numbers::pi / 4, "_te45"}, {std::numbers::pi / 2, "_te90"}, {3 * std::numbers::pi / 4, "_te135"}};
  } else {
    runs = {{o.theta_e ? std::optional(angle(o, *o.theta_e)) : std::nullopt, ""}};
  }

  // Validate every run before writing anything.
  std::vector<ScanSpec> specs;
  for (const auto& [te, suffix] : runs) {
    specs.push_back(scan_spec(o, fig, te));
    specs.back().validate();
  }

  int code = kOk;
  for (std::size_t i = 0; i < specs.size(); ++i) {
    const auto r = run_scan(specs[i]);
    const auto path = write_scan(o, r, data_path(o, fig, runs[i].second));
    std::cerr << path.string() << ": " << r.points.size() << " points, " << r.hole_count() << " holes";
    if (r.jumps_evaluated) std::cerr << ", " << r.jumps.size() << " jump points";
    std::cerr << "\n";
    if (r.all_degenerate()) code = kAllDegenerate;
  }
  return code;
}

int cmd_find_jumps(const Options& o)
{
  const Figure fig = o.phi_ph ? Figure::Custom : Figure::Fig4;
  auto spec = scan_spec(o, fig, std::nullopt);
  const auto r = run_scan(spec);
  if (r.all_degenerate()) return kAllDegenerate;
  auto meta = io::scan_metadata(r, "", 0);
  json j{{"spec", meta["spec"]}};
  if (meta.contains("jump_points")) j["jump_points"] = meta["jump_points"];
  if (meta.contains("jump_points_error")) j["jump_points_error"] = meta["jump_points_error"];
  emit(o, j);
  return r.jump_error == ErrorCode::GridTooCoarse ? kInvalidSpec : kOk;
}

int cmd_calibrate(const Options& o)
{
  const auto rep = calibrate(o.energy);
  emit(o, io::to_json(rep));
  if (!rep.passed) {
    std::cerr << to_string(ErrorCode::CalibrationFailed) << ": no sign assignment reproduces the anchor quad\n";
    return kCalibrationFailed;
  }
  return kOk;
}

int cmd_report(const Options& o)
{
  emit(o, io::to_json(report_discrepancy(o.samples, o.seed)));
  return kOk;
}

void add_kinematics(CLI::App* sub, Options& o)
{
  sub->add_option("--energy", o.energy, "electron energy in MeV (also the photon energy unless --energy-photon)");
  sub->add_option("--energy-photon", o.energy_photon, "photon energy in MeV");
  sub->add_option("--theta-e", o.theta_e, "electron polar angle");
  sub->add_option("--theta-ph", o.theta_ph, "photon polar angle");
  sub->add_option("--phi-ph", o.phi_ph, "photon azimuth");
  sub->add_flag("--degrees", o.degrees, "angles are given in degrees");
}

void add_scan_flags(CLI::App* sub, Options& o)
{
  sub->add_option("--grid", o.grid, "grid resolution, NxM (N alone for figure 5)");
  sub->add_option("--quantity", o.quantity, "exchange or total")->check(CLI::IsMember({"exchange", "total"}));
  sub->add_option("--normalize", o.normalize, "gridmax or none")->check(CLI::IsMember({"gridmax", "none"}));
  sub->add_option("--threads", o.threads, "worker threads")->check(CLI::PositiveNumber);
}

}  // namespace

int main(int argc, char** argv)
{
  CLI::App app{"Channel-exchange probabilities and concurrence bounds for massless Compton scattering"};
  app.set_config("--config", "", "config file mirroring the command-line flags");
  app.require_subcommand(1);
  Options o;

  auto* point = app.add_subcommand("point", "evaluate a single configuration");
  add_kinematics(point, o);
  point->add_option("--quantity", o.quantity, "exchange or total")->check(CLI::IsMember({"exchange", "total"}));

  auto* scan = app.add_subcommand("scan", "run a figure scan and write data plus metadata files");
  add_kinematics(scan, o);
  add_scan_flags(scan, o);
  scan->add_option("--figure", o.figure, "3, 4, 5 or custom")->check(CLI::IsMember({"3", "4", "5", "custom"}));
  scan->add_option("--format", o.format, "csv or structured")->check(CLI::IsMember({"csv", "structured"}));
  scan->add_option("--fig5-far-phi", o.fig5_far_phi, "photon azimuth used past theta_s = pi in figure 5");

  auto* jumps = app.add_subcommand("find-jumps", "scan the coplanar grid and list jump points");
  add_kinematics(jumps, o);
  add_scan_flags(jumps, o);

  auto* cal = app.add_subcommand("calibrate", "search the sign conventions against the anchor point");
  cal->add_option("--energy", o.energy, "anchor energy in MeV");

  auto* rep = app.add_subcommand("report-discrepancy", "compare the closed form and the trace path on random configurations");
  rep->add_option("--seed", o.seed, "random seed");
  rep->add_option("--samples", o.samples, "number of configurations")->check(CLI::PositiveNumber);

  for (auto* sub : {point, scan, jumps, cal, rep}) sub->add_option("--out", o.out, "output path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInvalidSpec;
  }

  try {
    if (point->parsed()) return cmd_point(o);
    if (scan->parsed()) return cmd_scan(o);
    if (jumps->parsed()) return cmd_find_jumps(o);
    if (cal->parsed()) return cmd_calibrate(o);
    return cmd_report(o);
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    if (e.code() == ErrorCode::CalibrationFailed) return kCalibrationFailed;
    return kInvalidSpec;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
