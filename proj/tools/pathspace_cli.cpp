// Command-line front end. All computation goes through the C API; this file
// only parses flags, loads input files into the config JSON and writes the
// report. Exit codes: 0 success, 1 validation error, 2 I/O error.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <json.hpp>

#include "pathspace/pathspace.h"

namespace {

using Json = nlohmann::json;

struct CliOptions {
  uint64_t seed = 0;
  long samples = 0;
  double tol = -1.0;
  int window = 0;
  std::string out;
  std::string format = "json";
  int parallel = 1;
};

Json load_file(const std::string& file) {
  std::ifstream in(file);
  if (!in) throw std::ios_base::failure("cannot open file '" + file + "'");
  Json j;
  in >> j;
  return j;
}

int emit(const std::string& command, const Json& config, const CliOptions& cli) {
  char* report_json = nullptr;
  ps_status st = ps_run_command(command.c_str(), config.dump().c_str(), &report_json);
  if (st != PS_OK) {
    std::cerr << "error: " << ps_last_error() << "\n";
    return st == PS_ERR_IO ? 2 : 1;
  }
  std::string payload = report_json;
  ps_string_free(report_json);

  if (cli.format == "csv") {
    char* csv = nullptr;
    st = ps_report_to_csv(payload.c_str(), &csv);
    if (st != PS_OK) {
      std::cerr << "error: " << ps_last_error() << "\n";
      return 1;
    }
    payload = csv;
    ps_string_free(csv);
  } else {
    payload = Json::parse(payload).dump(2) + "\n";
  }

  if (cli.out.empty()) {
    std::cout << payload;
  } else {
    std::ofstream out(cli.out);
    if (!out) {
      std::cerr << "error: cannot open output file '" << cli.out << "'\n";
      return 2;
    }
    out << payload;
  }
  return 0;
}

void add_common(CLI::App* cmd, CliOptions& cli) {
  cmd->add_option("--seed", cli.seed, "top-level seed for all randomness");
  cmd->add_option("--samples", cli.samples, "sample count N");
  cmd->add_option("--tol", cli.tol, "tolerance");
  cmd->add_option("--window", cli.window, "trailing window length");
  cmd->add_option("--out", cli.out, "output file (stdout when omitted)");
  cmd->add_option("--format", cli.format, "json|csv")->check(CLI::IsMember({"json", "csv"}));
  cmd->add_option("--parallel", cli.parallel, "worker threads for per-path work");
}

Json sampler_config(const std::string& sampler, const CliOptions& cli, double t_max) {
  Json sc;
  sc["sampler"] = sampler;
  sc["N"] = cli.samples > 0 ? cli.samples : 1000;
  sc["seed"] = cli.seed;
  sc["horizon"] = Json{{"kind", "halfline"}};
  sc["params"] = Json{{"t_max", t_max}};
  return sc;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pathspace: Skorokhod distances, moduli of continuity and weak-convergence diagnostics"};
  app.require_subcommand(1);
  CliOptions cli;

  // dist
  auto* dist = app.add_subcommand("dist", "Skorokhod J1 distance between two path files");
  std::string dist_x, dist_y, dist_metric;
  int matching_depth = 8, refine_grid = 0;
  dist->add_option("x", dist_x, "first path file")->required();
  dist->add_option("y", dist_y, "second path file")->required();
  dist->add_option("--metric", dist_metric, "metric JSON file");
  dist->add_option("--matching-depth", matching_depth, "max matched jumps per side");
  dist->add_option("--refine-grid", refine_grid, "knot perturbation grid");
  add_common(dist, cli);

  // modulus
  auto* modulus = app.add_subcommand("modulus", "w' modulus-of-continuity table over a delta grid");
  std::string mod_path, mod_metric;
  double mod_T = 1.0;
  std::vector<double> mod_deltas;
  modulus->add_option("path", mod_path, "path file")->required();
  modulus->add_option("--T", mod_T, "time horizon")->required();
  modulus->add_option("--delta", mod_deltas, "delta grid")->required();
  modulus->add_option("--metric", mod_metric, "metric JSON file");
  add_common(modulus, cli);

  // tightness
  auto* tight = app.add_subcommand("tightness", "band / mpcc / lmtc / mcc diagnostics");
  std::string t_check = "band", t_sampler = "eta", t_ensemble_file, t_region_file, t_mode = "mc";
  std::vector<double> t_band{0.25, 0.75}, t_schedule, t_delta_grid;
  double t_T = 1.0, t_eps = 0.1, t_t = 0.0, t_quad = 1e-3, t_tmax = 10.0;
  tight->add_option("--check", t_check, "band|mpcc|lmtc|mcc");
  tight->add_option("--sampler", t_sampler, "eta|deterministic-shift|ramp|random-walk|poisson-jump");
  tight->add_option("--ensemble", t_ensemble_file, "ensemble file instead of a sampler");
  tight->add_option("--band", t_band, "band [a b]")->expected(2)->delimiter(',');
  tight->add_option("--T", t_T, "time horizon");
  tight->add_option("--eps", t_eps, "epsilon");
  tight->add_option("--t", t_t, "time point (mpcc)");
  tight->add_option("--region", t_region_file, "region JSON file (mpcc)");
  tight->add_option("--schedule", t_schedule, "T_k schedule (lmtc)")->delimiter(',');
  tight->add_option("--mode", t_mode, "mc|closed-form (lmtc)");
  tight->add_option("--quad-step", t_quad, "quadrature step (lmtc mc mode)");
  tight->add_option("--delta-grid", t_delta_grid, "delta grid (mcc)")->delimiter(',');
  tight->add_option("--t-max", t_tmax, "materialization window for half-line samplers");
  add_common(tight, cli);

  // fdc
  auto* fdc = app.add_subcommand("fdc", "finite-dimensional convergence test");
  std::string fdc_config;
  fdc->add_option("config", fdc_config, "fdc config JSON file")->required();
  add_common(fdc, cli);

  // replicate
  auto* repl = app.add_subcommand("replicate", "replica of a measure or ensemble under a base");
  std::string repl_base, repl_measure, repl_ensemble;
  double repl_tol = 1e-9;
  repl->add_option("--base", repl_base, "base JSON file")->required();
  repl->add_option("--measure", repl_measure, "measure file to replicate");
  repl->add_option("--ensemble", repl_ensemble, "ensemble file to replicate");
  repl->add_option("--membership-tol", repl_tol, "rho_hat cloud membership tolerance");
  add_common(repl, cli);

  // simulate
  auto* sim = app.add_subcommand("simulate", "sample a seeded process ensemble");
  std::string sim_sampler = "eta", sim_config_file;
  double sim_tmax = 10.0, sim_shift = 0.0;
  sim->add_option("--sampler", sim_sampler, "eta|deterministic-shift|ramp|random-walk|poisson-jump");
  sim->add_option("--config", sim_config_file, "full sampler config JSON file (overrides flags)");
  sim->add_option("--t-max", sim_tmax, "materialization window");
  sim->add_option("--shift-c", sim_shift, "constant for deterministic-shift");
  add_common(sim, cli);

  // report
  auto* rep = app.add_subcommand("report", "merge prior JSON reports (CSV with --format csv)");
  std::vector<std::string> rep_files;
  rep->add_option("files", rep_files, "report files")->required();
  add_common(rep, cli);

  CLI11_PARSE(app, argc, argv);

  try {
    if (dist->parsed()) {
      Json config;
      config["x"] = load_file(dist_x);
      config["y"] = load_file(dist_y);
      if (!dist_metric.empty()) config["metric"] = load_file(dist_metric);
      config["options"] =
          Json{{"matching_depth", matching_depth}, {"refine_grid", refine_grid}, {"tol", cli.tol > 0 ? cli.tol : 1e-9}};
      return emit("dist", config, cli);
    }
    if (modulus->parsed()) {
      Json config;
      config["path"] = load_file(mod_path);
      if (!mod_metric.empty()) config["metric"] = load_file(mod_metric);
      config["T"] = mod_T;
      config["deltas"] = mod_deltas;
      return emit("modulus", config, cli);
    }
    if (tight->parsed()) {
      Json config;
      config["check"] = t_check;
      config["parallel"] = cli.parallel;
      if (!t_ensemble_file.empty())
        config["ensemble"] = load_file(t_ensemble_file);
      else
        config["sampler_config"] = sampler_config(t_sampler, cli, t_tmax);
      config["band"] = t_band;
      config["T"] = t_T;
      config["eps"] = t_eps;
      config["t"] = t_t;
      if (!t_region_file.empty()) config["region"] = load_file(t_region_file);
      if (!t_schedule.empty()) config["schedule"] = t_schedule;
      config["mode"] = t_mode;
      config["quad_step"] = t_quad;
      if (!t_delta_grid.empty()) config["delta_grid"] = t_delta_grid;
      return emit("tightness", config, cli);
    }
    if (fdc->parsed()) {
      Json config = load_file(fdc_config);
      if (cli.tol > 0) config["tol"] = cli.tol;
      if (cli.window > 0) config["window"] = cli.window;
      config["parallel"] = cli.parallel;
      return emit("fdc", config, cli);
    }
    if (repl->parsed()) {
      Json config;
      config["base"] = load_file(repl_base);
      if (!repl_measure.empty()) config["measure"] = load_file(repl_measure);
      if (!repl_ensemble.empty()) config["ensemble"] = load_file(repl_ensemble);
      config["membership_tol"] = repl_tol;
      config["parallel"] = cli.parallel;
      return emit("replicate", config, cli);
    }
    if (sim->parsed()) {
      Json config;
      if (!sim_config_file.empty()) {
        config["sampler_config"] = load_file(sim_config_file);
      } else {
        Json sc = sampler_config(sim_sampler, cli, sim_tmax);
        if (sim_sampler == "deterministic-shift") sc["params"]["c"] = sim_shift;
        config["sampler_config"] = sc;
      }
      config["parallel"] = cli.parallel;
      return emit("simulate", config, cli);
    }
    if (rep->parsed()) {
      Json config;
      Json reports = Json::array();
      for (const auto& f : rep_files) reports.push_back(load_file(f));
      config["reports"] = reports;
      return emit("report", config, cli);
    }
  } catch (const std::ios_base::failure& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const Json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 1;
}
