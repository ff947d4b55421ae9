#include "commands.hpp"

#include <sstream>

namespace pathspace {

namespace {

MetricSpec metric_or_default(const Json& config) {
  return config.contains("metric") ? metric_from_json(config["metric"]) : MetricSpec::euclidean();
}

SkoOptions sko_options(const Json& config) {
  SkoOptions opts;
  if (config.contains("options")) {
    const Json& o = config["options"];
    opts.matching_depth = o.value("matching_depth", opts.matching_depth);
    opts.refine_grid = o.value("refine_grid", opts.refine_grid);
    opts.tol = o.value("tol", opts.tol);
  }
  return opts;
}

StepPath step_path_field(const Json& config, const char* name) {
  require(config.contains(name), std::string("missing field '") + name + "'");
  Path p = path_from_json(config[name]);
  const auto* sp = std::get_if<StepPath>(&p);
  require(sp != nullptr, std::string("field '") + name + "' must be a step path");
  return *sp;
}

ProcessEnsemble ensemble_field(const Json& config, int workers) {
  if (config.contains("ensemble")) return ensemble_from_json(config["ensemble"]);
  require(config.contains("sampler_config"), "missing field 'sampler_config' (or inline 'ensemble')");
  return simulate(sampler_config_from_json(config["sampler_config"]), workers);
}

Json report_shell(const std::string& command, const Json& config) {
  return Json{{"command", command}, {"config", config}, {"result", Json::object()}};
}

std::vector<double> number_list(const Json& j, const char* name) {
  require(j.contains(name), std::string("missing field '") + name + "'");
  return j[name].get<std::vector<double>>();
}

}  // namespace

Json run_dist(const Json& config) {
  StepPath x = step_path_field(config, "x");
  StepPath y = step_path_field(config, "y");
  MetricSpec metric = metric_or_default(config);
  SkoOptions opts = sko_options(config);
  SkoResult res = sko_dist(x, y, metric, opts);

  Json report = report_shell("dist", config);
  Json& r = report["result"];
  r["value"] = res.value;
  r["witness_knots"] = res.witness.knots;
  r["witness_images"] = res.witness.images;
  r["candidates_evaluated"] = res.candidates_evaluated;
  if (res.certified_lower) r["certified_lower"] = *res.certified_lower;
  return report;
}

Json run_modulus(const Json& config) {
  StepPath x = step_path_field(config, "path");
  MetricSpec metric = metric_or_default(config);
  double T = config.value("T", 0.0);
  require(T > 0, "field 'T' must be positive");
  auto deltas = number_list(config, "deltas");
  Json rows = Json::array();
  for (double delta : deltas) {
    if (!(delta < T)) {
      std::ostringstream os;
      os << "field 'deltas': delta " << delta << " must be smaller than T " << T;
      fail(os.str());
    }
    rows.push_back(Json{{"delta", delta}, {"w_prime", modulus_w_prime(x, metric, delta, T)}});
  }
  Json report = report_shell("modulus", config);
  report["result"]["rows"] = rows;
  return report;
}

Json run_tightness(const Json& config) {
  const std::string check = config.value("check", "band");
  const int workers = config.value("parallel", 1);
  Json report = report_shell("tightness", config);
  Json& r = report["result"];
  r["check"] = check;

  if (check == "band") {
    ProcessEnsemble ens = ensemble_field(config, workers);
    auto band = number_list(config, "band");
    require(band.size() == 2, "field 'band' must be [a, b]");
    double T = config.value("T", 1.0);
    Estimate e = band_prob(ens, band[0], band[1], T, workers);
    r["band_prob"] = e.value;
    r["stderr"] = e.stderr_;
    r["n"] = e.n;
    return report;
  }
  if (check == "mpcc") {
    std::vector<ProcessEnsemble> family;
    if (config.contains("family")) {
      for (const auto& sc : config["family"]) family.push_back(simulate(sampler_config_from_json(sc), workers));
    } else {
      family.push_back(ensemble_field(config, workers));
    }
    double eps = config.value("eps", 0.1);
    double t = config.value("t", 0.0);
    RegionSpec region = region_from_json(config.at("region"));
    MpccResult res = mpcc_check(family, eps, t, region, metric_or_default(config));
    r["inf_probability"] = res.inf_probability;
    r["margin"] = res.margin;
    r["pass"] = res.pass;
    r["per_ensemble"] = res.per_ensemble;
    return report;
  }
  if (check == "lmtc") {
    auto band = number_list(config, "band");
    require(band.size() == 2, "field 'band' must be [a, b]");
    TimeSchedule schedule(number_list(config, "schedule"));
    const std::string mode = config.value("mode", "mc");
    LmtcProfile prof;
    if (mode == "closed-form") {
      require(!config.contains("sampler_config") ||
                  config["sampler_config"].value("sampler", std::string()) == "eta",
              "field 'mode': closed-form profile exists only for the eta sampler");
      prof = lmtc_eta_closed_form(schedule, band[0], band[1]);
    } else {
      ProcessEnsemble ens = ensemble_field(config, workers);
      prof = lmtc_mc(ens, schedule, band[0], band[1], config.value("quad_step", 1e-3), workers);
    }
    r["schedule"] = prof.schedule;
    r["values"] = prof.values;
    r["stderrs"] = prof.stderrs;
    r["closed_form"] = prof.closed_form;
    return report;
  }
  if (check == "mcc") {
    std::vector<ProcessEnsemble> family;
    if (config.contains("family")) {
      for (const auto& sc : config["family"]) family.push_back(simulate(sampler_config_from_json(sc), workers));
    } else {
      family.push_back(ensemble_field(config, workers));
    }
    double eps = config.value("eps", 0.1);
    double T = config.value("T", 1.0);
    MccResult res = mcc_probe(family, metric_or_default(config), eps, T, number_list(config, "delta_grid"), workers);
    if (res.certified_delta) r["certified_delta"] = *res.certified_delta;
    r["found"] = res.certified_delta.has_value();
    r["grid"] = res.grid;
    r["worst_exceedance"] = res.worst_exceedance;
    return report;
  }
  fail("field 'check': unknown tightness check '" + check + "'");
}

Json run_fdc(const Json& config) {
  const int workers = config.value("parallel", 1);
  std::vector<ProcessEnsemble> seq;
  require(config.contains("sequence"), "missing field 'sequence'");
  for (const auto& sc : config["sequence"]) seq.push_back(simulate(sampler_config_from_json(sc), workers));
  require(config.contains("limit"), "missing field 'limit'");
  ProcessEnsemble limit = simulate(sampler_config_from_json(config["limit"]), workers);
  FunctionFamily D = family_from_json(config.at("family"));

  std::vector<std::vector<double>> t0_list;
  require(config.contains("t0_list"), "missing field 't0_list'");
  for (const auto& t0 : config["t0_list"]) t0_list.push_back(t0.get<std::vector<double>>());

  FdcOptions opts;
  opts.tol = config.value("tol", 1e-3);
  opts.window = config.value("window", 1);
  opts.max_factors = config.value("max_factors", 2);
  opts.max_family = config.value("max_family", 4);

  ConvergenceReport rep = fdc_test(seq, limit, D, t0_list, opts);
  Json report = report_shell("fdc", config);
  Json& r = report["result"];
  r["pass"] = rep.pass;
  r["window"] = rep.window;
  r["tol"] = rep.tol;
  Json fns = Json::array();
  for (const auto& pf : rep.functions)
    fns.push_back(Json{{"name", pf.name}, {"gaps", pf.gaps}, {"final_gap", pf.final_gap}});
  r["functions"] = fns;
  return report;
}

Json run_replicate(const Json& config) {
  ReplicationBase base = base_from_json(config.at("base"));
  Json report = report_shell("replicate", config);
  Json& r = report["result"];
  r["depth"] = base.depth;
  if (config.contains("measure")) {
    DiscreteMeasure mu = measure_from_json(config["measure"]);
    DiscreteMeasure bar = replica_measure(base, mu);
    r["replica_measure"] = measure_to_json(bar);
    r["dropped_mass"] = bar.dropped_mass;
    return report;
  }
  if (config.contains("ensemble") || config.contains("sampler_config")) {
    ProcessEnsemble ens = ensemble_field(config, config.value("parallel", 1));
    ProcessEnsemble rep = replica_process(base, ens, config.value("membership_tol", 1e-9));
    r["replica_ensemble"] = ensemble_to_json(rep);
    return report;
  }
  fail("replicate: needs a 'measure', 'ensemble' or 'sampler_config' field");
}

Json run_simulate(const Json& config) {
  require(config.contains("sampler_config"), "missing field 'sampler_config'");
  ProcessEnsemble ens = simulate(sampler_config_from_json(config["sampler_config"]), config.value("parallel", 1));
  Json report = report_shell("simulate", config);
  report["result"]["ensemble"] = ensemble_to_json(ens);
  return report;
}

Json run_report(const Json& config) {
  require(config.contains("reports"), "missing field 'reports'");
  Json merged = Json::array();
  for (const auto& rep : config["reports"]) merged.push_back(rep);
  Json report = report_shell("report", Json{{"count", merged.size()}});
  report["result"]["merged"] = merged;
  return report;
}

Json run_command(const std::string& name, const Json& config) {
  if (name == "dist") return run_dist(config);
  if (name == "modulus") return run_modulus(config);
  if (name == "tightness") return run_tightness(config);
  if (name == "fdc") return run_fdc(config);
  if (name == "replicate") return run_replicate(config);
  if (name == "simulate") return run_simulate(config);
  if (name == "report") return run_report(config);
  fail("unknown subcommand '" + name + "'");
}

}  // namespace pathspace
