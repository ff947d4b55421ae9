#include "pathspace/pathspace.h"

#include <cstring>
#include <string>

#include "commands.hpp"

using namespace pathspace;

struct ps_path {
  Path value;
};
struct ps_time_change {
  TimeChange value;
};
struct ps_family {
  FunctionFamily value;
};
struct ps_base {
  ReplicationBase value;
};
struct ps_measure {
  DiscreteMeasure value;
};
struct ps_ensemble {
  ProcessEnsemble value;
};

namespace {

thread_local std::string g_last_error;

char* dup_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

template <typename Fn>
ps_status guarded(Fn&& fn) {
  try {
    fn();
    g_last_error.clear();
    return PS_OK;
  } catch (const ValidationError& e) {
    g_last_error = e.what();
    return PS_ERR_VALIDATION;
  } catch (const IoError& e) {
    g_last_error = e.what();
    return PS_ERR_IO;
  } catch (const nlohmann::json::exception& e) {
    g_last_error = e.what();
    return PS_ERR_IO;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return PS_ERR_INTERNAL;
  }
}

Json parse(const char* json, const char* what) {
  require(json != nullptr, std::string(what) + ": null JSON");
  return Json::parse(json);
}

MetricSpec metric_arg(const char* metric_json) {
  if (metric_json == nullptr) return MetricSpec::euclidean();
  return metric_from_json(Json::parse(metric_json));
}

void write_coords(const StatePoint& p, double* out, int cap, int* out_dim) {
  require(!p.is_labeled(), "output point is labeled, not coordinate-valued");
  require((int)p.coords.size() <= cap, "output buffer too small");
  for (size_t i = 0; i < p.coords.size(); ++i) out[i] = p.coords[i];
  if (out_dim) *out_dim = (int)p.coords.size();
}

}  // namespace

extern "C" {

const char* ps_last_error(void) { return g_last_error.c_str(); }

void ps_string_free(char* s) { delete[] s; }

ps_status ps_path_from_json(const char* json, ps_path** out) {
  return guarded([&] { *out = new ps_path{path_from_json(parse(json, "path"))}; });
}

ps_status ps_path_to_json(const ps_path* path, char** out_json) {
  return guarded([&] { *out_json = dup_string(path_to_json(path->value).dump()); });
}

void ps_path_free(ps_path* path) { delete path; }

ps_status ps_path_eval(const ps_path* path, double t, double* out, int cap, int* out_dim) {
  return guarded([&] { write_coords(path_eval(path->value, t), out, cap, out_dim); });
}

ps_status ps_path_left_limit(const ps_path* path, double t, double* out, int cap, int* out_dim) {
  return guarded([&] { write_coords(path_left_limit(path->value, t), out, cap, out_dim); });
}

ps_status ps_path_jump_times(const ps_path* path, const char* metric_json, double tol, double* out, int cap,
                             int* out_count) {
  return guarded([&] {
    auto times = jump_times(path->value, metric_arg(metric_json), tol);
    require((int)times.size() <= cap, "output buffer too small");
    for (size_t i = 0; i < times.size(); ++i) out[i] = times[i];
    *out_count = (int)times.size();
  });
}

ps_status ps_path_restrict_extend(const ps_path* path, double u, ps_path** out) {
  return guarded([&] {
    const auto* sp = std::get_if<StepPath>(&path->value);
    require(sp != nullptr, "restrict_extend: requires a step path");
    *out = new ps_path{restrict_extend(*sp, u)};
  });
}

ps_status ps_time_change_from_json(const char* json, ps_time_change** out) {
  return guarded([&] { *out = new ps_time_change{time_change_from_json(parse(json, "time_change"))}; });
}

void ps_time_change_free(ps_time_change* tc) { delete tc; }

ps_status ps_time_change_norm(const ps_time_change* tc, double* out) {
  return guarded([&] { *out = time_change_norm(tc->value); });
}

ps_status ps_compose_time_change(const ps_path* path, const ps_time_change* tc, ps_path** out) {
  return guarded([&] {
    const auto* sp = std::get_if<StepPath>(&path->value);
    require(sp != nullptr, "compose_time_change: requires a step path");
    *out = new ps_path{compose_time_change(*sp, tc->value)};
  });
}

ps_status ps_sko_dist(const ps_path* x, const ps_path* y, const char* metric_json, const char* options_json,
                      char** out_report_json) {
  return guarded([&] {
    Json config;
    config["x"] = path_to_json(x->value);
    config["y"] = path_to_json(y->value);
    if (metric_json) config["metric"] = Json::parse(metric_json);
    if (options_json) config["options"] = Json::parse(options_json);
    *out_report_json = dup_string(run_dist(config).dump());
  });
}

ps_status ps_modulus_w_prime(const ps_path* path, const char* metric_json, double delta, double T, double* out) {
  return guarded([&] {
    const auto* sp = std::get_if<StepPath>(&path->value);
    require(sp != nullptr, "modulus_w_prime: requires a step path");
    *out = modulus_w_prime(*sp, metric_arg(metric_json), delta, T);
  });
}

ps_status ps_sup_band_dist(const ps_path* x, const ps_path* y, double a, double b, const char* metric_json,
                           double* out) {
  return guarded([&] { *out = sup_band_dist(x->value, y->value, a, b, metric_arg(metric_json)); });
}

ps_status ps_family_from_json(const char* json, ps_family** out) {
  return guarded([&] { *out = new ps_family{family_from_json(parse(json, "family"))}; });
}

void ps_family_free(ps_family* family) { delete family; }

ps_status ps_family_size(const ps_family* family, int* out) {
  return guarded([&] { *out = (int)family->value.size(); });
}

ps_status ps_family_rho(const ps_family* family, const char* x_json, const char* y_json, double* out) {
  return guarded([&] {
    StatePoint x(Json::parse(x_json).get<std::vector<double>>());
    StatePoint y(Json::parse(y_json).get<std::vector<double>>());
    *out = rho_family(family->value, x, y);
  });
}

ps_status ps_family_closure(const ps_family* family, const char* mode, int max_terms, int max_factors,
                            char** out_json) {
  return guarded([&] {
    ClosureBudget budget;
    budget.max_terms = max_terms;
    budget.max_factors = max_factors;
    FunctionFamily closed = build_closure(family->value, closure_mode_from_string(mode), budget);
    *out_json = dup_string(family_to_json(closed).dump());
  });
}

ps_status ps_base_build(const char* base_json, ps_base** out) {
  return guarded([&] { *out = new ps_base{base_from_json(parse(base_json, "base"))}; });
}

void ps_base_free(ps_base* base) { delete base; }

ps_status ps_base_embed(const ps_base* base, const char* point_json, double* out, int cap, int* out_dim) {
  return guarded([&] {
    StatePoint x(Json::parse(point_json).get<std::vector<double>>());
    EmbeddedPoint p = embed(base->value, x);
    require((int)p.vec.size() <= cap, "output buffer too small");
    for (size_t i = 0; i < p.vec.size(); ++i) out[i] = p.vec[i];
    if (out_dim) *out_dim = (int)p.vec.size();
  });
}

ps_status ps_base_rho_hat(const ps_base* base, const double* p, const double* q, int dim, double* out) {
  return guarded([&] {
    EmbeddedPoint a, b;
    a.vec.assign(p, p + dim);
    b.vec.assign(q, q + dim);
    *out = rho_hat(base->value, a, b);
  });
}

ps_status ps_measure_from_json(const char* json, ps_measure** out) {
  return guarded([&] { *out = new ps_measure{measure_from_json(parse(json, "measure"))}; });
}

ps_status ps_measure_to_json(const ps_measure* mu, char** out_json) {
  return guarded([&] { *out_json = dup_string(measure_to_json(mu->value).dump()); });
}

void ps_measure_free(ps_measure* mu) { delete mu; }

ps_status ps_measure_total_mass(const ps_measure* mu, double* out) {
  return guarded([&] { *out = mu->value.total_mass(); });
}

ps_status ps_measure_integral(const ps_measure* mu, const char* function_json, double* out) {
  return guarded([&] {
    BoundedFunction f = function_from_json(parse(function_json, "function"));
    *out = integral(mu->value, f);
  });
}

ps_status ps_replica_measure(const ps_base* base, const ps_measure* mu, ps_measure** out) {
  return guarded([&] { *out = new ps_measure{replica_measure(base->value, mu->value)}; });
}

ps_status ps_ensemble_simulate(const char* sampler_config_json, int workers, ps_ensemble** out) {
  return guarded([&] {
    SamplerConfig config = sampler_config_from_json(parse(sampler_config_json, "sampler_config"));
    *out = new ps_ensemble{simulate(config, workers)};
  });
}

ps_status ps_ensemble_from_json(const char* json, ps_ensemble** out) {
  return guarded([&] { *out = new ps_ensemble{ensemble_from_json(parse(json, "ensemble"))}; });
}

ps_status ps_ensemble_to_json(const ps_ensemble* ens, char** out_json) {
  return guarded([&] { *out_json = dup_string(ensemble_to_json(ens->value).dump()); });
}

void ps_ensemble_free(ps_ensemble* ens) { delete ens; }

ps_status ps_band_prob(const ps_ensemble* ens, double a, double b, double T, double* out_estimate,
                       double* out_stderr) {
  return guarded([&] {
    Estimate e = band_prob(ens->value, a, b, T);
    *out_estimate = e.value;
    if (out_stderr) *out_stderr = e.stderr_;
  });
}

ps_status ps_rap(const ps_ensemble* ens, double T, uint64_t seed, ps_ensemble** out) {
  return guarded([&] { *out = new ps_ensemble{rap(ens->value, T, seed)}; });
}

ps_status ps_run_command(const char* command, const char* config_json, char** out_report_json) {
  return guarded([&] {
    require(command != nullptr, "command: must not be null");
    Json config = parse(config_json, "config");
    *out_report_json = dup_string(run_command(command, config).dump());
  });
}

ps_status ps_report_to_csv(const char* report_json, char** out_csv) {
  return guarded([&] { *out_csv = dup_string(report_to_csv(parse(report_json, "report"))); });
}

}  // extern "C"
