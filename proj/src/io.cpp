#include "io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace pathspace {

namespace {

const Json& field(const Json& j, const char* name) {
  auto it = j.find(name);
  if (it == j.end()) fail(std::string("missing field '") + name + "'");
  return *it;
}

double number(const Json& j, const char* name) {
  const Json& v = field(j, name);
  require(v.is_number(), std::string("field '") + name + "' must be a number");
  return v.get<double>();
}

Json point_to_json(const StatePoint& p) {
  if (p.is_labeled()) return Json{{"label", p.label}};
  return Json(p.coords);
}

StatePoint point_from_json(const Json& j) {
  if (j.is_object()) return StatePoint::labeled(field(j, "label").get<int>());
  require(j.is_array(), "point: must be an array of coordinates or {\"label\": k}");
  return StatePoint(j.get<std::vector<double>>());
}

}  // namespace

Json horizon_to_json(const Horizon& h) {
  if (h.halfline) return Json{{"kind", "halfline"}};
  return Json{{"kind", "interval"}, {"a", h.a}, {"b", h.b}};
}

Horizon horizon_from_json(const Json& j) {
  std::string kind = field(j, "kind").get<std::string>();
  if (kind == "halfline") return Horizon::half_line();
  if (kind == "interval") return Horizon::interval(number(j, "a"), number(j, "b"));
  fail("horizon.kind: must be 'halfline' or 'interval'");
}

Json path_to_json(const Path& p) {
  Json j;
  if (const auto* sp = std::get_if<StepPath>(&p)) {
    j["horizon"] = horizon_to_json(sp->horizon);
    j["breakpoints"] = sp->times;
    Json values = Json::array();
    for (const auto& v : sp->values) values.push_back(point_to_json(v));
    j["values"] = values;
    return j;
  }
  const auto& pl = std::get<PiecewiseLinearPath>(p);
  j["horizon"] = horizon_to_json(pl.horizon);
  j["breakpoints"] = pl.knots;
  Json values = Json::array(), lefts = Json::array();
  for (const auto& v : pl.right) values.push_back(point_to_json(v));
  for (const auto& v : pl.left) lefts.push_back(point_to_json(v));
  j["values"] = values;
  j["left_values"] = lefts;
  return j;
}

Path path_from_json(const Json& j) {
  Horizon h = horizon_from_json(field(j, "horizon"));
  auto times = field(j, "breakpoints").get<std::vector<double>>();
  std::vector<StatePoint> values;
  for (const auto& v : field(j, "values")) values.push_back(point_from_json(v));
  if (!j.contains("left_values")) return StepPath(h, std::move(times), std::move(values));
  std::vector<StatePoint> lefts;
  for (const auto& v : j["left_values"]) lefts.push_back(point_from_json(v));
  return PiecewiseLinearPath(h, std::move(times), std::move(lefts), std::move(values));
}

Json time_change_to_json(const TimeChange& tc) {
  return Json{{"horizon", horizon_to_json(tc.horizon)}, {"knots", tc.knots}, {"images", tc.images}};
}

TimeChange time_change_from_json(const Json& j) {
  return TimeChange(horizon_from_json(field(j, "horizon")), field(j, "knots").get<std::vector<double>>(),
                    field(j, "images").get<std::vector<double>>());
}

Json metric_to_json(const MetricSpec& m) {
  switch (m.kind) {
    case MetricSpec::Kind::Euclidean:
      return Json{{"kind", "euclidean"}};
    case MetricSpec::Kind::TruncatedEuclidean:
      return Json{{"kind", "truncated-euclidean"}, {"cap", m.cap}};
    case MetricSpec::Kind::Table:
      return Json{{"kind", "table"}, {"table", m.table}};
    case MetricSpec::Kind::RhoFamily:
      return Json{{"kind", "rho-family"}, {"family", family_to_json(*m.family)}};
  }
  return {};
}

MetricSpec metric_from_json(const Json& j) {
  std::string kind = field(j, "kind").get<std::string>();
  if (kind == "euclidean") return MetricSpec::euclidean();
  if (kind == "truncated-euclidean") return MetricSpec::truncated(number(j, "cap"));
  if (kind == "table") return MetricSpec::from_table(field(j, "table").get<std::vector<std::vector<double>>>());
  if (kind == "rho-family")
    return MetricSpec::rho_of(std::make_shared<FunctionFamily>(family_from_json(field(j, "family"))));
  fail("metric.kind: unknown kind '" + kind + "'");
}

Json function_to_json(const BoundedFunction& f) {
  using K = BoundedFunction::Kind;
  switch (f.kind) {
    case K::One:
      return Json{{"kind", "one"}};
    case K::Coordinate:
      return Json{{"kind", "coordinate"}, {"i", f.coord}, {"bound", f.bound}};
    case K::Tent:
      return Json{{"kind", "tent"}, {"center", point_to_json(f.center)}, {"k", f.tent_k},
                  {"metric", metric_to_json(f.metric)}};
    case K::TruncPoly:
      return Json{{"kind", "poly"}, {"coeffs", f.poly}, {"bound", f.bound}, {"i", f.coord}};
    case K::Product: {
      Json parts = Json::array();
      for (const auto& g : f.parts) parts.push_back(function_to_json(g));
      return Json{{"kind", "product"}, {"of", parts}};
    }
    case K::Sum: {
      Json parts = Json::array();
      for (const auto& g : f.parts) parts.push_back(function_to_json(g));
      return Json{{"kind", "sum"}, {"of", parts}};
    }
    case K::Scale:
      return Json{{"kind", "scale"}, {"a", f.factor}, {"of", function_to_json(f.parts[0])}};
  }
  return {};
}

BoundedFunction function_from_json(const Json& j) {
  std::string kind = field(j, "kind").get<std::string>();
  if (kind == "one") return BoundedFunction::one();
  if (kind == "coordinate")
    return BoundedFunction::coordinate(field(j, "i").get<int>(), j.value("bound", 1.0));
  if (kind == "tent") {
    MetricSpec m = j.contains("metric") ? metric_from_json(j["metric"]) : MetricSpec::euclidean();
    return BoundedFunction::tent(point_from_json(field(j, "center")), number(j, "k"), std::move(m));
  }
  if (kind == "poly")
    return BoundedFunction::trunc_poly(field(j, "coeffs").get<std::vector<double>>(), number(j, "bound"),
                                       j.value("i", 0));
  if (kind == "product" || kind == "sum") {
    std::vector<BoundedFunction> parts;
    for (const auto& p : field(j, "of")) parts.push_back(function_from_json(p));
    return kind == "product" ? BoundedFunction::product(std::move(parts)) : BoundedFunction::sum(std::move(parts));
  }
  if (kind == "scale") return BoundedFunction::scale(number(j, "a"), function_from_json(field(j, "of")));
  fail("function.kind: unknown kind '" + kind + "'");
}

Json family_to_json(const FunctionFamily& D) {
  Json j = Json::array();
  for (const auto& f : D.members) j.push_back(function_to_json(f));
  return j;
}

FunctionFamily family_from_json(const Json& j) {
  require(j.is_array(), "family: must be an array of constructor records");
  std::vector<BoundedFunction> fs;
  for (const auto& rec : j) fs.push_back(function_from_json(rec));
  return FunctionFamily(std::move(fs));
}

Json region_to_json(const RegionSpec& r) {
  switch (r.kind) {
    case RegionSpec::Kind::Box:
      return Json{{"kind", "box"}, {"lo", r.lo}, {"hi", r.hi}, {"open", r.open_bounds}};
    case RegionSpec::Kind::Ball:
      return Json{{"kind", "ball"}, {"center", point_to_json(r.center)}, {"radius", r.radius},
                  {"metric", metric_to_json(r.ball_metric)}};
    case RegionSpec::Kind::Labels:
      return Json{{"kind", "labels"}, {"labels", r.labels}};
    case RegionSpec::Kind::Sample: {
      Json pts = Json::array();
      for (const auto& p : r.points) pts.push_back(point_to_json(p));
      return Json{{"kind", "sample"}, {"points", pts}};
    }
  }
  return {};
}

RegionSpec region_from_json(const Json& j) {
  std::string kind = field(j, "kind").get<std::string>();
  if (kind == "box")
    return RegionSpec::box(field(j, "lo").get<std::vector<double>>(), field(j, "hi").get<std::vector<double>>(),
                           j.value("open", false));
  if (kind == "ball") {
    MetricSpec m = j.contains("metric") ? metric_from_json(j["metric"]) : MetricSpec::euclidean();
    return RegionSpec::ball(point_from_json(field(j, "center")), number(j, "radius"), std::move(m));
  }
  if (kind == "labels") return RegionSpec::label_set(field(j, "labels").get<std::vector<int>>());
  if (kind == "sample") {
    std::vector<StatePoint> pts;
    for (const auto& p : field(j, "points")) pts.push_back(point_from_json(p));
    return RegionSpec::sample(std::move(pts));
  }
  fail("region.kind: unknown kind '" + kind + "'");
}

Json measure_to_json(const DiscreteMeasure& mu) {
  Json atoms = Json::array();
  for (const auto& a : mu.atoms) {
    Json pt;
    if (mu.arity == 1) {
      pt = point_to_json(a.point[0]);
    } else {
      pt = Json::array();
      for (const auto& p : a.point) pt.push_back(point_to_json(p));
    }
    atoms.push_back(Json{{"point", pt}, {"weight", a.weight}});
  }
  Json j{{"atoms", atoms}, {"arity", mu.arity}};
  if (mu.dropped_mass > 0) j["dropped_mass"] = mu.dropped_mass;
  if (!mu.provenance.empty()) j["provenance"] = mu.provenance;
  return j;
}

DiscreteMeasure measure_from_json(const Json& j) {
  int arity = j.value("arity", 1);
  std::vector<DiscreteMeasure::Atom> atoms;
  for (const auto& a : field(j, "atoms")) {
    DiscreteMeasure::Atom atom;
    atom.weight = number(a, "weight");
    const Json& pt = field(a, "point");
    if (arity == 1) {
      atom.point.push_back(point_from_json(pt));
    } else {
      for (const auto& p : pt) atom.point.push_back(point_from_json(p));
    }
    atoms.push_back(std::move(atom));
  }
  DiscreteMeasure mu(std::move(atoms), arity);
  mu.dropped_mass = j.value("dropped_mass", 0.0);
  mu.provenance = j.value("provenance", std::string());
  return mu;
}

Json expr_to_json(const AlgebraicExpr& e) {
  using K = AlgebraicExpr::Kind;
  switch (e.kind) {
    case K::Member:
      return Json{{"kind", "member"}, {"j", e.member}};
    case K::Scale:
      return Json{{"kind", "scale"}, {"a", e.factor}, {"of", expr_to_json(e.parts[0])}};
    case K::Sum:
    case K::Product: {
      Json parts = Json::array();
      for (const auto& p : e.parts) parts.push_back(expr_to_json(p));
      return Json{{"kind", e.kind == K::Sum ? "sum" : "product"}, {"of", parts}};
    }
  }
  return {};
}

AlgebraicExpr expr_from_json(const Json& j) {
  std::string kind = field(j, "kind").get<std::string>();
  if (kind == "member") return AlgebraicExpr::leaf(field(j, "j").get<int>());
  if (kind == "scale") return AlgebraicExpr::scale(number(j, "a"), expr_from_json(field(j, "of")));
  if (kind == "sum" || kind == "product") {
    std::vector<AlgebraicExpr> parts;
    for (const auto& p : field(j, "of")) parts.push_back(expr_from_json(p));
    return kind == "sum" ? AlgebraicExpr::sum(std::move(parts)) : AlgebraicExpr::product(std::move(parts));
  }
  fail("expr.kind: unknown kind '" + kind + "'");
}

Json base_to_json(const ReplicationBase& b) {
  Json sample = Json::array();
  for (const auto& p : b.reference_sample) sample.push_back(point_to_json(p));
  return Json{{"region", region_to_json(b.region)},
              {"family", family_to_json(b.family)},
              {"anchor", point_to_json(b.anchor)},
              {"reference_sample", sample}};
}

ReplicationBase base_from_json(const Json& j) {
  std::vector<StatePoint> sample;
  for (const auto& p : field(j, "reference_sample")) sample.push_back(point_from_json(p));
  return build_base(region_from_json(field(j, "region")), family_from_json(field(j, "family")),
                    point_from_json(field(j, "anchor")), std::move(sample), j.value("separation_tol", 0.0));
}

Json sampler_config_to_json(const SamplerConfig& c) {
  Json params;
  params["t_max"] = c.t_max;
  if (c.sampler == "deterministic-shift") params["c"] = c.shift_c;
  if (c.sampler == "random-walk") {
    params["sigma"] = c.walk_sigma;
    params["rate"] = c.walk_rate;
  }
  if (c.sampler == "poisson-jump") {
    params["rate"] = c.jump_rate;
    params["jump_scale"] = c.jump_scale;
  }
  return Json{{"sampler", c.sampler},
              {"N", c.n},
              {"seed", c.seed},
              {"horizon", horizon_to_json(c.horizon)},
              {"params", params}};
}

SamplerConfig sampler_config_from_json(const Json& j) {
  SamplerConfig c;
  c.sampler = field(j, "sampler").get<std::string>();
  c.n = field(j, "N").get<int>();
  c.seed = field(j, "seed").get<uint64_t>();
  if (j.contains("horizon")) c.horizon = horizon_from_json(j["horizon"]);
  Json params = j.value("params", Json::object());
  c.t_max = params.value("t_max", 10.0);
  c.shift_c = params.value("c", 0.0);
  c.walk_sigma = params.value("sigma", 1.0);
  c.walk_rate = params.value("rate", 1.0);
  c.jump_rate = params.value("rate", 1.0);
  c.jump_scale = params.value("jump_scale", 1.0);
  if (j.contains("paths")) {
    for (const auto& p : j["paths"]) c.custom.push_back(path_from_json(p));
    c.sampler = "custom-paths";
    c.n = (int)c.custom.size();
  }
  return c;
}

Json ensemble_to_json(const ProcessEnsemble& e) {
  Json paths = Json::array();
  for (const auto& p : e.paths) paths.push_back(path_to_json(p));
  return Json{{"config", sampler_config_to_json(e.config)}, {"paths", paths}};
}

ProcessEnsemble ensemble_from_json(const Json& j) {
  ProcessEnsemble e;
  e.config = sampler_config_from_json(field(j, "config"));
  for (const auto& p : field(j, "paths")) e.paths.push_back(path_from_json(p));
  require(!e.paths.empty(), "ensemble.paths: must be non-empty");
  e.config.n = (int)e.paths.size();
  return e;
}

Json load_json_file(const std::string& file) {
  std::ifstream in(file);
  if (!in) throw IoError("cannot open file '" + file + "'");
  Json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw IoError("malformed JSON in '" + file + "': " + e.what());
  }
  return j;
}

void save_json_file(const std::string& file, const Json& j) {
  std::ofstream out(file);
  if (!out) throw IoError("cannot open file '" + file + "' for writing");
  out << j.dump(2) << "\n";
  if (!out) throw IoError("failed writing '" + file + "'");
}

std::string report_to_csv(const Json& report) {
  Json flat = report.flatten();
  std::ostringstream os;
  os << "key,value\n";
  for (auto it = flat.begin(); it != flat.end(); ++it) {
    os << '"' << it.key() << "\",";
    const Json& v = it.value();
    if (v.is_number()) {
      char buf[40];
      std::snprintf(buf, sizeof(buf), "%.17g", v.get<double>());
      os << buf;
    } else if (v.is_string()) {
      os << '"' << v.get<std::string>() << '"';
    } else {
      os << v.dump();
    }
    os << "\n";
  }
  return os.str();
}

}  // namespace pathspace
