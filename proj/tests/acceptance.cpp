// Acceptance suite: one check per shipped criterion, each printed as a
// PASS/FAIL line with the measured values and runtime. The process exits with
// the number of failed criteria. argv[1] must point at the pathspace CLI
// binary (criterion 1 drives the real executable).

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "commands.hpp"
#include "helpers.hpp"
#include "skorokhod.hpp"

using namespace pathspace;
using testutil::random_step_path;
using testutil::scalar_step;

namespace {

const MetricSpec euclid = MetricSpec::euclidean();
std::string g_cli_path;
int g_failures = 0;

void run_criterion(int number, const std::string& title, const std::function<bool(std::string&)>& body) {
  auto start = std::chrono::steady_clock::now();
  std::string detail;
  bool ok = false;
  try {
    ok = body(detail);
  } catch (const std::exception& e) {
    detail = std::string("exception: ") + e.what();
  }
  double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::printf("[%s] %2d. %s (%.2f s)%s%s\n", ok ? "PASS" : "FAIL", number, title.c_str(), seconds,
              detail.empty() ? "" : " -- ", detail.c_str());
  std::fflush(stdout);
  if (!ok) ++g_failures;
}

// --- criterion 1: the CLI reports band_prob exactly 0 for eta ------------------

bool criterion_band_cli(std::string& detail) {
  const std::string out = "acceptance_band.json";
  std::string cmd = "\"" + g_cli_path +
                    "\" tightness --sampler eta --band 0.25,0.75 --T 1 --samples 10000 --seed 1 --out " + out;
  int rc = std::system(cmd.c_str());
  if (rc != 0) {
    detail = "CLI exited with code " + std::to_string(rc);
    return false;
  }
  std::ifstream in(out);
  if (!in) {
    detail = "missing CLI output";
    return false;
  }
  Json report;
  in >> report;
  double prob = report["result"]["band_prob"].get<double>();
  int n = report["result"]["n"].get<int>();
  std::ostringstream os;
  os << "band_prob=" << prob << " over n=" << n;
  detail = os.str();
  return prob == 0.0 && n == 10000;
}

// --- criterion 2: eta satisfies LMTC ---------------------------------------------

bool criterion_lmtc(std::string& detail) {
  TimeSchedule schedule({2.0, 5.0, 10.0, 20.0});
  LmtcProfile exact = lmtc_eta_closed_form(schedule, 0.1, 0.9);
  for (size_t k = 0; k < schedule.points.size(); ++k) {
    if (!(exact.values[k] >= 1.0 - 1.0 / schedule.points[k])) {
      detail = "closed form below 1 - 1/T";
      return false;
    }
  }
  if (!(exact.values[3] >= 0.95)) {
    detail = "closed form below 0.95 at T=20";
    return false;
  }

  SamplerConfig config;
  config.sampler = "eta";
  config.n = 100000;
  config.seed = 2;
  ProcessEnsemble ens = simulate(config, 4);
  LmtcProfile mc = lmtc_mc(ens, schedule, 0.1, 0.9, 1e-3, 4);
  std::ostringstream os;
  os.precision(6);
  for (size_t k = 0; k < schedule.points.size(); ++k) {
    double gap = std::abs(mc.values[k] - exact.values[k]);
    os << "T=" << schedule.points[k] << ":|mc-cf|=" << gap << "<=3se=" << 3.0 * mc.stderrs[k] << " ";
    if (!(gap <= 3.0 * mc.stderrs[k])) {
      detail = os.str();
      return false;
    }
  }
  detail = os.str();
  return true;
}

// --- criterion 3: eta is non-stationary --------------------------------------------

bool criterion_nonstationary(std::string& detail) {
  SamplerConfig config;
  config.sampler = "eta";
  config.n = 100000;
  config.seed = 3;
  ProcessEnsemble ens = simulate(config, 4);
  BoundedFunction id = BoundedFunction::coordinate(0, 2.0);
  double at0 = integral(fdd(ens, {0.0}), id);
  double at_half = integral(fdd(ens, {0.5}), id);
  std::ostringstream os;
  os.precision(6);
  os << "E[eta_0]=" << at0 << " (target 0.5), E[eta_1/2]=" << at_half << " (target 0.625)";
  detail = os.str();
  return std::abs(at0 - 0.5) <= 0.01 && std::abs(at_half - 0.625) <= 0.01;
}

// --- criterion 4: replica-measure integral identity --------------------------------

AlgebraicExpr random_ag_expr(SplitRng& rng, int family_size) {
  int terms = 1 + (int)(rng.next_unit() * 3);
  std::vector<AlgebraicExpr> sum;
  for (int t = 0; t < terms; ++t) {
    int factors = 1 + (int)(rng.next_unit() * 2);
    std::vector<AlgebraicExpr> prod;
    for (int f = 0; f < factors; ++f) prod.push_back(AlgebraicExpr::leaf((int)(rng.next_unit() * family_size)));
    double a = 4.0 * rng.next_unit() - 2.0;
    sum.push_back(AlgebraicExpr::scale(a, AlgebraicExpr::product(std::move(prod))));
  }
  return AlgebraicExpr::sum(std::move(sum));
}

bool criterion_replica_identity(std::string& detail) {
  FunctionFamily tents = tent_family(
      {StatePoint(0.0), StatePoint(1.0 / 3.0), StatePoint(2.0 / 3.0), StatePoint(1.0)}, {2.0});
  // 4 tents + the constant 1 = family of size 5
  if (tents.size() != 5) {
    detail = "family size != 5";
    return false;
  }
  std::vector<StatePoint> sample;
  for (int i = 0; i <= 12; ++i) sample.push_back(StatePoint(i / 12.0));
  ReplicationBase base =
      build_base(RegionSpec::interval(0.0, 1.0), tents, StatePoint(0.5), std::move(sample));

  SplitRng rng(4, 0);
  double worst = 0.0;
  for (int m = 0; m < 100; ++m) {
    std::vector<DiscreteMeasure::Atom> atoms;
    int n = 1 + (int)(rng.next_unit() * 20);
    for (int i = 0; i < n; ++i)
      atoms.push_back({{StatePoint(2.0 * rng.next_unit() - 0.5)}, rng.next_open_unit()});
    atoms.push_back({{StatePoint(rng.next_unit())}, 0.5});  // keep some inside mass
    DiscreteMeasure mu(std::move(atoms), 1);
    DiscreteMeasure bar = replica_measure(base, mu);
    for (int f = 0; f < 20; ++f) {
      ReplicaFunction rf = replica_function(base, random_ag_expr(rng, (int)tents.size()));
      double original = 0.0;
      for (const auto& a : mu.atoms)
        if (base.region.contains(a.point[0])) original += a.weight * rf.eval_original(base, a.point[0]);
      double replicated = 0.0;
      for (const auto& a : bar.atoms) {
        EmbeddedPoint e;
        e.vec = a.point[0].coords;
        replicated += a.weight * rf(e);
      }
      worst = std::max(worst, std::abs(original - replicated));
    }
  }
  std::ostringstream os;
  os << "max |int f 1_E0 dmu - int fhat dmubar| = " << worst;
  detail = os.str();
  return worst <= 1e-12;
}

// --- criterion 5: modulus DP vs exhaustive oracle ------------------------------------

double osc_oracle(const StepPath& x, double s, double e, bool closed_end) {
  double lo = 1e300, hi = -1e300;
  for (size_t i = 0; i < x.times.size(); ++i) {
    double seg_start = x.times[i];
    double seg_end = i + 1 < x.times.size() ? x.times[i + 1] : 1e300;
    bool starts_before_end = closed_end ? seg_start <= e : seg_start < e;
    if (starts_before_end && seg_end > s) {
      lo = std::min(lo, x.values[i].scalar());
      hi = std::max(hi, x.values[i].scalar());
    }
  }
  return hi - lo;
}

double modulus_oracle(const StepPath& x, double delta, double T) {
  std::vector<double> jumps;
  for (size_t i = 1; i < x.times.size(); ++i)
    if (x.times[i] <= T && x.values[i].scalar() != x.values[i - 1].scalar()) jumps.push_back(x.times[i]);
  double best = 1e300;
  for (size_t mask = 0; mask < (size_t(1) << jumps.size()); ++mask) {
    std::vector<double> bounds{0.0};
    for (size_t j = 0; j < jumps.size(); ++j)
      if (mask & (size_t(1) << j)) bounds.push_back(jumps[j]);
    bool ok = true;
    for (size_t j = 1; j < bounds.size(); ++j) ok = ok && (bounds[j] - bounds[j - 1] > delta);
    if (!ok) continue;
    double worst = 0.0;
    for (size_t j = 1; j < bounds.size(); ++j)
      worst = std::max(worst, osc_oracle(x, bounds[j - 1], bounds[j], false));
    worst = std::max(worst, osc_oracle(x, bounds.back(), std::max(T, bounds.back() + delta), true));
    best = std::min(best, worst);
  }
  return best;
}

bool criterion_modulus_oracle(std::string& detail) {
  SplitRng rng(5, 0);
  int checked = 0;
  for (int rep = 0; rep < 500; ++rep) {
    StepPath x = random_step_path(rng, Horizon::half_line(), 6);
    for (double delta : {0.1, 0.3, 0.5}) {
      double dp = modulus_w_prime(x, euclid, delta, 2.0);
      double oracle = modulus_oracle(x, delta, 2.0);
      ++checked;
      if (dp != oracle) {
        std::ostringstream os;
        os << "mismatch at rep " << rep << " delta " << delta << ": dp=" << dp << " oracle=" << oracle;
        detail = os.str();
        return false;
      }
    }
  }
  detail = std::to_string(checked) + " exact matches";
  return true;
}

// --- criterion 6: Skorokhod metric axioms ---------------------------------------------

bool criterion_sko_axioms(std::string& detail) {
  SplitRng rng(6, 0);
  Horizon h = Horizon::interval(0.0, 2.0);
  SkoOptions opts;
  double worst_sym = 0.0, worst_tri = -1e300;
  for (int rep = 0; rep < 200; ++rep) {
    StepPath x = random_step_path(rng, h, 4);
    StepPath y = random_step_path(rng, h, 4);
    StepPath z = random_step_path(rng, h, 4);
    if (sko_dist(x, x, euclid, opts).value != 0.0) {
      detail = "d(x,x) != 0";
      return false;
    }
    double dxy = sko_dist(x, y, euclid, opts).value;
    double dyx = sko_dist(y, x, euclid, opts).value;
    double dxz = sko_dist(x, z, euclid, opts).value;
    double dyz = sko_dist(y, z, euclid, opts).value;
    worst_sym = std::max(worst_sym, std::abs(dxy - dyx));
    worst_tri = std::max(worst_tri, dxz - (dxy + dyz));
  }
  if (worst_sym > 1e-9) {
    detail = "symmetry violation " + std::to_string(worst_sym);
    return false;
  }
  if (worst_tri > 2e-9) {
    detail = "triangle violation " + std::to_string(worst_tri);
    return false;
  }

  // shifted indicators on the half-line against the dense grid-search oracle
  std::ostringstream os;
  os.precision(6);
  os << "sym<=" << worst_sym << " tri<=" << worst_tri;
  for (double shift : {0.05, 0.1, 0.2}) {
    StepPath x = StepPath::indicator(1.0);
    StepPath y = StepPath::indicator(1.0 + shift);
    double d = sko_dist(x, y, euclid).value;
    if (!(d <= std::min(std::log(1.0 + shift), std::exp(-1.0)) + 1e-9)) {
      detail = "log bound violated at h=" + std::to_string(shift);
      return false;
    }
    // oracle: single-knot lambda(t) = t/s aligns the jump at s; objective in
    // closed form, dense s grid plus the exact matching knot
    double oracle = 1e300;
    for (int k = -1; k <= 240; ++k) {
      double s = k < 0 ? 1.0 + shift : 0.9 + k * 0.0025;
      double mismatch = (s == 1.0 + shift) ? 0.0 : std::exp(-std::min(s, 1.0 + shift));
      oracle = std::min(oracle, std::max(std::abs(std::log(1.0 / s)), mismatch));
    }
    os << " h=" << shift << ":|d-oracle|=" << std::abs(d - oracle);
    if (!(std::abs(d - oracle) <= 1e-6)) {
      detail = os.str() + " (oracle gap too large)";
      return false;
    }
  }
  detail = os.str();
  return true;
}

// --- criterion 7: rho embedding consistency ----------------------------------------------

bool criterion_rho_consistency(std::string& detail) {
  FunctionFamily tents = tent_family(
      {StatePoint(0.0), StatePoint(0.25), StatePoint(0.5), StatePoint(0.75), StatePoint(1.0)}, {4.0});
  std::vector<StatePoint> sample;
  for (int i = 0; i <= 16; ++i) sample.push_back(StatePoint(i / 16.0));
  ReplicationBase base = build_base(RegionSpec::interval(0.0, 1.0), tents, StatePoint(0.0), sample);

  SplitRng rng(7, 0);
  double worst = 0.0;
  for (int rep = 0; rep < 1000; ++rep) {
    StatePoint x(rng.next_unit()), y(rng.next_unit());
    double via_embedding = rho_hat(base, embed(base, x), embed(base, y));
    double direct = rho_family(tents, x, y);
    worst = std::max(worst, std::abs(via_embedding - direct));
    if (!(x == y) && !(direct > 0.0)) {
      detail = "rho vanished on distinct points";
      return false;
    }
  }
  std::ostringstream os;
  os << "max |rho_hat - rho_D| = " << worst;
  detail = os.str();
  return worst <= 1e-15;
}

// --- criterion 8: weak-convergence gap decay ----------------------------------------------

bool criterion_weak_conv_rate(std::string& detail) {
  DiscreteMeasure target({{{StatePoint(0.25)}, 0.5}, {{StatePoint(0.75)}, 0.5}}, 1);
  BoundedFunction id = BoundedFunction::coordinate(0, 2.0);
  BoundedFunction sq = BoundedFunction::product({id, id});
  std::vector<std::pair<std::string, TupleFn>> fns{{"x", as_tuple_fn(id)}, {"x2", as_tuple_fn(sq)}};

  int hits = 0;
  std::ostringstream os;
  os.precision(3);
  double defect = 0.0;
  std::vector<double> ratios;
  for (uint64_t seed = 1; seed <= 10; ++seed) {
    SplitRng rng(seed, 0);
    std::vector<StatePoint> draws;
    draws.reserve(10000);
    for (int i = 0; i < 10000; ++i) draws.push_back(StatePoint(rng.next_unit()));
    std::vector<DiscreteMeasure> seq;
    for (int n : {100, 1000, 10000})
      seq.push_back(DiscreteMeasure::from_points({draws.begin(), draws.begin() + n}, 1.0 / n));
    ConvergenceReport rep = weak_conv_test(seq, target, fns, 1.0, 1);
    // the CLT-driven decay shows in the moment the surrogate matches (f = x);
    // the f = x^2 gap converges to the surrogate's second-moment defect 1/48
    const auto& gx = rep.functions[0].gaps;
    defect = rep.functions[1].gaps[2];
    ratios.push_back(gx[2] > 0.0 ? gx[0] / gx[2] : 1e300);
    bool shrank = gx[2] < gx[0] / 5.0;
    hits += shrank;
  }
  std::sort(ratios.begin(), ratios.end());
  os << hits << "/10 seeds beat the 5x bar; per-seed shrink factors gap(1e2)/gap(1e4): [";
  for (double r : ratios) os << r << " ";
  os << "], median " << 0.5 * (ratios[4] + ratios[5]) << " (sqrt(n) rate predicts 10); f=x^2 gap settles at the "
     << "surrogate's second-moment defect " << defect << " ~ 1/48";
  detail = os.str();
  return hits >= 9;
}

// --- criterion 9: rap asymptotic stationarity bound -----------------------------------------

bool criterion_rap_bound(std::string& detail) {
  std::ostringstream os;
  os.precision(6);
  for (double T : {10.0, 100.0, 1000.0}) {
    double gap = rap_ramp_as_gap(T, 0.0, 1.0, 1.0);
    os << "T=" << T << ":gap=" << gap << "<=2/T=" << 2.0 / T << " ";
    if (!(gap <= 2.0 / T)) {
      detail = os.str();
      return false;
    }
  }
  detail = os.str();
  return true;
}

// --- criterion 10: enumeration counts ----------------------------------------------------------

bool criterion_enumeration_counts(std::string& detail) {
  FunctionFamily two({BoundedFunction::coordinate(0),
                      BoundedFunction::product({BoundedFunction::coordinate(0), BoundedFunction::coordinate(0)})});
  size_t ae = additive_expansion(two).size();
  FunctionFamily one({BoundedFunction::coordinate(0)});
  size_t mc = multiplicative_closure(one, 2).size();
  size_t pi = product_family(two, 2).size();
  std::ostringstream os;
  os << "ae=" << ae << " mc=" << mc << " Pi^2=" << pi;
  detail = os.str();
  return ae == 5 && mc == 2 && pi == 6;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::fprintf(stderr, "usage: acceptance_tests <path-to-pathspace-cli>\n");
    return 64;
  }
  g_cli_path = argv[1];

  run_criterion(1, "eta violates MCCC: CLI band_prob is exactly 0", criterion_band_cli);
  run_criterion(2, "eta satisfies LMTC: closed form >= 1 - 1/T, MC within 3 stderr", criterion_lmtc);
  run_criterion(3, "eta non-stationary: E[eta_0]=0.5, E[eta_1/2]=0.625 within 0.01", criterion_nonstationary);
  run_criterion(4, "replica-measure integral identity <= 1e-12 over random ag(F)", criterion_replica_identity);
  run_criterion(5, "modulus DP equals exhaustive partition oracle exactly", criterion_modulus_oracle);
  run_criterion(6, "Skorokhod metric axioms and shifted-indicator oracle", criterion_sko_axioms);
  run_criterion(7, "rho_hat(embed x, embed y) = rho_F(x,y) to 1e-15; positivity", criterion_rho_consistency);
  run_criterion(8, "weak-convergence gaps shrink ~ C/sqrt(n) on 9 of 10 seeds", criterion_weak_conv_rate);
  run_criterion(9, "rap stationarity gap <= 2c||f||/T on the deterministic ramp", criterion_rap_bound);
  run_criterion(10, "closure enumeration counts: ae=5, mc=2, Pi^2=6", criterion_enumeration_counts);

  std::printf("ACCEPTANCE: %d/10 criteria passed\n", 10 - g_failures);
  return g_failures;
}
