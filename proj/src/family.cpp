#include "family.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace pathspace {

double metric_distance(const MetricSpec& m, const StatePoint& x, const StatePoint& y) {
  switch (m.kind) {
    case MetricSpec::Kind::Euclidean:
    case MetricSpec::Kind::TruncatedEuclidean: {
      require(!x.is_labeled() && !y.is_labeled(), "MetricSpec: euclidean metric needs coordinate points");
      require(x.coords.size() == y.coords.size(), "MetricSpec: point dimension mismatch");
      double s = 0.0;
      for (size_t i = 0; i < x.coords.size(); ++i) {
        double d = x.coords[i] - y.coords[i];
        s += d * d;
      }
      double d = std::sqrt(s);
      return m.kind == MetricSpec::Kind::TruncatedEuclidean ? std::min(d, m.cap) : d;
    }
    case MetricSpec::Kind::Table: {
      require(x.is_labeled() && y.is_labeled(), "MetricSpec.table: needs labeled points");
      require(x.label < (int)m.table.size() && y.label < (int)m.table.size(),
              "MetricSpec.table: label out of range");
      return m.table[x.label][y.label];
    }
    case MetricSpec::Kind::RhoFamily:
      return rho_family(*m.family, x, y);
  }
  return 0.0;
}

// --- BoundedFunction --------------------------------------------------------

BoundedFunction BoundedFunction::one() {
  BoundedFunction f;
  f.kind = Kind::One;
  f.bound = 1.0;
  return f;
}

BoundedFunction BoundedFunction::coordinate(int i, double bound) {
  require(i >= 0, "BoundedFunction.coord: must be nonnegative");
  require(bound > 0, "BoundedFunction.bound: must be positive");
  BoundedFunction f;
  f.kind = Kind::Coordinate;
  f.coord = i;
  f.bound = bound;
  return f;
}

BoundedFunction BoundedFunction::tent(StatePoint y, double k, MetricSpec metric) {
  require(k > 0, "BoundedFunction.tent_k: scale must be positive");
  BoundedFunction f;
  f.kind = Kind::Tent;
  f.center = std::move(y);
  f.tent_k = k;
  f.metric = std::move(metric);
  f.bound = 1.0;
  return f;
}

BoundedFunction BoundedFunction::trunc_poly(std::vector<double> coeffs, double bound, int coord) {
  require(!coeffs.empty(), "BoundedFunction.poly: needs coefficients");
  require(bound > 0, "BoundedFunction.bound: must be positive");
  BoundedFunction f;
  f.kind = Kind::TruncPoly;
  f.poly = std::move(coeffs);
  f.bound = bound;
  f.coord = coord;
  return f;
}

BoundedFunction BoundedFunction::product(std::vector<BoundedFunction> fs) {
  require(!fs.empty(), "BoundedFunction.product: needs factors");
  if (fs.size() == 1) return fs[0];
  BoundedFunction f;
  f.kind = Kind::Product;
  f.bound = 1.0;
  for (const auto& g : fs) f.bound *= g.bound;
  f.parts = std::move(fs);
  return f;
}

BoundedFunction BoundedFunction::sum(std::vector<BoundedFunction> fs) {
  require(!fs.empty(), "BoundedFunction.sum: needs summands");
  if (fs.size() == 1) return fs[0];
  BoundedFunction f;
  f.kind = Kind::Sum;
  f.bound = 0.0;
  for (const auto& g : fs) f.bound += g.bound;
  f.parts = std::move(fs);
  return f;
}

BoundedFunction BoundedFunction::scale(double a, BoundedFunction g) {
  BoundedFunction f;
  f.kind = Kind::Scale;
  f.factor = a;
  f.bound = std::abs(a) * g.bound;
  f.parts.push_back(std::move(g));
  return f;
}

double BoundedFunction::operator()(const StatePoint& x) const {
  switch (kind) {
    case Kind::One:
      return 1.0;
    case Kind::Coordinate: {
      require(!x.is_labeled() && coord < (int)x.coords.size(), "BoundedFunction.coord: out of range for point");
      double v = x.coords[coord];
      require(std::abs(v) <= bound, "BoundedFunction.declared_bound: exceeded at evaluation");
      return v;
    }
    case Kind::Tent:
      return std::max(1.0 - tent_k * metric(x, center), 0.0);
    case Kind::TruncPoly: {
      require(!x.is_labeled() && coord < (int)x.coords.size(), "BoundedFunction.coord: out of range for point");
      double t = x.coords[coord];
      double v = 0.0;
      for (size_t i = poly.size(); i-- > 0;) v = v * t + poly[i];
      return std::clamp(v, -bound, bound);
    }
    case Kind::Product: {
      double v = 1.0;
      for (const auto& g : parts) v *= g(x);
      return v;
    }
    case Kind::Sum: {
      double v = 0.0;
      for (const auto& g : parts) v += g(x);
      return v;
    }
    case Kind::Scale:
      return factor * parts[0](x);
  }
  return 0.0;
}

namespace {

void write_point(std::ostream& os, const StatePoint& p) {
  if (p.is_labeled()) {
    os << "L" << p.label;
    return;
  }
  os << "(";
  for (double c : p.coords) os << c << ",";
  os << ")";
}

}  // namespace

std::string BoundedFunction::key() const {
  std::ostringstream os;
  os.precision(17);
  switch (kind) {
    case Kind::One:
      os << "1";
      break;
    case Kind::Coordinate:
      os << "x" << coord;
      break;
    case Kind::Tent:
      os << "tent[";
      write_point(os, center);
      os << ";" << tent_k << "]";
      break;
    case Kind::TruncPoly:
      os << "poly" << coord << "[";
      for (double c : poly) os << c << ",";
      os << ";" << bound << "]";
      break;
    case Kind::Product: {
      std::vector<std::string> ks;
      for (const auto& g : parts) ks.push_back(g.key());
      std::sort(ks.begin(), ks.end());
      os << "prod{";
      for (const auto& k : ks) os << k << "*";
      os << "}";
      break;
    }
    case Kind::Sum: {
      std::vector<std::string> ks;
      for (const auto& g : parts) ks.push_back(g.key());
      std::sort(ks.begin(), ks.end());
      os << "sum{";
      for (const auto& k : ks) os << k << "+";
      os << "}";
      break;
    }
    case Kind::Scale:
      os << factor << "*" << parts[0].key();
      break;
  }
  return os.str();
}

FunctionFamily::FunctionFamily(std::vector<BoundedFunction> fs) : members(std::move(fs)) {
  for (size_t j = 0; j < members.size(); ++j) {
    if (members[j].kind == BoundedFunction::Kind::One) {
      contains_one = true;
      one_index = (int)j;
      break;
    }
  }
}

// --- TupleFunction ----------------------------------------------------------

double TupleFunction::operator()(std::span<const StatePoint> xs) const {
  require((int)xs.size() == arity, "TupleFunction: arity mismatch");
  double v = 1.0;
  for (const auto& fac : factors) v *= fac.f(xs[fac.slot]);
  return v;
}

double TupleFunction::sup_bound() const {
  double b = 1.0;
  for (const auto& fac : factors) b *= fac.f.bound;
  return b;
}

namespace {

// multiplicative atoms of a function, so (fg) o p_j and (f o p_j)(g o p_j)
// canonicalize identically; the constant 1 is a neutral factor and is dropped
void collect_product_atoms(const BoundedFunction& f, int slot, std::vector<std::string>& out) {
  if (f.kind == BoundedFunction::Kind::Product) {
    for (const auto& g : f.parts) collect_product_atoms(g, slot, out);
    return;
  }
  if (f.kind == BoundedFunction::Kind::One) return;
  out.push_back(std::to_string(slot) + ":" + f.key());
}

}  // namespace

std::string TupleFunction::key() const {
  std::vector<std::string> ks;
  for (const auto& fac : factors) collect_product_atoms(fac.f, fac.slot, ks);
  std::sort(ks.begin(), ks.end());
  std::string out = "d" + std::to_string(arity) + "{";
  for (const auto& k : ks) out += k + "*";
  return out + "}";
}

TupleFunction tuple_product(const TupleFunction& a, const TupleFunction& b) {
  TupleFunction out;
  out.arity = std::max(a.arity, b.arity);
  out.factors = a.factors;
  out.factors.insert(out.factors.end(), b.factors.begin(), b.factors.end());
  return out;
}

// --- closures ---------------------------------------------------------------

namespace {

class Dedup {
 public:
  bool insert(const std::string& key) { return seen_.insert(key).second; }

 private:
  std::set<std::string> seen_;
};

}  // namespace

FunctionFamily additive_expansion(const FunctionFamily& D) {
  std::vector<BoundedFunction> out;
  Dedup seen;
  for (const auto& f : D.members)
    if (seen.insert(f.key())) out.push_back(f);
  for (size_t i = 0; i < D.size(); ++i) {
    for (size_t j = i; j < D.size(); ++j) {
      auto s = BoundedFunction::sum({D.members[i], D.members[j]});
      if (seen.insert(s.key())) out.push_back(s);
    }
  }
  return FunctionFamily(std::move(out));
}

FunctionFamily additive_closure(const FunctionFamily& D, int max_terms) {
  require(max_terms >= 1, "ClosureBudget.max_terms: must be positive");
  std::vector<BoundedFunction> out;
  Dedup seen;
  // subsets in lexicographic index order, sizes 1..max_terms
  std::vector<size_t> idx;
  auto emit = [&]() {
    std::vector<BoundedFunction> terms;
    for (size_t i : idx) terms.push_back(D.members[i]);
    auto s = BoundedFunction::sum(std::move(terms));
    if (seen.insert(s.key())) out.push_back(s);
  };
  auto rec = [&](auto&& self, size_t start) -> void {
    for (size_t i = start; i < D.size(); ++i) {
      idx.push_back(i);
      emit();
      if ((int)idx.size() < max_terms) self(self, i + 1);
      idx.pop_back();
    }
  };
  rec(rec, 0);
  return FunctionFamily(std::move(out));
}

FunctionFamily multiplicative_closure(const FunctionFamily& D, int max_factors) {
  require(max_factors >= 1, "ClosureBudget.max_factors: must be positive");
  std::vector<BoundedFunction> out;
  Dedup seen;
  std::vector<size_t> idx;
  auto emit = [&]() {
    std::vector<BoundedFunction> factors;
    for (size_t i : idx) factors.push_back(D.members[i]);
    auto p = BoundedFunction::product(std::move(factors));
    if (seen.insert(p.key())) out.push_back(p);
  };
  auto rec = [&](auto&& self, size_t start) -> void {
    for (size_t i = start; i < D.size(); ++i) {  // repetition allowed: restart at i
      idx.push_back(i);
      emit();
      if ((int)idx.size() < max_factors) self(self, i);
      idx.pop_back();
    }
  };
  rec(rec, 0);
  return FunctionFamily(std::move(out));
}

FunctionFamily rational_algebra(const FunctionFamily& D, const ClosureBudget& budget) {
  require(!budget.coefficients.empty(), "ClosureBudget.coefficients: must be non-empty");
  FunctionFamily monomials = multiplicative_closure(D, budget.max_factors);
  std::vector<BoundedFunction> scaled;
  Dedup seen;
  for (const auto& f : monomials.members) {
    for (double a : budget.coefficients) {
      auto g = a == 1.0 ? f : BoundedFunction::scale(a, f);
      if (seen.insert(g.key())) scaled.push_back(g);
    }
  }
  return additive_closure(FunctionFamily(std::move(scaled)), budget.max_terms);
}

std::vector<TupleFunction> product_family(const FunctionFamily& D, int d) {
  require(d >= 1, "ClosureBudget.d: must be positive");
  std::vector<TupleFunction> out;
  Dedup seen;
  std::vector<size_t> choice;
  auto rec = [&](auto&& self, int arity) -> void {
    if ((int)choice.size() == arity) {
      TupleFunction tf;
      tf.arity = d;
      for (int j = 0; j < arity; ++j) tf.factors.push_back({D.members[choice[j]], j});
      if (seen.insert(tf.key())) out.push_back(tf);
      return;
    }
    for (size_t i = 0; i < D.size(); ++i) {
      choice.push_back(i);
      self(self, arity);
      choice.pop_back();
    }
  };
  for (int arity = 1; arity <= d; ++arity) rec(rec, arity);
  return out;
}

std::vector<TupleFunction> multiplicative_closure(const std::vector<TupleFunction>& D, int max_factors) {
  require(max_factors >= 1, "ClosureBudget.max_factors: must be positive");
  std::vector<TupleFunction> out;
  Dedup seen;
  std::vector<size_t> idx;
  auto emit = [&]() {
    TupleFunction p = D[idx[0]];
    for (size_t k = 1; k < idx.size(); ++k) p = tuple_product(p, D[idx[k]]);
    if (seen.insert(p.key())) out.push_back(p);
  };
  auto rec = [&](auto&& self, size_t start) -> void {
    for (size_t i = start; i < D.size(); ++i) {
      idx.push_back(i);
      emit();
      if ((int)idx.size() < max_factors) self(self, i);
      idx.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

ClosureMode closure_mode_from_string(const std::string& s) {
  if (s == "ae") return ClosureMode::AE;
  if (s == "ac") return ClosureMode::AC;
  if (s == "mc") return ClosureMode::MC;
  if (s == "agQ" || s == "agq") return ClosureMode::AGQ;
  if (s == "pi_d" || s == "pid") return ClosureMode::PID;
  fail("closure.mode: unknown mode '" + s + "'");
}

FunctionFamily build_closure(const FunctionFamily& D, ClosureMode mode, const ClosureBudget& budget,
                             std::vector<TupleFunction>* tuples) {
  switch (mode) {
    case ClosureMode::AE:
      return additive_expansion(D);
    case ClosureMode::AC:
      return additive_closure(D, budget.max_terms);
    case ClosureMode::MC:
      return multiplicative_closure(D, budget.max_factors);
    case ClosureMode::AGQ:
      return rational_algebra(D, budget);
    case ClosureMode::PID: {
      require(tuples != nullptr, "build_closure: pi_d mode needs a tuple output");
      *tuples = product_family(D, budget.d);
      return FunctionFamily();
    }
  }
  return FunctionFamily();
}

// --- pseudometrics ----------------------------------------------------------

double capped_weighted_gap(std::span<const double> a, std::span<const double> b) {
  require(a.size() == b.size(), "rho: component count mismatch");
  double sum = 0.0;
  double w = 1.0;  // 2^{-j+1} starting at j = 1
  for (size_t j = 0; j < a.size(); ++j, w *= 0.5) sum += w * std::min(std::abs(a[j] - b[j]), 1.0);
  return sum;
}

double rho_family(const FunctionFamily& D, const StatePoint& x, const StatePoint& y) {
  require(!D.members.empty(), "rho_family: family must be non-empty");
  std::vector<double> ax(D.size()), ay(D.size());
  for (size_t j = 0; j < D.size(); ++j) {
    ax[j] = D.members[j](x);
    ay[j] = D.members[j](y);
  }
  return capped_weighted_gap(ax, ay);
}

double rho_family_d(const FunctionFamily& D, std::span<const StatePoint> x, std::span<const StatePoint> y) {
  require(x.size() == y.size() && !x.empty(), "rho_family_d: arity mismatch");
  double m = 0.0;
  for (size_t i = 0; i < x.size(); ++i) m = std::max(m, rho_family(D, x[i], y[i]));
  return m;
}

FunctionFamily tent_family(const std::vector<StatePoint>& centers, const std::vector<double>& scales,
                           MetricSpec metric) {
  require(!centers.empty(), "tent_family.centers: must be non-empty");
  require(!scales.empty(), "tent_family.scales: must be non-empty");
  std::vector<BoundedFunction> fs;
  for (const auto& y : centers)
    for (double k : scales) fs.push_back(BoundedFunction::tent(y, k, metric));
  fs.push_back(BoundedFunction::one());
  return FunctionFamily(std::move(fs));
}

SeparationResult separates_points(const FunctionFamily& D, std::vector<StatePoint> sample, double tol) {
  require(sample.size() >= 2, "separates_points.sample: needs at least two points");
  // dedup exactly equal points first
  std::vector<StatePoint> pts;
  for (const auto& p : sample) {
    bool dup = false;
    for (const auto& q : pts) dup = dup || (q == p);
    if (!dup) pts.push_back(p);
  }
  for (size_t i = 0; i < pts.size(); ++i) {
    for (size_t j = i + 1; j < pts.size(); ++j) {
      double gap = 0.0;
      for (const auto& f : D.members) gap = std::max(gap, std::abs(f(pts[i]) - f(pts[j])));
      if (gap <= tol) return {false, std::make_pair(pts[i], pts[j])};
    }
  }
  return {true, std::nullopt};
}

bool epsilon_envelope_contains(const std::vector<StatePoint>& A, double eps, const StatePoint& x,
                               const MetricSpec& metric) {
  require(!A.empty(), "epsilon_envelope.A: must be non-empty");
  require(eps > 0, "epsilon_envelope.eps: must be positive");
  for (const auto& y : A)
    if (metric(x, y) < eps) return true;
  return false;
}

}  // namespace pathspace
