#include "replication.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace pathspace {

AlgebraicExpr AlgebraicExpr::leaf(int member_index) {
  require(member_index >= 0, "AlgebraicExpr.member: must be nonnegative");
  AlgebraicExpr e;
  e.kind = Kind::Member;
  e.member = member_index;
  return e;
}

AlgebraicExpr AlgebraicExpr::scale(double a, AlgebraicExpr inner) {
  AlgebraicExpr e;
  e.kind = Kind::Scale;
  e.factor = a;
  e.parts.push_back(std::move(inner));
  return e;
}

AlgebraicExpr AlgebraicExpr::sum(std::vector<AlgebraicExpr> es) {
  require(!es.empty(), "AlgebraicExpr.sum: needs summands");
  AlgebraicExpr e;
  e.kind = Kind::Sum;
  e.parts = std::move(es);
  return e;
}

AlgebraicExpr AlgebraicExpr::product(std::vector<AlgebraicExpr> es) {
  require(!es.empty(), "AlgebraicExpr.product: needs factors");
  AlgebraicExpr e;
  e.kind = Kind::Product;
  e.parts = std::move(es);
  return e;
}

int AlgebraicExpr::max_member() const {
  int m = kind == Kind::Member ? member : -1;
  for (const auto& p : parts) m = std::max(m, p.max_member());
  return m;
}

double AlgebraicExpr::eval(const std::function<double(int)>& leaf_value) const {
  switch (kind) {
    case Kind::Member:
      return leaf_value(member);
    case Kind::Scale:
      return factor * parts[0].eval(leaf_value);
    case Kind::Sum: {
      double s = 0.0;
      for (const auto& p : parts) s += p.eval(leaf_value);
      return s;
    }
    case Kind::Product: {
      double s = 1.0;
      for (const auto& p : parts) s *= p.eval(leaf_value);
      return s;
    }
  }
  return 0.0;
}

ReplicationBase build_base(RegionSpec region, FunctionFamily family, StatePoint anchor,
                           std::vector<StatePoint> reference_sample, double separation_tol) {
  require(!family.members.empty(), "build_base.family: must be non-empty");
  require(family.contains_one, "build_base.family: must contain the constant function 1");
  require(region.contains(anchor), "build_base.anchor: lies outside the region");
  require(!reference_sample.empty(), "build_base.reference_sample: must be non-empty");
  for (const auto& p : reference_sample)
    require(region.contains(p), "build_base.reference_sample: contains a point outside the region");

  if (reference_sample.size() >= 2) {
    auto sep = separates_points(family, reference_sample, separation_tol);
    if (!sep.separated) {
      std::ostringstream os;
      os.precision(17);
      os << "build_base.family: fails to separate the reference sample; witness pair (";
      auto dump = [&os](const StatePoint& p) {
        if (p.is_labeled()) {
          os << "label " << p.label;
          return;
        }
        for (size_t i = 0; i < p.coords.size(); ++i) os << (i ? "," : "") << p.coords[i];
      };
      dump(sep.witness->first);
      os << ") ~ (";
      dump(sep.witness->second);
      os << ")";
      fail(os.str());
    }
  }

  ReplicationBase base;
  base.region = std::move(region);
  base.family = std::move(family);
  base.anchor = std::move(anchor);
  base.depth = (int)base.family.size();
  base.reference_sample = std::move(reference_sample);
  for (const auto& p : base.reference_sample) base.cloud.push_back(embed(base, p));
  return base;
}

EmbeddedPoint embed(const ReplicationBase& base, const StatePoint& x) {
  EmbeddedPoint p;
  p.vec.reserve(base.family.size());
  for (const auto& f : base.family.members) p.vec.push_back(f(x));
  p.provenance = (x == base.anchor) ? EmbeddedPoint::Provenance::AnchorImage : EmbeddedPoint::Provenance::ImageOf;
  return p;
}

double rho_hat(const ReplicationBase& base, const EmbeddedPoint& p, const EmbeddedPoint& q) {
  require((int)p.vec.size() == base.depth && (int)q.vec.size() == base.depth, "rho_hat: depth mismatch");
  return capped_weighted_gap(p.vec, q.vec);
}

std::function<double(const StatePoint&)> variant_map(std::function<double(const StatePoint&)> f, RegionSpec domain,
                                                     double fallback) {
  return [f = std::move(f), domain = std::move(domain), fallback](const StatePoint& x) {
    return domain.contains(x) ? f(x) : fallback;
  };
}

double ReplicaFunction::operator()(const EmbeddedPoint& p) const {
  require((int)p.vec.size() == depth, "ReplicaFunction: depth mismatch");
  return expr.eval([&p](int j) { return p.vec[j]; });
}

double ReplicaFunction::eval_original(const ReplicationBase& base, const StatePoint& x) const {
  return expr.eval([&](int j) { return base.family.members[j](x); });
}

ReplicaFunction replica_function(const ReplicationBase& base, const AlgebraicExpr& expr) {
  require(expr.max_member() < (int)base.family.size(),
          "replica_function: expression references a member outside the family");
  return ReplicaFunction{expr, base.depth};
}

ReplicaFunction replica_function(const ReplicationBase& base, const BoundedFunction& f) {
  const std::string k = f.key();
  for (size_t j = 0; j < base.family.size(); ++j) {
    if (base.family.members[j].key() == k) return ReplicaFunction{AlgebraicExpr::leaf((int)j), base.depth};
  }
  fail("replica_function: no construction record over ag(F) for the given function");
}

DiscreteMeasure replica_measure(const ReplicationBase& base, const DiscreteMeasure& mu) {
  std::vector<DiscreteMeasure::Atom> atoms;
  double dropped = 0.0;
  for (const auto& a : mu.atoms) {
    bool inside = true;
    for (const auto& p : a.point) inside = inside && base.region.contains(p);
    if (!inside) {
      dropped += a.weight;
      continue;
    }
    DiscreteMeasure::Atom out;
    out.weight = a.weight;
    for (const auto& p : a.point) out.point.push_back(embedded_state(embed(base, p)));
    atoms.push_back(std::move(out));
  }
  require(!atoms.empty(), "replica_measure: no mass inside the region, replica would be trivial");
  DiscreteMeasure out(std::move(atoms), mu.arity);
  out.dropped_mass = dropped;
  out.provenance = "replica";
  return out;
}

StatePoint embedded_state(const EmbeddedPoint& p) { return StatePoint(p.vec); }

StepPath replica_step_path(const ReplicationBase& base, const StepPath& x, double membership_tol) {
  require(membership_tol >= 0, "replica_step_path.membership_tol: must be nonnegative");
  const EmbeddedPoint anchor_image = embed(base, base.anchor);
  std::vector<StatePoint> values;
  values.reserve(x.values.size());
  for (const auto& v : x.values) {
    EmbeddedPoint e = embed(base, v);
    double nearest = std::numeric_limits<double>::infinity();
    for (const auto& c : base.cloud) nearest = std::min(nearest, rho_hat(base, e, c));
    values.push_back(embedded_state(nearest <= membership_tol ? e : anchor_image));
  }
  // merge segments whose embedded values coincide so the jump structure stays clean
  std::vector<double> times;
  std::vector<StatePoint> merged;
  for (size_t i = 0; i < values.size(); ++i) {
    if (!merged.empty() && merged.back() == values[i]) continue;
    times.push_back(x.times[i]);
    merged.push_back(values[i]);
  }
  return StepPath(x.horizon, std::move(times), std::move(merged));
}

}  // namespace pathspace
