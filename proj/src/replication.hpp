#pragma once

#include <functional>
#include <string>
#include <vector>

#include "family.hpp"
#include "measure.hpp"
#include "path.hpp"
#include "state.hpp"

namespace pathspace {

// Algebraic combination of family members (leaves are member indices). This
// is the construction record that makes a function replicable: the same tree
// evaluates over original points and over embedded coordinates.
struct AlgebraicExpr {
  enum class Kind { Member, Scale, Sum, Product };

  Kind kind = Kind::Member;
  int member = 0;
  double factor = 1.0;
  std::vector<AlgebraicExpr> parts;

  static AlgebraicExpr leaf(int member_index);
  static AlgebraicExpr scale(double a, AlgebraicExpr e);
  static AlgebraicExpr sum(std::vector<AlgebraicExpr> es);
  static AlgebraicExpr product(std::vector<AlgebraicExpr> es);

  int max_member() const;
  double eval(const std::function<double(int)>& leaf_value) const;
};

struct EmbeddedPoint {
  enum class Provenance { ImageOf, AnchorImage, DeclaredLimit };
  std::vector<double> vec;
  Provenance provenance = Provenance::ImageOf;
};

// Desk-scale replication base (E0, F; Ehat, Fhat): the compactification Ehat
// is represented implicitly by the embedded reference cloud plus the rho_hat
// membership tolerance.
struct ReplicationBase {
  RegionSpec region;      // E0
  FunctionFamily family;  // F, contains the constant 1
  StatePoint anchor;      // x0 in E0
  std::vector<StatePoint> reference_sample;
  std::vector<EmbeddedPoint> cloud;  // embedded reference sample
  int depth = 0;                     // m = |F|
};

ReplicationBase build_base(RegionSpec region, FunctionFamily family, StatePoint anchor,
                           std::vector<StatePoint> reference_sample, double separation_tol = 0.0);

EmbeddedPoint embed(const ReplicationBase& base, const StatePoint& x);

// Metric of the compactification: same capped weighted sum as rho_family,
// applied to embedded coordinates.
double rho_hat(const ReplicationBase& base, const EmbeddedPoint& p, const EmbeddedPoint& q);

// var(f; S2, A, y0): f on A, the default value elsewhere.
std::function<double(const StatePoint&)> variant_map(std::function<double(const StatePoint&)> f, RegionSpec domain,
                                                     double fallback);

struct ReplicaFunction {
  AlgebraicExpr expr;
  int depth = 0;

  double operator()(const EmbeddedPoint& p) const;
  double eval_original(const ReplicationBase& base, const StatePoint& x) const;
};

// Replica of a function given by its construction record over ag(F).
ReplicaFunction replica_function(const ReplicationBase& base, const AlgebraicExpr& expr);
// A bare function is accepted only when it is literally a family member;
// anything without a construction record is rejected.
ReplicaFunction replica_function(const ReplicationBase& base, const BoundedFunction& f);

// Replica measure: atoms inside E0^d are embedded, the rest are dropped into
// dropped_mass; mu_bar(A) = mu(A n E0^d).
DiscreteMeasure replica_measure(const ReplicationBase& base, const DiscreteMeasure& mu);

// Pointwise replica of a step path: values whose embeddings stray from the
// cloud by more than membership_tol (in rho_hat) are sent to the anchor image.
StepPath replica_step_path(const ReplicationBase& base, const StepPath& x, double membership_tol);

StatePoint embedded_state(const EmbeddedPoint& p);

}  // namespace pathspace
