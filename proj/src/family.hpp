#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "state.hpp"

namespace pathspace {

// Bounded real test function on the state space, kept as a small expression
// tree so closures can deduplicate structurally and replicas can re-evaluate
// the same expression over embedded coordinates.
struct BoundedFunction {
  enum class Kind { One, Coordinate, Tent, TruncPoly, Product, Sum, Scale };

  Kind kind = Kind::One;
  int coord = 0;                       // Coordinate / TruncPoly input
  StatePoint center;                   // Tent
  double tent_k = 1.0;                 // Tent
  MetricSpec metric;                   // Tent
  std::vector<double> poly;            // TruncPoly coefficients, constant first
  std::vector<BoundedFunction> parts;  // Product / Sum
  double factor = 1.0;                 // Scale (applies to parts[0])
  double bound = 1.0;                  // declared bound

  static BoundedFunction one();
  static BoundedFunction coordinate(int i, double bound = 1.0);
  // g_{y,k}(x) = [1 - k r(x, y)] v 0
  static BoundedFunction tent(StatePoint y, double k, MetricSpec metric = {});
  static BoundedFunction trunc_poly(std::vector<double> coeffs, double bound, int coord = 0);
  static BoundedFunction product(std::vector<BoundedFunction> fs);
  static BoundedFunction sum(std::vector<BoundedFunction> fs);
  static BoundedFunction scale(double a, BoundedFunction f);

  double operator()(const StatePoint& x) const;
  std::string key() const;  // canonical structural identity
};

struct FunctionFamily {
  std::vector<BoundedFunction> members;
  bool contains_one = false;
  int one_index = -1;

  FunctionFamily() = default;
  explicit FunctionFamily(std::vector<BoundedFunction> fs);

  size_t size() const { return members.size(); }
  const BoundedFunction& operator[](size_t j) const { return members[j]; }
};

// Member of Pi^d(D): a product of functions applied to coordinate slots of a
// d-tuple. Slots may repeat, which makes the class closed under products.
struct TupleFunction {
  struct Factor {
    BoundedFunction f;
    int slot = 0;  // 0-based coordinate of the tuple
  };
  std::vector<Factor> factors;
  int arity = 1;

  double operator()(std::span<const StatePoint> xs) const;
  double sup_bound() const;
  std::string key() const;
};

TupleFunction tuple_product(const TupleFunction& a, const TupleFunction& b);

// --- closures -------------------------------------------------------------

struct ClosureBudget {
  int max_terms = 2;    // summands in additive closures
  int max_factors = 2;  // factors in multiplicative closures
  std::vector<double> coefficients = {1.0, -1.0, 0.5, -0.5, 2.0, -2.0};
  int d = 1;  // arity for Pi^d
};

// ae(D) = D u {f+g : f,g in D}
FunctionFamily additive_expansion(const FunctionFamily& D);
// ac(D): sums of up to max_terms distinct members
FunctionFamily additive_closure(const FunctionFamily& D, int max_terms);
// mc(D): products of 1..max_factors members, repetition allowed
FunctionFamily multiplicative_closure(const FunctionFamily& D, int max_factors);
// ag_Q(D) = ac({a f : f in mc(D), a in Q0}) truncated to the budget
FunctionFamily rational_algebra(const FunctionFamily& D, const ClosureBudget& budget);
// Pi^d(D) = { prod_{j=1..i} f_j o p_j : f_j in D, 1 <= i <= d }
std::vector<TupleFunction> product_family(const FunctionFamily& D, int d);
// mc over tuple functions (products of 1..max_factors members)
std::vector<TupleFunction> multiplicative_closure(const std::vector<TupleFunction>& D, int max_factors);

enum class ClosureMode { AE, AC, MC, AGQ, PID };
ClosureMode closure_mode_from_string(const std::string& s);
// Unified entry point; PID mode reports tuple functions via the out-parameter.
FunctionFamily build_closure(const FunctionFamily& D, ClosureMode mode, const ClosureBudget& budget,
                             std::vector<TupleFunction>* tuples = nullptr);

// --- pseudometrics and separation ------------------------------------------

// sum_j 2^{-j+1} (|a_j - b_j| ^ 1); the shared kernel of rho_D and rho_hat.
double capped_weighted_gap(std::span<const double> a, std::span<const double> b);

double rho_family(const FunctionFamily& D, const StatePoint& x, const StatePoint& y);
double rho_family_d(const FunctionFamily& D, std::span<const StatePoint> x, std::span<const StatePoint> y);

// {g_{y,k}} over the given centers/scales, with the constant 1 appended.
FunctionFamily tent_family(const std::vector<StatePoint>& centers, const std::vector<double>& scales,
                           MetricSpec metric = {});

struct SeparationResult {
  bool separated = true;
  std::optional<std::pair<StatePoint, StatePoint>> witness;
};
SeparationResult separates_points(const FunctionFamily& D, std::vector<StatePoint> sample, double tol);

// x in A^eps, i.e. min_{y in A} r(x,y) < eps (strict)
bool epsilon_envelope_contains(const std::vector<StatePoint>& A, double eps, const StatePoint& x,
                               const MetricSpec& metric);

}  // namespace pathspace
