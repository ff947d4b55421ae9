#pragma once

#include <functional>
#include <string>
#include <vector>

#include "family.hpp"
#include "state.hpp"

namespace pathspace {

// Finitely supported measure on E^d; atoms with equal points are merged.
struct DiscreteMeasure {
  struct Atom {
    std::vector<StatePoint> point;  // tuple of arity d (d = 1 for plain points)
    double weight = 0.0;
  };

  std::vector<Atom> atoms;
  int arity = 1;
  double dropped_mass = 0.0;
  std::string provenance;

  DiscreteMeasure() = default;
  DiscreteMeasure(std::vector<Atom> atoms, int arity = 1);

  static DiscreteMeasure dirac(StatePoint p, double mass = 1.0);
  static DiscreteMeasure from_points(const std::vector<StatePoint>& pts, double each_weight);

  double total_mass() const;
  double mass_in(const RegionSpec& region) const;  // atoms with every component inside
};

using TupleFn = std::function<double(const std::vector<StatePoint>&)>;

TupleFn as_tuple_fn(const BoundedFunction& f);
TupleFn as_tuple_fn(const TupleFunction& f);

double integral(const DiscreteMeasure& mu, const TupleFn& f);
double integral(const DiscreteMeasure& mu, const BoundedFunction& f);
double integral(const DiscreteMeasure& mu, const TupleFunction& f);

using PointMap = std::function<std::vector<StatePoint>(const std::vector<StatePoint>&)>;

DiscreteMeasure pushforward(const DiscreteMeasure& mu, const PointMap& f, int out_arity = 1);

// mu|_A : keeps the atoms inside A (error when no mass survives).
DiscreteMeasure concentrate(const DiscreteMeasure& mu, const RegionSpec& A);
// nu|^E : re-tags a concentrated measure to the ambient space, atomwise equal.
DiscreteMeasure expand(const DiscreteMeasure& nu);

// --- sequential diagnostics --------------------------------------------------

struct ConvergenceReport {
  struct PerFunction {
    std::string name;
    std::vector<double> gaps;  // |int f dmu_n - int f dtarget| per n
    double final_gap = 0.0;    // max over the trailing window
  };
  std::vector<PerFunction> functions;
  int window = 1;
  double tol = 0.0;
  bool pass = false;
};

// Integral test for weak convergence over the finite test family.
ConvergenceReport weak_conv_test(const std::vector<DiscreteMeasure>& seq, const DiscreteMeasure& target,
                                 const std::vector<std::pair<std::string, TupleFn>>& test_functions, double tol,
                                 int window);

struct PortmanteauReport {
  struct Row {
    std::string region;
    bool closed = true;          // closed: limsup <= target; open: liminf >= target
    double window_extreme = 0.0; // max (closed) or min (open) of mu_n over the window
    double target_mass = 0.0;
    bool ok = true;
  };
  std::vector<Row> rows;
  int window = 1;
  bool pass = false;
};

PortmanteauReport portmanteau_check(const std::vector<DiscreteMeasure>& seq, const DiscreteMeasure& target,
                                    const std::vector<RegionSpec>& closed_regions,
                                    const std::vector<RegionSpec>& open_regions, int window);

// sup over the family of mass outside each nested region.
std::vector<double> tightness_profile(const std::vector<DiscreteMeasure>& family,
                                      const std::vector<RegionSpec>& nested_regions);

}  // namespace pathspace
