#include "measure.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <unordered_map>

namespace pathspace {

namespace {

// exact-equality key: raw bits of every component, so merging never rounds
std::string point_key(const std::vector<StatePoint>& tuple) {
  std::string key;
  key.reserve(tuple.size() * 16);
  for (const auto& p : tuple) {
    char head[8];
    int label = p.label;
    int dim = (int)p.coords.size();
    std::memcpy(head, &label, 4);
    std::memcpy(head + 4, &dim, 4);
    key.append(head, 8);
    for (double c : p.coords) {
      char bits[8];
      std::memcpy(bits, &c, 8);
      key.append(bits, 8);
    }
  }
  return key;
}

std::vector<DiscreteMeasure::Atom> merged(std::vector<DiscreteMeasure::Atom> atoms) {
  std::vector<DiscreteMeasure::Atom> out;
  out.reserve(atoms.size());
  std::unordered_map<std::string, size_t> index;
  index.reserve(atoms.size() * 2);
  for (auto& a : atoms) {
    auto [it, inserted] = index.try_emplace(point_key(a.point), out.size());
    if (inserted)
      out.push_back(std::move(a));
    else
      out[it->second].weight += a.weight;
  }
  return out;
}

}  // namespace

DiscreteMeasure::DiscreteMeasure(std::vector<Atom> in_atoms, int d) : arity(d) {
  require(d >= 1, "DiscreteMeasure.arity: must be positive");
  for (const auto& a : in_atoms) {
    require((int)a.point.size() == d, "DiscreteMeasure.atoms: tuple arity mismatch");
    require(a.weight > 0.0, "DiscreteMeasure.atoms: weights must be positive");
    for (const auto& p : a.point) p.validate();
  }
  atoms = merged(std::move(in_atoms));
  require(!atoms.empty(), "DiscreteMeasure: total mass must be non-zero");
}

DiscreteMeasure DiscreteMeasure::dirac(StatePoint p, double mass) {
  return DiscreteMeasure({Atom{{std::move(p)}, mass}}, 1);
}

DiscreteMeasure DiscreteMeasure::from_points(const std::vector<StatePoint>& pts, double each_weight) {
  std::vector<Atom> atoms;
  atoms.reserve(pts.size());
  for (const auto& p : pts) atoms.push_back(Atom{{p}, each_weight});
  return DiscreteMeasure(std::move(atoms), 1);
}

double DiscreteMeasure::total_mass() const {
  double m = 0.0;
  for (const auto& a : atoms) m += a.weight;
  return m;
}

double DiscreteMeasure::mass_in(const RegionSpec& region) const {
  double m = 0.0;
  for (const auto& a : atoms) {
    bool inside = true;
    for (const auto& p : a.point) inside = inside && region.contains(p);
    if (inside) m += a.weight;
  }
  return m;
}

TupleFn as_tuple_fn(const BoundedFunction& f) {
  return [f](const std::vector<StatePoint>& xs) {
    require(xs.size() == 1, "integral: scalar function applied to a tuple atom");
    return f(xs[0]);
  };
}

TupleFn as_tuple_fn(const TupleFunction& f) {
  return [f](const std::vector<StatePoint>& xs) { return f(std::span<const StatePoint>(xs)); };
}

double integral(const DiscreteMeasure& mu, const TupleFn& f) {
  double s = 0.0;
  for (const auto& a : mu.atoms) s += a.weight * f(a.point);
  return s;
}

double integral(const DiscreteMeasure& mu, const BoundedFunction& f) { return integral(mu, as_tuple_fn(f)); }
double integral(const DiscreteMeasure& mu, const TupleFunction& f) { return integral(mu, as_tuple_fn(f)); }

DiscreteMeasure pushforward(const DiscreteMeasure& mu, const PointMap& f, int out_arity) {
  std::vector<DiscreteMeasure::Atom> atoms;
  atoms.reserve(mu.atoms.size());
  for (const auto& a : mu.atoms) atoms.push_back({f(a.point), a.weight});
  DiscreteMeasure out(std::move(atoms), out_arity);
  out.provenance = "pushforward";
  return out;
}

DiscreteMeasure concentrate(const DiscreteMeasure& mu, const RegionSpec& A) {
  std::vector<DiscreteMeasure::Atom> kept;
  double dropped = 0.0;
  for (const auto& a : mu.atoms) {
    bool inside = true;
    for (const auto& p : a.point) inside = inside && A.contains(p);
    if (inside)
      kept.push_back(a);
    else
      dropped += a.weight;
  }
  require(!kept.empty(), "concentrate: measure assigns zero mass to the region");
  DiscreteMeasure out(std::move(kept), mu.arity);
  out.dropped_mass = mu.dropped_mass + dropped;
  out.provenance = "concentrated";
  return out;
}

DiscreteMeasure expand(const DiscreteMeasure& nu) {
  DiscreteMeasure out = nu;
  out.provenance = "expanded";
  return out;
}

ConvergenceReport weak_conv_test(const std::vector<DiscreteMeasure>& seq, const DiscreteMeasure& target,
                                 const std::vector<std::pair<std::string, TupleFn>>& test_functions, double tol,
                                 int window) {
  require(!test_functions.empty(), "weak_conv_test: test family must be non-empty");
  require(!seq.empty(), "weak_conv_test: sequence must be non-empty");
  require(window >= 1 && window <= (int)seq.size(), "weak_conv_test.window: must be within the sequence length");

  ConvergenceReport report;
  report.window = window;
  report.tol = tol;
  report.pass = true;
  for (const auto& [name, f] : test_functions) {
    ConvergenceReport::PerFunction pf;
    pf.name = name;
    const double limit = integral(target, f);
    for (const auto& mu : seq) pf.gaps.push_back(std::abs(integral(mu, f) - limit));
    pf.final_gap = *std::max_element(pf.gaps.end() - window, pf.gaps.end());
    report.pass = report.pass && pf.final_gap <= tol;
    report.functions.push_back(std::move(pf));
  }
  return report;
}

PortmanteauReport portmanteau_check(const std::vector<DiscreteMeasure>& seq, const DiscreteMeasure& target,
                                    const std::vector<RegionSpec>& closed_regions,
                                    const std::vector<RegionSpec>& open_regions, int window) {
  require(!seq.empty(), "portmanteau_check: sequence must be non-empty");
  require(window >= 1 && window <= (int)seq.size(), "portmanteau_check.window: must be within the sequence length");
  PortmanteauReport report;
  report.window = window;
  report.pass = true;

  auto run = [&](const RegionSpec& region, bool closed) {
    PortmanteauReport::Row row;
    row.region = region.description;
    row.closed = closed;
    row.target_mass = target.mass_in(region);
    double extreme = closed ? 0.0 : std::numeric_limits<double>::infinity();
    for (size_t n = seq.size() - window; n < seq.size(); ++n) {
      double m = seq[n].mass_in(region);
      extreme = closed ? std::max(extreme, m) : std::min(extreme, m);
    }
    row.window_extreme = extreme;
    row.ok = closed ? (extreme <= row.target_mass) : (extreme >= row.target_mass);
    report.pass = report.pass && row.ok;
    report.rows.push_back(std::move(row));
  };
  for (const auto& r : closed_regions) run(r, true);
  for (const auto& r : open_regions) run(r, false);
  return report;
}

std::vector<double> tightness_profile(const std::vector<DiscreteMeasure>& family,
                                      const std::vector<RegionSpec>& nested_regions) {
  require(!family.empty(), "tightness_profile: family must be non-empty");
  require(!nested_regions.empty(), "tightness_profile: needs at least one region");

  // nesting is checked on the union of atom points
  for (size_t k = 0; k + 1 < nested_regions.size(); ++k) {
    for (const auto& mu : family) {
      for (const auto& a : mu.atoms) {
        for (const auto& p : a.point) {
          if (nested_regions[k].contains(p))
            require(nested_regions[k + 1].contains(p), "tightness_profile.nested_regions: regions are not nested");
        }
      }
    }
  }

  std::vector<double> sup_outside;
  sup_outside.reserve(nested_regions.size());
  for (const auto& region : nested_regions) {
    double worst = 0.0;
    for (const auto& mu : family) worst = std::max(worst, mu.total_mass() - mu.mass_in(region));
    sup_outside.push_back(worst);
  }
  return sup_outside;
}

}  // namespace pathspace
