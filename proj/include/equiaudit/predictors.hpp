#pragma once

#include <vector>

#include "equiaudit/bounds.hpp"
#include "equiaudit/domain.hpp"

namespace equiaudit {

/// An optimal symmetric predictor realized as a lookup table over orbits.
/// The optimal symmetric model is a per-orbit constant, so a table is its
/// faithful realization: no training, no approximation noise.
///
/// Invariant kinds store one output per orbit, repeated at every member.
/// The equivariant kind stores the base value E_G[f, x] at the orbit
/// representative and expands it along the orbit as rho_Y(g) * base (the
/// expansion is well defined because the base is stabilizer-invariant).
struct PredictorTable {
  enum class Kind { InvariantLabels, InvariantVectors, EquivariantVectors };
  Kind kind = Kind::InvariantLabels;

  std::vector<int> orbit_representatives;
  std::vector<int> orbit_labels;   // InvariantLabels
  std::vector<Vec> orbit_values;   // vector kinds: per-orbit constant / base value

  // expanded per-point table used for evaluation
  std::vector<int> point_labels;
  std::vector<Vec> point_vectors;

  int output_label(int x) const { return point_labels[static_cast<std::size_t>(x)]; }
  const Vec& output_vector(int x) const { return point_vectors[static_cast<std::size_t>(x)]; }
};

/// Assigns every orbit the label with the minimal dissenting mass
/// (ties broken by smallest label id). Realizes the classification bound.
PredictorTable build_majority_classifier(const DomainSpec& domain);

/// Assigns every positive-mass orbit its density-weighted mean E_Gx[f].
/// Realizes the invariant regression bound.
PredictorTable build_orbit_mean_regressor(const DomainSpec& domain);

/// Assigns every positive-mass orbit the base value E_G[f, x] at its
/// representative, expanded along the orbit by rho_Y. Realizes the
/// equivariant regression bound. Propagates the singular-Q error.
PredictorTable build_equivariant_regressor(const DomainSpec& domain);

/// Classification error rate (exact, via rational sums) or L2 regression
/// error of the predictor table against the domain's targets.
/// Rejects mismatched target/predictor kinds.
double empirical_error(const DomainSpec& domain, const PredictorTable& predictor);

}  // namespace equiaudit
