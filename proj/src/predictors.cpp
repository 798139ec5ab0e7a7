#include "equiaudit/predictors.hpp"

#include <algorithm>

#include "equiaudit/errors.hpp"
#include "equiaudit/exactq.hpp"

namespace equiaudit {

namespace {

/// Smallest g with g * representative = member, for deterministic expansion.
int transporter(const DomainSpec& domain, int representative, int member) {
  const int order = domain.group().order();
  for (int g = 0; g < order; ++g)
    if (domain.action.apply(g, representative) == member) return g;
  throw InputError("predictor: point is not in the orbit of its representative");
}

}  // namespace

PredictorTable build_majority_classifier(const DomainSpec& domain) {
  if (domain.target.kind != TargetSpec::Kind::Labels)
    throw InputError("build_majority_classifier: requires label targets");
  PredictorTable table;
  table.kind = PredictorTable::Kind::InvariantLabels;
  table.point_labels.assign(static_cast<std::size_t>(domain.n_points), 0);
  for (const OrbitStatistics& stats : classification_lower_bound(domain).per_orbit) {
    int label = stats.majority_label;
    if (label < 0) {
      // orbit entirely off-support: any choice is unused mass; keep the
      // smallest label appearing on the orbit for determinism
      label = domain.label(stats.members.front());
      for (int z : stats.members) label = std::min(label, domain.label(z));
    }
    table.orbit_representatives.push_back(stats.representative);
    table.orbit_labels.push_back(label);
    for (int z : stats.members) table.point_labels[static_cast<std::size_t>(z)] = label;
  }
  return table;
}

PredictorTable build_orbit_mean_regressor(const DomainSpec& domain) {
  if (domain.target.kind != TargetSpec::Kind::Vectors)
    throw InputError("build_orbit_mean_regressor: requires vector targets");
  PredictorTable table;
  table.kind = PredictorTable::Kind::InvariantVectors;
  table.point_vectors.assign(static_cast<std::size_t>(domain.n_points),
                             Vec(static_cast<std::size_t>(domain.target.vector_dim), 0.0));
  for (const OrbitStatistics& stats : invariant_regression_bound(domain).per_orbit) {
    table.orbit_representatives.push_back(stats.representative);
    table.orbit_values.push_back(stats.orbit_mean);
    for (int z : stats.members) table.point_vectors[static_cast<std::size_t>(z)] = stats.orbit_mean;
  }
  return table;
}

PredictorTable build_equivariant_regressor(const DomainSpec& domain) {
  if (domain.target.kind != TargetSpec::Kind::Vectors)
    throw InputError("build_equivariant_regressor: requires vector targets");
  if (!domain.rep_y) throw InputError("build_equivariant_regressor: requires rep_y");
  const Representation& rep = *domain.rep_y;
  PredictorTable table;
  table.kind = PredictorTable::Kind::EquivariantVectors;
  table.point_vectors.assign(static_cast<std::size_t>(domain.n_points),
                             Vec(static_cast<std::size_t>(rep.dim()), 0.0));
  for (const OrbitStatistics& stats : equivariant_regression_bound(domain).per_orbit) {
    Vec base = stats.equi_minimizer;
    if (base.empty()) base.assign(static_cast<std::size_t>(rep.dim()), 0.0);  // zero-mass orbit
    table.orbit_representatives.push_back(stats.representative);
    table.orbit_values.push_back(base);
    for (int z : stats.members) {
      const int g = transporter(domain, stats.representative, z);
      table.point_vectors[static_cast<std::size_t>(z)] = rep.matrix(g) * base;
    }
  }
  return table;
}

double empirical_error(const DomainSpec& domain, const PredictorTable& predictor) {
  const bool labels = domain.target.kind == TargetSpec::Kind::Labels;
  if (labels != (predictor.kind == PredictorTable::Kind::InvariantLabels))
    throw InputError("empirical_error: predictor kind does not match target kind");
  if (labels) {
    // exact rational sum so tightness against the classification bound is
    // an equality, not a tolerance
    Rational err;
    for (int x = 0; x < domain.n_points; ++x) {
      if (domain.label(x) == predictor.output_label(x)) continue;
      err += Rational::from_double(domain.density[static_cast<std::size_t>(x)]);
    }
    return err.to_double();
  }
  double err = 0.0;
  for (int x = 0; x < domain.n_points; ++x)
    err += domain.density[static_cast<std::size_t>(x)] *
           squared_norm(predictor.output_vector(x) - domain.vector(x));
  return err;
}

}  // namespace equiaudit
