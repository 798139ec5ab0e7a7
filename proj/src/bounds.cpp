#include "equiaudit/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "equiaudit/errors.hpp"
#include "equiaudit/parallel.hpp"

namespace equiaudit {

namespace {

void require_labels(const DomainSpec& domain, const char* op) {
  if (domain.target.kind != TargetSpec::Kind::Labels)
    throw InputError(std::string(op) + ": requires label targets (use the regression bounds for vectors)");
}

void require_vectors(const DomainSpec& domain, const char* op) {
  if (domain.target.kind != TargetSpec::Kind::Vectors)
    throw InputError(std::string(op) + ": requires vector targets");
}

void require_rep_y(const DomainSpec& domain, const char* op) {
  if (!domain.rep_y) throw InputError(std::string(op) + ": requires rep_y");
}

std::vector<int> positive_support_of(const DomainSpec& domain, const Orbit& orbit) {
  std::vector<int> support;
  for (int z : orbit.members)
    if (domain.on_support(z)) support.push_back(z);
  return support;
}

/// k(Gx) as an exact rational, plus the minimizing label.
struct DissentResult {
  Rational value;
  int majority_label = -1;
};

DissentResult total_dissent_exact(const DomainSpec& domain, const Orbit& orbit) {
  // masses per label realized on (Gx)^+, ascending label id
  std::map<int, Rational> label_mass;
  Rational orbit_mass;
  for (int z : orbit.members) {
    const double p = domain.density[static_cast<std::size_t>(z)];
    if (p == 0.0) continue;
    const Rational pz = Rational::from_double(p);
    orbit_mass += pz;
    label_mass[domain.label(z)] += pz;
  }
  DissentResult result;
  if (label_mass.empty()) return result;  // zero-mass orbit dissents nothing
  bool first = true;
  for (const auto& [label, mass] : label_mass) {
    const Rational dissent = orbit_mass - mass;  // mass of members labeled differently
    if (first || dissent < result.value) {
      result.value = dissent;
      result.majority_label = label;
      first = false;
    }
    // ties keep the smallest label id (map iterates ascending)
  }
  return result;
}

OrbitStatistics base_statistics(const DomainSpec& domain, const Orbit& orbit) {
  OrbitStatistics stats;
  stats.representative = orbit.representative;
  stats.members = orbit.members;
  stats.stabilizer_order = orbit.stabilizer_order;
  stats.positive_support = positive_support_of(domain, orbit);
  Rational mass;
  for (int z : orbit.members) mass += Rational::from_double(domain.density[static_cast<std::size_t>(z)]);
  stats.orbit_mass = mass.to_double();
  return stats;
}

double orbit_mass_double(const DomainSpec& domain, const Orbit& orbit) {
  double mass = 0.0;
  for (int z : orbit.members) mass += domain.density[static_cast<std::size_t>(z)];
  return mass;
}

}  // namespace

std::string method_name(BoundMethod m) {
  switch (m) {
    case BoundMethod::Classification: return "classification";
    case BoundMethod::ClassificationFinite: return "classification_finite_special";
    case BoundMethod::InvariantRegression: return "invariant_regression";
    case BoundMethod::EquivariantRegression: return "equivariant_regression";
    case BoundMethod::EquivariantOrthogonal: return "equivariant_orthogonal";
  }
  return "unknown";
}

double total_dissent(const DomainSpec& domain, const Orbit& orbit) {
  require_labels(domain, "total_dissent");
  return total_dissent_exact(domain, orbit).value.to_double();
}

double total_dissent_via_incorrect_set(const DomainSpec& domain, const Orbit& orbit,
                                       const AuditReport& audit) {
  require_labels(domain, "total_dissent_via_incorrect_set");
  const int order = domain.group().order();
  const Rational lift(1, orbit.stabilizer_order);
  bool first = true;
  Rational best;
  for (int x : orbit.members) {
    if (!domain.on_support(x)) continue;  // minimum ranges over (Gx)^+
    Rational sum;
    for (int g = 0; g < order; ++g) {
      if (audit.tag(x, g) != Tag::Incorrect) continue;
      const int gx = domain.action.apply(g, x);
      sum += Rational::from_double(domain.density[static_cast<std::size_t>(gx)]) * lift;
    }
    if (first || sum < best) {
      best = sum;
      first = false;
    }
  }
  return first ? 0.0 : best.to_double();
}

std::vector<double> incorrect_mass_by_point(const DomainSpec& domain, const AuditReport& audit) {
  const int order = domain.group().order();
  std::vector<Orbit> orbs = orbits(domain.action);
  std::vector<int> stabilizer(static_cast<std::size_t>(domain.n_points), 1);
  for (const Orbit& o : orbs)
    for (int z : o.members) stabilizer[static_cast<std::size_t>(z)] = o.stabilizer_order;
  std::vector<double> sums(static_cast<std::size_t>(domain.n_points), 0.0);
  for (int x = 0; x < domain.n_points; ++x) {
    Rational sum;
    const Rational lift(1, stabilizer[static_cast<std::size_t>(x)]);
    for (int g = 0; g < order; ++g) {
      if (audit.tag(x, g) != Tag::Incorrect) continue;
      const int gx = domain.action.apply(g, x);
      sum += Rational::from_double(domain.density[static_cast<std::size_t>(gx)]) * lift;
    }
    sums[static_cast<std::size_t>(x)] = sum.to_double();
  }
  return sums;
}

BoundReport classification_lower_bound(const DomainSpec& domain) {
  require_labels(domain, "classification_lower_bound");
  bool any_support = false;
  for (int x = 0; x < domain.n_points; ++x) any_support |= domain.on_support(x);
  if (!any_support) throw InputError("classification_lower_bound: empty support");

  BoundReport report;
  report.method = BoundMethod::Classification;
  Rational total;
  for (const Orbit& orbit : orbits(domain.action)) {
    OrbitStatistics stats = base_statistics(domain, orbit);
    const DissentResult dissent = total_dissent_exact(domain, orbit);
    stats.dissent = dissent.value.to_double();
    stats.majority_label = dissent.majority_label;
    stats.contribution = stats.dissent;
    total += dissent.value;
    report.per_orbit.push_back(std::move(stats));
  }
  report.total = total.to_double();
  return report;
}

BoundReport classification_lower_bound_finite_special(const DomainSpec& domain) {
  require_labels(domain, "classification_lower_bound_finite_special");
  const int order = domain.group().order();
  for (int x = 0; x < domain.n_points; ++x)
    for (int g = 0; g < order; ++g) {
      const int gx = domain.action.apply(g, x);
      if (std::fabs(domain.density[static_cast<std::size_t>(gx)] - domain.density[static_cast<std::size_t>(x)]) > 1e-9)
        throw InputError("classification_lower_bound_finite_special: action is not density-preserving at point " +
                         std::to_string(x) + ", element " + std::to_string(g));
    }

  BoundReport report;
  report.method = BoundMethod::ClassificationFinite;
  Rational majority_total;  // sum_q q * c_q
  for (const Orbit& orbit : orbits(domain.action)) {
    OrbitStatistics stats = base_statistics(domain, orbit);
    // majority fraction q = (max_y |(Gx)_y|) / |Gx|
    std::map<int, int> counts;
    for (int z : orbit.members) counts[domain.label(z)]++;
    int max_count = 0;
    int majority = -1;
    for (const auto& [label, count] : counts) {
      if (count > max_count) {
        max_count = count;
        majority = label;
      }
    }
    const Rational q(max_count, orbit.size());
    Rational mass;
    for (int z : orbit.members) mass += Rational::from_double(domain.density[static_cast<std::size_t>(z)]);
    majority_total += q * mass;
    stats.majority_label = majority;
    stats.contribution = (mass - q * mass).to_double();
    stats.dissent = stats.contribution;
    report.per_orbit.push_back(std::move(stats));
  }
  report.total = (Rational(1) - majority_total).to_double();
  return report;
}

BoundReport invariant_regression_bound(const DomainSpec& domain) {
  require_vectors(domain, "invariant_regression_bound");
  const int dim = domain.target.vector_dim;
  const std::vector<Orbit> orbs = orbits(domain.action);

  BoundReport report;
  report.method = BoundMethod::InvariantRegression;
  report.per_orbit.resize(orbs.size());
  parallel_for(static_cast<int>(orbs.size()), [&](int i) {
    const Orbit& orbit = orbs[static_cast<std::size_t>(i)];
    OrbitStatistics stats = base_statistics(domain, orbit);
    stats.orbit_mean.assign(static_cast<std::size_t>(dim), 0.0);
    const double mass = orbit_mass_double(domain, orbit);
    if (mass > 0.0) {
      Vec weighted(static_cast<std::size_t>(dim), 0.0);
      for (int z : orbit.members) {
        const double p = domain.density[static_cast<std::size_t>(z)];
        if (p == 0.0) continue;
        weighted = weighted + scaled(domain.vector(z), p);
      }
      stats.orbit_mean = scaled(weighted, 1.0 / mass);
      double variance = 0.0;
      for (int z : orbit.members) {
        const double p = domain.density[static_cast<std::size_t>(z)];
        if (p == 0.0) continue;
        variance += (p / mass) * squared_norm(stats.orbit_mean - domain.vector(z));
      }
      stats.orbit_variance = variance;
      stats.contribution = mass * variance;
    }
    report.per_orbit[static_cast<std::size_t>(i)] = std::move(stats);
  });
  for (const OrbitStatistics& stats : report.per_orbit) report.total += stats.contribution;
  return report;
}

QMatrixResult q_matrix(const DomainSpec& domain, const Orbit& orbit) {
  require_vectors(domain, "q_matrix");
  require_rep_y(domain, "q_matrix");
  const Representation& rep = *domain.rep_y;
  const int dim = rep.dim();
  const int order = domain.group().order();
  const int x = orbit.representative;
  const double lift = orbit.lift_factor();

  QMatrixResult result;
  result.q_matrix = Mat(dim, dim);
  std::vector<Mat> terms;
  terms.reserve(static_cast<std::size_t>(order));
  for (int g = 0; g < order; ++g) {
    const double p = domain.density[static_cast<std::size_t>(domain.action.apply(g, x))];
    const Mat term = (rep.matrix(g).transposed() * rep.matrix(g)).scaled(p * lift);
    result.q_matrix = result.q_matrix + term;
    terms.push_back(term);
  }

  const std::vector<double> evals = symmetric_eigenvalues(result.q_matrix);
  const double largest = std::fabs(evals.back());
  const double smallest = std::fabs(evals.front());
  if (largest == 0.0 || smallest < kQRankTolerance * largest)
    throw DegeneracyError("q_matrix: Q_Gx is singular for the orbit of point " +
                          std::to_string(orbit.representative) +
                          " (restrict the domain to the support or use the orthogonal route)");

  const Mat q_inverse = inverse(result.q_matrix);
  result.per_element.reserve(terms.size());
  for (const Mat& term : terms) result.per_element.push_back(q_inverse * term);
  return result;
}

BoundReport equivariant_regression_bound(const DomainSpec& domain) {
  require_vectors(domain, "equivariant_regression_bound");
  require_rep_y(domain, "equivariant_regression_bound");
  const Representation& rep = *domain.rep_y;
  const int order = domain.group().order();
  const std::vector<Orbit> orbs = orbits(domain.action);

  BoundReport report;
  report.method = BoundMethod::EquivariantRegression;
  report.per_orbit.resize(orbs.size());
  parallel_for(static_cast<int>(orbs.size()), [&](int i) {
    const Orbit& orbit = orbs[static_cast<std::size_t>(i)];
    OrbitStatistics stats = base_statistics(domain, orbit);
    const double mass = orbit_mass_double(domain, orbit);
    if (mass > 0.0) {
      const QMatrixResult q = q_matrix(domain, orbit);
      stats.q_matrix = q.q_matrix;
      const int x = orbit.representative;
      Vec minimizer(static_cast<std::size_t>(rep.dim()), 0.0);
      for (int g = 0; g < order; ++g) {
        const int gx = domain.action.apply(g, x);
        const Vec stabilized = rep.inverse_matrix(g) * domain.vector(gx);
        minimizer = minimizer + q.per_element[static_cast<std::size_t>(g)] * stabilized;
      }
      stats.equi_minimizer = minimizer;
      double residual = 0.0;
      const double lift = orbit.lift_factor();
      for (int g = 0; g < order; ++g) {
        const int gx = domain.action.apply(g, x);
        const double p = domain.density[static_cast<std::size_t>(gx)];
        if (p == 0.0) continue;
        residual += p * lift * squared_norm(domain.vector(gx) - rep.matrix(g) * minimizer);
      }
      stats.equi_residual = residual;
      stats.contribution = residual;
    }
    report.per_orbit[static_cast<std::size_t>(i)] = std::move(stats);
  });
  for (const OrbitStatistics& stats : report.per_orbit) report.total += stats.contribution;
  return report;
}

BoundReport equivariant_orthogonal_bound(const DomainSpec& domain) {
  require_vectors(domain, "equivariant_orthogonal_bound");
  require_rep_y(domain, "equivariant_orthogonal_bound");
  const Representation& rep = *domain.rep_y;
  if (!rep.orthogonal())
    throw InputError("equivariant_orthogonal_bound: rep_y must be orthogonal");
  const int order = domain.group().order();
  const std::vector<Orbit> orbs = orbits(domain.action);

  BoundReport report;
  report.method = BoundMethod::EquivariantOrthogonal;
  report.per_orbit.resize(orbs.size());
  parallel_for(static_cast<int>(orbs.size()), [&](int i) {
    const Orbit& orbit = orbs[static_cast<std::size_t>(i)];
    OrbitStatistics stats = base_statistics(domain, orbit);
    const double mass = orbit_mass_double(domain, orbit);
    if (mass > 0.0) {
      const int x = orbit.representative;
      const double lift = orbit.lift_factor();
      // scalar weights q_x(g) form a probability distribution over G
      std::vector<double> weights(static_cast<std::size_t>(order), 0.0);
      std::vector<Vec> stabilized(static_cast<std::size_t>(order));
      Vec mean(static_cast<std::size_t>(rep.dim()), 0.0);
      for (int g = 0; g < order; ++g) {
        const int gx = domain.action.apply(g, x);
        weights[static_cast<std::size_t>(g)] = domain.density[static_cast<std::size_t>(gx)] * lift / mass;
        stabilized[static_cast<std::size_t>(g)] = rep.inverse_matrix(g) * domain.vector(gx);
        mean = mean + scaled(stabilized[static_cast<std::size_t>(g)], weights[static_cast<std::size_t>(g)]);
      }
      double variance = 0.0;
      for (int g = 0; g < order; ++g)
        variance += weights[static_cast<std::size_t>(g)] * squared_norm(stabilized[static_cast<std::size_t>(g)] - mean);
      stats.equi_minimizer = mean;
      stats.equi_residual = mass * variance;
      stats.contribution = mass * variance;
    }
    report.per_orbit[static_cast<std::size_t>(i)] = std::move(stats);
  });
  for (const OrbitStatistics& stats : report.per_orbit) report.total += stats.contribution;
  return report;
}

}  // namespace equiaudit
