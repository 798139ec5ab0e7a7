#pragma once

#include <optional>
#include <string>
#include <vector>

#include "equiaudit/domain.hpp"
#include "equiaudit/exactq.hpp"

namespace equiaudit {

enum class BoundMethod {
  Classification,            // total dissent summed over the fundamental domain
  ClassificationFinite,      // 1 - sum_q q c_q, density-preserving special case
  InvariantRegression,       // orbit-mass-weighted variance of f on each orbit
  EquivariantRegression,     // residual around the q-weighted stabilized mean
  EquivariantOrthogonal,     // same value through the scalar-weight route
};

std::string method_name(BoundMethod m);

/// Per-orbit quantities feeding one bound. Which fields are populated
/// depends on the method; `contribution` is always the orbit's share of the
/// total.
struct OrbitStatistics {
  int representative = 0;
  std::vector<int> members;
  int stabilizer_order = 1;
  double orbit_mass = 0.0;            // p(Gx)
  std::vector<int> positive_support;  // (Gx)^+

  double contribution = 0.0;

  // classification
  double dissent = 0.0;
  int majority_label = -1;

  // invariant regression
  Vec orbit_mean;
  double orbit_variance = 0.0;

  // equivariant regression
  Mat q_matrix;
  Vec equi_minimizer;  // E_G[f, x] at the representative
  double equi_residual = 0.0;
};

/// A computed lower bound on err(h) with its per-orbit breakdown.
/// total is the sum of contributions over orbit representatives, taken in
/// ascending representative order.
struct BoundReport {
  BoundMethod method = BoundMethod::Classification;
  std::vector<OrbitStatistics> per_orbit;
  double total = 0.0;
};

/// Total dissent k(Gx): the smallest density mass inside the orbit that
/// disagrees with a single label, minimized over the labels realized on
/// (Gx)^+. Computed in exact rational arithmetic so equal masses compare
/// equal regardless of summation grouping. Rejects vector targets.
double total_dissent(const DomainSpec& domain, const Orbit& orbit);

/// Same value through the Incorrect Set: for each on-support orbit member
/// x', sums p(gx') * 1[(x', g) incorrect] / |G_x'| over the group, then
/// minimizes over x'. Agrees with total_dissent exactly.
double total_dissent_via_incorrect_set(const DomainSpec& domain, const Orbit& orbit,
                                       const AuditReport& audit);

/// The per-point sums of the incorrect-set route, for every point
/// (0 for off-support points, which have no incorrect pairs).
std::vector<double> incorrect_mass_by_point(const DomainSpec& domain, const AuditReport& audit);

/// Classification error lower bound: sum of k(Gx) over the fundamental
/// domain. Rejects empty supports.
BoundReport classification_lower_bound(const DomainSpec& domain);

/// Special case for density-preserving actions (p(gx) = p(x), checked to
/// 1e-9): 1 - sum_q q c_q where q is an orbit's majority-label fraction and
/// c_q the mass of points whose orbit has that fraction. Throws InputError
/// naming a violating pair when the action is not density-preserving.
BoundReport classification_lower_bound_finite_special(const DomainSpec& domain);

/// Invariant regression bound: sum over orbits of p(Gx) * V_Gx[f].
/// Zero-mass orbits contribute 0.
BoundReport invariant_regression_bound(const DomainSpec& domain);

struct QMatrixResult {
  Mat q_matrix;                  // Q_Gx
  std::vector<Mat> per_element;  // q(gx) for each g, summing to the identity
};

/// Q_Gx = sum_g p(gx) rho_Y(g)^T rho_Y(g) / |G_x| and its per-element
/// weights q(gx) = Q_Gx^-1 p(gx) rho_Y(g)^T rho_Y(g) / |G_x|.
/// Throws DegeneracyError naming the orbit when Q_Gx is rank-deficient
/// (smallest eigenvalue below 1e-12 times the largest); there is no
/// pseudo-inverse fallback.
QMatrixResult q_matrix(const DomainSpec& domain, const Orbit& orbit);

/// Equivariant regression bound: per orbit, the minimizer
/// E_G[f, x] = sum_g q(gx) rho_Y(g)^-1 f(gx) and the residual
/// sum_g p(gx) ||f(gx) - rho_Y(g) E_G[f, x]||^2 / |G_x|.
BoundReport equivariant_regression_bound(const DomainSpec& domain);

/// Scalar-weight route for orthogonal rho_Y: the weights
/// q_x(g) = p(gx) / (|G_x| p(Gx)) form a distribution over G and the bound
/// is sum over orbits of p(Gx) * Var of the stabilized values
/// rho_Y(g)^-1 f(gx). Rejects non-orthogonal representations.
BoundReport equivariant_orthogonal_bound(const DomainSpec& domain);

constexpr double kQRankTolerance = 1e-12;

}  // namespace equiaudit
