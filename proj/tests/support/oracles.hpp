#pragma once

// Independent oracles for the bound computations. These deliberately avoid
// the closed-form minimizers: the classification oracle enumerates every
// label, the regression oracles numerically minimize the per-orbit
// objective (coarse grid scan, then derivative-free coordinate descent with
// parabola probes, which is exact for these quadratic objectives up to
// float noise).

#include <algorithm>
#include <cmath>
#include <set>

#include "equiaudit/domain.hpp"
#include "equiaudit/exactq.hpp"

namespace equiaudit::testsupport {

/// Exhaustive transcription of the dissent definition: min over every label
/// in the whole domain of the orbit mass labeled differently. Exact.
inline double classification_oracle(const DomainSpec& domain) {
  std::set<int> all_labels(domain.target.labels.begin(), domain.target.labels.end());
  Rational total;
  for (const Orbit& orbit : orbits(domain.action)) {
    bool first = true;
    Rational best;
    for (int y : all_labels) {
      Rational mass;
      for (int z : orbit.members)
        if (domain.label(z) != y)
          mass += Rational::from_double(domain.density[static_cast<std::size_t>(z)]);
      if (first || mass < best) {
        best = mass;
        first = false;
      }
    }
    total += best;
  }
  return total.to_double();
}

namespace detail {

/// Minimizes a convex quadratic objective over R^dim: 9^dim grid scan over
/// the data range to land in the basin, then coordinate descent where each
/// line minimum comes from a 3-point parabola fit.
template <typename Objective>
double minimize_quadratic(const Objective& objective, int dim, double radius) {
  Vec best(static_cast<std::size_t>(dim), 0.0);
  double best_value = objective(best);
  // grid scan
  const int steps = 9;
  std::vector<int> idx(static_cast<std::size_t>(dim), 0);
  while (true) {
    Vec c(static_cast<std::size_t>(dim));
    for (int d = 0; d < dim; ++d)
      c[static_cast<std::size_t>(d)] = -radius + 2.0 * radius * idx[static_cast<std::size_t>(d)] / (steps - 1);
    const double value = objective(c);
    if (value < best_value) {
      best_value = value;
      best = c;
    }
    int d = 0;
    while (d < dim && ++idx[static_cast<std::size_t>(d)] == steps) {
      idx[static_cast<std::size_t>(d)] = 0;
      ++d;
    }
    if (d == dim) break;
  }
  // coordinate descent with exact line minima
  const double h = std::max(0.5, radius / 8.0);
  for (int sweep = 0; sweep < 400; ++sweep) {
    double improved = 0.0;
    for (int d = 0; d < dim; ++d) {
      Vec lo = best, hi = best;
      lo[static_cast<std::size_t>(d)] -= h;
      hi[static_cast<std::size_t>(d)] += h;
      const double f_lo = objective(lo), f_mid = best_value, f_hi = objective(hi);
      const double curvature = f_lo - 2.0 * f_mid + f_hi;
      if (curvature <= 0.0) continue;  // flat direction
      const double step = 0.5 * h * (f_lo - f_hi) / curvature;
      Vec candidate = best;
      candidate[static_cast<std::size_t>(d)] += step;
      const double value = objective(candidate);
      if (value < best_value) {
        improved += best_value - value;
        best_value = value;
        best = candidate;
      }
    }
    if (improved < 1e-15) break;
  }
  return best_value;
}

}  // namespace detail

/// min over per-orbit constants c of sum_z p(z) ||f(z) - c||^2, summed over
/// orbits.
inline double invariant_regression_oracle(const DomainSpec& domain) {
  double total = 0.0;
  for (const Orbit& orbit : orbits(domain.action)) {
    double radius = 1.0;
    for (int z : orbit.members) radius = std::max(radius, 2.0 * max_abs(domain.vector(z)) + 1.0);
    auto objective = [&](const Vec& c) {
      double value = 0.0;
      for (int z : orbit.members)
        value += domain.density[static_cast<std::size_t>(z)] * squared_norm(domain.vector(z) - c);
      return value;
    };
    total += detail::minimize_quadratic(objective, domain.target.vector_dim, radius);
  }
  return total;
}

/// min over c of sum_g p(gx) ||f(gx) - rho_Y(g) c||^2 / |G_x|, summed over
/// orbit representatives.
inline double equivariant_regression_oracle(const DomainSpec& domain) {
  const Representation& rep = *domain.rep_y;
  const int order = domain.group().order();
  double total = 0.0;
  for (const Orbit& orbit : orbits(domain.action)) {
    const int x = orbit.representative;
    const double lift = orbit.lift_factor();
    double radius = 1.0;
    for (int z : orbit.members) radius = std::max(radius, 4.0 * max_abs(domain.vector(z)) + 1.0);
    auto objective = [&](const Vec& c) {
      double value = 0.0;
      for (int g = 0; g < order; ++g) {
        const int gx = domain.action.apply(g, x);
        const double p = domain.density[static_cast<std::size_t>(gx)];
        if (p == 0.0) continue;
        value += p * lift * squared_norm(domain.vector(gx) - rep.matrix(g) * c);
      }
      return value;
    };
    total += detail::minimize_quadratic(objective, rep.dim(), radius);
  }
  return total;
}

}  // namespace equiaudit::testsupport
