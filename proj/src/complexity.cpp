#include "equiaudit/complexity.hpp"

#include <string>

#include "equiaudit/errors.hpp"

namespace equiaudit {

namespace {

/// Phase-1 simplex with exact rational pivots and Bland's rule: decides
/// whether {y >= 0 : A y = rhs} is nonempty, for rhs >= 0.
bool exact_feasible(std::vector<std::vector<Rational>> a, std::vector<Rational> rhs) {
  const int rows = static_cast<int>(a.size());
  const int structural = rows > 0 ? static_cast<int>(a[0].size()) : 0;
  const int total = structural + rows;  // artificial basis on the right
  for (int i = 0; i < rows; ++i) {
    a[static_cast<std::size_t>(i)].resize(static_cast<std::size_t>(total));
    a[static_cast<std::size_t>(i)][static_cast<std::size_t>(structural + i)] = Rational(1);
  }
  std::vector<int> basis(static_cast<std::size_t>(rows));
  for (int i = 0; i < rows; ++i) basis[static_cast<std::size_t>(i)] = structural + i;

  // reduced costs for minimizing the artificial sum: r_j = sum_i a_ij
  std::vector<Rational> reduced(static_cast<std::size_t>(total));
  Rational objective;
  for (int j = 0; j < total; ++j)
    for (int i = 0; i < rows; ++i) reduced[static_cast<std::size_t>(j)] += a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  for (int i = 0; i < rows; ++i) objective += rhs[static_cast<std::size_t>(i)];
  for (int i = 0; i < rows; ++i) reduced[static_cast<std::size_t>(basis[static_cast<std::size_t>(i)])] = Rational(0);

  while (true) {
    // Bland: smallest-index structural column with positive reduced cost
    int entering = -1;
    for (int j = 0; j < structural; ++j) {
      if (reduced[static_cast<std::size_t>(j)].signum() > 0) {
        entering = j;
        break;
      }
    }
    if (entering < 0) break;
    int leaving = -1;
    Rational best_ratio;
    for (int i = 0; i < rows; ++i) {
      const Rational& coef = a[static_cast<std::size_t>(i)][static_cast<std::size_t>(entering)];
      if (coef.signum() <= 0) continue;
      Rational ratio = rhs[static_cast<std::size_t>(i)] / coef;
      if (leaving < 0 || ratio < best_ratio ||
          (ratio == best_ratio && basis[static_cast<std::size_t>(i)] < basis[static_cast<std::size_t>(leaving)])) {
        leaving = i;
        best_ratio = ratio;
      }
    }
    if (leaving < 0) break;  // unbounded in an artificial-free direction; objective cannot improve further
    // pivot
    const Rational pivot = a[static_cast<std::size_t>(leaving)][static_cast<std::size_t>(entering)];
    for (int j = 0; j < total; ++j) a[static_cast<std::size_t>(leaving)][static_cast<std::size_t>(j)] /= pivot;
    rhs[static_cast<std::size_t>(leaving)] /= pivot;
    for (int i = 0; i < rows; ++i) {
      if (i == leaving) continue;
      const Rational factor = a[static_cast<std::size_t>(i)][static_cast<std::size_t>(entering)];
      if (factor.is_zero()) continue;
      for (int j = 0; j < total; ++j)
        a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] -=
            factor * a[static_cast<std::size_t>(leaving)][static_cast<std::size_t>(j)];
      rhs[static_cast<std::size_t>(i)] -= factor * rhs[static_cast<std::size_t>(leaving)];
    }
    const Rational obj_factor = reduced[static_cast<std::size_t>(entering)];
    for (int j = 0; j < total; ++j)
      reduced[static_cast<std::size_t>(j)] -= obj_factor * a[static_cast<std::size_t>(leaving)][static_cast<std::size_t>(j)];
    objective -= obj_factor * rhs[static_cast<std::size_t>(leaving)];
    basis[static_cast<std::size_t>(leaving)] = entering;
  }
  return objective.is_zero();
}

/// Exact group averages of the points: the view an invariant affine
/// functional has of the sample.
std::vector<std::vector<Rational>> averaged_points(const PointSet& ps) {
  const int m = ps.count();
  const int d = ps.dim();
  std::vector<std::vector<Rational>> out(static_cast<std::size_t>(m),
                                         std::vector<Rational>(static_cast<std::size_t>(d)));
  const Representation& rep = *ps.invariance;
  const int order = rep.group().order();
  for (int i = 0; i < m; ++i) {
    for (int g = 0; g < order; ++g) {
      const Mat& rho = rep.matrix(g);
      for (int r = 0; r < d; ++r) {
        Rational dot;
        for (int c = 0; c < d; ++c)
          dot += Rational::from_double(rho(r, c)) *
                 Rational::from_double(ps.points[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)]);
        out[static_cast<std::size_t>(i)][static_cast<std::size_t>(r)] += dot;
      }
    }
    for (int r = 0; r < d; ++r)
      out[static_cast<std::size_t>(i)][static_cast<std::size_t>(r)] /= Rational(order);
  }
  return out;
}

std::vector<std::vector<Rational>> exact_points(const PointSet& ps) {
  std::vector<std::vector<Rational>> out;
  out.reserve(ps.points.size());
  for (const Vec& p : ps.points) {
    std::vector<Rational> row;
    row.reserve(p.size());
    for (double v : p) row.push_back(Rational::from_double(v));
    out.push_back(std::move(row));
  }
  return out;
}

/// sigma_i (w . x_i + b) >= eps as a phase-1 system over
/// y = [w+; w-; b+; b-; surplus] >= 0.
bool pattern_feasible(const std::vector<std::vector<Rational>>& pts, unsigned sigma) {
  const int m = static_cast<int>(pts.size());
  const int d = static_cast<int>(pts[0].size());
  const int structural = 2 * (d + 1) + m;
  const Rational eps(1, kMarginDenominator);
  std::vector<std::vector<Rational>> a(static_cast<std::size_t>(m),
                                       std::vector<Rational>(static_cast<std::size_t>(structural)));
  std::vector<Rational> rhs(static_cast<std::size_t>(m), eps);
  for (int i = 0; i < m; ++i) {
    const Rational sign((sigma >> i) & 1u ? 1 : -1);
    for (int j = 0; j < d; ++j) {
      const Rational coef = sign * pts[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      a[static_cast<std::size_t>(i)][static_cast<std::size_t>(2 * j)] = coef;
      a[static_cast<std::size_t>(i)][static_cast<std::size_t>(2 * j + 1)] = -coef;
    }
    a[static_cast<std::size_t>(i)][static_cast<std::size_t>(2 * d)] = sign;
    a[static_cast<std::size_t>(i)][static_cast<std::size_t>(2 * d + 1)] = -sign;
    a[static_cast<std::size_t>(i)][static_cast<std::size_t>(2 * (d + 1) + i)] = Rational(-1);
  }
  return exact_feasible(std::move(a), std::move(rhs));
}

void validate(const PointSet& ps) {
  const int m = ps.count();
  if (m < 1) throw InputError("point set: at least one point required");
  const int d = ps.dim();
  if (d < 1 || d > 4) throw InputError("point set: dimension must be in 1..4");
  for (const Vec& p : ps.points)
    if (static_cast<int>(p.size()) != d) throw InputError("point set: inconsistent dimensions");
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j)
      if (ps.points[static_cast<std::size_t>(i)] == ps.points[static_cast<std::size_t>(j)])
        throw InputError("point set: points " + std::to_string(i) + " and " + std::to_string(j) +
                         " coincide");
  if (ps.invariance && ps.invariance->dim() != d)
    throw InputError("point set: invariance representation dim must match point dim");
}

}  // namespace

std::vector<bool> realizable_dichotomies(const PointSet& points, Constraint constraint) {
  validate(points);
  const int m = points.count();
  if (m > kDichotomyCap)
    throw InputError("realizable_dichotomies: sample size exceeds the exhaustive cap of " +
                     std::to_string(kDichotomyCap));
  if (constraint == Constraint::Invariant && !points.invariance)
    throw InputError("realizable_dichotomies: invariant constraint requires an invariance group");
  const auto pts =
      constraint == Constraint::Invariant ? averaged_points(points) : exact_points(points);
  const unsigned count = 1u << m;
  std::vector<bool> realizable(count, false);
  // complement symmetry: sigma is achievable iff ~sigma is (negate w and b)
  for (unsigned sigma = 0; sigma < count; ++sigma) {
    if (sigma & 1u) continue;
    const bool ok = pattern_feasible(pts, sigma);
    realizable[sigma] = ok;
    realizable[~sigma & (count - 1)] = ok;
  }
  return realizable;
}

RademacherTable rademacher_table(const PointSet& points, Constraint constraint) {
  const std::vector<bool> realizable = realizable_dichotomies(points, constraint);
  const int m = points.count();
  const unsigned count = 1u << m;
  RademacherTable table;
  table.m = m;
  table.best_agreement.assign(count, 0);
  std::vector<unsigned> achieved;
  for (unsigned tau = 0; tau < count; ++tau)
    if (realizable[tau]) achieved.push_back(tau);
  for (unsigned sigma = 0; sigma < count; ++sigma) {
    int best = 0;
    for (unsigned tau : achieved) {
      const int agree = m - __builtin_popcount(sigma ^ tau);
      if (agree > best) best = agree;
    }
    table.best_agreement[sigma] = best;
  }
  Rational corr_sum, acc_sum;
  for (unsigned sigma = 0; sigma < count; ++sigma) {
    const int best = table.best_agreement[sigma];
    corr_sum += Rational(2 * best - m, m);
    acc_sum += Rational(best, m);
  }
  const Rational scale(1, static_cast<std::int64_t>(count));
  table.correlation = corr_sum * scale;
  table.accuracy = acc_sum * scale;
  return table;
}

Rational empirical_rademacher(const PointSet& points, Constraint constraint,
                              Convention convention) {
  const RademacherTable table = rademacher_table(points, constraint);
  return convention == Convention::Correlation ? table.correlation : table.accuracy;
}

}  // namespace equiaudit
