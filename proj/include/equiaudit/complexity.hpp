#pragma once

#include <optional>
#include <vector>

#include "equiaudit/exactq.hpp"
#include "equiaudit/groups.hpp"

namespace equiaudit {

/// A tiny labeled-sample configuration for expressivity analysis: m distinct
/// points in R^d (d <= 4), optionally with a finite group acting linearly on
/// the coordinates. The model class under study is affine linear threshold
/// functions, optionally constrained to be invariant under the group.
struct PointSet {
  std::vector<Vec> points;
  std::optional<Representation> invariance;

  int count() const { return static_cast<int>(points.size()); }
  int dim() const { return points.empty() ? 0 : static_cast<int>(points.front().size()); }
};

enum class Constraint { None, Invariant };
enum class Convention { Correlation, Accuracy };

/// Exhaustive-enumeration cap on the sample size (2^m sign patterns, one
/// exact LP each).
constexpr int kDichotomyCap = 16;

/// Margin used on the strict separating inequalities.
constexpr std::int64_t kMarginDenominator = 1000000000;  // epsilon = 1e-9

/// Which sign patterns sigma in {-1,+1}^m (bit i set means +1 on point i)
/// are achievable by an affine hyperplane with strict margin epsilon.
/// Under the invariant constraint each point is replaced by its group
/// average first: an invariant affine functional sees exactly the averaged
/// point, and group-equal points are forced to equal outputs.
/// Decided by exact rational simplex; rejects m > kDichotomyCap.
std::vector<bool> realizable_dichotomies(const PointSet& points, Constraint constraint);

/// The full per-sigma account behind the empirical Rademacher complexity of
/// the thresholded-linear class: for each sigma, the best achievable
/// agreement count, plus the averaged values under both conventions.
///   correlation: E_sigma sup (1/m) sum_i sigma_i f(x_i) = E[(2a - m)/m]
///   accuracy:    E_sigma sup (a/m)
/// where a is the per-sigma best agreement. Values are exact rationals.
struct RademacherTable {
  int m = 0;
  std::vector<int> best_agreement;  // indexed by sigma bitmask
  Rational correlation;
  Rational accuracy;

  /// The two conventions agree iff every pattern is realizable.
  bool conventions_agree() const { return correlation == accuracy; }
};

RademacherTable rademacher_table(const PointSet& points, Constraint constraint);

Rational empirical_rademacher(const PointSet& points, Constraint constraint,
                              Convention convention);

}  // namespace equiaudit
