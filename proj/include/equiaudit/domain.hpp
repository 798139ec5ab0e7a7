#pragma once

#include <optional>
#include <string>
#include <vector>

#include "equiaudit/groups.hpp"

namespace equiaudit {

/// The target function f: either a class label per point or a fixed-dim
/// real vector per point.
struct TargetSpec {
  enum class Kind { Labels, Vectors };
  Kind kind = Kind::Labels;
  std::vector<int> labels;   // Kind::Labels, one nonnegative id per point
  std::vector<Vec> vectors;  // Kind::Vectors, one vector per point
  int vector_dim = 0;

  static TargetSpec of_labels(std::vector<int> labels);
  static TargetSpec of_vectors(std::vector<Vec> vectors);
};

/// A discretized task: a finite point set with density weights p(x), the
/// target f(x), and a group action on the points. Coordinates are optional
/// decoration for generators and plotting; no computation reads them.
///
/// Zero-density points are meaningful: they are the off-support locations
/// that make extrinsic equivariance detectable. Support detection is an
/// exact p(x) == 0 test, never thresholding.
///
/// Immutable after construction; all operations on it are pure functions.
struct DomainSpec {
  int n_points = 0;
  std::optional<std::vector<Vec>> coordinates;
  std::vector<double> density;
  TargetSpec target;
  PermutationAction action;
  std::optional<Representation> rep_y;

  DomainSpec(std::vector<double> density, TargetSpec target, PermutationAction action,
             std::optional<Representation> rep_y = std::nullopt,
             std::optional<std::vector<Vec>> coordinates = std::nullopt);

  const FiniteGroup& group() const { return action.group(); }
  bool on_support(int x) const { return density[static_cast<std::size_t>(x)] > 0.0; }
  int label(int x) const { return target.labels[static_cast<std::size_t>(x)]; }
  const Vec& vector(int x) const { return target.vectors[static_cast<std::size_t>(x)]; }

  static constexpr double kDensitySumTolerance = 1e-9;
};

/// Pointwise equivariance type of a pair (x, g).
enum class Tag : unsigned char { Correct, Incorrect, Extrinsic, Undefined };

char tag_letter(Tag t);

/// Classifies one pair (x, g):
///   Undefined  if p(x) = 0,
///   Extrinsic  if p(gx) = 0,
///   Correct    if the targets transform consistently (labels: f(gx) = f(x);
///              vectors: f(gx) = rho_Y(g) f(x) entrywise within tol),
///   Incorrect  otherwise.
/// Label targets use the invariant convention; tol only affects vectors.
Tag classify_pair(const DomainSpec& domain, int x, int g, double tol = 1e-9);

/// The full C/I/E/U partition of X x G with measures under the product
/// measure p(x) x uniform(G).
struct AuditReport {
  int n_points = 0;
  int group_order = 0;
  std::vector<Tag> tags;  // index x * group_order + g
  double mu_correct = 0, mu_incorrect = 0, mu_extrinsic = 0, mu_undefined = 0;

  Tag tag(int x, int g) const { return tags[static_cast<std::size_t>(x) * group_order + g]; }
};

/// Tags every pair and accumulates the four measures in ascending
/// (point, element) order.
AuditReport audit(const DomainSpec& domain, double tol = 1e-9);

}  // namespace equiaudit
