#pragma once

#include <memory>
#include <vector>

#include "equiaudit/linalg.hpp"

namespace equiaudit {

/// A finite group given by explicit composition tables. Element 0 is the
/// identity. Construction verifies the group axioms exhaustively (these
/// groups are desk-scale: |G| up to a few hundred).
class FiniteGroup {
 public:
  enum class Kind { Cyclic, Dihedral, Explicit };
  static constexpr int kIdentity = 0;

  /// Cyclic group C_n; element k is the k-th power of the generator.
  static FiniteGroup cyclic(int n);

  /// Dihedral group D_n of order 2n. Elements 0..n-1 are rotations r^k,
  /// elements n..2n-1 are the reflections s*r^k. D_1 is the flip group.
  static FiniteGroup dihedral(int n);

  /// Builds from an explicit composition table, verifying identity,
  /// inverses and associativity. Throws InputError naming the first
  /// violating pair/triple.
  static FiniteGroup from_table(std::vector<std::vector<int>> compose);

  int order() const { return static_cast<int>(compose_.size()); }
  int compose(int a, int b) const { return compose_[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)]; }
  int inverse(int g) const { return inverse_[static_cast<std::size_t>(g)]; }
  Kind kind() const { return kind_; }

  /// Construction parameter (n of cyclic/dihedral; order for explicit).
  int parameter() const { return parameter_; }

  /// A small generating set, computed greedily. Used to verify action
  /// tables in O(|S| * |G| * n) instead of O(|G|^2 * n).
  const std::vector<int>& generators() const { return generators_; }

 private:
  FiniteGroup(Kind kind, int parameter, std::vector<std::vector<int>> compose);
  void verify_axioms() const;
  void compute_inverses();
  void compute_generators();

  Kind kind_;
  int parameter_;
  std::vector<std::vector<int>> compose_;
  std::vector<int> inverse_;
  std::vector<int> generators_;
};

using GroupPtr = std::shared_ptr<const FiniteGroup>;

/// A real matrix representation of a finite group. Construction verifies
/// rho(e) = Id and the homomorphism property entrywise to 1e-9; when the
/// orthogonal flag is set, orthogonality of each matrix is verified too.
class Representation {
 public:
  enum class Kind { Identity, Rotation2D, Explicit };

  Representation(GroupPtr group, int dim, std::vector<Mat> matrices, bool orthogonal);

  /// Every element maps to the dim x dim identity.
  static Representation identity(GroupPtr group, int dim);

  /// For a cyclic group C_n: r^k maps to the planar rotation by 2*pi*k/n.
  /// Rejects non-cyclic groups.
  static Representation rotation2d(GroupPtr group);

  const FiniteGroup& group() const { return *group_; }
  const GroupPtr& group_ptr() const { return group_; }
  int dim() const { return dim_; }
  bool orthogonal() const { return orthogonal_; }
  Kind kind() const { return kind_; }

  const Mat& matrix(int g) const { return matrices_[static_cast<std::size_t>(g)]; }
  /// rho(g)^-1 = rho(g^-1), exact by the homomorphism property.
  const Mat& inverse_matrix(int g) const { return matrices_[static_cast<std::size_t>(group_->inverse(g))]; }

  static constexpr double kTolerance = 1e-9;

 private:
  GroupPtr group_;
  int dim_;
  std::vector<Mat> matrices_;
  bool orthogonal_;
  Kind kind_ = Kind::Explicit;
};

/// A finite group acting on a finite point set by permutations.
/// table[g][i] is the image of point i under g. Construction verifies the
/// identity row and compatibility table[gh] = table[g] o table[h]
/// (checked over a generating set, which suffices by induction).
class PermutationAction {
 public:
  PermutationAction(GroupPtr group, int n_points, std::vector<std::vector<int>> table);

  /// The action where every group element fixes every point.
  static PermutationAction trivial(GroupPtr group, int n_points);

  const FiniteGroup& group() const { return *group_; }
  const GroupPtr& group_ptr() const { return group_; }
  int n_points() const { return n_points_; }
  int apply(int g, int x) const { return table_[static_cast<std::size_t>(g)][static_cast<std::size_t>(x)]; }
  const std::vector<std::vector<int>>& table() const { return table_; }

 private:
  GroupPtr group_;
  int n_points_;
  std::vector<std::vector<int>> table_;
};

/// One orbit of a permutation action. Stabilizer subgroups of points in the
/// same orbit are conjugate, hence share one order; construction checks
/// this and the orbit-stabilizer identity |orbit| * |stabilizer| = |G|.
struct Orbit {
  int representative = 0;      // minimal member index
  std::vector<int> members;    // sorted ascending
  int stabilizer_order = 1;

  /// Discrete lift factor alpha(x, g) = 1 / |G_x|, constant on the orbit.
  double lift_factor() const { return 1.0 / stabilizer_order; }
  int size() const { return static_cast<int>(members.size()); }
};

/// All orbits of the action, ordered by representative index. Orbits
/// partition the point set.
std::vector<Orbit> orbits(const PermutationAction& action);

/// One representative per orbit (the minimal member index). Downstream
/// bounds are invariant to this choice; minimality is for determinism only.
std::vector<int> fundamental_domain(const std::vector<Orbit>& orbits);

}  // namespace equiaudit
