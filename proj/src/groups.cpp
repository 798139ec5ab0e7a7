#include "equiaudit/groups.hpp"

#include <cmath>
#include <numbers>
#include <set>
#include <string>

#include "equiaudit/errors.hpp"

namespace equiaudit {

FiniteGroup::FiniteGroup(Kind kind, int parameter, std::vector<std::vector<int>> compose)
    : kind_(kind), parameter_(parameter), compose_(std::move(compose)) {
  verify_axioms();
  compute_inverses();
  compute_generators();
}

FiniteGroup FiniteGroup::cyclic(int n) {
  if (n < 1) throw InputError("cyclic group: order must be >= 1");
  std::vector<std::vector<int>> table(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n)));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) table[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = (a + b) % n;
  return FiniteGroup(Kind::Cyclic, n, std::move(table));
}

FiniteGroup FiniteGroup::dihedral(int n) {
  if (n < 1) throw InputError("dihedral group: parameter must be >= 1");
  const int order = 2 * n;
  // element (flip, rot) = s^flip r^rot at index flip*n + rot, with the
  // relation r s = s r^-1, i.e. r^a s^f = s^f r^(a * (-1)^f)
  auto index = [n](int flip, int rot) { return flip * n + ((rot % n) + n) % n; };
  std::vector<std::vector<int>> table(static_cast<std::size_t>(order), std::vector<int>(static_cast<std::size_t>(order)));
  for (int f1 = 0; f1 < 2; ++f1)
    for (int r1 = 0; r1 < n; ++r1)
      for (int f2 = 0; f2 < 2; ++f2)
        for (int r2 = 0; r2 < n; ++r2) {
          const int flip = (f1 + f2) % 2;
          const int rot = (f2 == 1 ? -r1 : r1) + r2;
          table[static_cast<std::size_t>(index(f1, r1))][static_cast<std::size_t>(index(f2, r2))] = index(flip, rot);
        }
  return FiniteGroup(Kind::Dihedral, n, std::move(table));
}

FiniteGroup FiniteGroup::from_table(std::vector<std::vector<int>> compose) {
  const int n = static_cast<int>(compose.size());
  if (n < 1) throw InputError("explicit group: empty composition table");
  for (const auto& row : compose) {
    if (static_cast<int>(row.size()) != n)
      throw InputError("explicit group: composition table must be square");
    for (int v : row)
      if (v < 0 || v >= n) throw InputError("explicit group: table entry out of range");
  }
  return FiniteGroup(Kind::Explicit, n, std::move(compose));
}

void FiniteGroup::verify_axioms() const {
  const int n = order();
  for (int g = 0; g < n; ++g) {
    if (compose(kIdentity, g) != g || compose(g, kIdentity) != g)
      throw InputError("group axiom violation: element 0 is not an identity for g=" + std::to_string(g));
  }
  for (int g = 0; g < n; ++g) {
    bool has_inverse = false;
    for (int h = 0; h < n; ++h)
      if (compose(g, h) == kIdentity && compose(h, g) == kIdentity) has_inverse = true;
    if (!has_inverse) throw InputError("group axiom violation: no inverse for g=" + std::to_string(g));
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (compose(compose(a, b), c) != compose(a, compose(b, c)))
          throw InputError("group axiom violation: associativity fails at (" + std::to_string(a) +
                           ", " + std::to_string(b) + ", " + std::to_string(c) + ")");
}

void FiniteGroup::compute_inverses() {
  const int n = order();
  inverse_.assign(static_cast<std::size_t>(n), 0);
  for (int g = 0; g < n; ++g)
    for (int h = 0; h < n; ++h)
      if (compose(g, h) == kIdentity) inverse_[static_cast<std::size_t>(g)] = h;
}

void FiniteGroup::compute_generators() {
  const int n = order();
  std::vector<bool> closed(static_cast<std::size_t>(n), false);
  closed[kIdentity] = true;
  int covered = 1;
  while (covered < n) {
    int fresh = 0;
    while (closed[static_cast<std::size_t>(fresh)]) ++fresh;
    generators_.push_back(fresh);
    // close under multiplication by the new generator set
    std::vector<int> frontier{kIdentity};
    std::vector<bool> seen(static_cast<std::size_t>(n), false);
    seen[kIdentity] = true;
    while (!frontier.empty()) {
      std::vector<int> next;
      for (int g : frontier)
        for (int s : generators_) {
          int gs = compose(s, g);
          if (!seen[static_cast<std::size_t>(gs)]) {
            seen[static_cast<std::size_t>(gs)] = true;
            next.push_back(gs);
          }
        }
      frontier = std::move(next);
    }
    covered = 0;
    for (int g = 0; g < n; ++g) {
      closed[static_cast<std::size_t>(g)] = seen[static_cast<std::size_t>(g)];
      if (seen[static_cast<std::size_t>(g)]) ++covered;
    }
  }
}

// ---------------------------------------------------------------------------

Representation::Representation(GroupPtr group, int dim, std::vector<Mat> matrices, bool orthogonal)
    : group_(std::move(group)), dim_(dim), matrices_(std::move(matrices)), orthogonal_(orthogonal) {
  if (dim_ < 1) throw InputError("representation: dim must be >= 1");
  if (static_cast<int>(matrices_.size()) != group_->order())
    throw InputError("representation: one matrix per group element required");
  for (const Mat& m : matrices_)
    if (m.rows() != dim_ || m.cols() != dim_)
      throw InputError("representation: matrix dimensions must equal dim");
  if (matrices_[FiniteGroup::kIdentity].max_abs_diff(Mat::identity(dim_)) > kTolerance)
    throw InputError("representation: matrix of identity element is not the identity");
  const int n = group_->order();
  for (int g = 0; g < n; ++g)
    for (int h = 0; h < n; ++h) {
      const Mat prod = matrix(g) * matrix(h);
      if (prod.max_abs_diff(matrix(group_->compose(g, h))) > kTolerance)
        throw InputError("representation: homomorphism fails at (" + std::to_string(g) + ", " +
                         std::to_string(h) + ")");
    }
  if (orthogonal_) {
    for (int g = 0; g < n; ++g) {
      const Mat gram = matrix(g).transposed() * matrix(g);
      if (gram.max_abs_diff(Mat::identity(dim_)) > kTolerance)
        throw InputError("representation: matrix for g=" + std::to_string(g) + " is not orthogonal");
    }
  }
}

Representation Representation::identity(GroupPtr group, int dim) {
  std::vector<Mat> mats(static_cast<std::size_t>(group->order()), Mat::identity(dim));
  Representation rep(std::move(group), dim, std::move(mats), true);
  rep.kind_ = Kind::Identity;
  return rep;
}

Representation Representation::rotation2d(GroupPtr group) {
  if (group->kind() != FiniteGroup::Kind::Cyclic)
    throw InputError("rotation2d representation requires a cyclic group");
  const int n = group->order();
  std::vector<Mat> mats;
  mats.reserve(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    const double angle = 2.0 * std::numbers::pi * k / n;
    Mat m(2, 2);
    m(0, 0) = std::cos(angle);
    m(0, 1) = -std::sin(angle);
    m(1, 0) = std::sin(angle);
    m(1, 1) = std::cos(angle);
    mats.push_back(std::move(m));
  }
  Representation rep(std::move(group), 2, std::move(mats), true);
  rep.kind_ = Kind::Rotation2D;
  return rep;
}

// ---------------------------------------------------------------------------

PermutationAction::PermutationAction(GroupPtr group, int n_points, std::vector<std::vector<int>> table)
    : group_(std::move(group)), n_points_(n_points), table_(std::move(table)) {
  if (n_points_ < 1) throw InputError("action: n_points must be >= 1");
  if (static_cast<int>(table_.size()) != group_->order())
    throw InputError("action: one permutation per group element required");
  for (const auto& perm : table_) {
    if (static_cast<int>(perm.size()) != n_points_)
      throw InputError("action: permutation length must equal n_points");
    std::vector<bool> hit(static_cast<std::size_t>(n_points_), false);
    for (int v : perm) {
      if (v < 0 || v >= n_points_ || hit[static_cast<std::size_t>(v)])
        throw InputError("action: table row is not a permutation");
      hit[static_cast<std::size_t>(v)] = true;
    }
  }
  for (int i = 0; i < n_points_; ++i)
    if (apply(FiniteGroup::kIdentity, i) != i)
      throw InputError("action: identity element must act trivially");
  // Compatibility over a generating set suffices: if pi(e) = id and
  // pi(s g) = pi(s) pi(g) for all generators s, induction on word length
  // gives pi(g h) = pi(g) pi(h) for all g, h.
  for (int s : group_->generators())
    for (int g = 0; g < group_->order(); ++g) {
      const int sg = group_->compose(s, g);
      for (int i = 0; i < n_points_; ++i)
        if (apply(sg, i) != apply(s, apply(g, i)))
          throw InputError("action: compatibility fails for elements (" + std::to_string(s) + ", " +
                           std::to_string(g) + ") at point " + std::to_string(i));
    }
}

PermutationAction PermutationAction::trivial(GroupPtr group, int n_points) {
  std::vector<int> id(static_cast<std::size_t>(n_points));
  for (int i = 0; i < n_points; ++i) id[static_cast<std::size_t>(i)] = i;
  std::vector<std::vector<int>> table(static_cast<std::size_t>(group->order()), id);
  return PermutationAction(std::move(group), n_points, std::move(table));
}

std::vector<Orbit> orbits(const PermutationAction& action) {
  const int n = action.n_points();
  const int order = action.group().order();
  std::vector<bool> visited(static_cast<std::size_t>(n), false);
  std::vector<Orbit> result;
  for (int x = 0; x < n; ++x) {
    if (visited[static_cast<std::size_t>(x)]) continue;
    std::set<int> members;
    for (int g = 0; g < order; ++g) members.insert(action.apply(g, x));
    Orbit orbit;
    orbit.members.assign(members.begin(), members.end());
    orbit.representative = orbit.members.front();
    for (int m : orbit.members) visited[static_cast<std::size_t>(m)] = true;
    int stab = 0;
    for (int g = 0; g < order; ++g)
      if (action.apply(g, x) == x) ++stab;
    orbit.stabilizer_order = stab;
    if (orbit.size() * stab != order)
      throw InputError("orbit-stabilizer violation at point " + std::to_string(x));
    for (int m : orbit.members) {
      int stab_m = 0;
      for (int g = 0; g < order; ++g)
        if (action.apply(g, m) == m) ++stab_m;
      if (stab_m != stab)
        throw InputError("stabilizer size differs inside orbit of point " + std::to_string(x));
    }
    result.push_back(std::move(orbit));
  }
  return result;
}

std::vector<int> fundamental_domain(const std::vector<Orbit>& orbits) {
  std::vector<int> reps;
  reps.reserve(orbits.size());
  for (const Orbit& o : orbits) reps.push_back(o.representative);
  return reps;
}

}  // namespace equiaudit
