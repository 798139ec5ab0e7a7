#pragma once

// Randomized small instances for property tests: groups up to order 8,
// at most 12 points, exactly-normalized dyadic densities (so exact-equality
// assertions are meaningful), actions assembled from verified orbit blocks.

#include <functional>
#include <memory>
#include <random>
#include <vector>

#include "equiaudit/domain.hpp"

namespace equiaudit::testsupport {

struct OrbitBlock {
  int size = 1;
  // position image under group element g, for positions 0..size-1
  std::function<int(int g, int j)> act;
};

inline GroupPtr shared_group(FiniteGroup g) {
  return std::make_shared<FiniteGroup>(std::move(g));
}

/// A random group of order <= 8 from the cyclic/dihedral families.
inline GroupPtr random_group(std::mt19937_64& rng) {
  switch (rng() % 11) {
    case 0: return shared_group(FiniteGroup::cyclic(2));
    case 1: return shared_group(FiniteGroup::cyclic(3));
    case 2: return shared_group(FiniteGroup::cyclic(4));
    case 3: return shared_group(FiniteGroup::cyclic(5));
    case 4: return shared_group(FiniteGroup::cyclic(6));
    case 5: return shared_group(FiniteGroup::cyclic(7));
    case 6: return shared_group(FiniteGroup::cyclic(8));
    case 7: return shared_group(FiniteGroup::dihedral(1));
    case 8: return shared_group(FiniteGroup::dihedral(2));
    case 9: return shared_group(FiniteGroup::dihedral(3));
    default: return shared_group(FiniteGroup::dihedral(4));
  }
}

/// Orbit shapes available for a group: fixed points always; for cyclic
/// groups one block per divisor of n; for dihedral groups the sign orbit,
/// the vertex orbit (stabilizer 2) and the regular orbit.
inline std::vector<OrbitBlock> block_catalog(const FiniteGroup& group) {
  std::vector<OrbitBlock> blocks;
  blocks.push_back({1, [](int, int) { return 0; }});
  if (group.kind() == FiniteGroup::Kind::Cyclic) {
    const int n = group.parameter();
    for (int d = 2; d <= n; ++d)
      if (n % d == 0)
        blocks.push_back({d, [d](int g, int j) { return (j + g) % d; }});
  } else if (group.kind() == FiniteGroup::Kind::Dihedral) {
    const int n = group.parameter();
    // sign orbit: reflections swap the two points
    blocks.push_back({2, [n](int g, int j) { return g >= n ? 1 - j : j; }});
    if (n >= 2) {
      // vertex orbit: r adds 1, s negates; stabilizer of each vertex has order 2
      blocks.push_back({n, [n](int g, int j) {
                          const int flip = g >= n ? 1 : 0;
                          const int rot = g % n;
                          const int image = flip ? -(rot + j) : rot + j;
                          return ((image % n) + n) % n;
                        }});
    }
    // regular orbit: left multiplication on the group itself
    const FiniteGroup* raw = &group;
    blocks.push_back({group.order(), [raw](int g, int j) { return raw->compose(g, j); }});
  }
  return blocks;
}

/// A random action on at most max_points points, built from orbit blocks.
/// The PermutationAction constructor re-verifies identity and compatibility.
inline PermutationAction random_action(std::mt19937_64& rng, const GroupPtr& group, int max_points,
                                       bool force_fixed_point) {
  const std::vector<OrbitBlock> catalog = block_catalog(*group);
  std::vector<std::pair<int, const OrbitBlock*>> layout;  // (base index, block)
  int used = 0;
  if (force_fixed_point) {
    layout.emplace_back(used, &catalog[0]);
    used += 1;
  }
  for (int attempts = 0; attempts < 32 && used < max_points; ++attempts) {
    const OrbitBlock& block = catalog[rng() % catalog.size()];
    if (used + block.size > max_points) continue;
    layout.emplace_back(used, &block);
    used += block.size;
  }
  if (layout.empty()) {
    layout.emplace_back(0, &catalog[0]);
    used = 1;
  }
  const int order = group->order();
  std::vector<std::vector<int>> table(static_cast<std::size_t>(order),
                                      std::vector<int>(static_cast<std::size_t>(used)));
  for (int g = 0; g < order; ++g)
    for (const auto& [base, block] : layout)
      for (int j = 0; j < block->size; ++j)
        table[static_cast<std::size_t>(g)][static_cast<std::size_t>(base + j)] = base + block->act(g, j);
  return PermutationAction(group, used, std::move(table));
}

/// Dyadic densities with exact sum 1 (integer weights out of 4096).
/// Zero weights produce off-support points. When density_preserving, the
/// weight is constant on every orbit and the remainder is absorbed by a
/// fixed point, so p(gx) = p(x) holds exactly.
inline std::vector<double> random_density(std::mt19937_64& rng, const PermutationAction& action,
                                          bool density_preserving) {
  constexpr int kBudget = 4096;
  const int n = action.n_points();
  std::vector<int> weights(static_cast<std::size_t>(n), 0);
  if (density_preserving) {
    const std::vector<Orbit> orbs = orbits(action);
    int remaining = kBudget;
    // the forced fixed point at index 0 absorbs whatever is left
    for (std::size_t i = orbs.size(); i-- > 1;) {
      const Orbit& o = orbs[i];
      const int cap = remaining / o.size();
      const int w = cap > 0 ? static_cast<int>(rng() % static_cast<unsigned>(cap + 1)) : 0;
      for (int z : o.members) weights[static_cast<std::size_t>(z)] = w;
      remaining -= w * o.size();
    }
    weights[0] = remaining;
  } else {
    int remaining = kBudget;
    for (int x = 0; x + 1 < n; ++x) {
      const int w = static_cast<int>(rng() % static_cast<unsigned>(remaining + 1));
      weights[static_cast<std::size_t>(x)] = rng() % 4 == 0 ? 0 : w;  // sprinkle off-support points
      remaining -= weights[static_cast<std::size_t>(x)];
    }
    weights[static_cast<std::size_t>(n - 1)] = remaining;
  }
  std::vector<double> density(static_cast<std::size_t>(n));
  for (int x = 0; x < n; ++x) density[static_cast<std::size_t>(x)] = weights[static_cast<std::size_t>(x)] / 4096.0;
  return density;
}

inline DomainSpec random_labeled_domain(std::mt19937_64& rng, bool density_preserving) {
  const GroupPtr group = random_group(rng);
  PermutationAction action = random_action(rng, group, 12, density_preserving);
  std::vector<double> density = random_density(rng, action, density_preserving);
  const int n_labels = 2 + static_cast<int>(rng() % 3);
  std::vector<int> labels(static_cast<std::size_t>(action.n_points()));
  for (int& l : labels) l = static_cast<int>(rng() % static_cast<unsigned>(n_labels));
  return DomainSpec(std::move(density), TargetSpec::of_labels(std::move(labels)), std::move(action));
}

enum class RepChoice { None, Identity, Rotation2D, ConjugatedRotation, DihedralSign };

/// A random vector-target domain. Rotation choices force a cyclic group;
/// the conjugated rotation S rho S^-1 is invertible but not orthogonal,
/// exercising the general Q route.
inline DomainSpec random_vector_domain(std::mt19937_64& rng, RepChoice choice) {
  GroupPtr group;
  switch (choice) {
    case RepChoice::Rotation2D:
    case RepChoice::ConjugatedRotation:
      group = shared_group(FiniteGroup::cyclic(2 + static_cast<int>(rng() % 7)));
      break;
    case RepChoice::DihedralSign:
      group = shared_group(FiniteGroup::dihedral(1 + static_cast<int>(rng() % 4)));
      break;
    default:
      group = random_group(rng);
      break;
  }
  PermutationAction action = random_action(rng, group, 12, false);
  std::vector<double> density = random_density(rng, action, false);

  int dim = 1 + static_cast<int>(rng() % 3);
  std::optional<Representation> rep;
  switch (choice) {
    case RepChoice::None:
      break;
    case RepChoice::Identity:
      rep = Representation::identity(group, dim);
      break;
    case RepChoice::Rotation2D:
      dim = 2;
      rep = Representation::rotation2d(group);
      break;
    case RepChoice::ConjugatedRotation: {
      dim = 2;
      const Representation rot = Representation::rotation2d(group);
      Mat s(2, 2), s_inv(2, 2);
      s(0, 0) = 1; s(0, 1) = 0.6; s(1, 0) = 0; s(1, 1) = 1;
      s_inv(0, 0) = 1; s_inv(0, 1) = -0.6; s_inv(1, 0) = 0; s_inv(1, 1) = 1;
      std::vector<Mat> mats;
      for (int g = 0; g < group->order(); ++g) mats.push_back(s * rot.matrix(g) * s_inv);
      rep = Representation(group, 2, std::move(mats), false);
      break;
    }
    case RepChoice::DihedralSign: {
      const int n = group->parameter();
      std::vector<Mat> mats;
      for (int g = 0; g < group->order(); ++g) {
        Mat m = Mat::identity(dim);
        if (g >= n)
          for (int d = 0; d < dim; ++d) m(d, d) = -1.0;
        mats.push_back(std::move(m));
      }
      rep = Representation(group, dim, std::move(mats), true);
      break;
    }
  }

  std::uniform_real_distribution<double> coord(-1.0, 1.0);
  std::vector<Vec> vectors(static_cast<std::size_t>(action.n_points()));
  for (Vec& v : vectors) {
    v.resize(static_cast<std::size_t>(dim));
    for (double& c : v) c = coord(rng);
  }
  return DomainSpec(std::move(density), TargetSpec::of_vectors(std::move(vectors)),
                    std::move(action), std::move(rep));
}

/// Replaces the targets of a vector domain with exactly equivariant ones:
/// each orbit gets a base value projected onto the subspace fixed by the
/// representative's stabilizer (otherwise f(gx) = rho(g) f(x) cannot hold),
/// expanded along the orbit by rho_Y.
inline DomainSpec make_exactly_equivariant(const DomainSpec& base) {
  const Representation& rep = *base.rep_y;
  const int order = base.group().order();
  std::vector<Vec> vectors(static_cast<std::size_t>(base.n_points));
  for (const Orbit& orbit : orbits(base.action)) {
    const int x = orbit.representative;
    Vec value(static_cast<std::size_t>(rep.dim()), 0.0);
    int stabilizer_size = 0;
    for (int h = 0; h < order; ++h) {
      if (base.action.apply(h, x) != x) continue;
      value = value + rep.matrix(h) * base.vector(x);
      ++stabilizer_size;
    }
    value = scaled(value, 1.0 / stabilizer_size);
    for (int g = 0; g < order; ++g)
      vectors[static_cast<std::size_t>(base.action.apply(g, x))] = rep.matrix(g) * value;
  }
  return DomainSpec(base.density, TargetSpec::of_vectors(std::move(vectors)), base.action,
                    base.rep_y);
}

/// The same task with points renamed by a permutation (new = perm[old]).
/// Every bound must be invariant to this relabeling.
inline DomainSpec relabel_points(const DomainSpec& domain, const std::vector<int>& perm) {
  const int n = domain.n_points;
  const int order = domain.group().order();
  std::vector<double> density(static_cast<std::size_t>(n));
  for (int x = 0; x < n; ++x) density[static_cast<std::size_t>(perm[static_cast<std::size_t>(x)])] =
      domain.density[static_cast<std::size_t>(x)];
  TargetSpec target;
  if (domain.target.kind == TargetSpec::Kind::Labels) {
    std::vector<int> labels(static_cast<std::size_t>(n));
    for (int x = 0; x < n; ++x)
      labels[static_cast<std::size_t>(perm[static_cast<std::size_t>(x)])] = domain.label(x);
    target = TargetSpec::of_labels(std::move(labels));
  } else {
    std::vector<Vec> vectors(static_cast<std::size_t>(n));
    for (int x = 0; x < n; ++x)
      vectors[static_cast<std::size_t>(perm[static_cast<std::size_t>(x)])] = domain.vector(x);
    target = TargetSpec::of_vectors(std::move(vectors));
  }
  std::vector<std::vector<int>> table(static_cast<std::size_t>(order),
                                      std::vector<int>(static_cast<std::size_t>(n)));
  for (int g = 0; g < order; ++g)
    for (int x = 0; x < n; ++x)
      table[static_cast<std::size_t>(g)][static_cast<std::size_t>(perm[static_cast<std::size_t>(x)])] =
          perm[static_cast<std::size_t>(domain.action.apply(g, x))];
  PermutationAction action(domain.action.group_ptr(), n, std::move(table));
  return DomainSpec(std::move(density), std::move(target), std::move(action), domain.rep_y);
}

inline std::vector<int> random_permutation(std::mt19937_64& rng, int n) {
  std::vector<int> perm(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) perm[static_cast<std::size_t>(i)] = i;
  std::shuffle(perm.begin(), perm.end(), rng);
  return perm;
}

}  // namespace equiaudit::testsupport
