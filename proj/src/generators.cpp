#include "equiaudit/generators.hpp"

#include <cmath>
#include <numbers>
#include <set>
#include <string>

#include "equiaudit/errors.hpp"

namespace equiaudit {

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

GroupPtr make_cyclic(int n) { return std::make_shared<FiniteGroup>(FiniteGroup::cyclic(n)); }

}  // namespace

std::uint64_t SplitMix64::next() {
  state_ += 0x9e3779b97f4a7c15ull;
  std::uint64_t z = state_;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

double SplitMix64::next_symmetric() {
  const double unit = static_cast<double>(next() >> 11) * 0x1.0p-53;  // [0, 1)
  return 2.0 * unit - 1.0;
}

GeneratorOutput gen_fig3_instance() {
  GroupPtr c2 = make_cyclic(2);
  std::vector<std::vector<int>> perms = {{0, 1, 2, 3}, {1, 0, 3, 2}};
  PermutationAction action(c2, 4, std::move(perms));
  std::vector<double> density = {0.3, 0.4, 0.2, 0.1};
  TargetSpec target = TargetSpec::of_labels({0, 1, 2, 2});
  std::vector<Vec> coords = {{0.0, 1.0}, {1.0, 1.0}, {0.0, 0.0}, {1.0, 0.0}};
  DomainSpec domain(std::move(density), std::move(target), std::move(action), std::nullopt,
                    std::move(coords));
  return GeneratorOutput{std::move(domain), 0.3, "min orbit dissent: min(0.4, 0.3) + 0",
                         Provenance{"fig3", {}}, std::nullopt};
}

GeneratorOutput gen_square(double c, double m, int grid) {
  if (c < 0.0 || c > 1.0 || m < 0.0 || m > 1.0)
    throw InputError("gen_square: c and m must lie in [0, 1]");
  if (grid < 4) throw InputError("gen_square: grid must be >= 4");
  const int correct_rows = static_cast<int>(std::lround(c * grid));
  const int majority_len = static_cast<int>(std::lround(m * grid));
  const int n = grid * grid;

  GroupPtr shifts = make_cyclic(grid);
  std::vector<std::vector<int>> perms(static_cast<std::size_t>(grid),
                                      std::vector<int>(static_cast<std::size_t>(n)));
  for (int k = 0; k < grid; ++k)
    for (int v = 0; v < grid; ++v)
      for (int u = 0; u < grid; ++u)
        perms[static_cast<std::size_t>(k)][static_cast<std::size_t>(v * grid + u)] =
            v * grid + (u + k) % grid;
  PermutationAction action(shifts, n, std::move(perms));

  std::vector<int> labels(static_cast<std::size_t>(n), 0);
  for (int v = correct_rows; v < grid; ++v) {
    for (int u = 0; u < grid; ++u) {
      int label;
      if (u < majority_len)
        label = 1;
      else if (majority_len == 0)
        label = 1 + u;  // degenerate m = 0: every point dissents from every other
      else
        label = 2 + (u - majority_len) / majority_len;  // minority segments no longer than the majority
      labels[static_cast<std::size_t>(v * grid + u)] = label;
    }
  }

  std::vector<double> density(static_cast<std::size_t>(n), 1.0 / n);
  std::vector<Vec> coords;
  coords.reserve(static_cast<std::size_t>(n));
  for (int v = 0; v < grid; ++v)
    for (int u = 0; u < grid; ++u)
      coords.push_back({(u + 0.5) / grid, (v + 0.5) / grid});

  DomainSpec domain(std::move(density), TargetSpec::of_labels(std::move(labels)),
                    std::move(action), std::nullopt, std::move(coords));
  return GeneratorOutput{std::move(domain),
                         (1.0 - c) * (1.0 - m),
                         "(1-c)*(1-m)",
                         Provenance{"square", {{"c", fmt(c)}, {"m", fmt(m)}, {"grid", std::to_string(grid)}}},
                         std::nullopt};
}

namespace {

/// Arc length of the spiral t -> (t cos t, t sin t) from t0.
double spiral_arc(double t0, double t) {
  auto antiderivative = [](double u) { return 0.5 * (u * std::sqrt(1.0 + u * u) + std::asinh(u)); };
  return antiderivative(t) - antiderivative(t0);
}

/// Parameters with equal arc spacing over [t0, t1].
std::vector<double> equal_arc_parameters(double t0, double t1, int n) {
  const double total = spiral_arc(t0, t1);
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    const double target = total * (j + 0.5) / n;
    double lo = t0, hi = t1;
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (lo + hi);
      (spiral_arc(t0, mid) < target ? lo : hi) = mid;
    }
    out.push_back(0.5 * (lo + hi));
  }
  return out;
}

}  // namespace

GeneratorOutput gen_swiss_roll(double c, double i, double e, int n, std::uint64_t seed) {
  if (c < 0 || i < 0 || e < 0 || std::fabs(c + i + e - 1.0) > 1e-9)
    throw InputError("gen_swiss_roll: ratios must be nonnegative and sum to 1");
  if (n < 1) throw InputError("gen_swiss_roll: n must be >= 1");

  const double t0 = 1.5 * std::numbers::pi;
  const double t1 = 4.5 * std::numbers::pi;
  const std::vector<double> ts = equal_arc_parameters(t0, t1, n);

  std::vector<Vec> coords;
  std::vector<double> density;
  std::vector<int> labels;
  std::vector<std::pair<int, int>> flip_pairs;  // (plane-0 index, plane-1 index)

  auto spiral_point = [&](double t, int side, double scale, double z) -> Vec {
    const double angle = side == 0 ? t : t + std::numbers::pi;
    return {scale * t * std::cos(angle), scale * t * std::sin(angle), z};
  };
  // One component: n points per plane, alternating between the two dashed
  // spirals; label 0 on one spiral, 1 on the other.
  auto add_component = [&](double scale, double mass_per_point, bool flip_labels_on_upper,
                           bool upper_plane_has_mass) {
    const int base = static_cast<int>(coords.size());
    for (int plane = 0; plane < 2; ++plane) {
      for (int j = 0; j < n; ++j) {
        const int side = j % 2;
        coords.push_back(spiral_point(ts[static_cast<std::size_t>(j)], side, scale, plane));
        int label = side;
        if (plane == 1 && flip_labels_on_upper) label = 1 - label;
        labels.push_back(label);
        density.push_back(plane == 1 && !upper_plane_has_mass ? 0.0 : mass_per_point);
      }
    }
    for (int j = 0; j < n; ++j) flip_pairs.emplace_back(base + j, base + n + j);
  };

  if (c > 0) add_component(1.0, c / (2 * n), /*flip labels*/ false, /*upper mass*/ true);
  if (i > 0) add_component(0.8, i / (2 * n), true, true);
  if (e > 0) add_component(0.64, e / n, false, /*upper mass*/ false);

  const int n_points = static_cast<int>(coords.size());
  std::vector<int> identity(static_cast<std::size_t>(n_points));
  for (int p = 0; p < n_points; ++p) identity[static_cast<std::size_t>(p)] = p;
  std::vector<int> flip = identity;
  for (auto [a, b] : flip_pairs) {
    flip[static_cast<std::size_t>(a)] = b;
    flip[static_cast<std::size_t>(b)] = a;
  }
  PermutationAction action(make_cyclic(2), n_points, {identity, flip});

  DomainSpec domain(std::move(density), TargetSpec::of_labels(std::move(labels)),
                    std::move(action), std::nullopt, std::move(coords));
  return GeneratorOutput{std::move(domain),
                         0.5 * i,
                         "0.5*i",
                         Provenance{"swissroll",
                                    {{"c", fmt(c)},
                                     {"i", fmt(i)},
                                     {"e", fmt(e)},
                                     {"n", std::to_string(n)},
                                     {"seed", std::to_string(seed)},
                                     {"t_range", "[1.5pi, 4.5pi]"},
                                     {"sampling", "equal-arc-length"}}},
                         std::nullopt};
}

GeneratorOutput gen_xor_extrinsic() {
  // data points: label 1 at x3 = +1 with (x1, x2) on one diagonal, label 0
  // at x3 = -1 on the other; negating x3 leaves the support
  std::vector<Vec> coords = {
      {0, 0, 1}, {1, 1, 1}, {0, 1, -1}, {1, 0, -1},       // data
      {0, 0, -1}, {1, 1, -1}, {0, 1, 1}, {1, 0, 1},       // reflected ghosts
  };
  std::vector<double> density = {0.25, 0.25, 0.25, 0.25, 0, 0, 0, 0};
  std::vector<int> labels = {1, 1, 0, 0, 1, 1, 0, 0};
  std::vector<std::vector<int>> perms = {{0, 1, 2, 3, 4, 5, 6, 7}, {4, 5, 6, 7, 0, 1, 2, 3}};
  GroupPtr c2 = make_cyclic(2);
  PermutationAction action(c2, 8, std::move(perms));
  DomainSpec domain(std::move(density), TargetSpec::of_labels(std::move(labels)),
                    std::move(action), std::nullopt, coords);

  Mat reflect = Mat::identity(3);
  reflect(2, 2) = -1.0;
  Representation invariance(c2, 3, {Mat::identity(3), reflect}, true);
  PointSet config;
  config.points = {coords[0], coords[1], coords[2], coords[3]};
  config.invariance = std::move(invariance);

  return GeneratorOutput{std::move(domain), 0.0, "all flip pairs extrinsic",
                         Provenance{"xor", {}}, std::move(config)};
}

GeneratorOutput gen_c4_regression(std::uint64_t seed, int n_theta) {
  if (n_theta < 1) throw InputError("gen_c4_regression: n_theta must be >= 1");
  SplitMix64 rng(seed);
  // coefficient stream: for k = 0..3, eight values in [-1, 1): cubic
  // coefficients (theta^3, theta^2, theta, 1) of the first output
  // component, then of the second
  double coeff[4][2][4];
  for (auto& per_x : coeff)
    for (auto& poly : per_x)
      for (double& value : poly) value = rng.next_symmetric();

  auto eval = [&](int k, int component, double theta) {
    const double* a = coeff[k][component];
    return ((a[0] * theta + a[1]) * theta + a[2]) * theta + a[3];
  };

  const int n = 4 * n_theta;
  std::vector<double> density(static_cast<std::size_t>(n), 1.0 / n);
  std::vector<Vec> vectors;
  std::vector<Vec> coords;
  vectors.reserve(static_cast<std::size_t>(n));
  for (int j = 0; j < n_theta; ++j) {
    const double theta = n_theta == 1 ? 0.0 : -1.0 + 2.0 * j / (n_theta - 1);
    for (int k = 0; k < 4; ++k) {
      vectors.push_back({eval(k, 0, theta), eval(k, 1, theta)});
      coords.push_back({theta, static_cast<double>(k)});
    }
  }

  GroupPtr c4 = make_cyclic(4);
  std::vector<std::vector<int>> perms(4, std::vector<int>(static_cast<std::size_t>(n)));
  for (int g = 0; g < 4; ++g)
    for (int j = 0; j < n_theta; ++j)
      for (int k = 0; k < 4; ++k)
        perms[static_cast<std::size_t>(g)][static_cast<std::size_t>(j * 4 + k)] = j * 4 + (k + g) % 4;
  PermutationAction action(c4, n, std::move(perms));
  Representation rep = Representation::rotation2d(c4);

  DomainSpec domain(std::move(density), TargetSpec::of_vectors(std::move(vectors)),
                    std::move(action), std::move(rep), std::move(coords));
  return GeneratorOutput{std::move(domain),
                         std::nullopt,
                         "",
                         Provenance{"c4reg",
                                    {{"seed", std::to_string(seed)},
                                     {"n_theta", std::to_string(n_theta)},
                                     {"rng", "splitmix64"}}},
                         std::nullopt};
}

GeneratorOutput gen_label_merge(int n_classes, const std::vector<std::pair<int, int>>& merge_pairs,
                                const std::optional<std::vector<double>>& class_probs) {
  if (n_classes < 1) throw InputError("gen_label_merge: n_classes must be >= 1");
  std::set<int> used;
  for (auto [a, b] : merge_pairs) {
    if (a < 0 || a >= n_classes || b < 0 || b >= n_classes || a == b)
      throw InputError("gen_label_merge: merge pair out of range");
    if (!used.insert(a).second || !used.insert(b).second)
      throw InputError("gen_label_merge: merge pairs must be disjoint");
  }
  std::vector<double> probs;
  if (class_probs) {
    probs = *class_probs;
    if (static_cast<int>(probs.size()) != n_classes)
      throw InputError("gen_label_merge: class_probs arity mismatch");
  } else {
    probs.assign(static_cast<std::size_t>(n_classes), 1.0 / n_classes);
  }

  std::vector<int> swap(static_cast<std::size_t>(n_classes));
  std::vector<int> identity(static_cast<std::size_t>(n_classes));
  for (int k = 0; k < n_classes; ++k) identity[static_cast<std::size_t>(k)] = swap[static_cast<std::size_t>(k)] = k;
  for (auto [a, b] : merge_pairs) {
    swap[static_cast<std::size_t>(a)] = b;
    swap[static_cast<std::size_t>(b)] = a;
  }
  std::vector<int> labels = identity;
  PermutationAction action(make_cyclic(2), n_classes, {identity, swap});

  double closed_form = 0.0;
  for (auto [a, b] : merge_pairs)
    closed_form += std::min(probs[static_cast<std::size_t>(a)], probs[static_cast<std::size_t>(b)]);

  std::string pair_list;
  for (auto [a, b] : merge_pairs)
    pair_list += (pair_list.empty() ? "" : " ") + std::to_string(a) + ":" + std::to_string(b);
  DomainSpec domain(std::move(probs), TargetSpec::of_labels(std::move(labels)), std::move(action));
  return GeneratorOutput{std::move(domain),
                         closed_form,
                         "sum over merged pairs of min(p_a, p_b)",
                         Provenance{"labelmerge",
                                    {{"classes", std::to_string(n_classes)}, {"merge", pair_list}}},
                         std::nullopt};
}

}  // namespace equiaudit
