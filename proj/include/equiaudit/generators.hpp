#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "equiaudit/complexity.hpp"
#include "equiaudit/domain.hpp"

namespace equiaudit {

/// Where a generated instance came from: generator name, parameters and
/// seed, embedded verbatim in the emitted spec file so a regeneration can
/// be checked bit-for-bit.
struct Provenance {
  std::string generator;
  std::vector<std::pair<std::string, std::string>> params;
};

struct GeneratorOutput {
  DomainSpec domain;
  std::optional<double> closed_form_bound;
  std::string closed_form_formula;
  Provenance provenance;
  /// Present when the instance doubles as an expressivity configuration
  /// (the xor instance exposes its invariance group this way).
  std::optional<PointSet> complexity_config;
};

/// Deterministic 64-bit generator (SplitMix64). Documented so the exact
/// coefficient streams can be reproduced from the seed in any language.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next();
  /// Uniform in [-1, 1): (next() >> 11) * 2^-53 scaled to the interval.
  double next_symmetric();

 private:
  std::uint64_t state_;
};

/// The four-point binary task with a C2 swap action: densities
/// (0.3, 0.4, 0.2, 0.1), labels (0, 1, 2, 2). Bound 0.3.
GeneratorOutput gen_fig3_instance();

/// Multi-class task on a grid x grid unit square, uniform density, with the
/// cyclic group shifting the u axis. A band of c*grid rows carries
/// u-invariant labels; every other row has a majority segment of m*grid
/// points and distinct minority labels per remaining segment.
/// Closed form (1-c)(1-m).
GeneratorOutput gen_square(double c, double m, int grid);

/// Two-plane spiral mixture: correct/incorrect/extrinsic mass ratios
/// c + i + e = 1, n sample parameters per plane per component, spiral
/// t in [1.5 pi, 4.5 pi] sampled at equal arc length, C2 flipping the
/// planes. Closed form 0.5 * i.
GeneratorOutput gen_swiss_roll(double c, double i, double e, int n, std::uint64_t seed);

/// The four-point configuration in R^3 whose C2 quotient (negating the
/// third coordinate) is the exclusive-or problem; reflected ghost points
/// carry zero density so every flip leaves the support.
GeneratorOutput gen_xor_extrinsic();

/// Regression instance: points {theta_j} x {x_0..x_3}, uniform density,
/// C4 cycling the x index, 2D rotation output representation. Targets are
/// per-x pairs of cubic polynomials in theta with coefficients drawn
/// uniformly from [-1, 1] via SplitMix64(seed).
GeneratorOutput gen_c4_regression(std::uint64_t seed, int n_theta);

/// Abstract one-point-per-class domain where the group's only effect is
/// swapping the merged class pairs. Closed form: sum over merged pairs of
/// min(p_a, p_b).
GeneratorOutput gen_label_merge(int n_classes, const std::vector<std::pair<int, int>>& merge_pairs,
                                const std::optional<std::vector<double>>& class_probs = std::nullopt);

}  // namespace equiaudit
