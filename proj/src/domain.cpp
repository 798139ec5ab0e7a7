#include "equiaudit/domain.hpp"

#include <cmath>

#include "equiaudit/errors.hpp"

namespace equiaudit {

TargetSpec TargetSpec::of_labels(std::vector<int> labels) {
  TargetSpec t;
  t.kind = Kind::Labels;
  t.labels = std::move(labels);
  for (int l : t.labels)
    if (l < 0) throw InputError("target: labels must be nonnegative");
  return t;
}

TargetSpec TargetSpec::of_vectors(std::vector<Vec> vectors) {
  TargetSpec t;
  t.kind = Kind::Vectors;
  if (vectors.empty()) throw InputError("target: empty vector list");
  t.vector_dim = static_cast<int>(vectors.front().size());
  if (t.vector_dim < 1) throw InputError("target: vector dim must be >= 1");
  for (const Vec& v : vectors)
    if (static_cast<int>(v.size()) != t.vector_dim)
      throw InputError("target: all vectors must share one dimension");
  t.vectors = std::move(vectors);
  return t;
}

DomainSpec::DomainSpec(std::vector<double> density_in, TargetSpec target_in,
                       PermutationAction action_in, std::optional<Representation> rep_y_in,
                       std::optional<std::vector<Vec>> coordinates_in)
    : coordinates(std::move(coordinates_in)),
      density(std::move(density_in)),
      target(std::move(target_in)),
      action(std::move(action_in)),
      rep_y(std::move(rep_y_in)) {
  n_points = action.n_points();
  if (static_cast<int>(density.size()) != n_points)
    throw InputError("domain: density length must equal n_points");
  double sum = 0.0;
  for (double p : density) {
    if (!(p >= 0.0)) throw InputError("domain: densities must be nonnegative");
    sum += p;
  }
  if (std::fabs(sum - 1.0) > kDensitySumTolerance)
    throw InputError("domain: density must sum to 1 (got " + std::to_string(sum) + ")");
  const std::size_t arity =
      target.kind == TargetSpec::Kind::Labels ? target.labels.size() : target.vectors.size();
  if (static_cast<int>(arity) != n_points)
    throw InputError("domain: target arity must equal n_points");
  if (coordinates && static_cast<int>(coordinates->size()) != n_points)
    throw InputError("domain: coordinates arity must equal n_points");
  if (rep_y && rep_y->group().order() != action.group().order())
    throw InputError("domain: rep_y group must match the action group");
}

char tag_letter(Tag t) {
  switch (t) {
    case Tag::Correct: return 'C';
    case Tag::Incorrect: return 'I';
    case Tag::Extrinsic: return 'E';
    case Tag::Undefined: return 'U';
  }
  return '?';
}

Tag classify_pair(const DomainSpec& domain, int x, int g, double tol) {
  if (x < 0 || x >= domain.n_points) throw InputError("classify_pair: point index out of range");
  if (g < 0 || g >= domain.group().order()) throw InputError("classify_pair: element index out of range");
  if (tol < 0) throw InputError("classify_pair: tol must be nonnegative");
  if (!domain.on_support(x)) return Tag::Undefined;
  const int gx = domain.action.apply(g, x);
  if (!domain.on_support(gx)) return Tag::Extrinsic;
  if (domain.target.kind == TargetSpec::Kind::Labels)
    return domain.label(gx) == domain.label(x) ? Tag::Correct : Tag::Incorrect;
  if (!domain.rep_y)
    throw InputError("classify_pair: vector targets require rep_y");
  const Vec transformed = domain.rep_y->matrix(g) * domain.vector(x);
  return max_abs(domain.vector(gx) - transformed) <= tol ? Tag::Correct : Tag::Incorrect;
}

AuditReport audit(const DomainSpec& domain, double tol) {
  AuditReport report;
  report.n_points = domain.n_points;
  report.group_order = domain.group().order();
  report.tags.resize(static_cast<std::size_t>(report.n_points) * report.group_order);
  const double element_weight = 1.0 / report.group_order;
  for (int x = 0; x < report.n_points; ++x) {
    const double px = domain.density[static_cast<std::size_t>(x)];
    for (int g = 0; g < report.group_order; ++g) {
      const Tag t = classify_pair(domain, x, g, tol);
      report.tags[static_cast<std::size_t>(x) * report.group_order + g] = t;
      const double mass = px * element_weight;
      switch (t) {
        case Tag::Correct: report.mu_correct += mass; break;
        case Tag::Incorrect: report.mu_incorrect += mass; break;
        case Tag::Extrinsic: report.mu_extrinsic += mass; break;
        case Tag::Undefined: report.mu_undefined += mass; break;
      }
    }
  }
  return report;
}

}  // namespace equiaudit
