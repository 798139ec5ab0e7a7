#include "equiaudit/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "equiaudit/errors.hpp"

namespace equiaudit {

namespace {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void dump_value(const json& value, std::string& out, int depth) {
  switch (value.type()) {
    case json::value_t::object: {
      if (value.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      const std::string pad(static_cast<std::size_t>(2 * (depth + 1)), ' ');
      bool first = true;
      for (auto it = value.begin(); it != value.end(); ++it) {
        if (!first) out += ",\n";
        first = false;
        out += pad;
        out += json(it.key()).dump();
        out += ": ";
        dump_value(it.value(), out, depth + 1);
      }
      out += "\n";
      out.append(static_cast<std::size_t>(2 * depth), ' ');
      out += "}";
      return;
    }
    case json::value_t::array: {
      out += "[";
      bool first = true;
      for (const json& item : value) {
        if (!first) out += ", ";
        first = false;
        dump_value(item, out, depth);
      }
      out += "]";
      return;
    }
    case json::value_t::number_float:
      out += format_double(value.get<double>());
      return;
    default:
      out += value.dump();
      return;
  }
}

// --- validated readers -----------------------------------------------------

const json& need(const json& obj, const char* key, const std::string& path) {
  auto it = obj.find(key);
  if (it == obj.end()) throw InputError(path + "/" + key + ": required field missing");
  return *it;
}

int need_int(const json& obj, const char* key, const std::string& path) {
  const json& v = need(obj, key, path);
  if (!v.is_number_integer())
    throw InputError(path + "/" + key + ": expected an integer");
  return v.get<int>();
}

std::string need_string(const json& obj, const char* key, const std::string& path) {
  const json& v = need(obj, key, path);
  if (!v.is_string()) throw InputError(path + "/" + key + ": expected a string");
  return v.get<std::string>();
}

std::vector<double> read_double_array(const json& v, const std::string& path) {
  if (!v.is_array()) throw InputError(path + ": expected an array of numbers");
  std::vector<double> out;
  out.reserve(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_number()) throw InputError(path + "/" + std::to_string(i) + ": expected a number");
    out.push_back(v[i].get<double>());
  }
  return out;
}

std::vector<int> read_int_array(const json& v, const std::string& path) {
  if (!v.is_array()) throw InputError(path + ": expected an array of integers");
  std::vector<int> out;
  out.reserve(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_number_integer())
      throw InputError(path + "/" + std::to_string(i) + ": expected an integer");
    out.push_back(v[i].get<int>());
  }
  return out;
}

Mat read_matrix(const json& v, const std::string& path) {
  if (!v.is_array() || v.empty()) throw InputError(path + ": expected a matrix (array of rows)");
  const std::size_t rows = v.size();
  std::vector<std::vector<double>> data;
  data.reserve(rows);
  for (std::size_t r = 0; r < rows; ++r)
    data.push_back(read_double_array(v[r], path + "/" + std::to_string(r)));
  const std::size_t cols = data.front().size();
  Mat m(static_cast<int>(rows), static_cast<int>(cols));
  for (std::size_t r = 0; r < rows; ++r) {
    if (data[r].size() != cols) throw InputError(path + ": ragged matrix rows");
    for (std::size_t c = 0; c < cols; ++c) m(static_cast<int>(r), static_cast<int>(c)) = data[r][c];
  }
  return m;
}

json matrix_to_json(const Mat& m) {
  json rows = json::array();
  for (int r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (int c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

GroupPtr group_from_json(const json& g, const std::string& path) {
  if (!g.is_object()) throw InputError(path + ": expected an object");
  const std::string kind = need_string(g, "kind", path);
  const int n = need_int(g, "n", path);
  if (kind == "cyclic") return std::make_shared<FiniteGroup>(FiniteGroup::cyclic(n));
  if (kind == "dihedral") return std::make_shared<FiniteGroup>(FiniteGroup::dihedral(n));
  if (kind == "explicit") {
    const json& table = need(g, "compose", path);
    if (!table.is_array()) throw InputError(path + "/compose: expected an array");
    std::vector<std::vector<int>> compose;
    compose.reserve(table.size());
    for (std::size_t i = 0; i < table.size(); ++i)
      compose.push_back(read_int_array(table[i], path + "/compose/" + std::to_string(i)));
    return std::make_shared<FiniteGroup>(FiniteGroup::from_table(std::move(compose)));
  }
  throw InputError(path + "/kind: unknown group kind '" + kind + "'");
}

json group_to_json(const FiniteGroup& group) {
  json g;
  switch (group.kind()) {
    case FiniteGroup::Kind::Cyclic:
      g["kind"] = "cyclic";
      g["n"] = group.parameter();
      break;
    case FiniteGroup::Kind::Dihedral:
      g["kind"] = "dihedral";
      g["n"] = group.parameter();
      break;
    case FiniteGroup::Kind::Explicit: {
      g["kind"] = "explicit";
      g["n"] = group.order();
      json table = json::array();
      for (int a = 0; a < group.order(); ++a) {
        json row = json::array();
        for (int b = 0; b < group.order(); ++b) row.push_back(group.compose(a, b));
        table.push_back(std::move(row));
      }
      g["compose"] = std::move(table);
      break;
    }
  }
  return g;
}

Representation rep_from_json(const json& r, GroupPtr group, const std::string& path) {
  if (!r.is_object()) throw InputError(path + ": expected an object");
  const std::string kind = need_string(r, "kind", path);
  const int dim = need_int(r, "dim", path);
  if (kind == "identity") return Representation::identity(std::move(group), dim);
  if (kind == "rotation2d") {
    if (dim != 2) throw InputError(path + "/dim: rotation2d requires dim 2");
    return Representation::rotation2d(std::move(group));
  }
  if (kind == "explicit") {
    const json& mats = need(r, "matrices", path);
    if (!mats.is_array()) throw InputError(path + "/matrices: expected an array");
    std::vector<Mat> matrices;
    matrices.reserve(mats.size());
    for (std::size_t i = 0; i < mats.size(); ++i)
      matrices.push_back(read_matrix(mats[i], path + "/matrices/" + std::to_string(i)));
    // the orthogonal flag is inferred, then re-verified by the constructor
    bool orthogonal = true;
    for (const Mat& m : matrices)
      if (m.rows() != dim || (m.transposed() * m).max_abs_diff(Mat::identity(dim)) > Representation::kTolerance)
        orthogonal = false;
    return Representation(std::move(group), dim, std::move(matrices), orthogonal);
  }
  throw InputError(path + "/kind: unknown representation kind '" + kind + "'");
}

json rep_to_json(const Representation& rep) {
  json r;
  r["dim"] = rep.dim();
  switch (rep.kind()) {
    case Representation::Kind::Identity:
      r["kind"] = "identity";
      break;
    case Representation::Kind::Rotation2D:
      r["kind"] = "rotation2d";
      break;
    case Representation::Kind::Explicit: {
      r["kind"] = "explicit";
      json mats = json::array();
      for (int g = 0; g < rep.group().order(); ++g) mats.push_back(matrix_to_json(rep.matrix(g)));
      r["matrices"] = std::move(mats);
      break;
    }
  }
  return r;
}

std::string rational_string(const Rational& r) { return r.to_string(); }

}  // namespace

std::string canonical_dump(const json& value) {
  std::string out;
  dump_value(value, out, 0);
  out += "\n";
  return out;
}

json domain_to_json(const DomainSpec& domain, const Provenance* provenance) {
  json doc;
  doc["version"] = 1;
  doc["density"] = json(domain.density);
  if (domain.coordinates) {
    json points = json::array();
    for (const Vec& p : *domain.coordinates) points.push_back(json(p));
    doc["points"] = std::move(points);
  }
  json target;
  if (domain.target.kind == TargetSpec::Kind::Labels) {
    target["kind"] = "labels";
    target["values"] = json(domain.target.labels);
  } else {
    target["kind"] = "vectors";
    target["dim"] = domain.target.vector_dim;
    json values = json::array();
    for (const Vec& v : domain.target.vectors) values.push_back(json(v));
    target["values"] = std::move(values);
  }
  doc["target"] = std::move(target);
  doc["group"] = group_to_json(domain.group());
  json action;
  action["kind"] = "permutation";
  action["perms"] = json(domain.action.table());
  doc["action"] = std::move(action);
  if (domain.rep_y) doc["rep_y"] = rep_to_json(*domain.rep_y);
  if (provenance) {
    json prov;
    prov["generator"] = provenance->generator;
    json params = json::object();
    for (const auto& [key, value] : provenance->params) params[key] = value;
    prov["params"] = std::move(params);
    doc["provenance"] = std::move(prov);
  }
  return doc;
}

DomainSpec domain_from_json(const json& document) {
  if (!document.is_object()) throw InputError(": expected a JSON object");
  const int version = need_int(document, "version", "");
  if (version != 1) throw InputError("/version: unsupported version " + std::to_string(version));

  std::vector<double> density = read_double_array(need(document, "density", ""), "/density");

  const json& target_json = need(document, "target", "");
  const std::string target_kind = need_string(target_json, "kind", "/target");
  TargetSpec target;
  if (target_kind == "labels") {
    target = TargetSpec::of_labels(read_int_array(need(target_json, "values", "/target"), "/target/values"));
  } else if (target_kind == "vectors") {
    const int dim = need_int(target_json, "dim", "/target");
    const json& values = need(target_json, "values", "/target");
    if (!values.is_array()) throw InputError("/target/values: expected an array");
    std::vector<Vec> vectors;
    vectors.reserve(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
      Vec v = read_double_array(values[i], "/target/values/" + std::to_string(i));
      if (static_cast<int>(v.size()) != dim)
        throw InputError("/target/values/" + std::to_string(i) + ": length must equal target dim");
      vectors.push_back(std::move(v));
    }
    target = TargetSpec::of_vectors(std::move(vectors));
  } else {
    throw InputError("/target/kind: unknown target kind '" + target_kind + "'");
  }

  GroupPtr group = group_from_json(need(document, "group", ""), "/group");

  const json& action_json = need(document, "action", "");
  if (need_string(action_json, "kind", "/action") != "permutation")
    throw InputError("/action/kind: only permutation actions are supported");
  const json& perms_json = need(action_json, "perms", "/action");
  if (!perms_json.is_array()) throw InputError("/action/perms: expected an array");
  std::vector<std::vector<int>> perms;
  perms.reserve(perms_json.size());
  for (std::size_t i = 0; i < perms_json.size(); ++i)
    perms.push_back(read_int_array(perms_json[i], "/action/perms/" + std::to_string(i)));
  const int n_points = perms.empty() ? 0 : static_cast<int>(perms.front().size());
  PermutationAction action(group, n_points, std::move(perms));

  std::optional<Representation> rep_y;
  if (auto it = document.find("rep_y"); it != document.end())
    rep_y = rep_from_json(*it, group, "/rep_y");

  std::optional<std::vector<Vec>> coordinates;
  if (auto it = document.find("points"); it != document.end()) {
    if (!it->is_array()) throw InputError("/points: expected an array");
    std::vector<Vec> coords;
    coords.reserve(it->size());
    for (std::size_t i = 0; i < it->size(); ++i)
      coords.push_back(read_double_array((*it)[i], "/points/" + std::to_string(i)));
    coordinates = std::move(coords);
  }

  return DomainSpec(std::move(density), std::move(target), std::move(action), std::move(rep_y),
                    std::move(coordinates));
}

json audit_to_json(const AuditReport& report) {
  json doc;
  doc["n_points"] = report.n_points;
  doc["group_order"] = report.group_order;
  json measures;
  measures["correct"] = report.mu_correct;
  measures["incorrect"] = report.mu_incorrect;
  measures["extrinsic"] = report.mu_extrinsic;
  measures["undefined"] = report.mu_undefined;
  doc["measures"] = std::move(measures);
  json tags = json::array();
  for (int x = 0; x < report.n_points; ++x) {
    std::string row;
    row.reserve(static_cast<std::size_t>(report.group_order));
    for (int g = 0; g < report.group_order; ++g) row.push_back(tag_letter(report.tag(x, g)));
    tags.push_back(std::move(row));
  }
  doc["tags"] = std::move(tags);
  return doc;
}

void write_audit_csv(std::ostream& os, const AuditReport& report) {
  os << "point_index,element_index,tag\n";
  for (int x = 0; x < report.n_points; ++x)
    for (int g = 0; g < report.group_order; ++g)
      os << x << ',' << g << ',' << tag_letter(report.tag(x, g)) << '\n';
}

json bound_to_json(const BoundReport& report) {
  json doc;
  doc["method"] = method_name(report.method);
  doc["total"] = report.total;
  json orbits = json::array();
  for (const OrbitStatistics& stats : report.per_orbit) {
    json row;
    row["representative"] = stats.representative;
    row["members"] = json(stats.members);
    row["stabilizer_order"] = stats.stabilizer_order;
    row["mass"] = stats.orbit_mass;
    row["contribution"] = stats.contribution;
    switch (report.method) {
      case BoundMethod::Classification:
      case BoundMethod::ClassificationFinite:
        row["dissent"] = stats.dissent;
        row["majority_label"] = stats.majority_label;
        break;
      case BoundMethod::InvariantRegression:
        row["mean"] = json(stats.orbit_mean);
        row["variance"] = stats.orbit_variance;
        break;
      case BoundMethod::EquivariantRegression:
      case BoundMethod::EquivariantOrthogonal:
        row["minimizer"] = json(stats.equi_minimizer);
        row["residual"] = stats.equi_residual;
        break;
    }
    orbits.push_back(std::move(row));
  }
  doc["orbits"] = std::move(orbits);
  return doc;
}

void write_bound_csv(std::ostream& os, const BoundReport& report) {
  os << "representative,mass,value,minimizer\n";
  for (const OrbitStatistics& stats : report.per_orbit) {
    os << stats.representative << ',' << format_double(stats.orbit_mass) << ','
       << format_double(stats.contribution) << ',';
    switch (report.method) {
      case BoundMethod::Classification:
      case BoundMethod::ClassificationFinite:
        os << stats.majority_label;
        break;
      case BoundMethod::InvariantRegression: {
        std::string joined;
        for (double v : stats.orbit_mean) joined += (joined.empty() ? "" : " ") + format_double(v);
        os << joined;
        break;
      }
      default: {
        std::string joined;
        for (double v : stats.equi_minimizer) joined += (joined.empty() ? "" : " ") + format_double(v);
        os << joined;
        break;
      }
    }
    os << '\n';
  }
}

json predictor_to_json(const PredictorTable& table) {
  json doc;
  switch (table.kind) {
    case PredictorTable::Kind::InvariantLabels: doc["kind"] = "invariant_labels"; break;
    case PredictorTable::Kind::InvariantVectors: doc["kind"] = "invariant_vectors"; break;
    case PredictorTable::Kind::EquivariantVectors: doc["kind"] = "equivariant_vectors"; break;
  }
  json orbits = json::array();
  for (std::size_t i = 0; i < table.orbit_representatives.size(); ++i) {
    json row;
    row["representative"] = table.orbit_representatives[i];
    if (table.kind == PredictorTable::Kind::InvariantLabels)
      row["label"] = table.orbit_labels[i];
    else
      row["value"] = json(table.orbit_values[i]);
    orbits.push_back(std::move(row));
  }
  doc["orbits"] = std::move(orbits);
  return doc;
}

json point_set_to_json(const PointSet& points) {
  json doc;
  doc["version"] = 1;
  json pts = json::array();
  for (const Vec& p : points.points) pts.push_back(json(p));
  doc["points"] = std::move(pts);
  if (points.invariance) {
    json inv;
    inv["group"] = group_to_json(points.invariance->group());
    inv["rep"] = rep_to_json(*points.invariance);
    doc["invariance"] = std::move(inv);
  }
  return doc;
}

PointSet point_set_from_json(const json& document) {
  if (!document.is_object()) throw InputError(": expected a JSON object");
  PointSet ps;
  const json& pts = need(document, "points", "");
  if (!pts.is_array()) throw InputError("/points: expected an array");
  for (std::size_t i = 0; i < pts.size(); ++i)
    ps.points.push_back(read_double_array(pts[i], "/points/" + std::to_string(i)));
  if (auto it = document.find("invariance"); it != document.end()) {
    GroupPtr group = group_from_json(need(*it, "group", "/invariance"), "/invariance/group");
    ps.invariance = rep_from_json(need(*it, "rep", "/invariance"), std::move(group), "/invariance/rep");
  }
  return ps;
}

namespace {

json rademacher_side_to_json(const RademacherTable& table) {
  json side;
  side["accuracy"] = rational_string(table.accuracy);
  side["accuracy_value"] = table.accuracy.to_double();
  side["correlation"] = rational_string(table.correlation);
  side["correlation_value"] = table.correlation.to_double();
  side["conventions_agree"] = table.conventions_agree();
  return side;
}

std::string sigma_string(unsigned sigma, int m) {
  std::string out = "[";
  for (int i = 0; i < m; ++i) {
    if (i) out += ",";
    out += ((sigma >> i) & 1u) ? "+1" : "-1";
  }
  out += "]";
  return out;
}

}  // namespace

json rademacher_to_json(const RademacherTable& unconstrained, const RademacherTable& invariant) {
  json doc;
  doc["m"] = unconstrained.m;
  doc["unconstrained"] = rademacher_side_to_json(unconstrained);
  doc["invariant"] = rademacher_side_to_json(invariant);
  if (!invariant.conventions_agree())
    doc["note"] =
        "correlation and accuracy conventions disagree: some sign patterns are "
        "not realizable, so sup (2a-m)/m < sup a/m on those rows";
  return doc;
}

void write_rademacher_csv(std::ostream& os, const RademacherTable& unconstrained,
                          const RademacherTable& invariant) {
  const int m = unconstrained.m;
  os << "sigma,none_agreement,none_accuracy,none_correlation,"
        "invariant_agreement,invariant_accuracy,invariant_correlation\n";
  const unsigned count = 1u << m;
  for (unsigned sigma = 0; sigma < count; ++sigma) {
    const int a0 = unconstrained.best_agreement[sigma];
    const int a1 = invariant.best_agreement[sigma];
    os << '"' << sigma_string(sigma, m) << '"' << ','
       << a0 << ',' << rational_string(Rational(a0, m)) << ','
       << rational_string(Rational(2 * a0 - m, m)) << ','
       << a1 << ',' << rational_string(Rational(a1, m)) << ','
       << rational_string(Rational(2 * a1 - m, m)) << '\n';
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write file: " + path);
  out << contents;
}

json parse_json_file(const std::string& path) {
  const std::string text = read_file(path);
  json doc = json::parse(text, nullptr, false);
  if (doc.is_discarded()) throw InputError("malformed JSON in " + path);
  return doc;
}

}  // namespace equiaudit
