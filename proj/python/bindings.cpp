#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "equiaudit/bounds.hpp"
#include "equiaudit/cli.hpp"
#include "equiaudit/errors.hpp"
#include "equiaudit/generators.hpp"
#include "equiaudit/io.hpp"
#include "equiaudit/predictors.hpp"

namespace py = pybind11;
using namespace equiaudit;

namespace {

py::object json_to_py(const json& j) {
  switch (j.type()) {
    case json::value_t::null: return py::none();
    case json::value_t::boolean: return py::bool_(j.get<bool>());
    case json::value_t::number_integer: return py::int_(j.get<std::int64_t>());
    case json::value_t::number_unsigned: return py::int_(j.get<std::uint64_t>());
    case json::value_t::number_float: return py::float_(j.get<double>());
    case json::value_t::string: return py::str(j.get<std::string>());
    case json::value_t::array: {
      py::list out;
      for (const json& item : j) out.append(json_to_py(item));
      return out;
    }
    case json::value_t::object: {
      py::dict out;
      for (auto it = j.begin(); it != j.end(); ++it) out[py::str(it.key())] = json_to_py(it.value());
      return out;
    }
    default: return py::none();
  }
}

py::dict generated_to_py(GeneratorOutput&& out) {
  py::dict d;
  d["domain"] = py::cast(std::move(out.domain));
  d["closed_form_bound"] =
      out.closed_form_bound ? py::object(py::float_(*out.closed_form_bound)) : py::none();
  d["formula"] = out.closed_form_formula;
  return d;
}

py::dict bound_to_py(const BoundReport& report) {
  return json_to_py(bound_to_json(report));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "symmetry-mismatch auditing and error lower bounds";

  py::class_<DomainSpec>(m, "Domain")
      .def_property_readonly("n_points", [](const DomainSpec& d) { return d.n_points; })
      .def_property_readonly("group_order", [](const DomainSpec& d) { return d.group().order(); })
      .def_property_readonly("target_kind", [](const DomainSpec& d) {
        return d.target.kind == TargetSpec::Kind::Labels ? "labels" : "vectors";
      })
      .def("to_json", [](const DomainSpec& d) { return canonical_dump(domain_to_json(d)); });

  m.def("load_domain", [](const std::string& path) { return domain_from_json(parse_json_file(path)); },
        py::arg("path"));
  m.def("domain_from_json", [](const std::string& text) { return domain_from_json(json::parse(text)); },
        py::arg("text"));
  m.def("save_domain", [](const DomainSpec& d, const std::string& path) {
          write_file(path, canonical_dump(domain_to_json(d)));
        },
        py::arg("domain"), py::arg("path"));

  m.def("gen_fig3", [] { return generated_to_py(gen_fig3_instance()); });
  m.def("gen_square", [](double c, double mj, int grid) { return generated_to_py(gen_square(c, mj, grid)); },
        py::arg("c"), py::arg("m"), py::arg("grid") = 200);
  m.def("gen_swiss_roll",
        [](double c, double i, double e, int n, std::uint64_t seed) {
          return generated_to_py(gen_swiss_roll(c, i, e, n, seed));
        },
        py::arg("c"), py::arg("i"), py::arg("e"), py::arg("n") = 64, py::arg("seed") = 0);
  m.def("gen_xor", [] { return generated_to_py(gen_xor_extrinsic()); });
  m.def("gen_c4_regression",
        [](std::uint64_t seed, int n_theta) { return generated_to_py(gen_c4_regression(seed, n_theta)); },
        py::arg("seed"), py::arg("n_theta") = 5);
  m.def("gen_label_merge",
        [](int classes, const std::vector<std::pair<int, int>>& pairs,
           const std::optional<std::vector<double>>& probs) {
          return generated_to_py(gen_label_merge(classes, pairs, probs));
        },
        py::arg("classes"), py::arg("merge_pairs"), py::arg("class_probs") = py::none());

  m.def("audit", [](const DomainSpec& d, double tol) { return json_to_py(audit_to_json(audit(d, tol))); },
        py::arg("domain"), py::arg("tol") = 1e-9);

  m.def("classification_bound",
        [](const DomainSpec& d) { return classification_lower_bound(d).total; }, py::arg("domain"));
  m.def("classification_bound_finite_special",
        [](const DomainSpec& d) { return classification_lower_bound_finite_special(d).total; },
        py::arg("domain"));
  m.def("invariant_regression_bound_value",
        [](const DomainSpec& d) { return invariant_regression_bound(d).total; }, py::arg("domain"));
  m.def("equivariant_regression_bound_value",
        [](const DomainSpec& d) { return equivariant_regression_bound(d).total; }, py::arg("domain"));
  m.def("equivariant_orthogonal_bound_value",
        [](const DomainSpec& d) { return equivariant_orthogonal_bound(d).total; }, py::arg("domain"));
  m.def("bound_report", [](const DomainSpec& d, const std::string& method) {
          if (method == "cls") return bound_to_py(classification_lower_bound(d));
          if (method == "cls-finite") return bound_to_py(classification_lower_bound_finite_special(d));
          if (method == "inv-reg") return bound_to_py(invariant_regression_bound(d));
          if (method == "equi-reg") return bound_to_py(equivariant_regression_bound(d));
          if (method == "equi-orth") return bound_to_py(equivariant_orthogonal_bound(d));
          throw InputError("unknown bound method: " + method);
        },
        py::arg("domain"), py::arg("method"));

  m.def("verify", [](const DomainSpec& d) {
          py::dict results;
          if (d.target.kind == TargetSpec::Kind::Labels) {
            const double bound = classification_lower_bound(d).total;
            const double empirical = empirical_error(d, build_majority_classifier(d));
            py::dict row;
            row["bound"] = bound;
            row["empirical"] = empirical;
            row["gap"] = std::fabs(empirical - bound);
            results["classification"] = row;
          } else {
            {
              const double bound = invariant_regression_bound(d).total;
              const double empirical = empirical_error(d, build_orbit_mean_regressor(d));
              py::dict row;
              row["bound"] = bound;
              row["empirical"] = empirical;
              row["gap"] = std::fabs(empirical - bound);
              results["invariant_regression"] = row;
            }
            if (d.rep_y) {
              const double bound = equivariant_regression_bound(d).total;
              const double empirical = empirical_error(d, build_equivariant_regressor(d));
              py::dict row;
              row["bound"] = bound;
              row["empirical"] = empirical;
              row["gap"] = std::fabs(empirical - bound);
              results["equivariant_regression"] = row;
            }
          }
          return results;
        },
        py::arg("domain"));

  m.def("rademacher_xor", [] {
    const PointSet points = *gen_xor_extrinsic().complexity_config;
    return json_to_py(rademacher_to_json(rademacher_table(points, Constraint::None),
                                         rademacher_table(points, Constraint::Invariant)));
  });

  m.def("cli_run", [](const std::vector<std::string>& args) {
    std::vector<const char*> argv;
    argv.push_back("equiaudit");
    for (const std::string& a : args) argv.push_back(a.c_str());
    return cli::run(static_cast<int>(argv.size()), argv.data());
  });
}
