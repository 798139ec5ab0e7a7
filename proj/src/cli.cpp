#include "equiaudit/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <iostream>
#include <optional>
#include <sstream>

#include "equiaudit/bounds.hpp"
#include "equiaudit/errors.hpp"
#include "equiaudit/generators.hpp"
#include "equiaudit/io.hpp"
#include "equiaudit/predictors.hpp"

namespace equiaudit::cli {

namespace {

void emit(const json& doc, const std::string& out_path) {
  const std::string text = canonical_dump(doc);
  if (out_path.empty())
    std::cout << text;
  else
    write_file(out_path, text);
}

void write_generated(const GeneratorOutput& output, const std::string& out_path) {
  json doc = domain_to_json(output.domain, &output.provenance);
  if (output.closed_form_bound) {
    doc["provenance"]["closed_form_bound"] = *output.closed_form_bound;
    doc["provenance"]["closed_form_formula"] = output.closed_form_formula;
  }
  emit(doc, out_path);
  if (output.closed_form_bound) {
    std::cout << "closed_form_bound = " << *output.closed_form_bound;
    if (!output.closed_form_formula.empty()) std::cout << "   [" << output.closed_form_formula << "]";
    std::cout << "\n";
  }
}

DomainSpec load_domain(const std::string& path) { return domain_from_json(parse_json_file(path)); }

double equality_scale(double a, double b) {
  return std::max({1.0, std::fabs(a), std::fabs(b)});
}

struct EqualityCheck {
  std::string name;
  double lhs = 0, rhs = 0;
  bool ok = false;

  static EqualityCheck within(std::string name, double lhs, double rhs) {
    const bool ok = std::fabs(lhs - rhs) <= 1e-9 * equality_scale(lhs, rhs);
    return {std::move(name), lhs, rhs, ok};
  }
};

int cmd_audit(const std::string& spec_path, double tol, const std::string& out_path,
              const std::string& pairs_csv) {
  const DomainSpec domain = load_domain(spec_path);
  const AuditReport report = audit(domain, tol);
  emit(audit_to_json(report), out_path);
  if (!pairs_csv.empty()) {
    std::ostringstream ss;
    write_audit_csv(ss, report);
    write_file(pairs_csv, ss.str());
  }
  std::cout << "mu_correct=" << report.mu_correct << " mu_incorrect=" << report.mu_incorrect
            << " mu_extrinsic=" << report.mu_extrinsic << " mu_undefined=" << report.mu_undefined
            << "\n";
  return kExitOk;
}

/// Closed-form value recorded by a generator in the spec file, if any.
std::optional<double> closed_form_of(const json& document) {
  if (auto prov = document.find("provenance"); prov != document.end())
    if (auto value = prov->find("closed_form_bound"); value != prov->end() && value->is_number())
      return value->get<double>();
  return std::nullopt;
}

void report_closed_form(json& doc, const BoundReport& report, std::optional<double> closed_form) {
  if (!closed_form) return;
  doc["closed_form_bound"] = *closed_form;
  doc["closed_form_difference"] = std::fabs(report.total - *closed_form);
  std::cout << "closed form = " << *closed_form
            << "   |difference| = " << std::fabs(report.total - *closed_form) << "\n";
}

void emit_bound(const BoundReport& report, std::optional<double> closed_form,
                const std::string& out_path, const std::string& csv_path) {
  json doc = bound_to_json(report);
  report_closed_form(doc, report, closed_form);
  emit(doc, out_path);
  if (!csv_path.empty()) {
    std::ostringstream ss;
    write_bound_csv(ss, report);
    write_file(csv_path, ss.str());
  }
  std::cout << method_name(report.method) << " lower bound = " << report.total << "\n";
}

int cmd_bound_all(const DomainSpec& domain, std::optional<double> closed_form,
                  const std::string& out_path, const std::string& csv_path) {
  json doc;
  json methods = json::array();
  std::vector<EqualityCheck> checks;
  BoundReport primary;

  if (domain.target.kind == TargetSpec::Kind::Labels) {
    primary = classification_lower_bound(domain);
    methods.push_back(bound_to_json(primary));
    // dissent through the Incorrect Set must agree orbit by orbit, exactly
    const AuditReport tags = audit(domain);
    const std::vector<Orbit> orbs = orbits(domain.action);
    bool orbits_equal = true;
    double via_incorrect_total = 0;
    for (std::size_t i = 0; i < orbs.size(); ++i) {
      const double via_incorrect = total_dissent_via_incorrect_set(domain, orbs[i], tags);
      orbits_equal = orbits_equal && via_incorrect == primary.per_orbit[i].dissent;
      via_incorrect_total += via_incorrect;
    }
    checks.push_back({"incorrect_set_route", primary.total, via_incorrect_total, orbits_equal});
    try {
      const BoundReport finite = classification_lower_bound_finite_special(domain);
      methods.push_back(bound_to_json(finite));
      checks.push_back(EqualityCheck::within("finite_special_route", primary.total, finite.total));
    } catch (const InputError&) {
      doc["finite_special"] = "skipped: action is not density-preserving";
    }
  } else {
    primary = invariant_regression_bound(domain);
    methods.push_back(bound_to_json(primary));
    if (domain.rep_y) {
      const BoundReport equivariant = equivariant_regression_bound(domain);
      methods.push_back(bound_to_json(equivariant));
      if (domain.rep_y->orthogonal()) {
        const BoundReport orthogonal = equivariant_orthogonal_bound(domain);
        methods.push_back(bound_to_json(orthogonal));
        checks.push_back(
            EqualityCheck::within("orthogonal_route", equivariant.total, orthogonal.total));
      }
      if (domain.rep_y->kind() == Representation::Kind::Identity)
        checks.push_back(
            EqualityCheck::within("identity_rep_equals_invariant", equivariant.total, primary.total));
    }
  }

  json equalities = json::array();
  bool all_ok = true;
  for (const EqualityCheck& check : checks) {
    json row;
    row["name"] = check.name;
    row["lhs"] = check.lhs;
    row["rhs"] = check.rhs;
    row["ok"] = check.ok;
    equalities.push_back(std::move(row));
    all_ok = all_ok && check.ok;
  }
  doc["methods"] = std::move(methods);
  doc["equalities"] = std::move(equalities);
  report_closed_form(doc, primary, closed_form);
  emit(doc, out_path);
  if (!csv_path.empty()) {
    std::ostringstream ss;
    write_bound_csv(ss, primary);
    write_file(csv_path, ss.str());
  }
  for (const EqualityCheck& check : checks)
    std::cout << "equality " << check.name << ": " << (check.ok ? "ok" : "VIOLATED") << " ("
              << check.lhs << " vs " << check.rhs << ")\n";
  std::cout << method_name(primary.method) << " lower bound = " << primary.total << "\n";
  return all_ok ? kExitOk : kExitVerification;
}

int cmd_bound(const std::string& spec_path, const std::string& method, const std::string& out_path,
              const std::string& csv_path) {
  const json document = parse_json_file(spec_path);
  const DomainSpec domain = domain_from_json(document);
  const std::optional<double> closed_form = closed_form_of(document);
  if (method == "cls") {
    emit_bound(classification_lower_bound(domain), closed_form, out_path, csv_path);
  } else if (method == "cls-finite") {
    emit_bound(classification_lower_bound_finite_special(domain), closed_form, out_path, csv_path);
  } else if (method == "inv-reg") {
    emit_bound(invariant_regression_bound(domain), closed_form, out_path, csv_path);
  } else if (method == "equi-reg") {
    emit_bound(equivariant_regression_bound(domain), closed_form, out_path, csv_path);
  } else if (method == "equi-orth") {
    emit_bound(equivariant_orthogonal_bound(domain), closed_form, out_path, csv_path);
  } else if (method == "all") {
    return cmd_bound_all(domain, closed_form, out_path, csv_path);
  } else {
    throw InputError("unknown bound method: " + method);
  }
  return kExitOk;
}

int cmd_verify(const std::string& spec_path, const std::string& out_path) {
  const DomainSpec domain = load_domain(spec_path);
  json results = json::array();
  json predictors = json::array();
  bool tight = true;

  auto record = [&](const std::string& method, double bound, double empirical, bool exact) {
    const double gap = std::fabs(empirical - bound);
    const double limit = exact ? 0.0 : 1e-9 * equality_scale(bound, empirical);
    const bool ok = gap <= limit;
    json row;
    row["method"] = method;
    row["bound"] = bound;
    row["empirical"] = empirical;
    row["gap"] = gap;
    row["tight"] = ok;
    results.push_back(std::move(row));
    std::cout << method << ": bound=" << bound << " empirical=" << empirical << " gap=" << gap
              << (ok ? "" : "  NOT TIGHT") << "\n";
    tight = tight && ok;
  };

  if (domain.target.kind == TargetSpec::Kind::Labels) {
    const BoundReport bound = classification_lower_bound(domain);
    const PredictorTable classifier = build_majority_classifier(domain);
    record("classification", bound.total, empirical_error(domain, classifier), /*exact=*/true);
    predictors.push_back(predictor_to_json(classifier));
  } else {
    const BoundReport invariant = invariant_regression_bound(domain);
    const PredictorTable mean = build_orbit_mean_regressor(domain);
    record("invariant_regression", invariant.total, empirical_error(domain, mean), false);
    predictors.push_back(predictor_to_json(mean));
    if (domain.rep_y) {
      const BoundReport equivariant = equivariant_regression_bound(domain);
      const PredictorTable table = build_equivariant_regressor(domain);
      record("equivariant_regression", equivariant.total, empirical_error(domain, table), false);
      predictors.push_back(predictor_to_json(table));
    }
  }

  json doc;
  doc["results"] = std::move(results);
  doc["predictors"] = std::move(predictors);
  doc["tight"] = tight;
  emit(doc, out_path);
  return tight ? kExitOk : kExitVerification;
}

int cmd_rademacher(const std::string& config, const std::string& out_path) {
  PointSet points;
  if (config == "xor") {
    points = *gen_xor_extrinsic().complexity_config;
  } else {
    points = point_set_from_json(parse_json_file(config));
  }
  if (!points.invariance)
    throw InputError("rademacher: configuration has no invariance group");
  const RademacherTable unconstrained = rademacher_table(points, Constraint::None);
  const RademacherTable invariant = rademacher_table(points, Constraint::Invariant);
  if (!out_path.empty()) {
    std::ostringstream ss;
    write_rademacher_csv(ss, unconstrained, invariant);
    write_file(out_path, ss.str());
  }
  std::cout << canonical_dump(rademacher_to_json(unconstrained, invariant));
  return kExitOk;
}

}  // namespace

int run(int argc, const char* const* argv) {
  CLI::App app{"symmetry-mismatch auditing and error lower bounds"};
  app.require_subcommand(1);

  // generate
  CLI::App* generate = app.add_subcommand("generate", "emit a built-in benchmark domain spec");
  generate->require_subcommand(1);
  std::string gen_out;
  struct {
    double c = 0.2, m = 0.4;
    int grid = 200;
  } square_args;
  struct {
    double c = 0.25, i = 0.25, e = 0.5;
    int n = 64;
    std::uint64_t seed = 0;
  } swiss_args;
  struct {
    std::uint64_t seed = 0;
    int n_theta = 5;
  } c4_args;
  struct {
    int classes = 10;
    std::vector<std::string> merges{"6:9"};
    std::vector<double> probs;
  } merge_args;
  std::string xor_complexity_out;

  CLI::App* gen_fig3 = generate->add_subcommand("fig3", "four-point binary task, C2 swap");
  CLI::App* gen_square_cmd = generate->add_subcommand("square", "unit-square multi-class task");
  gen_square_cmd->add_option("--c", square_args.c, "correct ratio");
  gen_square_cmd->add_option("--m", square_args.m, "majority label ratio");
  gen_square_cmd->add_option("--grid", square_args.grid, "grid resolution");
  CLI::App* gen_swiss = generate->add_subcommand("swissroll", "two-plane spiral mixture");
  gen_swiss->add_option("--c", swiss_args.c, "correct ratio");
  gen_swiss->add_option("--i", swiss_args.i, "incorrect ratio");
  gen_swiss->add_option("--e", swiss_args.e, "extrinsic ratio");
  gen_swiss->add_option("--n", swiss_args.n, "samples per plane per component");
  gen_swiss->add_option("--seed", swiss_args.seed, "seed (recorded in provenance)");
  CLI::App* gen_xor = generate->add_subcommand("xor", "extrinsic exclusive-or configuration");
  gen_xor->add_option("--complexity-out", xor_complexity_out,
                      "also write the expressivity configuration JSON here");
  CLI::App* gen_c4 = generate->add_subcommand("c4reg", "C4 regression with cubic targets");
  gen_c4->add_option("--seed", c4_args.seed, "coefficient seed");
  gen_c4->add_option("--n-theta", c4_args.n_theta, "number of theta samples");
  CLI::App* gen_merge = generate->add_subcommand("labelmerge", "one point per class, merged pairs");
  gen_merge->add_option("--classes", merge_args.classes, "number of classes");
  gen_merge->add_option("--merge", merge_args.merges, "merged pair a:b (repeatable)");
  gen_merge->add_option("--probs", merge_args.probs, "class probabilities (default uniform)");
  for (CLI::App* sub : {gen_fig3, gen_square_cmd, gen_swiss, gen_xor, gen_c4, gen_merge})
    sub->add_option("--out", gen_out, "output spec path (stdout when omitted)");

  // audit
  CLI::App* audit_cmd = app.add_subcommand("audit", "pointwise equivariance partition of X x G");
  std::string audit_spec, audit_out, audit_pairs;
  double audit_tol = 1e-9;
  audit_cmd->add_option("spec", audit_spec, "domain spec JSON")->required();
  audit_cmd->add_option("--tol", audit_tol, "vector comparison tolerance");
  audit_cmd->add_option("--out", audit_out, "report JSON path");
  audit_cmd->add_option("--pairs-csv", audit_pairs, "per-pair CSV path");

  // bound
  CLI::App* bound_cmd = app.add_subcommand("bound", "error lower bounds");
  std::string bound_spec, bound_method = "all", bound_out, bound_csv;
  bound_cmd->add_option("spec", bound_spec, "domain spec JSON")->required();
  bound_cmd->add_option("--method", bound_method, "cls | cls-finite | inv-reg | equi-reg | equi-orth | all");
  bound_cmd->add_option("--out", bound_out, "report JSON path");
  bound_cmd->add_option("--csv", bound_csv, "per-orbit CSV path");

  // verify
  CLI::App* verify_cmd = app.add_subcommand("verify", "construct optimal predictors and check tightness");
  std::string verify_spec, verify_out;
  verify_cmd->add_option("spec", verify_spec, "domain spec JSON")->required();
  verify_cmd->add_option("--out", verify_out, "report JSON path");

  // rademacher
  CLI::App* rad_cmd = app.add_subcommand("rademacher", "empirical Rademacher complexity table");
  std::string rad_config = "xor", rad_out;
  rad_cmd->add_option("--config", rad_config, "'xor' or a point-set JSON path");
  rad_cmd->add_option("--out", rad_out, "per-sigma CSV path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (*generate) {
      if (*gen_fig3) write_generated(gen_fig3_instance(), gen_out);
      if (*gen_square_cmd) write_generated(gen_square(square_args.c, square_args.m, square_args.grid), gen_out);
      if (*gen_swiss)
        write_generated(gen_swiss_roll(swiss_args.c, swiss_args.i, swiss_args.e, swiss_args.n, swiss_args.seed), gen_out);
      if (*gen_xor) {
        GeneratorOutput out = gen_xor_extrinsic();
        write_generated(out, gen_out);
        if (!xor_complexity_out.empty())
          write_file(xor_complexity_out, canonical_dump(point_set_to_json(*out.complexity_config)));
      }
      if (*gen_c4) write_generated(gen_c4_regression(c4_args.seed, c4_args.n_theta), gen_out);
      if (*gen_merge) {
        std::vector<std::pair<int, int>> pairs;
        for (const std::string& text : merge_args.merges) {
          const auto colon = text.find(':');
          if (colon == std::string::npos) throw InputError("merge pair must look like a:b");
          pairs.emplace_back(std::stoi(text.substr(0, colon)), std::stoi(text.substr(colon + 1)));
        }
        std::optional<std::vector<double>> probs;
        if (!merge_args.probs.empty()) probs = merge_args.probs;
        write_generated(gen_label_merge(merge_args.classes, pairs, probs), gen_out);
      }
      return kExitOk;
    }
    if (*audit_cmd) return cmd_audit(audit_spec, audit_tol, audit_out, audit_pairs);
    if (*bound_cmd) return cmd_bound(bound_spec, bound_method, bound_out, bound_csv);
    if (*verify_cmd) return cmd_verify(verify_spec, verify_out);
    if (*rad_cmd) return cmd_rademacher(rad_config, rad_out);
  } catch (const DegeneracyError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDegenerate;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitInput;
}

}  // namespace equiaudit::cli
