#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

#include "equiaudit/cli.hpp"
#include "equiaudit/errors.hpp"
#include "equiaudit/generators.hpp"
#include "equiaudit/io.hpp"

using namespace equiaudit;
namespace fs = std::filesystem;

namespace {

int run_cli(const std::vector<std::string>& args) {
  std::vector<const char*> argv;
  argv.push_back("equiaudit");
  for (const std::string& a : args) argv.push_back(a.c_str());
  return cli::run(static_cast<int>(argv.size()), argv.data());
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("equiaudit_test_" + std::to_string(std::rand()));
    fs::create_directories(path);
  }
  ~TempDir() { std::error_code ec; fs::remove_all(path, ec); }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

}  // namespace

TEST_CASE("generate then bound reproduces the fig3 value through files") {
  TempDir tmp;
  const std::string spec = tmp.file("fig3.json");
  CHECK(run_cli({"generate", "fig3", "--out", spec}) == cli::kExitOk);
  CHECK(run_cli({"bound", spec, "--method", "cls", "--out", tmp.file("bound.json"),
                 "--csv", tmp.file("bound.csv")}) == cli::kExitOk);
  const json report = parse_json_file(tmp.file("bound.json"));
  CHECK(report.at("total").get<double>() == 0.3);
  const std::string csv = read_file(tmp.file("bound.csv"));
  CHECK(csv.find("representative,mass,value,minimizer") == 0);
}

TEST_CASE("round trip: generate, load, re-serialize is byte-identical") {
  TempDir tmp;
  for (const std::vector<std::string>& gen_args :
       {std::vector<std::string>{"generate", "fig3"},
        std::vector<std::string>{"generate", "swissroll", "--c", "0.5", "--i", "0.25",
                                 "--e", "0.25", "--n", "16"},
        std::vector<std::string>{"generate", "c4reg", "--seed", "11"},
        std::vector<std::string>{"generate", "labelmerge", "--classes", "10", "--merge", "6:9"}}) {
    const std::string spec = tmp.file("spec.json");
    std::vector<std::string> args = gen_args;
    args.push_back("--out");
    args.push_back(spec);
    REQUIRE(run_cli(args) == cli::kExitOk);
    const std::string original = read_file(spec);
    json doc = parse_json_file(spec);
    const DomainSpec domain = domain_from_json(doc);
    json reserialized = domain_to_json(domain);
    if (doc.contains("provenance")) reserialized["provenance"] = doc["provenance"];
    CHECK(canonical_dump(reserialized) == original);
  }
}

TEST_CASE("audit command writes measures and the per-pair csv") {
  TempDir tmp;
  const std::string spec = tmp.file("xor.json");
  REQUIRE(run_cli({"generate", "xor", "--out", spec}) == cli::kExitOk);
  CHECK(run_cli({"audit", spec, "--out", tmp.file("audit.json"), "--pairs-csv",
                 tmp.file("pairs.csv")}) == cli::kExitOk);
  const json report = parse_json_file(tmp.file("audit.json"));
  CHECK(report.at("measures").at("extrinsic").get<double>() == doctest::Approx(0.5));
  const std::string csv = read_file(tmp.file("pairs.csv"));
  CHECK(csv.find("point_index,element_index,tag") == 0);
  CHECK(csv.find("0,1,E") != std::string::npos);
}

TEST_CASE("bound all asserts the path equalities") {
  TempDir tmp;
  const std::string spec = tmp.file("c4reg.json");
  REQUIRE(run_cli({"generate", "c4reg", "--seed", "7", "--out", spec}) == cli::kExitOk);
  CHECK(run_cli({"bound", spec, "--method", "all", "--out", tmp.file("all.json")}) == cli::kExitOk);
  const json report = parse_json_file(tmp.file("all.json"));
  CHECK(report.at("methods").size() == 3);  // invariant, equivariant, orthogonal
  for (const json& eq : report.at("equalities")) CHECK(eq.at("ok").get<bool>());

  // classification side: both dissent routes and the finite special case
  const std::string square = tmp.file("square.json");
  REQUIRE(run_cli({"generate", "square", "--c", "0.2", "--m", "0.4", "--grid", "40",
                   "--out", square}) == cli::kExitOk);
  CHECK(run_cli({"bound", square, "--method", "all", "--out", tmp.file("sq_all.json")}) ==
        cli::kExitOk);
  const json sq_report = parse_json_file(tmp.file("sq_all.json"));
  CHECK(sq_report.at("methods").size() == 2);  // classification + finite special
  for (const json& eq : sq_report.at("equalities")) CHECK(eq.at("ok").get<bool>());
  // generated grid instances carry their closed form; the report states the gap
  CHECK(sq_report.at("closed_form_bound").get<double>() == 0.48);
  CHECK(sq_report.at("closed_form_difference").get<double>() <= 2.0 / 40);
}

TEST_CASE("rademacher accepts a written point-set configuration") {
  TempDir tmp;
  const std::string config = tmp.file("points.json");
  REQUIRE(run_cli({"generate", "xor", "--out", tmp.file("xor.json"), "--complexity-out", config}) ==
          cli::kExitOk);
  CHECK(run_cli({"rademacher", "--config", config, "--out", tmp.file("rad.csv")}) == cli::kExitOk);
  const PointSet loaded = point_set_from_json(parse_json_file(config));
  CHECK(loaded.count() == 4);
  REQUIRE(loaded.invariance.has_value());
  CHECK(loaded.invariance->group().order() == 2);
}

TEST_CASE("explicit group and representation tables load from JSON") {
  // C2 written as an explicit table, with an explicit sign representation
  json doc;
  doc["version"] = 1;
  doc["density"] = {0.5, 0.5};
  doc["target"] = {{"kind", "vectors"}, {"dim", 1}, {"values", {{1.0}, {-1.0}}}};
  doc["group"] = {{"kind", "explicit"}, {"n", 2}, {"compose", {{0, 1}, {1, 0}}}};
  doc["action"] = {{"kind", "permutation"}, {"perms", {{0, 1}, {1, 0}}}};
  doc["rep_y"] = {{"kind", "explicit"}, {"dim", 1}, {"matrices", {{{1.0}}, {{-1.0}}}}};
  const DomainSpec domain = domain_from_json(doc);
  CHECK(domain.rep_y->orthogonal());  // inferred from the matrices
  CHECK(audit(domain).mu_correct == 1.0);
  const std::string text = canonical_dump(domain_to_json(domain));
  CHECK(canonical_dump(domain_to_json(domain_from_json(json::parse(text)))) == text);
}

TEST_CASE("verify reports zero gap on generated instances") {
  TempDir tmp;
  const std::string spec = tmp.file("fig3.json");
  REQUIRE(run_cli({"generate", "fig3", "--out", spec}) == cli::kExitOk);
  CHECK(run_cli({"verify", spec, "--out", tmp.file("verify.json")}) == cli::kExitOk);
  const json report = parse_json_file(tmp.file("verify.json"));
  CHECK(report.at("tight").get<bool>());
  CHECK(report.at("results")[0].at("gap").get<double>() == 0.0);
}

TEST_CASE("rademacher command prints exact fractions and writes the table") {
  TempDir tmp;
  CHECK(run_cli({"rademacher", "--config", "xor", "--out", tmp.file("rad.csv")}) == cli::kExitOk);
  const std::string csv = read_file(tmp.file("rad.csv"));
  CHECK(csv.find("sigma,") == 0);
  // 16 sigma rows plus the header
  int lines = 0;
  for (char ch : csv)
    if (ch == '\n') ++lines;
  CHECK(lines == 17);
}

TEST_CASE("exit codes: missing files, malformed specs, bad methods") {
  TempDir tmp;
  CHECK(run_cli({"bound", tmp.file("missing.json")}) == cli::kExitInput);
  write_file(tmp.file("broken.json"), "{not json");
  CHECK(run_cli({"bound", tmp.file("broken.json")}) == cli::kExitInput);
  write_file(tmp.file("bad.json"), "{\"version\": 1}");
  CHECK(run_cli({"audit", tmp.file("bad.json")}) == cli::kExitInput);

  const std::string spec = tmp.file("fig3.json");
  REQUIRE(run_cli({"generate", "fig3", "--out", spec}) == cli::kExitOk);
  CHECK(run_cli({"bound", spec, "--method", "nope"}) == cli::kExitInput);
  // regression method on a label target is an input error
  CHECK(run_cli({"bound", spec, "--method", "inv-reg"}) == cli::kExitInput);
  // density-changing action cannot use the finite special case
  CHECK(run_cli({"bound", spec, "--method", "cls-finite"}) == cli::kExitInput);
  CHECK(run_cli({"nonsense"}) == cli::kExitInput);
}

TEST_CASE("audit works on vector-target domains through the cli") {
  TempDir tmp;
  const std::string spec = tmp.file("c4.json");
  REQUIRE(run_cli({"generate", "c4reg", "--seed", "2", "--n-theta", "3", "--out", spec}) ==
          cli::kExitOk);
  CHECK(run_cli({"audit", spec, "--out", tmp.file("a.json")}) == cli::kExitOk);
  const json report = parse_json_file(tmp.file("a.json"));
  // identity pairs are a quarter of the product measure and always correct
  CHECK(report.at("measures").at("correct").get<double>() >= 0.25 - 1e-12);
  CHECK(report.at("measures").at("undefined").get<double>() == 0.0);
}

TEST_CASE("generator parameter errors exit with the usage code") {
  CHECK(run_cli({"generate", "square", "--grid", "2"}) == cli::kExitInput);
  CHECK(run_cli({"generate", "swissroll", "--c", "0.9", "--i", "0.9", "--e", "0.9"}) ==
        cli::kExitInput);
  CHECK(run_cli({"generate", "labelmerge", "--classes", "4", "--merge", "nonsense"}) ==
        cli::kExitInput);
}

TEST_CASE("validation errors carry a json pointer") {
  json doc;
  doc["version"] = 1;
  doc["density"] = {0.5, 0.5};
  try {
    domain_from_json(doc);
    CHECK(false);
  } catch (const InputError& e) {
    CHECK(std::string(e.what()).find("/target") != std::string::npos);
  }
}

TEST_CASE("loader rejects structural faults with located messages") {
  json good;
  good["version"] = 1;
  good["density"] = {0.5, 0.5};
  good["target"] = {{"kind", "labels"}, {"values", {0, 1}}};
  good["group"] = {{"kind", "cyclic"}, {"n", 2}};
  good["action"] = {{"kind", "permutation"}, {"perms", {{0, 1}, {1, 0}}}};
  CHECK(domain_from_json(good).n_points == 2);

  auto expect_fault = [&](const std::function<void(json&)>& mutate, const std::string& needle) {
    json doc = good;
    mutate(doc);
    try {
      domain_from_json(doc);
      CHECK_MESSAGE(false, "expected a rejection mentioning ", needle);
    } catch (const InputError& e) {
      CHECK_MESSAGE(std::string(e.what()).find(needle) != std::string::npos, e.what());
    }
  };
  expect_fault([](json& d) { d["version"] = 2; }, "/version");
  expect_fault([](json& d) { d["group"]["kind"] = "sporadic"; }, "/group/kind");
  expect_fault([](json& d) { d["action"]["perms"] = {{0, 1}, {1, 1}}; }, "permutation");
  expect_fault([](json& d) { d["action"]["perms"] = {{0, 1}}; }, "one permutation per");
  expect_fault([](json& d) { d["target"]["values"] = {0, 1, 2}; }, "arity");
  expect_fault([](json& d) { d["density"] = {0.5, 0.6}; }, "sum to 1");
  expect_fault([](json& d) { d["rep_y"] = {{"kind", "rotation2d"}, {"dim", 3}}; }, "/rep_y");
  expect_fault([](json& d) { d["target"] = {{"kind", "moods"}, {"values", {0, 1}}}; },
               "/target/kind");
}
