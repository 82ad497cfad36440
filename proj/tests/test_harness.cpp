#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <string>

#include "skewps/harness.hpp"
#include "support.hpp"

using namespace skewps;

namespace {

const char* kMinimal = R"([instance]
id = "tiny"
p = 2
k = 2
s = 1
N = 8
M = 8
seed = 4

[sigma]
frobenius = 1

[suites]
run = ["relations", "field-axioms"]
)";

std::string fixture(const char* name) { return std::string(SKEWPS_FIXTURE_DIR) + "/" + name; }

std::string error_of(const std::string& text) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_SUITE("cli-harness") {

TEST_CASE("parse a minimal config") {
  InstanceConfig c = parse_config(kMinimal);
  CHECK(c.id == "tiny");
  CHECK(c.p == 2);
  CHECK(c.k == 2);
  CHECK(c.N == 8);
  CHECK(c.frobenius == 1);
  CHECK(c.t == StringMatrix{{"-1"}});
  CHECK(c.suites == std::vector<std::string>{"relations", "field-axioms"});
}

TEST_CASE("config errors name line and key") {
  std::string s = kMinimal;
  std::string bad_p = s;
  bad_p.replace(bad_p.find("p = 2"), 5, "p = 4");
  std::string e = error_of(bad_p);
  CHECK(e.find("line 3") != std::string::npos);
  CHECK(e.find("instance.p") != std::string::npos);
  CHECK(e.find("p not prime") != std::string::npos);

  CHECK(error_of(s + "[bogus]\nx = 1\n").find("bogus") != std::string::npos);
  std::string unknown_key = s;
  unknown_key.replace(unknown_key.find("seed = 4"), 8, "sed = 4");
  CHECK(error_of(unknown_key).find("instance.sed") != std::string::npos);
  std::string bad_suite = s;
  bad_suite.replace(bad_suite.find("\"relations\""), 11, "\"nope\"");
  CHECK(error_of(bad_suite).find("unknown suite") != std::string::npos);
  CHECK(error_of("[instance]\np = 2\nk = 17\n").find("instance.k") != std::string::npos);
  CHECK(error_of("[instance]\np = 2\nN = 0\n").find("instance.N") != std::string::npos);
  CHECK(error_of("[instance\n").find("line 1") != std::string::npos);
  CHECK_THROWS_AS(load_config("/nonexistent/x.toml"), ConfigError);
}

TEST_CASE("parse_laurent") {
  FieldPtr F = FiniteField::make(2, 2);
  LaurentElem a = parse_laurent(F, "(w+1)*pi^2 + pi^-1");
  CHECK(a.val() == -1);
  CHECK(a.coeff(-1) == 1);
  CHECK(a.coeff(2) == F->add(F->gen(), 1));
  CHECK(parse_laurent(F, "-1").equals(LaurentElem::constant(F, 1)));
  CHECK(parse_laurent(F, "(1 + pi)^2").equals(parse_laurent(F, "1 + pi^2")));
  CHECK_THROWS_AS(parse_laurent(F, "pi +"), ConfigError);
  CHECK_THROWS_AS(parse_laurent(F, "(1+pi)^-1"), ConfigError);
}

TEST_CASE("build_instance rejects sigma(t) != t") {
  InstanceConfig c = parse_config(kMinimal);
  c.t = {{"w"}};
  CHECK_THROWS_AS(build_instance(c), InstanceError);
}

TEST_CASE("suite registry") {
  CHECK(suite_registry().size() == 23);
  CHECK(find_suite("sfoh-pipeline") != nullptr);
  CHECK(find_suite("nope") == nullptr);
  CHECK(list_suites().find("iwasawa") != std::string::npos);
  CHECK(suite_seed(1, "a") == suite_seed(1, "a"));
  CHECK(suite_seed(1, "a") != suite_seed(1, "b"));
  CHECK(suite_seed(1, "a") != suite_seed(2, "a"));
}

TEST_CASE("reports are deterministic and sorted") {
  Instance inst = build_instance(parse_config(kMinimal));
  Report a = run_suites(inst, inst.cfg.suites);
  Report b = run_suites(inst, inst.cfg.suites);
  CHECK(a.pass());
  REQUIRE(a.records.size() == 2);
  CHECK(a.records[0].suite == "field-axioms");
  CHECK(report_json(a) == report_json(b));
  CHECK(report_json(a).find("wall_ms") == std::string::npos);
  Report timed = run_suites(inst, inst.cfg.suites, true);
  CHECK(report_json(timed, true).find("wall_ms") != std::string::npos);
  CHECK(report_json(a).find("skewps-report/1") != std::string::npos);
  CHECK_THROWS_AS(run_suites(inst, {"nope"}), ConfigError);
}

TEST_CASE("report destinations") {
  InstanceConfig c = parse_config(kMinimal);
  unsetenv("SKEWPS_REPORT_DIR");
  CHECK(report_destination(c) == "tiny.json");
  CHECK(report_destination(c, ".sfoh.json") == "tiny.sfoh.json");
  c.report_path = "out/r.json";
  CHECK(report_destination(c, ".decompose.json") == "out/r.decompose.json");
  setenv("SKEWPS_REPORT_DIR", "/tmp/rep", 1);
  CHECK(report_destination(c) == "/tmp/rep/out/r.json");
  c.report_path = "/abs/r.json";
  CHECK(report_destination(c) == "/abs/r.json");
  unsetenv("SKEWPS_REPORT_DIR");
}

TEST_CASE("fixtures load and the Frobenius fixture passes") {
  for (const char* f : {"iwasawa-f4.toml", "f4-ramified.toml", "frobenius-f4.toml", "fd-lemmas.toml"})
    CHECK_NOTHROW(build_instance(load_config(fixture(f))));
  setenv("SKEWPS_REPORT_DIR", std::filesystem::temp_directory_path().c_str(), 1);
  Report r = run(fixture("frobenius-f4.toml"));
  unsetenv("SKEWPS_REPORT_DIR");
  CHECK(r.pass());
}

TEST_CASE("decompose json round trip") {
  Instance inst = build_instance(load_config(fixture("iwasawa-f4.toml")));
  std::string out = decompose_json(inst, 1);
  CHECK(out.find("\"roundtrip_exact\": true") != std::string::npos);
}

}
