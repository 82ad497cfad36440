#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "skewps/scalar_extension.hpp"

namespace skewps {

using StringMatrix = std::vector<std::vector<std::string>>;

struct InstanceConfig {
  std::string id = "instance";
  unsigned p = 2;
  unsigned k = 1;
  int s = 1;
  Value N = 16;
  long M = 32;
  std::uint64_t seed = 1;
  long frobenius = 0;
  std::optional<StringMatrix> conjugator;
  StringMatrix t{{"-1"}};
  std::optional<std::string> central_element;
  std::vector<std::string> suites;
  std::string report_path;
};

// Throws ConfigError carrying the line and key.
InstanceConfig parse_config(const std::string& text, const std::string& source = "<string>");
InstanceConfig load_config(const std::string& path);

// Sums of products of integers, w (the field generator), pi, powers and parentheses,
// e.g. "(w+1)*pi^2 + pi^-1". The result is exact.
LaurentElem parse_laurent(const FieldPtr& F, const std::string& text);

struct Instance {
  InstanceConfig cfg;
  QRing R;
  Auto sigma;
  QElem t;
  DatumPtr datum;
  std::optional<LaurentElem> central;
};
// Throws InstanceError naming the violated invariant.
Instance build_instance(const InstanceConfig& cfg);

struct SuiteRecord {
  std::string suite;
  std::string citation;
  std::string instance;
  bool pass = false;
  std::map<std::string, Value> residuals;
  std::map<std::string, long> counters;
  std::string detail;
  double wall_ms = -1;
};

struct Report {
  std::string instance;
  InstanceConfig cfg;
  std::vector<SuiteRecord> records;  // sorted by suite id
  bool pass() const;
};

struct SuiteContext {
  const Instance& inst;
  Rng rng;
  long scale = 1;  // multiplies sample counts
};

struct SuiteInfo {
  std::string id;
  std::string citation;
  std::function<void(SuiteContext&, SuiteRecord&)> fn;
};

// Stable order.
const std::vector<SuiteInfo>& suite_registry();
const SuiteInfo* find_suite(const std::string& id);
std::string list_suites();

std::uint64_t suite_seed(std::uint64_t seed, const std::string& suite);

// Runs in registry order on a pool; the result is sorted by suite id. Unknown ids throw ConfigError.
Report run_suites(const Instance& inst, const std::vector<std::string>& ids, bool timings = false, long scale = 1);
Report run(const std::string& config_path, bool timings = false);

std::string report_json(const Report& r, bool timings = false);
std::string report_text(const Report& r);
// [report] path (default <id>.json) with its extension replaced by suffix, resolved against
// SKEWPS_REPORT_DIR when relative.
std::string report_destination(const InstanceConfig& cfg, const std::string& suffix = ".json");
void write_file(const std::string& path, const std::string& text);

// Deterministic random polynomial of degree <= M on the instance datum, decomposed at m.
std::string decompose_json(const Instance& inst, long m);
std::string sfoh_json(const Instance& inst, const SfohReport& rep);

}  // namespace skewps
