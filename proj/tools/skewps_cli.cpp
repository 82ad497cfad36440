#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "skewps/errors.hpp"
#include "skewps/harness.hpp"

using namespace skewps;

namespace {

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kConfig = 2;

Instance instance_from(const std::string& path) { return build_instance(load_config(path)); }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"skewps: verification suites for skew power series rings"};
  app.require_subcommand(1);

  std::string config;
  bool timings = false;
  std::vector<std::string> only;
  auto* verify = app.add_subcommand("verify", "run the suites selected in a config file");
  verify->add_option("config", config, "instance config (TOML)")->required();
  verify->add_flag("--timings", timings, "record wall time per suite (breaks byte-identical reports)");
  verify->add_option("--suite", only, "run only these suites");

  long m = 1;
  auto* dec = app.add_subcommand("decompose", "crossed decomposition of a seeded random polynomial");
  dec->add_option("config", config, "instance config (TOML)")->required();
  dec->add_option("--m", m, "decompose over the x^{p^m}-subring")->required();

  std::string which;
  auto* pipe = app.add_subcommand("pipeline", "run a reduction pipeline");
  pipe->add_option("name", which, "pipeline name")->required()->check(CLI::IsMember({"sfoh"}));
  pipe->add_option("config", config, "instance config (TOML)")->required();

  app.add_subcommand("list-suites", "print suite ids and citations");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kPass : kConfig;
  }

  try {
    if (app.got_subcommand("list-suites")) {
      std::cout << list_suites();
      return kPass;
    }
    if (verify->parsed()) {
      InstanceConfig cfg = load_config(config);
      if (!only.empty()) cfg.suites = only;
      Instance inst = build_instance(cfg);
      Report rep = run_suites(inst, cfg.suites, timings);
      std::string dest = report_destination(cfg);
      write_file(dest, report_json(rep, timings));
      std::cout << report_text(rep) << "report: " << dest << "\n";
      return rep.pass() ? kPass : kFail;
    }
    if (dec->parsed()) {
      Instance inst = instance_from(config);
      std::string out = decompose_json(inst, m);
      std::string dest = report_destination(inst.cfg, ".decompose.json");
      write_file(dest, out);
      std::cout << out;
      return out.find("\"roundtrip_exact\": true") != std::string::npos ? kPass : kFail;
    }
    if (pipe->parsed()) {
      Instance inst = instance_from(config);
      SfohOptions opt;
      opt.central_element = inst.central;
      opt.seed = inst.cfg.seed;
      SfohReport rep = reduce_to_sfoh(inst.R, inst.sigma, inst.t, opt);
      std::string out = sfoh_json(inst, rep);
      std::string dest = report_destination(inst.cfg, ".sfoh.json");
      write_file(dest, out);
      std::cout << out;
      return rep.ok ? kPass : kFail;
    }
  } catch (const ConfigError& e) {
    std::cerr << e.what() << "\n";
    return kConfig;
  } catch (const InstanceError& e) {
    std::cerr << e.what() << "\n";
    return kConfig;
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return kFail;
  }
  return kConfig;
}
