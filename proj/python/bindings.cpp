#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "skewps/errors.hpp"
#include "skewps/fd_crossed.hpp"
#include "skewps/harness.hpp"

namespace py = pybind11;
using namespace skewps;

namespace {

Instance load(const std::string& path) { return build_instance(load_config(path)); }

std::string sfoh(const std::string& path) {
  Instance inst = load(path);
  SfohOptions opt;
  opt.central_element = inst.central;
  opt.seed = inst.cfg.seed;
  return sfoh_json(inst, reduce_to_sfoh(inst.R, inst.sigma, inst.t, opt));
}

FdCrossed group_algebra(unsigned p, long m) { return FdCrossed::group_algebra(p, m); }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Verification suites for skew power series rings over M_s(F_q((pi)))";

  auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<ConfigError>(m, "ConfigError", base.ptr());
  py::register_exception<InstanceError>(m, "InstanceError", base.ptr());

  m.def("list_suites", [] {
    std::vector<std::pair<std::string, std::string>> out;
    for (const auto& s : suite_registry()) out.emplace_back(s.id, s.citation);
    return out;
  });

  m.def(
      "verify",
      [](const std::string& path, std::vector<std::string> suites, bool timings) {
        InstanceConfig cfg = load_config(path);
        if (!suites.empty()) cfg.suites = std::move(suites);
        Instance inst = build_instance(cfg);
        Report r = run_suites(inst, cfg.suites, timings);
        return py::make_tuple(r.pass(), report_json(r, timings));
      },
      py::arg("config"), py::arg("suites") = std::vector<std::string>{}, py::arg("timings") = false,
      "Run the suites of a config file; returns (passed, report_json).");

  m.def(
      "decompose", [](const std::string& path, long mm) { return decompose_json(load(path), mm); },
      py::arg("config"), py::arg("m"));
  m.def("pipeline_sfoh", &sfoh, py::arg("config"));

  m.def("is_prime", [](unsigned p, unsigned k, long r, long mm, Elem gpow) {
    return is_prime_fd(FdCrossed::twisted(p, k, r, mm, gpow));
  });

  py::class_<FdCrossed>(m, "GroupAlgebra")
      .def(py::init(&group_algebra), py::arg("p"), py::arg("m"))
      .def_property_readonly("dim", &FdCrossed::dim)
      .def("is_prime", [](const FdCrossed& R) { return is_prime_fd(R); })
      .def("nilradical_dim", [](const FdCrossed& R) { return nilradical_fd(R).dim(); })
      .def("central_minimal", [](const FdCrossed& R) {
        CentralMinimal c = central_minimal_with_p_nilpotence(nilradical_fd(R), R);
        if (!c.ok) throw HypothesisFail(c.failed_step);
        return R.str(c.a);
      });
}
