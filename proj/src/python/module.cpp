#include "shadow_wlo/config.hpp"

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace pybind11::literals;
using namespace shadow_wlo;

namespace {

std::vector<std::vector<std::int64_t>> labels(const std::string& group, int k) {
  std::vector<std::vector<std::int64_t>> out;
  for (const auto& w : level_labels(LieData::from_label(group), k)) out.push_back(w.coords);
  return out;
}

std::int64_t fusion(const std::string& group, int k, const std::vector<std::int64_t>& a,
                    const std::vector<std::int64_t>& b, const std::vector<std::int64_t>& c) {
  return fusion_coefficient(LieData::from_label(group), k, Weight(a), Weight(b), Weight(c));
}

// empty surface of genus g: the shadow state sum, no ribbons
cplx empty_shadow(const std::string& group, int k, int genus) {
  AbstractLink link;
  link.genus = genus;
  return shadow_invariant(LieData::from_label(group), k, abstract_geometry(link)).value;
}

// config JSON in, report JSON out; raises ValueError carrying the field path
std::string run_config(const std::string& text, int threads, double tolerance) {
  JobConfig cfg;
  try {
    cfg = parse_config(text);
  } catch (const ConfigError& e) {
    throw py::value_error(e.what());
  }
  py::gil_scoped_release release;
  return run_job(cfg, RunOptions{threads, tolerance}).report.dump();
}

py::list selfcheck(int threads) {
  SelfcheckOptions opt;
  opt.threads = threads;
  std::vector<SuiteResult> suites;
  {
    py::gil_scoped_release release;
    suites = run_selfcheck(opt);
  }
  py::list out;
  for (const auto& s : suites) out.append(py::make_tuple(s.name, s.pass, s.detail));
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Wilson loop state sums on discretized surfaces";
  m.def("level_labels", &labels, "group"_a, "k"_a);
  m.def("fusion", &fusion, "group"_a, "k"_a, "a"_a, "b"_a, "c"_a);
  m.def("quantum_dim", [](const std::string& group, int k, const std::vector<std::int64_t>& w) {
    return quantum_dim(LieData::from_label(group), k, Weight(w));
  }, "group"_a, "k"_a, "weight"_a);
  m.def("empty_shadow", &empty_shadow, "group"_a, "k"_a, "genus"_a = 0);
  m.def("run_config", &run_config, "config"_a, "threads"_a = 1, "tolerance"_a = 1e-9);
  m.def("selfcheck", &selfcheck, "threads"_a = 1);
}
