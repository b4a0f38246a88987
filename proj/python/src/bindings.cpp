#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "m24/borcherds.hpp"
#include "m24/genera.hpp"
#include "m24/json_io.hpp"
#include "m24/verify.hpp"

namespace py = pybind11;
using namespace m24;

namespace {

// Results cross the boundary as JSON text; the Python package decodes them.
std::string classes_json() {
  Json arr = Json::array();
  for (const auto& rec : shipped_data().classes.records()) {
    Json shape = Json::array();
    for (const auto& [k, b] : rec.shape) shape.push_back({k, b});
    arr.push_back({{"name", rec.name},
                   {"shape", shape},
                   {"order", rec.order},
                   {"level", rec.level},
                   {"weight", rational_json(rec.weight())}});
  }
  return dump(arr);
}

JFamily family(const std::string& cls, const std::string& input) {
  const DataSet& ds = shipped_data();
  if (input == "genus") return genus_jfamily(ds.classes, cls);
  if (input == "eta") return eta_phi_jfamily(ds.classes.get(cls));
  if (input == "correction") return appendix_b_jfamily(ds, cls);
  throw std::invalid_argument("unknown input " + input + " (genus, eta, correction)");
}

std::string jmap_json(const std::string& cls, const std::string& input) {
  VVForm F = jmap(family(cls, input), Rational(1));
  return dump(principal_part_json(principal_part(F), constant_term(F), F.N));
}

std::string genus_json(const std::string& cls, long order) {
  return dump(jacobi_json(genus(shipped_data().classes.get(cls), Rational(order + 1))));
}

std::string borcherds_json(const std::string& cls, const std::string& mode, long qmax, long smax) {
  LiftInput in = genus_lift_input(shipped_data().classes, cls, (qmax + 1) * (smax + 1) + 1);
  return dump(fj_expansion_json(borcherds_product(in, parse_mode(mode), qmax, smax)));
}

std::string divisors_json(const std::string& cls, const std::string& dmax) {
  ClassPP c = genus_principal_part(shipped_data(), cls);
  long N = shipped_data().classes.get(cls).level;
  return dump(humbert_json(divisors(c.pp, N, parse_rational(dmax)), N));
}

std::string verify_json(const std::string& suite, const std::vector<std::string>& classes) {
  VerifyOptions opt;
  opt.classes = classes;
  return dump(run_verify(shipped_data(), suite, opt).json());
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact twisted genera, vector-valued lifts and Borcherds products for M24 classes";
  py::register_exception<DataError>(m, "DataError", PyExc_ValueError);
  m.def("classes_json", &classes_json);
  m.def("genus_json", &genus_json, py::arg("cls"), py::arg("order") = 2);
  m.def("jmap_json", &jmap_json, py::arg("cls"), py::arg("input") = "genus");
  m.def("borcherds_json", &borcherds_json, py::arg("cls"), py::arg("mode") = "product", py::arg("qmax") = 2,
        py::arg("smax") = 2);
  m.def("divisors_json", &divisors_json, py::arg("cls"), py::arg("dmax") = "1");
  m.def("verify_json", &verify_json, py::arg("suite"), py::arg("classes") = std::vector<std::string>{});
  m.def("suite_names", &suite_names);
}
