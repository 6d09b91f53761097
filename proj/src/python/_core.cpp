// Python bindings. Specs, modules and reports cross the boundary as JSON
// text; scalars stay exact as canonical scalar strings.

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qsl21/families.hpp"
#include "qsl21/serialize.hpp"

namespace py = pybind11;
using namespace qsl21;

namespace {

RepSpec spec_from_text(const std::string& text) { return spec_from_json(Json::parse(text)); }

std::string classify_text(int l, const std::string& lambda1, const std::string& lambda2,
                          const std::optional<std::string>& phi, const std::optional<std::string>& beta,
                          std::optional<int> N) {
  const QContext ctx(l);
  RawParams raw{parse_parameter(ctx, lambda1), parse_parameter(ctx, lambda2), std::nullopt, std::nullopt, N};
  if (phi) raw.phi = parse_parameter(ctx, *phi);
  if (beta) raw.beta = parse_parameter(ctx, *beta);
  const Classification c = classify(ctx, raw);
  Json j = {{"family", family_name(c.family)}, {"typical", c.typical}, {"dim", c.dim},
            {"type", std::string(1, c.type)},  {"N", c.N},             {"reason", c.reason},
            {"spec", spec_to_json(c.spec)}};
  return j.dump();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "exact modules of U_q(sl(2|1)) at roots of unity";

  py::register_exception<SpecError>(m, "SpecError", PyExc_ValueError);
  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);

  m.def("families", [] {
    std::vector<std::string> names;
    for (Family f : {Family::Gl2NilpotentA, Family::Gl2NilpotentB, Family::Gl2Periodic, Family::Sl21TypicalNilpotent,
                     Family::Sl21AtypicalMu2, Family::Sl21AtypicalSum, Family::Sl21TypicalPeriodic,
                     Family::Sl21AtypicalPeriodic, Family::InducedMPrime})
      names.push_back(family_name(f));
    return names;
  });

  m.def(
      "sample_spec",
      [](int l, const std::string& family, std::uint64_t seed, std::optional<int> N, bool type_b) {
        const QContext ctx(l);
        ParameterSampler sampler(seed);
        return spec_to_json(sampler.draw(ctx, family_from_name(family), N, type_b)).dump();
      },
      py::arg("l"), py::arg("family"), py::arg("seed"), py::arg("N") = py::none(), py::arg("type_b") = false);

  m.def("complete_spec", [](const std::string& spec) {
    const RepSpec s = spec_from_text(spec);
    return spec_to_json(complete_spec(QContext(s.l), s)).dump();
  });

  m.def("classify", &classify_text, py::arg("l"), py::arg("lambda1"), py::arg("lambda2"),
        py::arg("phi") = py::none(), py::arg("beta") = py::none(), py::arg("N") = py::none());

  m.def("scalar_to_complex", [](const std::string& s) { return CycloScalar::parse(s).to_complex(); });
  m.def("parse_parameter", [](int l, const std::string& text) { return parse_parameter(QContext(l), text).to_string(); });

  py::class_<ModuleRep>(m, "Module")
      .def_static("build", [](const std::string& spec) { return build(spec_from_text(spec)); })
      .def_static("from_json", [](const std::string& dump) { return module_from_json(Json::parse(dump)); })
      .def_property_readonly("dim", &ModuleRep::dim)
      .def_property_readonly("l", [](const ModuleRep& r) { return r.ctx().l(); })
      .def_property_readonly("family", [](const ModuleRep& r) { return family_name(r.spec().family); })
      .def("to_json", [](const ModuleRep& r) { return canonical_dump(module_to_json(r)); })
      .def("audit", [](const ModuleRep& r) { return relation_checks_to_json(audit_relations(r)).dump(); })
      .def("casimir", [](const ModuleRep& r, int p) { return casimir_scalar(r, p).to_string(); }, py::arg("p"))
      .def("burnside",
           [](const ModuleRep& r) {
             const BurnsideResult b = burnside(r);
             return py::make_tuple(b.dim, b.full, b.method);
           })
      .def(
          "centre_report",
          [](const ModuleRep& r, bool allow_even) { return centre_report_to_json(centre_identity(r, allow_even)).dump(); },
          py::arg("allow_even") = false)
      .def("psi", &psi_image)
      .def("__repr__", [](const ModuleRep& r) {
        return "<Module " + family_name(r.spec().family) + " l=" + std::to_string(r.ctx().l()) +
               " dim=" + std::to_string(r.dim()) + ">";
      });
}
