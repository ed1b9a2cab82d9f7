#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "mtkit/suites.hpp"

namespace py = pybind11;
using namespace mtkit;

namespace {

std::string report_json(const VerificationReport& rep) { return rep.to_json().dump(2); }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "finite-level group-ring calculus: ray class towers, refined theta "
            "families, Fitting ideals";

  py::register_exception<Error>(m, "MtkitError");

  py::class_<PadicContext>(m, "PadicContext")
      .def(py::init<uint64_t, uint32_t>(), py::arg("p"), py::arg("N"))
      .def_readonly("p", &PadicContext::p)
      .def_readonly("N", &PadicContext::N)
      .def_readonly("modulus", &PadicContext::pN);

  py::class_<PadicInt>(m, "PadicInt")
      .def(py::init([](const PadicContext& ctx, int64_t n) {
             return PadicInt::from_int(n, ctx);
           }),
           py::arg("ctx"), py::arg("n"))
      .def_property_readonly("value", &PadicInt::value)
      .def("valuation", &PadicInt::valuation)
      .def("is_unit", &PadicInt::is_unit)
      .def("inverse", &PadicInt::inverse)
      .def(py::self + py::self)
      .def(py::self - py::self)
      .def(py::self * py::self)
      .def(py::self == py::self)
      .def("__repr__", [](const PadicInt& x) {
        return x.str() + " (mod " + std::to_string(x.context().p) + "^" +
               std::to_string(x.context().N) + ")";
      });

  py::class_<FiniteAbelianGroup>(m, "FiniteAbelianGroup")
      .def(py::init<std::vector<uint64_t>>(), py::arg("factors"))
      .def_property_readonly("factors", &FiniteAbelianGroup::factors)
      .def_property_readonly("order", &FiniteAbelianGroup::order)
      .def("index_of", &FiniteAbelianGroup::index_of)
      .def("element", &FiniteAbelianGroup::element);

  py::class_<GroupRingElement>(m, "GroupRingElement")
      .def(py::init<FiniteAbelianGroup, PadicContext>(), py::arg("group"), py::arg("ctx"))
      .def_static("one", &GroupRingElement::one)
      .def_static("basis", &GroupRingElement::basis)
      .def_property_readonly("group", &GroupRingElement::group)
      .def("coeff", &GroupRingElement::coeff)
      .def("set", &GroupRingElement::set)
      .def("is_zero", &GroupRingElement::is_zero)
      .def("augmentation", &GroupRingElement::augmentation)
      .def("scaled", &GroupRingElement::scaled)
      .def(py::self + py::self)
      .def(py::self - py::self)
      .def(py::self * py::self)
      .def(py::self == py::self)
      .def("to_json", [](const GroupRingElement& x) { return to_json(x).dump(); });

  m.def("element_from_json",
        [](const std::string& text) { return element_from_json(Json::parse(text)); });
  m.def("involution", &involution);
  m.def("idempotent", &idempotent, py::arg("delta"), py::arg("chi"), py::arg("ctx"));
  m.def("omega", &omega, py::arg("n"), py::arg("group"), py::arg("gamma_index"), py::arg("ctx"));
  m.def("phi_poly", &phi_poly, py::arg("n"), py::arg("group"), py::arg("gamma_index"),
        py::arg("ctx"));
  m.def("det_multiplication", &det_multiplication);
  m.def("is_unit", py::overload_cast<const GroupRingElement&>(&is_unit));
  m.def("invert_element", &invert_element);

  py::class_<ModulusIndex>(m, "ModulusIndex")
      .def(py::init([](uint32_t a, uint32_t b) { return ModulusIndex{a, b}; }))
      .def_readonly("a", &ModulusIndex::a)
      .def_readonly("b", &ModulusIndex::b);

  py::class_<HeckeData>(m, "HeckeData")
      .def_static("from_ap", &HeckeData::from_ap)
      .def_readonly("ap", &HeckeData::ap)
      .def_readonly("alpha_p", &HeckeData::alpha_p)
      .def_readonly("alpha_q", &HeckeData::alpha_q);

  py::class_<TowerModel>(m, "TowerModel")
      .def("group", &TowerModel::group)
      .def_property_readonly("cap_a", &TowerModel::cap_a)
      .def_property_readonly("cap_b", &TowerModel::cap_b);

  m.def("build_tower",
        [](uint64_t p, uint32_t N, uint32_t cap_a, uint32_t cap_b,
           const std::vector<uint64_t>& delta) {
          return build_tower(p, N, cap_a, cap_b, delta);
        },
        py::arg("p"), py::arg("N"), py::arg("cap_a"), py::arg("cap_b"), py::arg("delta"));
  m.def("feasible_ap_residues", &feasible_ap_residues);

  py::class_<RayClassDistribution>(m, "RayClassDistribution")
      .def("at", &RayClassDistribution::at, py::return_value_policy::copy)
      .def("to_json", [](const RayClassDistribution& d) { return to_json(d).dump(); });

  m.def("generate_distribution",
        [](const TowerModel& tw, const HeckeData& h, uint64_t seed, bool noise) {
          return generate_distribution(tw, h, {seed, noise, 4});
        },
        py::arg("tower"), py::arg("hecke"), py::arg("seed"), py::arg("noise") = true,
        py::keep_alive<0, 1>());
  m.def("verify_norm_relations",
        [](const RayClassDistribution& d, const HeckeData& h) {
          return verify_norm_relations(d, h).all_pass();
        });

  py::class_<RefinedFamily>(m, "RefinedFamily")
      .def("at", &RefinedFamily::at, py::return_value_policy::copy)
      .def("to_json", [](const RefinedFamily& f) { return to_json(f).dump(); });

  m.def("s_refine", &s_refine, py::keep_alive<0, 1>());
  m.def("verify_refined_compat",
        [](const RefinedFamily& f) { return verify_refined_compat(f).all_pass(); });
  m.def("unrefine_factor", &unrefine_factor);
  m.def("theta_from_symbol_table",
        [](const std::map<uint64_t, PadicInt>& table, uint32_t n, const PadicContext& ctx) {
          auto r = theta_from_symbol_table(table, n, ctx);
          return py::make_tuple(r.theta_prime, r.theta_n);
        });
  m.def("project_theta",
        [](const RayClassDistribution& d, int n, int mm) {
          return project_theta(d, Level{n, mm}).value;
        });
  m.def("project_theta_refined",
        [](const RefinedFamily& f, int n, int mm) {
          return project_theta(f, Level{n, mm}).value;
        });
  m.def("projected_unit",
        [](const TowerModel& tw, const HeckeData& h, int n, int mm) {
          UnrefineTable table(tw, h);
          auto b = projected_unit(tw, h, table, Level{n, mm});
          return py::make_tuple(b.value, b.unit, b.constant_term);
        });

  py::class_<GroupRingRing>(m, "GroupRingRing")
      .def(py::init<FiniteAbelianGroup, PadicContext>());

  py::class_<PresentedModule>(m, "PresentedModule")
      .def(py::init([](const GroupRingRing& ring, size_t generators,
                       std::vector<std::vector<GroupRingElement>> relations) {
             PresentedModule pm{ring, generators, std::move(relations)};
             pm.validate();
             return pm;
           }),
           py::arg("ring"), py::arg("generators"), py::arg("relations"))
      .def("to_json", [](const PresentedModule& pm) { return to_json(pm).dump(); });

  py::class_<IdealLattice>(m, "IdealLattice")
      .def_static("principal", &IdealLattice::principal)
      .def("contains", &IdealLattice::contains)
      .def("is_zero", &IdealLattice::is_zero)
      .def(py::self == py::self)
      .def("to_json", [](const IdealLattice& ideal) { return to_json(ideal).dump(); });

  m.def("fitting_ideal", &fitting_ideal);
  m.def("ideal_equal", &ideal_equal);
  m.def("compare_scalars", [](const GroupRingElement& a, const GroupRingElement& b) {
    auto r = compare_scalars(a, b);
    return py::make_tuple(r.proportional, r.proportional ? r.ratio.str() : std::string(),
                          r.unit);
  });
  m.def("conjecture_check", [](const GroupRingElement& theta, const PresentedModule& pm) {
    auto r = conjecture_check(theta, pm);
    return py::make_tuple(r.membership, r.generates);
  });

  py::class_<RunConfig>(m, "RunConfig")
      .def(py::init<>())
      .def_readwrite("p", &RunConfig::p)
      .def_readwrite("prec", &RunConfig::prec)
      .def_readwrite("cap_a", &RunConfig::cap_a)
      .def_readwrite("cap_b", &RunConfig::cap_b)
      .def_readwrite("delta", &RunConfig::delta)
      .def_readwrite("seed", &RunConfig::seed)
      .def_readwrite("suites", &RunConfig::suites);

  m.def("run_suites", [](const RunConfig& cfg) {
    auto rep = run_suites(cfg);
    return py::make_tuple(rep.all_pass(), report_json(rep));
  });
  m.def("theorem71_harness", [](const RunConfig& cfg) {
    auto rep = theorem71_harness(cfg);
    return py::make_tuple(rep.all_pass(), report_json(rep));
  });
  m.def("suite_names", &suite_names);
}
