#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "pgarcs/isomorphism.hpp"
#include "pgarcs/pencil.hpp"
#include "pgarcs/planar.hpp"
#include "pgarcs/proofs.hpp"

namespace py = pybind11;
using namespace pgarcs;

namespace {

// Python holds spaces through a non-const pointer; the library only reads them.
using PySpace = std::shared_ptr<ProjectiveSpace>;
PySpace to_py(const SpacePtr& s) { return std::const_pointer_cast<ProjectiveSpace>(s); }

}  // namespace

PYBIND11_MODULE(pgarcs, m) {
  m.doc() = "Arcs in finite projective geometries";
  m.attr("__version__") = PGARCS_VERSION;
  m.attr("source_dir") = PGARCS_SOURCE_DIR;

  py::class_<ProjectiveSpace, PySpace>(m, "ProjectiveSpace")
      .def_static("build", [](int v, int q) { return to_py(ProjectiveSpace::build(v, q)); }, py::arg("v"), py::arg("q"))
      .def_property_readonly("v", &ProjectiveSpace::v)
      .def_property_readonly("q", &ProjectiveSpace::q)
      .def_property_readonly("num_points", &ProjectiveSpace::num_points)
      .def_property_readonly("num_lines", &ProjectiveSpace::num_lines)
      .def("point", &ProjectiveSpace::point)
      .def("index_of", &ProjectiveSpace::index_of)
      .def("line_points", &ProjectiveSpace::line_points)
      .def("hyperplane_points", &ProjectiveSpace::hyperplane_points);

  py::class_<Arc>(m, "Arc")
      .def(py::init([](const PySpace& s) { return Arc(s); }))
      .def(py::init([](const PySpace& s, std::vector<int> mult) { return Arc(s, std::move(mult)); }))
      .def_property_readonly("space", [](const Arc& a) { return to_py(a.space()); })
      .def_property_readonly("mult", &Arc::mult)
      .def_property_readonly("cardinality", &Arc::cardinality)
      .def("__len__", [](const Arc& a) { return a.mult().size(); })
      .def("__getitem__", [](const Arc& a, int p) { return a[p]; })
      .def("hyperplane_multiplicities", &Arc::hyperplane_multiplicities)
      .def("line_multiplicities", &Arc::line_multiplicities)
      .def("__eq__", &Arc::operator==)
      .def("__repr__", [](const Arc& a) {
        return "<Arc in PG(" + std::to_string(a.geom().v() - 1) + "," + std::to_string(a.geom().q()) + "), cardinality " +
               std::to_string(a.cardinality()) + ">";
      });

  m.def("read_generator_file",
        [](const std::string& path, const PySpace& s, std::optional<int> card) { return read_generator_file(path, s, card); },
        py::arg("path"), py::arg("space"), py::arg("expected_card") = py::none());
  m.def("read_arc_file", [](const std::string& path) { return read_arc_file(path); }, py::arg("path"));
  m.def("format_arc", &format_arc);
  m.def("spectrum", &spectrum);
  m.def("lambda_distribution", &lambda_distribution);
  m.def("standard_equations_hold", &standard_equations_hold);
  m.def("is_t_mod_q", &is_t_mod_q);
  m.def("is_strong", &is_strong);
  m.def("lifting_points", &lifting_points);
  m.def("lift",
        [](const Arc& base, const PySpace& ambient, int apex, std::optional<int> t) { return lift(base, ambient, apex, t); },
        py::arg("base"), py::arg("ambient"), py::arg("lifting_point") = -1, py::arg("t") = py::none());
  m.def("sigma_dual", &sigma_dual, py::arg("arc"), py::arg("s"), py::arg("t"));
  m.def("griesmer_bound", &griesmer_bound);

  m.def("canonical_form", [](const Arc& a) {
    auto c = canonical_form(a);
    if (!c.decided) throw std::runtime_error("canonical form undecided within the budget");
    return c.form;
  });
  m.def("automorphism_order", [](const Arc& a) {
    auto r = automorphism_order(a);
    if (!r.decided) throw std::runtime_error("automorphism order undecided within the budget");
    return py::make_tuple(r.order, r.linear_order);
  }, "projective and linear order of the stabiliser");
  m.def("are_isomorphic", [](const Arc& a, const Arc& b) { return are_isomorphic(a, b).verdict == Verdict::Yes; });

  m.def("classify_strong_planar", [](int q, int t, int card) {
    auto r = classify_strong_planar(q, t, card);
    if (!r.complete) throw std::runtime_error("classification incomplete");
    return r.classes;
  }, py::arg("q"), py::arg("t"), py::arg("card"));
  m.def("read_library", [](const std::string& dir) { return ResidualLibrary::read(dir).by_card; });

  py::class_<ExclusionReport>(m, "ExclusionReport")
      .def_readonly("target", &ExclusionReport::target)
      .def_readonly("empty", &ExclusionReport::empty)
      .def_readonly("complete", &ExclusionReport::complete)
      .def_readonly("line_types", &ExclusionReport::line_types)
      .def_readonly("pencils", &ExclusionReport::pencils)
      .def_readonly("residuals", &ExclusionReport::residuals)
      .def_readonly("residual_cards", &ExclusionReport::residual_cards);
  m.def("exclude", [](const std::string& library_dir, int target, bool preset_lambdas) {
    auto lib = ResidualLibrary::read(library_dir);
    auto u = PencilUniverse::build(lib);
    return run_fixpoint(u, target, {}, preset_lambdas ? preset_lambda_exclusions(target) : std::vector<Lambda>{});
  }, py::arg("library_dir"), py::arg("target"), py::arg("preset_lambdas") = false);

  m.def("planar_spectrum_family", [](int n, int s, int q) { return planar_spectrum_family(n, s, q).str(); },
        py::arg("n"), py::arg("s"), py::arg("q") = 5);
  m.def("eta_table", [](int m_, std::optional<std::vector<int>> allowed) {
    auto t = eta_table(m_, allowed ? *allowed : narrowed_allowed(m_));
    std::map<std::pair<int, int>, long long> out;
    for (const auto& [k, e] : t.entries) out[k] = e.eta;
    return out;
  }, py::arg("m"), py::arg("allowed") = py::none());
  m.def("exclusion_infeasible", [](int m_, int min_dual_card) {
    return exclusion_infeasible(m_, narrowed_allowed(m_), {}, min_dual_card).infeasible;
  }, py::arg("m"), py::arg("min_dual_card") = 163);
  m.def("check_a1", []() {
    auto c = check_a1();
    return py::make_tuple(c.bound, c.excluded);
  });
  m.def("two_mod_q_spectra", [](int q) {
    std::vector<std::pair<int, int>> out;
    for (const auto& r : two_mod_q_spectra(q)) out.emplace_back(r.n, r.case_label);
    return out;
  }, "(n, case label) per solution, label 0 for solutions outside the general cases");
}
