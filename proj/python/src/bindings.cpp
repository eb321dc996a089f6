#include "latgad/combinatorics.hpp"
#include "latgad/formula.hpp"
#include "latgad/gadgets.hpp"
#include "latgad/identities.hpp"
#include "latgad/io.hpp"
#include "latgad/oracle.hpp"
#include "latgad/reductions.hpp"

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cmath>
#include <sstream>

namespace py = pybind11;
using namespace latgad;

namespace {

PNorm to_pnorm(double p) { return std::isinf(p) ? PNorm::infinity() : PNorm::finite(p); }
double from_pnorm(const PNorm& p) { return p.infinite ? INFINITY : p.p; }

CspFormula formula_from_text(const std::string& text) {
  std::istringstream in(text);
  return parse_dimacs(in);
}

py::dict check_dict(const VerificationCheck& c) {
  py::dict d;
  d["name"] = c.name;
  d["pass"] = c.pass;
  d["max_residual"] = c.max_residual;
  d["witness"] = c.witness;
  d["detail"] = c.detail;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Lattice gadgets, CVP reductions and brute-force oracles";

  // Messages carry the error kind as a prefix, e.g. "unsupported-parameters: ...".
  py::register_exception<Error>(m, "LatgadError", PyExc_RuntimeError);

  // -- reports ----------------------------------------------------------------
  py::class_<VerificationReport>(m, "Report")
      .def_readonly("passed", &VerificationReport::pass)
      .def_readonly("column_rank", &VerificationReport::column_rank)
      .def_readonly("note", &VerificationReport::note)
      .def_property_readonly("checks",
                             [](const VerificationReport& r) {
                               py::list l;
                               for (const auto& c : r.checks) l.append(check_dict(c));
                               return l;
                             })
      .def("summary", &VerificationReport::summary)
      .def("__bool__", [](const VerificationReport& r) { return r.pass; })
      .def("__repr__", [](const VerificationReport& r) { return "<Report " + r.summary() + ">"; });

  // -- gadgets ----------------------------------------------------------------
  py::class_<IsolatingGadget>(m, "Gadget")
      .def_readonly("p", &IsolatingGadget::p)
      .def_readonly("k", &IsolatingGadget::k)
      .def_readonly("V", &IsolatingGadget::V)
      .def_readonly("t", &IsolatingGadget::t)
      .def_readonly("eps", &IsolatingGadget::eps)
      .def_property_readonly("kind", [](const IsolatingGadget& g) { return std::string(to_string(g.kind)); })
      .def_property_readonly("constraint",
                             [](const IsolatingGadget& g) -> py::object {
                               if (!g.constraint) return py::none();
                               return py::str(g.constraint->str());
                             })
      .def("to_json", [](const IsolatingGadget& g) { return io::to_json(g).dump(2); })
      .def_static("from_json", [](const std::string& s) { return io::isolating_from_json(io::Json::parse(s)); });

  py::class_<OnOffGadget>(m, "OnOffGadget")
      .def_readonly("p", &OnOffGadget::p)
      .def_readonly("k", &OnOffGadget::k)
      .def_readonly("V", &OnOffGadget::V)
      .def_readonly("t_on", &OnOffGadget::t_on)
      .def_readonly("t_off", &OnOffGadget::t_off)
      .def_readonly("eps", &OnOffGadget::eps)
      .def("to_json", [](const OnOffGadget& g) { return io::to_json(g).dump(2); })
      .def_static("from_json", [](const std::string& s) { return io::on_off_from_json(io::Json::parse(s)); });

  m.def("find_isolating_parallelepiped", &find_isolating_parallelepiped, py::arg("k"), py::arg("p"));
  m.def("parity_gadget", &parity_gadget, py::arg("k"), py::arg("p"), py::arg("b"));
  m.def("to_isolating_lattice", &to_isolating_lattice, py::arg("gadget"));
  m.def("as_clause_gadget", &as_clause_gadget, py::arg("gadget"));
  m.def("to_on_off", [](const IsolatingGadget& g) { return to_on_off(g); }, py::arg("gadget"));
  m.def("verify_parallelepiped",
        [](const IsolatingGadget& g, double rel) { return verify_parallelepiped(g, Tolerance{rel, 1e-12}); },
        py::arg("gadget"), py::arg("rel_tol") = 1e-9);
  m.def("verify_on_off",
        [](const OnOffGadget& g, double rel) { return verify_on_off(g, Tolerance{rel, 1e-12}); },
        py::arg("gadget"), py::arg("rel_tol") = 1e-9);
  m.def("verify_lattice_condition",
        [](const IsolatingGadget& g, int radius, double rel, int threads) {
          return verify_lattice_condition(g, radius, Tolerance{rel, 1e-12}, threads);
        },
        py::arg("gadget"), py::arg("box_radius") = 2, py::arg("rel_tol") = 1e-9, py::arg("threads") = 1);
  m.def("vertex_distances", &vertex_distances, py::arg("V"), py::arg("t"), py::arg("p"));
  m.def("parity_eps_bound", &parity_eps_bound, py::arg("k"), py::arg("p"));
  m.def("even_p_obstruction", &even_p_obstruction, py::arg("V"), py::arg("t"), py::arg("p"));

  // -- formulas ---------------------------------------------------------------
  py::class_<CspFormula>(m, "Formula")
      .def_readonly("n", &CspFormula::n)
      .def_property_readonly("m", [](const CspFormula& f) { return f.constraints.size(); })
      .def_readwrite("threshold", &CspFormula::threshold)
      .def("total_weight", &CspFormula::total_weight)
      .def("satisfied_weight", py::overload_cast<std::uint64_t>(&CspFormula::satisfied_weight, py::const_),
           py::arg("assignment"))
      .def("hash", [](const CspFormula& f) { return hex64(f.hash()); })
      .def("to_dimacs",
           [](const CspFormula& f) {
             std::ostringstream os;
             write_dimacs(os, f);
             return os.str();
           })
      .def_static("parse", &formula_from_text, py::arg("text"))
      .def_static("load", &parse_dimacs_file, py::arg("path"));
  m.def("random_ksat", &random_ksat, py::arg("n"), py::arg("k"), py::arg("m"), py::arg("seed") = 0);
  m.def("random_kxor", &random_kxor, py::arg("n"), py::arg("k"), py::arg("m"), py::arg("seed") = 0,
        py::arg("planted") = std::nullopt);

  // -- reductions -------------------------------------------------------------
  py::class_<CvpInstance>(m, "CvpInstance")
      .def_property_readonly("p", [](const CvpInstance& i) { return from_pnorm(i.p); })
      .def_readonly("B", &CvpInstance::B)
      .def_readonly("t", &CvpInstance::t)
      .def_readonly("r", &CvpInstance::r)
      .def_property_readonly("mode", [](const CvpInstance& i) { return i.meta.mode; })
      .def_property_readonly("gamma", [](const CvpInstance& i) { return i.meta.gamma; })
      .def_property_readonly("eps", [](const CvpInstance& i) { return i.meta.eps; })
      .def("to_json", [](const CvpInstance& i) { return io::to_json(i).dump(2); })
      .def_static("from_json", [](const std::string& s) { return io::cvp_from_json(io::Json::parse(s)); });

  py::class_<CvppArtifacts>(m, "CvppArtifacts")
      .def_readonly("n", &CvppArtifacts::n)
      .def_readonly("k", &CvppArtifacts::k)
      .def_readonly("B", &CvppArtifacts::B)
      .def_readonly("alpha", &CvppArtifacts::alpha)
      .def_property_readonly("num_clauses", &CvppArtifacts::num_clauses)
      .def("basis_digest", &CvppArtifacts::basis_digest)
      .def("to_json", [](const CvppArtifacts& a) { return io::to_json(a).dump(2); })
      .def_static("from_json", [](const std::string& s) { return io::cvpp_from_json(io::Json::parse(s)); });

  m.def("sat_to_cvp", &sat_to_cvp, py::arg("formula"), py::arg("gadget"));
  m.def("csp_to_cvp_gap",
        [](const CspFormula& f, const std::vector<IsolatingGadget>& L, double s, double c) {
          return csp_to_cvp_gap(f, L, s, c).instance;
        },
        py::arg("formula"), py::arg("lattices"), py::arg("s"), py::arg("c"));
  m.def("gap_gamma", &gap_gamma, py::arg("p"), py::arg("eps"), py::arg("s"), py::arg("c"));
  m.def("parity_gap_bound",
        [](double p, int k, double s, double c) { return parity_gap_params(p, k, s, c).gamma_bound; },
        py::arg("p"), py::arg("k"), py::arg("s"), py::arg("c"));
  m.def("cvpp_preprocess", &cvpp_preprocess, py::arg("n"), py::arg("k"), py::arg("gadget"));
  m.def("cvpp_query", &cvpp_query, py::arg("artifacts"), py::arg("formula"));
  m.def("cvpp_inf_preprocess", &cvpp_inf_preprocess, py::arg("n"), py::arg("k"));
  m.def("cvpp_inf_query", &cvpp_inf_query, py::arg("artifacts"), py::arg("formula"));

  // -- oracle -----------------------------------------------------------------
  m.def("cvp_enumerate",
        [](const Mat& B, const Vec& t, double p, const Box& box, int threads) {
          const auto s = cvp_enumerate(B, t, to_pnorm(p), box, threads);
          return py::make_tuple(s.distance, s.closest);
        },
        py::arg("B"), py::arg("t"), py::arg("p"), py::arg("box"), py::arg("threads") = 1,
        "Exact closest vector over an integer box [(lo, hi), ...]; returns (distance, closest points).");
  m.def("uniform_box", &uniform_box, py::arg("n"), py::arg("lo"), py::arg("hi"));
  m.def("max_sat_brute",
        [](const CspFormula& f, int threads) {
          const auto r = max_sat_brute(f, threads);
          return py::make_tuple(r.best, r.count);
        },
        py::arg("formula"), py::arg("threads") = 1, "Returns (best satisfied weight, number of optima).");
  m.def("validate_reduction",
        [](const CspFormula& f, const CvpInstance& inst, std::optional<Box> box, bool non_binary, int threads) {
          ValidateOptions opt;
          opt.box = std::move(box);
          opt.non_binary = non_binary;
          opt.threads = threads;
          return validate_reduction(f, inst, opt);
        },
        py::arg("formula"), py::arg("instance"), py::arg("box") = std::nullopt, py::arg("non_binary") = true,
        py::arg("threads") = 1);

  // -- identities -------------------------------------------------------------
  m.def("binom_sum",
        [](int k, double tau, double p, bool alternating) { return binom_sum(SumSpec{k, tau, p, alternating}); },
        py::arg("k"), py::arg("tau"), py::arg("p"), py::arg("alternating") = true);
  m.def("alt_sum_direct", &alt_sum_direct, py::arg("n"), py::arg("m"), py::arg("p"));
  m.def("alt_sum_integral", &alt_sum_integral, py::arg("n"), py::arg("m"), py::arg("p"));
  m.def("s_kp", [](int k, double p) { return s_kp(k, p).value; }, py::arg("k"), py::arg("p"));
  m.def("c_p_limit", [](double p) { return c_p_limit(p).value; }, py::arg("p"));
  m.def("ramanujan_residual", [](int k, double x) { return ramanujan_check(k, x).residual; }, py::arg("k"),
        py::arg("x"));
  m.def("theta_p", &theta_p, py::arg("p"), py::arg("tau"));
  m.def("svp_constants",
        [](double p) {
          const auto c = svp_constants(p);
          return py::make_tuple(c.W, c.C);
        },
        py::arg("p"), "Returns (W_p, C_p or None).");
  m.def("find_p0", &find_p0, py::arg("tol") = 1e-10);

  // -- combinatorics ----------------------------------------------------------
  m.def("find_affine_cube",
        [](const std::vector<std::uint64_t>& S, int n, int d) -> py::object {
          const auto c = find_affine_cube(S, n, d);
          if (!c) return py::none();
          return py::make_tuple(c->base, c->directions);
        },
        py::arg("points"), py::arg("n"), py::arg("d"), "Returns (base, directions) or None.");
  m.def("affine_cube_bound", &affine_cube_bound, py::arg("n"), py::arg("d"));
  m.def("clause_isolating_one",
        [](const std::vector<std::uint64_t>& S, int n, int k) {
          std::vector<int> lits;
          for (const auto& l : clause_isolating_one(S, n, k).literals) lits.push_back(l.negated ? -l.var : l.var);
          return lits;
        },
        py::arg("points"), py::arg("n"), py::arg("k"), "Clause as signed DIMACS literals.");
}
