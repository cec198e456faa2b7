#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "polyform/escalator.hpp"
#include "polyform/identities.hpp"
#include "polyform/lab.hpp"
#include "polyform/polygonal.hpp"
#include "polyform/rep_table.hpp"

namespace py = pybind11;
using namespace polyform;

namespace {

py::dict report_dict(const TreeReport& r) {
  py::dict d;
  d["m"] = r.m;
  d["bound"] = r.bound;
  d["gamma_bound"] = r.gamma_bound;
  d["min_leaf_rank"] = r.min_leaf_rank;
  d["max_leaf_rank"] = r.max_leaf_rank;
  d["leaf_count_by_rank"] = r.leaf_count_by_rank;
  d["node_count"] = r.node_count;
  d["leaf_count"] = r.leaf_count;
  d["truncated"] = r.truncated;
  return d;
}

}  // namespace

PYBIND11_MODULE(_polyform, mod) {
  mod.doc() = "Escalator trees and representability tables for generalized "
              "polygonal forms";

  mod.def("eval_polygonal", &eval_polygonal, py::arg("m"), py::arg("x"));
  mod.def("enumerate_values", &enumerate_values, py::arg("m"), py::arg("bound"));
  mod.def("polygonal_index_of", &polygonal_index_of, py::arg("m"), py::arg("n"));

  py::class_<MGonalForm>(mod, "MGonalForm")
      .def(py::init([](i64 m, std::vector<i64> coeffs) {
             MGonalForm f{m, std::move(coeffs)};
             f.validate();
             return f;
           }),
           py::arg("m"), py::arg("coeffs"))
      .def_readonly("m", &MGonalForm::m)
      .def_readonly("coeffs", &MGonalForm::coeffs)
      .def("rank", &MGonalForm::rank)
      .def("coeff_sum", &MGonalForm::coeff_sum)
      .def("__repr__", &MGonalForm::to_string);

  py::class_<RepTable>(mod, "RepTable")
      .def_static("build", &RepTable::build, py::arg("form"), py::arg("bound"))
      .def("extended", &RepTable::extended, py::arg("a"))
      .def("test", &RepTable::test, py::arg("n"))
      .def("bound", &RepTable::bound)
      .def_property_readonly("form", &RepTable::form)
      .def("truant", [](const RepTable& t) -> py::object {
        auto r = t.truant();
        if (r.universal()) return py::none();
        return py::int_(*r.truant);
      })
      .def("universal", [](const RepTable& t) { return t.truant().universal(); });

  mod.def(
      "decompose",
      [](const MGonalForm& form, i64 n, i64 radius) -> py::object {
        auto d = decompose(form, n, radius);
        py::dict out;
        out["status"] = d.status == DecomposeStatus::found      ? "found"
                        : d.status == DecomposeStatus::absent   ? "absent"
                                                                : "inconclusive";
        out["witness"] = d.witness;
        return out;
      },
      py::arg("form"), py::arg("n"), py::arg("radius") = 100000);

  py::class_<SearchConfig>(mod, "SearchConfig")
      .def(py::init<>())
      .def_readwrite("bound", &SearchConfig::bound)
      .def_readwrite("c_const", &SearchConfig::c_const)
      .def_readwrite("node_budget", &SearchConfig::node_budget)
      .def_readwrite("depth_budget", &SearchConfig::depth_budget)
      .def_readwrite("max_doublings", &SearchConfig::max_doublings);

  mod.def(
      "build_tree",
      [](i64 m, const SearchConfig& cfg) { return report_dict(build_tree(m, cfg)); },
      py::arg("m"), py::arg("cfg"));
  mod.def(
      "stabilize_gamma",
      [](i64 m, const SearchConfig& cfg) {
        auto s = stabilize_gamma(m, cfg);
        py::dict d = report_dict(s.report);
        d["stable_bound"] = s.stable_bound;
        d["converged"] = s.converged;
        return d;
      },
      py::arg("m"), py::arg("cfg"));

  mod.def("verify_builtin_sets", [] {
    auto r = verify_builtin_sets();
    py::dict d;
    for (const auto& set : r.sets) {
      py::dict s;
      s["total"] = set.total;
      s["passed"] = set.passed;
      s["failures"] = set.failures;
      d[py::str(set.name)] = s;
    }
    d["residue_cover_pass"] = r.residue_cover_pass;
    d["all_pass"] = r.all_pass;
    return d;
  });

  mod.def("recompute_s_sets", [] {
    auto r = recompute_s_sets();
    py::dict d;
    d["pos_only"] = std::vector<std::pair<i64, i64>>(r.pos_only.begin(),
                                                     r.pos_only.end());
    d["neg_only"] = std::vector<std::pair<i64, i64>>(r.neg_only.begin(),
                                                     r.neg_only.end());
    std::vector<py::dict> diff;
    for (const auto& e : r.diff) {
      py::dict x;
      x["a"] = e.a;
      x["r"] = e.r;
      x["detail"] = e.detail;
      diff.push_back(std::move(x));
    }
    d["diff"] = diff;
    d["transcription_notes"] = r.transcription_notes;
    return d;
  });

  mod.def("check_ell", &check_ell, py::arg("m_lo"), py::arg("m_hi"), py::arg("bound"));
  mod.def("check_multiples_lemma", &check_multiples_lemma, py::arg("a"),
          py::arg("m"), py::arg("count"));
  mod.def("predicted_min_rank", &predicted_min_rank, py::arg("m"));
  mod.def("predicted_max_rank", &predicted_max_rank, py::arg("m"));

  py::class_<MVerdict>(mod, "MVerdict")
      .def_readonly("m", &MVerdict::m)
      .def_readonly("observed", &MVerdict::observed)
      .def_readonly("predicted", &MVerdict::predicted)
      .def_readonly("note", &MVerdict::note)
      .def_property_readonly(
          "verdict", [](const MVerdict& v) { return verdict_name(v.verdict); });
  py::class_<ConjectureReport>(mod, "ConjectureReport")
      .def_readonly("claim_id", &ConjectureReport::claim_id)
      .def_readonly("per_m", &ConjectureReport::per_m)
      .def("all_match", &ConjectureReport::all_match);
}
