#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "orth/boundary.hpp"
#include "orth/functions.hpp"
#include "orth/graph.hpp"
#include "orth/induced.hpp"
#include "orth/line.hpp"
#include "orth/models.hpp"
#include "orth/relation.hpp"
#include "orth/translations.hpp"

namespace py = pybind11;
using namespace orth;

namespace {

using Names = std::vector<std::string>;
using NameSets = std::vector<Names>;

std::vector<Mask> masks(const GroundSet& g, const NameSets& sets) {
  std::vector<Mask> out;
  for (const auto& s : sets) out.push_back(g.mask_of(s));
  return out;
}

py::dict verdict_dict(const GroundSet& g, const PropertyVerdict& v) {
  py::dict d;
  d["holds"] = v.holds;
  NameSets w;
  for (Mask m : v.witness) w.push_back(g.names_of(m));
  d["witness"] = w;
  d["note"] = v.note;
  return d;
}

Budget budget_from(std::optional<std::size_t> n) {
  Budget b;
  if (n) b.axiom_scan_n = b.pair_scan_n = b.triple_claim_n = b.explicit_n = *n;
  return b;
}

std::unique_ptr<GraphGenerator> generator(const std::string& name, int param) {
  if (name == "line") return GraphGenerator::line();
  if (name == "grid2d") return GraphGenerator::grid2d();
  if (name == "free-group") return GraphGenerator::free_group(param);
  if (name == "regular-tree") return GraphGenerator::regular_tree(param);
  throw InputError("unknown generator '" + name + "'");
}

std::string rational(const Rational& r) {
  return r.denominator() == 1 ? std::to_string(r.numerator())
                              : std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

}  // namespace

PYBIND11_MODULE(_orthogonality, m) {
  m.doc() = "Orthogonality relations on finite sets, the integers and graph balls.";

  static py::exception<BudgetExceeded> budget_exc(m, "BudgetExceeded", PyExc_RuntimeError);
  static py::exception<PreconditionError> precondition_exc(m, "PreconditionError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const BudgetExceeded& e) {
      py::set_error(budget_exc, e.what());
    } catch (const PreconditionError& e) {
      py::set_error(precondition_exc, e.what());
    } catch (const InputError& e) {
      PyErr_SetString(PyExc_ValueError, e.what());
    }
  });

  py::class_<FiniteRelation>(m, "FiniteRelation")
      .def_static(
          "from_bornology",
          [](const Names& pts, const NameSets& gens) {
            GroundSet g(pts);
            return from_bornology(Bornology::generated(g, masks(g, gens)));
          },
          py::arg("points"), py::arg("generators"))
      .def_static(
          "from_topology",
          [](const Names& pts, const NameSets& opens) {
            GroundSet g(pts);
            return from_topology(FiniteTopology(g, masks(g, opens)));
          },
          py::arg("points"), py::arg("opens"))
      .def_static(
          "from_metric",
          [](const Names& pts, const std::vector<std::vector<double>>& d) {
            return from_metric(FiniteMetric(GroundSet(pts), d));
          },
          py::arg("points"), py::arg("distances"))
      .def_static(
          "from_point_pairs",
          [](const Names& pts, const std::vector<std::pair<std::string, std::string>>& pairs) {
            GroundSet g(pts);
            std::vector<Mask> rows(g.size(), 0);
            for (const auto& [a, b] : pairs) {
              Mask x = g.mask_of({a}), y = g.mask_of({b});
              rows[std::countr_zero(x)] |= y;
              rows[std::countr_zero(y)] |= x;
            }
            return FiniteRelation::from_pairs(g, rows, "point pairs");
          },
          py::arg("points"), py::arg("pairs"))
      .def_property_readonly("points", [](const FiniteRelation& r) { return r.ground().names(); })
      .def("orth", [](const FiniteRelation& r, const Names& a, const Names& c) {
        return r.orth(r.ground().mask_of(a), r.ground().mask_of(c));
      })
      .def("is_bounded", [](const FiniteRelation& r, const Names& b) {
        return is_bounded(r, r.ground().mask_of(b));
      })
      .def("bounded_points", [](const FiniteRelation& r) { return r.ground().names_of(bounded_points(r)); })
      .def("perp", [](const FiniteRelation& r, const Names& a) {
        return r.ground().names_of(perp(r, r.ground().mask_of(a)));
      })
      .def("scale", [](const FiniteRelation& r) {
        auto s = scale_class(r);
        return std::string(s == ScaleClass::small ? "small" : s == ScaleClass::large ? "large" : "neither");
      })
      .def(
          "verify_axioms",
          [](const FiniteRelation& r, std::optional<std::size_t> budget_n) {
            auto rep = verify_axioms(r, budget_from(budget_n));
            py::list viol;
            for (const auto& v : rep.violations) {
              py::dict d;
              d["axiom"] = to_string(v.axiom);
              NameSets w;
              for (Mask s : v.witness) w.push_back(r.ground().names_of(s));
              d["witness"] = w;
              viol.append(d);
            }
            py::dict out;
            out["passed"] = rep.passed;
            out["checks"] = rep.checks;
            out["violations"] = viol;
            return out;
          },
          py::arg("budget_n") = py::none())
      .def(
          "separation_profile",
          [](const FiniteRelation& r, std::optional<std::size_t> budget_n) {
            auto p = separation_profile(r, budget_from(budget_n));
            py::dict out;
            out["frechet"] = verdict_dict(r.ground(), p.frechet);
            out["hausdorff"] = verdict_dict(r.ground(), p.hausdorff);
            out["regular"] = verdict_dict(r.ground(), p.regular);
            out["normal"] = verdict_dict(r.ground(), p.normal);
            return out;
          },
          py::arg("budget_n") = py::none())
      .def("induced_topology",
           [](const FiniteRelation& r) {
             NameSets out;
             for (Mask o : induced_topology(r).opens) out.push_back(r.ground().names_of(o));
             return out;
           })
      .def("boundary_size", [](const FiniteRelation& r) {
        auto b = finite_boundary(r);
        if (!b.transitive) throw PreconditionError("resemblance of ultrafilters is not transitive", {});
        return b.boundary_size();
      });

  py::class_<EPS>(m, "LineSet", "An eventually periodic subset of the integers.")
      .def(py::init<>())
      .def_static("integers", &EPS::integers)
      .def_static("naturals", &EPS::naturals)
      .def_static("finite", &EPS::finite)
      .def_static("interval", &EPS::interval)
      .def_static("right_ray", &EPS::right_ray)
      .def_static("left_ray", &EPS::left_ray)
      .def_static("residue_class", &EPS::residue_class)
      .def_static("progression", [](Int start, Int step, bool rightward) {
        return EPS::progression(start, step, rightward ? Direction::right : Direction::left);
      }, py::arg("start"), py::arg("step"), py::arg("rightward") = true)
      .def("__contains__", &EPS::contains)
      .def("__or__", &EPS::unite)
      .def("__and__", &EPS::intersect)
      .def("__sub__", &EPS::subtract)
      .def("__eq__", [](const EPS& a, const EPS& b) { return a == b; })
      .def("complement", &EPS::complement)
      .def("translate", &EPS::translate)
      .def("is_finite", &EPS::is_finite)
      .def("elements_in", &EPS::elements_in)
      .def("__repr__", [](const EPS& s) { return "LineSet(" + s.to_string() + ")"; });

  m.def(
      "line_orth",
      [](const EPS& a, const EPS& c, const std::string& rule) {
        auto r = parse_line_rule(rule);
        if (!r) throw InputError("unknown rule '" + rule + "'");
        return SymbolicRelation(*r).orth(a, c);
      },
      py::arg("a"), py::arg("c"), py::arg("rule") = "metric");

  m.def(
      "metric_oracle",
      [](const std::function<bool(Int)>& a, const std::function<bool(Int)>& c, Int window) {
        OracleOptions o;
        o.window = window;
        auto r = metric_ls_oracle(a, c, o);
        return to_string(r.verdict);
      },
      py::arg("a"), py::arg("c"), py::arg("window") = 2000,
      "Decides large-scale orthogonality of two membership predicates on a window.");

  m.def(
      "end_count",
      [](const std::string& gen, int radius, int param) {
        auto g = generator(gen, param);
        auto p = end_count(GraphBall(*g, radius));
        py::dict out;
        out["ends"] = p.ends;
        out["stabilized"] = p.stabilized;
        out["counts"] = p.counts;
        return out;
      },
      py::arg("generator"), py::arg("radius"), py::arg("param") = 2);

  m.def(
      "delta_estimate",
      [](const std::string& gen, int radius, int param) {
        auto g = generator(gen, param);
        GraphBall ball(*g, radius);
        require_budget("local metric vertices", ball.size(), LocalMetric::kMaxVertices);
        LocalMetric metric(ball);
        return rational(delta_estimate(metric, ball.index(g->origin())).delta);
      },
      py::arg("generator"), py::arg("radius"), py::arg("param") = 2);
}
