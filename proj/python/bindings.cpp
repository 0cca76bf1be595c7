#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "vsg/code.hpp"
#include "vsg/diagram.hpp"
#include "vsg/group.hpp"
#include "vsg/links.hpp"
#include "vsg/moves.hpp"
#include "vsg/quandle.hpp"
#include "vsg/yamada.hpp"

namespace py = pybind11;
using namespace vsg;

namespace {

VsgCode code_arg(const std::string& json_text) { return parse_code(json_text); }

MoveSet moveset_arg(const std::string& name, const std::vector<std::string>& allow) {
  MoveSet ms = name == "pliable" ? MoveSet::pliable_moves() : MoveSet::rigid();
  if (name != "rigid" && name != "pliable") throw StructureError("moveset must be rigid or pliable");
  for (auto& a : allow) {
    if (a == "vi*" || a == "VI*")
      ms.forbidden.insert(MoveId::VIstar);
    else if (a == "vii*" || a == "VII*")
      ms.forbidden.insert(MoveId::VIIstar);
    else if (a == "viii*" || a == "VIII*")
      ms.forbidden.insert(MoveId::VIIIstar);
    else
      throw StructureError("unknown forbidden move " + a);
  }
  return ms;
}

}  // namespace

PYBIND11_MODULE(_vsg, m) {
  m.doc() = "virtual spatial graphs: Gauss codes, realizations, moves, invariants";

  py::register_exception<ValidationError>(m, "ValidationError");
  py::register_exception<StructureError>(m, "StructureError");
  py::register_exception<BudgetError>(m, "BudgetError");
  py::register_exception<PolicyError>(m, "PolicyError");

  m.def("validate", [](const std::string& code) {
    ValidationReport rep = validate(code_arg(code));
    std::vector<std::pair<std::string, std::string>> v;
    for (auto& x : rep.violations) v.push_back({x.rule, x.where});
    return py::make_tuple(rep.ok, v);
  });
  m.def("canonical", [](const std::string& code) {
    return canonical_serialize(canonical_form(code_arg(code)));
  });
  m.def("shadow_labels", [](const std::string& code) {
    ShadowCode s = shadow(code_arg(code));
    return s.passages;
  });

  m.def(
      "realize",
      [](const std::string& code, unsigned variant) {
        return serialize_diagram(realize(code_arg(code), variant));
      },
      py::arg("code"), py::arg("variant") = 0);
  m.def("extract_code", [](const std::string& diagram) {
    return canonical_serialize(extract_code(parse_diagram(diagram)));
  });
  m.def(
      "render_svg",
      [](const std::string& code, unsigned variant) {
        return render_svg(realize(code_arg(code), variant));
      },
      py::arg("code"), py::arg("variant") = 0);

  m.def(
      "yamada",
      [](const std::string& code, bool normalized, int max_crossings, int workers) {
        YamadaOptions opts;
        opts.max_crossings = max_crossings;
        opts.workers = workers;
        if (!normalized) return yamada(code_arg(code), opts).to_string();
        NormalizedYamada n = yamada_normalized(code_arg(code), opts);
        return n.zero ? std::string("zero") : n.value.to_string();
      },
      py::arg("code"), py::arg("normalized") = false, py::arg("max_crossings") = 14,
      py::arg("workers") = 1);

  m.def(
      "group",
      [](const std::string& code, bool simplify) {
        GroupPresentation p = wirtinger(code_arg(code));
        if (simplify) p = tietze_simplify(p);
        Abelianization ab = abelianization(p);
        py::dict out;
        out["presentation"] = p.to_text();
        out["generators"] = p.generators.size();
        out["relators"] = p.relators.size();
        out["free_rank"] = ab.free_rank;
        out["torsion"] = ab.torsion;
        return out;
      },
      py::arg("code"), py::arg("simplify") = true);
  m.def(
      "count_homs",
      [](const std::string& code, const std::string& group_json, bool simplify) {
        GroupPresentation p = wirtinger(code_arg(code));
        if (simplify) p = tietze_simplify(p);
        return count_homs(p, FiniteGroupTable::from_json(group_json));
      },
      py::arg("code"), py::arg("group_json"), py::arg("simplify") = true);

  m.def(
      "count_colorings",
      [](const std::string& code, const std::string& vqs_json, unsigned variant, int max_arcs) {
        ColoringOptions opts;
        opts.variant = variant;
        opts.max_arcs = max_arcs;
        return count_colorings(code_arg(code), FiniteVQS::from_json(vqs_json), opts);
      },
      py::arg("code"), py::arg("vqs_json"), py::arg("variant") = 0, py::arg("max_arcs") = 64);
  m.def("dihedral_vqs", [](int n) { return FiniteVQS::dihedral(n).to_json(); });

  m.def(
      "tg",
      [](const std::string& code, bool include_empty) {
        TgOptions opts;
        opts.include_empty = include_empty;
        std::vector<std::string> out;
        for (auto& l : tg(code_arg(code), opts)) out.push_back(l.to_json());
        return out;
      },
      py::arg("code"), py::arg("include_empty") = true);
  m.def("linking_halves", [](const std::string& link_json, int i, int j) {
    return linking_halves(VirtualLink::from_json(link_json), i, j);
  });
  m.def("bracket", [](const std::string& link_json) {
    return bracket(VirtualLink::from_json(link_json)).to_string();
  });
  m.def("f_poly", [](const std::string& link_json) {
    return f_poly(VirtualLink::from_json(link_json)).to_string();
  });

  m.def(
      "enumerate_moves",
      [](const std::string& code, const std::string& moveset, const std::vector<std::string>& allow,
         bool with_insertions) {
        std::vector<std::string> out;
        for (auto& s : enumerate_moves(code_arg(code), moveset_arg(moveset, allow), with_insertions))
          out.push_back(s.to_json());
        return out;
      },
      py::arg("code"), py::arg("moveset") = "rigid", py::arg("allow") = std::vector<std::string>{},
      py::arg("with_insertions") = true);
  m.def(
      "apply_move",
      [](const std::string& code, const std::string& site, const std::string& moveset,
         const std::vector<std::string>& allow) {
        return canonical_serialize(
            apply_move(code_arg(code), MoveSite::from_json(site), moveset_arg(moveset, allow)));
      },
      py::arg("code"), py::arg("site"), py::arg("moveset") = "pliable",
      py::arg("allow") = std::vector<std::string>{});
  m.def(
      "normalize_forbidden",
      [](const std::string& code, const std::string& level) {
        if (level != "viii" && level != "pliable")
          throw StructureError("level must be viii or pliable");
        return canonical_serialize(normalize_forbidden(
            code_arg(code),
            level == "viii" ? NormalizeLevel::RigidVIII : NormalizeLevel::PliableAll));
      },
      py::arg("code"), py::arg("level") = "viii");
  m.def(
      "search_equivalent",
      [](const std::string& a, const std::string& b, int max_crossings, long long max_states,
         const std::string& moveset, const std::vector<std::string>& allow) {
        SearchBudget budget{max_crossings, max_states};
        SearchVerdict v =
            search_equivalent(code_arg(a), code_arg(b), budget, moveset_arg(moveset, allow));
        py::dict out;
        out["equivalent"] = v.equivalent;
        out["states_visited"] = v.states_visited;
        out["max_crossings_reached"] = v.max_crossings_reached;
        out["witness"] = witness_to_json(v.witness);
        return out;
      },
      py::arg("a"), py::arg("b"), py::arg("max_crossings") = 8, py::arg("max_states") = 1000000,
      py::arg("moveset") = "rigid", py::arg("allow") = std::vector<std::string>{});
}
