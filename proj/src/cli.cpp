#include "vsg/cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "vsg/code.hpp"
#include "vsg/diagram.hpp"
#include "vsg/group.hpp"
#include "vsg/links.hpp"
#include "vsg/moves.hpp"
#include "vsg/quandle.hpp"
#include "vsg/yamada.hpp"

namespace vsg {

namespace {

using nlohmann::json;

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw StructureError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void spill(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw StructureError("cannot write " + path);
  out << text;
}

MoveSet parse_moveset(const std::string& moveset, const std::string& allow) {
  MoveSet ms = moveset == "pliable" ? MoveSet::pliable_moves() : MoveSet::rigid();
  if (moveset != "rigid" && moveset != "pliable")
    throw StructureError("moveset must be rigid or pliable");
  std::stringstream ss(allow);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    std::string up;
    for (char ch : tok) up += static_cast<char>(toupper(ch));
    if (up == "VI*")
      ms.forbidden.insert(MoveId::VIstar);
    else if (up == "VII*")
      ms.forbidden.insert(MoveId::VIIstar);
    else if (up == "VIII*")
      ms.forbidden.insert(MoveId::VIIIstar);
    else
      throw StructureError("unknown forbidden move " + tok + " (use vi*,vii*,viii*)");
  }
  return ms;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"virtual spatial graph toolkit"};
  app.require_subcommand(1);
  std::string format = "text";
  app.add_option("--format", format, "output format: text|json")->capture_default_str();

  // validate
  auto* c_validate = app.add_subcommand("validate", "check the code invariants");
  std::string validate_path;
  c_validate->add_option("code", validate_path)->required();

  // realize
  auto* c_realize = app.add_subcommand("realize", "plane diagram with virtual crossings");
  std::string realize_path, realize_svg, realize_out;
  unsigned realize_variant = 0;
  c_realize->add_option("code", realize_path)->required();
  c_realize->add_option("--svg", realize_svg, "write an SVG rendering");
  c_realize->add_option("--out", realize_out, "write the diagram JSON to a file");
  c_realize->add_option("--variant", realize_variant, "alternative deterministic routing");

  // gauss
  auto* c_gauss = app.add_subcommand("gauss", "extract the Gauss code of a diagram");
  std::string gauss_path;
  c_gauss->add_option("diagram", gauss_path)->required();

  // yamada
  auto* c_yamada = app.add_subcommand("yamada", "Yamada polynomial R (or normalized R-bar)");
  std::string yamada_path;
  bool yamada_norm = false;
  YamadaOptions yopts;
  c_yamada->add_option("code", yamada_path)->required();
  c_yamada->add_flag("--normalized", yamada_norm, "report (-A)^-m R");
  c_yamada->add_option("--max-crossings", yopts.max_crossings)->capture_default_str();
  c_yamada->add_option("--workers", yopts.workers)->capture_default_str();

  // group
  auto* c_group = app.add_subcommand("group", "Wirtinger presentation and extractions");
  std::string group_path, group_homs;
  bool group_simplify = false, group_abel = false;
  c_group->add_option("code", group_path)->required();
  c_group->add_flag("--simplify", group_simplify);
  c_group->add_flag("--abelianize", group_abel);
  c_group->add_option("--homs", group_homs, "count homomorphisms into a Cayley-table group");

  // quandle
  auto* c_quandle = app.add_subcommand("quandle", "coloring count by a finite structure");
  std::string quandle_path, quandle_structure;
  ColoringOptions qopts;
  c_quandle->add_option("code", quandle_path)->required();
  c_quandle->add_option("--structure", quandle_structure)->required();
  c_quandle->add_option("--variant", qopts.variant)->capture_default_str();
  c_quandle->add_option("--max-arcs", qopts.max_arcs)->capture_default_str();

  // tg
  auto* c_tg = app.add_subcommand("tg", "the collection T(G) of virtual links");
  std::string tg_path;
  bool tg_linking = false, tg_bracket = false, tg_skip_empty = false, tg_distinct = false;
  c_tg->add_option("code", tg_path)->required();
  c_tg->add_flag("--linking", tg_linking, "TSV of pairwise linking numbers per choice");
  c_tg->add_flag("--bracket", tg_bracket, "TSV of bracket and f-polynomials per choice");
  c_tg->add_flag("--skip-empty", tg_skip_empty, "drop empty links from the collection");
  c_tg->add_flag("--distinct", tg_distinct, "collapse the multiset to a set");

  // moves
  auto* c_moves = app.add_subcommand("moves", "enumerate or apply Reidemeister moves");
  auto* c_moves_list = c_moves->add_subcommand("list", "applicable sites");
  auto* c_moves_apply = c_moves->add_subcommand("apply", "apply one site");
  std::string ml_path, ml_moveset = "rigid", ml_allow;
  bool ml_noins = false;
  c_moves_list->add_option("code", ml_path)->required();
  c_moves_list->add_option("--moveset", ml_moveset)->capture_default_str();
  c_moves_list->add_option("--allow", ml_allow, "forbidden moves, e.g. vi*,viii*");
  c_moves_list->add_flag("--no-insertions", ml_noins);
  std::string ma_path, ma_site, ma_moveset = "rigid", ma_allow;
  c_moves_apply->add_option("code", ma_path)->required();
  c_moves_apply->add_option("--site", ma_site, "MoveSite JSON")->required();
  c_moves_apply->add_option("--moveset", ma_moveset)->capture_default_str();
  c_moves_apply->add_option("--allow", ma_allow);

  // normalize
  auto* c_norm = app.add_subcommand("normalize", "Proposition-style forbidden-move normal form");
  std::string norm_path, norm_level;
  c_norm->add_option("code", norm_path)->required();
  c_norm->add_option("--forbidden", norm_level, "viii | pliable")->required();

  // search
  auto* c_search = app.add_subcommand("search", "budget-bounded equivalence search");
  std::string search_a, search_b, search_moveset = "rigid", search_allow, search_witness;
  SearchBudget budget;
  budget.max_crossings = 8;
  budget.max_states = 1000000;
  c_search->add_option("a", search_a)->required();
  c_search->add_option("b", search_b)->required();
  c_search->add_option("--max-crossings", budget.max_crossings)->capture_default_str();
  c_search->add_option("--max-states", budget.max_states)->capture_default_str();
  c_search->add_option("--moveset", search_moveset)->capture_default_str();
  c_search->add_option("--allow", search_allow);
  c_search->add_option("--witness", search_witness, "write the witness JSON to a file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return 0;
    }
    err << "error: " << e.what() << "\n";
    return 1;
  }

  try {
    if (*c_validate) {
      VsgCode code = parse_code(slurp(validate_path));
      ValidationReport rep = validate(code);
      if (format == "json") {
        json j;
        j["ok"] = rep.ok;
        j["violations"] = json::array();
        for (auto& v : rep.violations) j["violations"].push_back({{"rule", v.rule}, {"where", v.where}});
        out << j.dump() << "\n";
      } else {
        out << (rep.ok ? "ok" : "invalid") << "\n";
        for (auto& v : rep.violations) out << v.rule << ": " << v.where << "\n";
      }
      if (!rep.ok) {
        for (auto& v : rep.violations) err << v.rule << ": " << v.where << "\n";
        return 1;
      }
      return 0;
    }

    if (*c_realize) {
      VsgCode code = parse_code(slurp(realize_path));
      PlanarDiagram d = realize(code, realize_variant);
      std::string text = serialize_diagram(d);
      if (!realize_svg.empty()) spill(realize_svg, render_svg(d));
      if (!realize_out.empty())
        spill(realize_out, text + "\n");
      else
        out << text << "\n";
      return 0;
    }

    if (*c_gauss) {
      PlanarDiagram d = parse_diagram(slurp(gauss_path));
      out << canonical_serialize(extract_code(d)) << "\n";
      return 0;
    }

    if (*c_yamada) {
      VsgCode code = parse_code(slurp(yamada_path));
      if (yamada_norm) {
        NormalizedYamada n = yamada_normalized(code, yopts);
        std::string text = n.zero ? "zero" : n.value.to_string();
        if (format == "json")
          out << json{{"normalized", true}, {"zero", n.zero}, {"value", text}}.dump() << "\n";
        else
          out << text << "\n";
      } else {
        LaurentPoly r = yamada(code, yopts);
        if (format == "json")
          out << json{{"normalized", false}, {"value", r.to_string()}}.dump() << "\n";
        else
          out << r.to_string() << "\n";
      }
      return 0;
    }

    if (*c_group) {
      VsgCode code = parse_code(slurp(group_path));
      GroupPresentation p = wirtinger(code);
      if (group_simplify) p = tietze_simplify(p);
      json j;
      j["presentation"] = p.to_text();
      if (format != "json") out << p.to_text();
      if (group_abel) {
        Abelianization ab = abelianization(p);
        j["free_rank"] = ab.free_rank;
        j["torsion"] = ab.torsion;
        if (format != "json") {
          out << "abelianization: free rank " << ab.free_rank;
          if (!ab.torsion.empty()) {
            out << ", torsion";
            for (auto t : ab.torsion) out << " " << t;
          }
          out << "\n";
        }
      }
      if (!group_homs.empty()) {
        FiniteGroupTable g = FiniteGroupTable::from_json(slurp(group_homs));
        long long n = count_homs(p, g);
        j["homs"] = n;
        if (format != "json") out << "homs: " << n << "\n";
      }
      if (format == "json") out << j.dump() << "\n";
      return 0;
    }

    if (*c_quandle) {
      VsgCode code = parse_code(slurp(quandle_path));
      FiniteVQS s = FiniteVQS::from_json(slurp(quandle_structure));
      long long n = count_colorings(code, s, qopts);
      if (format == "json")
        out << json{{"colorings", n}}.dump() << "\n";
      else
        out << n << "\n";
      return 0;
    }

    if (*c_tg) {
      VsgCode code = parse_code(slurp(tg_path));
      TgOptions topts;
      topts.include_empty = !tg_skip_empty;
      topts.distinct = tg_distinct;
      if (tg_linking || tg_bracket) {
        // rows keyed by the enumeration choice index, not the sorted multiset
        auto choices = enumerate_replacements(code);
        out << "choice";
        if (tg_linking) out << "\tcomponents\tlinking_halves";
        if (tg_bracket) out << "\tbracket\tf_poly";
        out << "\n";
        for (size_t i = 0; i < choices.size(); ++i) {
          VirtualLink l = link_of(code, choices[i]);
          if (!topts.include_empty && l.components.empty()) continue;
          out << i;
          if (tg_linking) {
            int n = static_cast<int>(l.components.size());
            std::vector<long long> lks;
            for (int a = 0; a < n; ++a)
              for (int b = a + 1; b < n; ++b) lks.push_back(linking_halves(l, a, b));
            std::sort(lks.begin(), lks.end());
            out << "\t" << n << "\t";
            for (size_t k = 0; k < lks.size(); ++k) {
              if (k) out << ",";
              out << lks[k] << "/2";
            }
          }
          if (tg_bracket)
            out << "\t" << bracket(l).to_string() << "\t" << f_poly(l).to_string();
          out << "\n";
        }
        return 0;
      }
      auto links = tg(code, topts);
      if (format == "json") {
        json arr = json::array();
        for (auto& l : links) arr.push_back(json::parse(l.to_json()));
        out << arr.dump() << "\n";
      } else {
        for (size_t i = 0; i < links.size(); ++i) out << i << "\t" << links[i].to_json() << "\n";
      }
      return 0;
    }

    if (*c_moves) {
      if (*c_moves_list) {
        VsgCode code = parse_code(slurp(ml_path));
        MoveSet ms = parse_moveset(ml_moveset, ml_allow);
        json arr = json::array();
        for (auto& s : enumerate_moves(code, ms, !ml_noins)) arr.push_back(json::parse(s.to_json()));
        out << arr.dump() << "\n";
        return 0;
      }
      if (*c_moves_apply) {
        VsgCode code = parse_code(slurp(ma_path));
        MoveSet ms = parse_moveset(ma_moveset, ma_allow);
        MoveSite site = MoveSite::from_json(ma_site);
        out << canonical_serialize(apply_move(code, site, ms)) << "\n";
        return 0;
      }
      err << "error: moves needs a list or apply subcommand\n";
      return 1;
    }

    if (*c_norm) {
      VsgCode code = parse_code(slurp(norm_path));
      NormalizeLevel level;
      if (norm_level == "viii")
        level = NormalizeLevel::RigidVIII;
      else if (norm_level == "pliable")
        level = NormalizeLevel::PliableAll;
      else
        throw StructureError("--forbidden must be viii or pliable");
      out << canonical_serialize(normalize_forbidden(code, level)) << "\n";
      return 0;
    }

    if (*c_search) {
      VsgCode a = parse_code(slurp(search_a));
      VsgCode b = parse_code(slurp(search_b));
      MoveSet ms = parse_moveset(search_moveset, search_allow);
      SearchVerdict v = search_equivalent(a, b, budget, ms);
      json j;
      j["outcome"] = v.equivalent ? "equivalent" : "exhausted";
      j["states_visited"] = v.states_visited;
      j["max_crossings_reached"] = v.max_crossings_reached;
      if (v.equivalent) j["witness"] = json::parse(witness_to_json(v.witness));
      if (format == "json")
        out << j.dump() << "\n";
      else if (v.equivalent)
        out << "equivalent witness_length=" << v.witness.size()
            << " states=" << v.states_visited << "\n";
      else
        out << "exhausted states=" << v.states_visited << "\n";
      if (v.equivalent && !search_witness.empty())
        spill(search_witness, witness_to_json(v.witness) + "\n");
      return v.equivalent ? 0 : 3;
    }
  } catch (const BudgetError& e) {
    err << "budget error: " << e.what() << "\n";
    return 2;
  } catch (const PolicyError& e) {
    err << "policy error: " << e.what() << "\n";
    return 1;
  } catch (const ValidationError& e) {
    err << "invalid input: " << e.what() << "\n";
    return 1;
  } catch (const StructureError& e) {
    err << "invalid input: " << e.what() << "\n";
    return 1;
  }

  err << "error: no subcommand\n";
  return 1;
}

}  // namespace vsg
