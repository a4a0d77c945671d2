#include "stripconf/serialize.hpp"

#include "stripconf/errors.hpp"

namespace stripconf {

namespace {
const char* kind_name(ComplexKind k) { return k == ComplexKind::ordered ? "cell" : "permutohedron"; }
const char* basis_name(BasisKind k) { return k == BasisKind::AM ? "AM" : "AMW"; }
}  // namespace

Json to_json(const ComplexSpec& spec) {
  return Json{{"kind", kind_name(spec.kind)},
              {"set", format_weighted_set(spec.set)},
              {"width", spec.width},
              {"canonical", spec.canonical()}};
}

Json to_json(const ChainVector& x) {
  Json terms = Json::array();
  for (const auto& [c, q] : x.terms()) terms.push_back(Json{{"cell", format_cell(c)}, {"coefficient", to_string(q)}});
  return Json{{"complex", to_json(x.complex())}, {"degree", x.degree()}, {"terms", terms}};
}

Json to_json(const SpinProgram& program) {
  Json steps = Json::array();
  for (const auto& s : program)
    steps.push_back(Json{{"source", s.source}, {"b", {s.b.label, s.b.weight}}, {"c", {s.c.label, s.c.weight}}});
  return steps;
}

Json to_json(const HomologyProfile& p) {
  return Json{{"complex", to_json(p.complex)},
              {"cells", p.cells},
              {"ranks", p.ranks},
              {"betti", p.betti},
              {"euler_cells", p.euler_cells},
              {"euler_betti", p.euler_betti},
              {"euler_consistent", p.euler_consistent()}};
}

Json to_json(const BasisReport& r) {
  return Json{{"n", r.n},         {"w", r.w},       {"k", r.k},       {"style", basis_name(r.kind)},
              {"count", r.count}, {"betti", r.betti}, {"rank", r.rank}, {"pass", r.passes()}};
}

Json to_json(const GeneratorWord& w, std::size_t d, Weight width) {
  Json j{{"word", format_word(w)}, {"degree", w.degree()}};
  if (d >= 1 && static_cast<Weight>(d) <= width / 2) j["barriers"] = count_barriers(w, d, width);
  return j;
}

Json to_json(const WordCombination& x) {
  Json terms = Json::array();
  for (const auto& [w, q] : x) terms.push_back(Json{{"word", format_word(w)}, {"coefficient", to_string(q)}});
  return Json{{"text", format_combination(x)}, {"terms", terms}};
}

Json to_json(const RelationInstance& r, const RelationCheck& c) {
  Json j{{"family", to_string(r.family)},
         {"width", r.width},
         {"data", r.data},
         {"lhs", format_combination(r.lhs)},
         {"rhs", format_combination(r.rhs)},
         {"boundary", c.boundary},
         {"barriers_kept", c.barriers_kept}};
  if (c.closed_forms) j["closed_forms"] = *c.closed_forms;
  if (r.exchange) j["closed_forms_exact"] = r.exchange->closed_forms_exact();
  return j;
}

Json to_json(const StabilityParams& p) {
  Json j{{"order", p.order}, {p.order == 1 ? "k" : "i", p.index}, {"w", p.width}, {"b", p.b}};
  j["module"] = p.order == 1 ? "FI_" + std::to_string(p.module_width())
                             : "FIW(" + std::to_string(p.order) + ")_" + std::to_string(p.module_width());
  j["generation_degree"] = p.generation_degree;
  return j;
}

Json to_json(const GenerationReport& r) {
  Json bad = Json::array();
  for (const auto& w : r.counterexamples) bad.push_back(format_word(w));
  return Json{{"k", r.k}, {"w", r.w}, {"n", r.n}, {"elements", r.elements}, {"counterexamples", bad}, {"pass", r.passes()}};
}

Json to_json(const DecompositionReport& r) {
  return Json{{"direct", r.direct}, {"summed", r.summed}, {"permutations", r.permutations}, {"pass", r.holds()}};
}

ChainVector chain_from_json(const Json& j) {
  try {
    const auto& cx = j.at("complex");
    auto set = parse_weighted_set(cx.at("set").get<std::string>());
    Weight w = cx.at("width").get<Weight>();
    auto spec = cx.at("kind").get<std::string>() == "cell" ? ComplexSpec::cells(set, w) : ComplexSpec::permutohedron(set, w);
    ChainVector x(spec, j.at("degree").get<std::size_t>());
    for (const auto& t : j.at("terms"))
      x.add(parse_cell(t.at("cell").get<std::string>()), parse_rational(t.at("coefficient").get<std::string>()));
    return x;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("malformed chain JSON: ") + e.what());
  }
}

WordCombination combination_from_json(const Json& j) {
  try {
    WordCombination x;
    for (const auto& t : j.at("terms"))
      add_term(x, parse_word(t.at("word").get<std::string>()), parse_rational(t.at("coefficient").get<std::string>()));
    return x;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("malformed combination JSON: ") + e.what());
  }
}

SpinProgram program_from_json(const Json& j) {
  try {
    SpinProgram out;
    for (const auto& s : j)
      out.push_back(SpinStep{s.at("source").get<Label>(), {s.at("b").at(0).get<Label>(), s.at("b").at(1).get<Weight>()},
                             {s.at("c").at(0).get<Label>(), s.at("c").at(1).get<Weight>()}});
    return out;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("malformed spin program JSON: ") + e.what());
  }
}

}  // namespace stripconf
