#include "iwb/proof_io.hpp"

#include <fstream>
#include <sstream>

namespace iwb {

namespace {

[[noreturn]] void malformed(const std::string& what) { throw InvalidInput("malformed JSON: " + what); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) malformed(std::string("missing field '") + key + "'");
  return j.at(key);
}

std::string string_field(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_string()) malformed(std::string("field '") + key + "' must be a string");
  return v.get<std::string>();
}

std::vector<int> principal_from(const Json& j) {
  if (!j.contains("principal")) return {};
  const Json& p = j.at("principal");
  if (!p.is_array()) malformed("'principal' must be an array");
  std::vector<int> out;
  for (const auto& x : p) {
    if (!x.is_number_integer()) malformed("principal entries must be integers");
    out.push_back(x.get<int>());
  }
  return out;
}

RuleId rule_from(const Json& j) {
  const std::string name = string_field(j, "rule");
  auto r = rule_from_name(name);
  if (!r) malformed("unknown rule '" + name + "'");
  return *r;
}

const Json& premises_of(const Json& j, RuleId rule) {
  static const Json empty = Json::array();
  const Json& p = j.contains("premises") ? j.at("premises") : empty;
  if (!p.is_array()) malformed("'premises' must be an array");
  const int arity = rule_arity(rule);
  if (arity >= 0 && static_cast<int>(p.size()) != arity)
    malformed("rule " + std::string(rule_name(rule)) + " takes " + std::to_string(arity) + " premises, got " +
              std::to_string(p.size()));
  return p;
}

template <class F>
auto parsed(const std::string& what, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const ParseError& e) {
    malformed(what + ": " + e.what());
  }
}

}  // namespace

Json proof_to_json(const ProofTree& t) {
  Json j{{"sequent", render_sequent(t.conclusion)}, {"rule", rule_name(t.rule)}, {"principal", t.principal}};
  if (!t.premises.empty()) {
    j["premises"] = Json::array();
    for (const auto& p : t.premises) j["premises"].push_back(proof_to_json(p));
  }
  return j;
}

ProofTree proof_from_json(const Json& j) {
  const std::string s = string_field(j, "sequent");
  ProofTree t{parsed("sequent '" + s + "'", [&] { return parse_sequent(s); }), rule_from(j), principal_from(j), {}};
  for (const auto& p : premises_of(j, t.rule)) t.premises.push_back(proof_from_json(p));
  return t;
}

Json split_proof_to_json(const SplitProofTree& t) {
  Json j{{"sequent", render_split_sequent(t.conclusion)}, {"rule", rule_name(t.rule)}, {"principal", t.principal}};
  if (t.interpolant) j["interpolant"] = render_formula(*t.interpolant);
  if (!t.premises.empty()) {
    j["premises"] = Json::array();
    for (const auto& p : t.premises) j["premises"].push_back(split_proof_to_json(p));
  }
  return j;
}

Json labelled_proof_to_json(const LabelledProofTree& t) {
  Json j{{"sequent", render_labelled_sequent(t.conclusion)}, {"rule", rule_name(t.rule)}, {"principal", t.principal}};
  if (t.fresh) j["fresh"] = {t.fresh->at, t.fresh->fresh};
  if (!t.premises.empty()) {
    j["premises"] = Json::array();
    for (const auto& p : t.premises) j["premises"].push_back(labelled_proof_to_json(p));
  }
  return j;
}

LabelledProofTree labelled_proof_from_json(const Json& j) {
  const std::string s = string_field(j, "sequent");
  LabelledProofTree t{parsed("sequent '" + s + "'", [&] { return parse_labelled_sequent(s); }), rule_from(j),
                      principal_from(j), std::nullopt, {}};
  if (j.contains("fresh")) {
    const Json& f = j.at("fresh");
    if (!f.is_array() || f.size() != 2 || !f[0].is_number_integer() || !f[1].is_number_integer())
      malformed("'fresh' must be [at, fresh]");
    t.fresh = FreshLabel{f[0].get<int>(), f[1].get<int>()};
  }
  for (const auto& p : premises_of(j, t.rule)) t.premises.push_back(labelled_proof_from_json(p));
  return t;
}

Json labelled_split_proof_to_json(const LabelledSplitProofTree& t) {
  Json j{{"sequent", render_labelled_sequent(t.conclusion.sequent)},
         {"sides", sides_to_json(t.conclusion.sides)},
         {"rule", rule_name(t.rule)},
         {"principal", t.principal}};
  if (t.fresh) j["fresh"] = {t.fresh->at, t.fresh->fresh};
  if (t.interpolant) j["interpolant"] = render_multiformula(*t.interpolant);
  if (!t.premises.empty()) {
    j["premises"] = Json::array();
    for (const auto& p : t.premises) j["premises"].push_back(labelled_split_proof_to_json(p));
  }
  return j;
}

Json multiformula_to_json(const Multiformula& m) {
  switch (m.kind()) {
    case Multiformula::Kind::Lab: return {{"lab", {m.label(), render_formula(m.formula())}}};
    case Multiformula::Kind::And: return {{"and", {multiformula_to_json(m.lhs()), multiformula_to_json(m.rhs())}}};
    case Multiformula::Kind::Or: return {{"or", {multiformula_to_json(m.lhs()), multiformula_to_json(m.rhs())}}};
  }
  return {};
}

Multiformula multiformula_from_json(const Json& j) {
  if (!j.is_object() || j.size() != 1) malformed("multiformula must be an object with one key");
  const auto& [key, v] = *j.items().begin();
  if (!v.is_array() || v.size() != 2) malformed("multiformula '" + key + "' needs two entries");
  if (key == "lab") {
    if (!v[0].is_number_integer() || !v[1].is_string()) malformed("'lab' needs [label, formula]");
    const std::string f = v[1].get<std::string>();
    return Multiformula::lab(v[0].get<int>(), parsed("formula '" + f + "'", [&] { return parse_formula(f); }));
  }
  if (key == "and") return Multiformula::mand(multiformula_from_json(v[0]), multiformula_from_json(v[1]));
  if (key == "or") return Multiformula::mor(multiformula_from_json(v[0]), multiformula_from_json(v[1]));
  malformed("unknown multiformula connective '" + key + "'");
}

Json countermodel_to_json(const Countermodel& c) {
  Json rel = Json::array();
  Json val = Json::object();
  for (World w = 0; w < c.model.worlds(); ++w) {
    for (World v : c.model.successors[static_cast<std::size_t>(w)]) rel.push_back({w, v});
    val[std::to_string(w)] = c.model.valuation[static_cast<std::size_t>(w)];
  }
  return {{"worlds", c.model.worlds()}, {"relation", rel}, {"valuation", val}, {"refuted_at", c.refuted_at}};
}

Countermodel countermodel_from_json(const Json& j) {
  const Json& n = field(j, "worlds");
  if (!n.is_number_integer() || n.get<int>() < 1) malformed("'worlds' must be a positive integer");
  Countermodel c{KripkeModel(n.get<int>()), 0};
  auto world = [&](const Json& x) {
    if (!x.is_number_integer() || x.get<int>() < 0 || x.get<int>() >= c.model.worlds()) malformed("world out of range");
    return x.get<int>();
  };
  for (const auto& e : field(j, "relation")) {
    if (!e.is_array() || e.size() != 2) malformed("relation entries must be pairs");
    c.model.relate(world(e[0]), world(e[1]));
  }
  for (const auto& [k, atoms] : field(j, "valuation").items()) {
    World w = 0;
    try {
      w = world(Json(std::stoi(k)));
    } catch (const std::logic_error&) {
      malformed("valuation key '" + k + "' is not a world");
    }
    for (const auto& a : atoms) {
      if (!a.is_string()) malformed("valuation atoms must be strings");
      c.model.set_true(w, a.get<std::string>());
    }
  }
  c.refuted_at = world(field(j, "refuted_at"));
  return c;
}

Json verification_to_json(const VerificationReport& r) {
  Json checks = Json::array();
  for (const auto& c : r.checks) {
    Json e{{"name", c.name}, {"status", check_status_name(c.status)}};
    if (!c.detail.empty()) e["detail"] = c.detail;
    checks.push_back(std::move(e));
  }
  return checks;
}

Json classification_to_json(const ClassificationReport& r) {
  Json rules = Json::array();
  for (const auto& v : r.rules) {
    Json e{{"rule", v.rule},
           {"verdict", verdict_name(v.verdict)},
           {"weight_decreasing", v.weight_decreasing},
           {"finitely_many_instances", v.finitely_many_instances}};
    if (!v.reason.empty()) e["reason"] = v.reason;
    if (v.modal) e["modal"] = modal_rule_name(*v.modal);
    rules.push_back(std::move(e));
  }
  return {{"rules", rules},
          {"semi_analytic", r.semi_analytic},
          {"single_conclusion", r.single_conclusion},
          {"allowed_modal_set", r.allowed_modal_set},
          {"fully_terminating_sufficient", r.fully_terminating_sufficient},
          {"implied", {{"cip", r.implied.cip}, {"uip", r.implied.uip}}},
          {"caveat", r.caveat}};
}

std::string_view mode_name(InterpolationMode m) noexcept { return m == InterpolationMode::Craig ? "craig" : "lyndon"; }

InterpolationMode parse_mode(std::string_view text) {
  if (text == "craig") return InterpolationMode::Craig;
  if (text == "lyndon") return InterpolationMode::Lyndon;
  throw InvalidInput("unknown interpolation mode '" + std::string(text) + "' (expected craig or lyndon)");
}

Json sides_to_json(const SideAssignment& s) {
  auto letters = [](const std::vector<Side>& v) {
    Json a = Json::array();
    for (Side x : v) a.push_back(std::string(1, side_letter(x)));
    return a;
  };
  return {{"ant", letters(s.ant)}, {"suc", letters(s.suc)}};
}

SideAssignment sides_from_json(const Json& j) {
  auto read = [&](const char* key) {
    std::vector<Side> out;
    const Json& v = field(j, key);
    if (!v.is_array()) malformed(std::string("'") + key + "' must be an array");
    for (const auto& x : v) {
      if (x == "L")
        out.push_back(Side::Left);
      else if (x == "R")
        out.push_back(Side::Right);
      else
        malformed("sides must be \"L\" or \"R\"");
    }
    return out;
  };
  return {read("ant"), read("suc")};
}

Json fixture_to_json(const Fixture& f) {
  Json j{{"name", f.name}, {"mode", mode_name(f.mode)}};
  if (const auto* u = std::get_if<UnlabelledFixture>(&f.body)) {
    j["kind"] = "split_proof";
    j["calculus"] = calculus_name(u->calculus);
    j["sides"] = sides_to_json(u->root_sides);
    j["proof"] = proof_to_json(u->proof);
  } else {
    const auto& l = std::get<LabelledFixture>(f.body);
    j["kind"] = "labelled_split_proof";
    j["frames"] = render_frame_conditions(l.frames);
    j["sides"] = sides_to_json(l.root_sides);
    j["proof"] = labelled_proof_to_json(l.proof);
  }
  if (f.expected) j["expected"] = *f.expected;
  if (f.expected_form) j["expected_form"] = *f.expected_form;
  return j;
}

Fixture fixture_from_json(const Json& j) try {
  Fixture f;
  f.name = j.contains("name") ? string_field(j, "name") : "";
  f.mode = j.contains("mode") ? parse_mode(string_field(j, "mode")) : InterpolationMode::Craig;
  const std::string kind = string_field(j, "kind");
  if (kind == "split_proof") {
    f.body = UnlabelledFixture{parse_calculus(string_field(j, "calculus")), sides_from_json(field(j, "sides")),
                               proof_from_json(field(j, "proof"))};
  } else if (kind == "labelled_split_proof") {
    f.body = LabelledFixture{parse_frame_conditions(string_field(j, "frames")), sides_from_json(field(j, "sides")),
                             labelled_proof_from_json(field(j, "proof"))};
  } else {
    malformed("unknown fixture kind '" + kind + "'");
  }
  if (j.contains("expected")) f.expected = string_field(j, "expected");
  if (j.contains("expected_form")) f.expected_form = string_field(j, "expected_form");
  return f;
} catch (const Json::exception& e) {
  malformed(e.what());
}

Json parse_json(std::string_view text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw InvalidInput(std::string("invalid JSON: ") + e.what());
  }
}

Fixture load_fixture(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return fixture_from_json(parse_json(ss.str()));
}

}  // namespace iwb
