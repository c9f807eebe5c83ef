#include "pdm/json_io.hpp"

#include "json.hpp"
#include "pdm/error.hpp"

namespace pdm::json {

namespace {

using nlohmann::ordered_json;
using Json = ordered_json;

constexpr int kIndent = 2;

std::string dump(const Json& j) { return j.dump(kIndent) + "\n"; }

Json parse(std::string_view text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InvalidInput(std::string("malformed JSON: ") + e.what());
  }
}

[[noreturn]] void bad(const std::string& what) { throw InvalidInput("malformed JSON: " + what); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) bad(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

std::string string_of(const Json& j, const char* what) {
  if (!j.is_string()) bad(std::string(what) + " must be a string");
  return j.get<std::string>();
}

std::size_t index_of(const Json& j, const char* what) {
  if (!j.is_number_unsigned()) bad(std::string(what) + " must be a non-negative integer");
  return j.get<std::size_t>();
}

bool bool_of(const Json& j, const char* what) {
  if (!j.is_boolean()) bad(std::string(what) + " must be a boolean");
  return j.get<bool>();
}

const Json& array_of(const Json& j, const char* what) {
  if (!j.is_array()) bad(std::string(what) + " must be an array");
  return j;
}

Formula formula_of(const Json& j) { return parse_formula(string_of(j, "formula")); }

Json formulas(const std::vector<Formula>& fs) {
  Json out = Json::array();
  for (const auto& f : fs) out.push_back(format_formula(f));
  return out;
}

std::vector<Formula> formulas_of(const Json& j) {
  std::vector<Formula> out;
  for (const auto& f : array_of(j, "formula list")) out.push_back(formula_of(f));
  return out;
}

// Terms.

Json term_json(const ProofTerm& t) {
  using K = ProofTerm::Kind;
  auto binder = [](const std::string& var, const Formula& ann, const ProofTerm& body) {
    return Json{{"var", var}, {"ann", format_formula(ann)}, {"body", term_json(body)}};
  };
  auto annotated = [](const Formula& ann, const ProofTerm& body) {
    return Json{{"ann", format_formula(ann)}, {"body", term_json(body)}};
  };
  switch (t.kind()) {
    case K::Var:
      return Json{{"var", t.name()}};
    case K::Lam:
      return Json{{"lam", binder(t.name(), t.ann(), t.child(0))}};
    case K::App:
      return Json{{"app", Json::array({term_json(t.child(0)), term_json(t.child(1))})}};
    case K::Pair:
      return Json{{"pair", Json::array({term_json(t.child(0)), term_json(t.child(1))})}};
    case K::Fst:
      return Json{{"fst", term_json(t.child(0))}};
    case K::Snd:
      return Json{{"snd", term_json(t.child(0))}};
    case K::Inl:
      return Json{{"inl", annotated(t.ann(), t.child(0))}};
    case K::Inr:
      return Json{{"inr", annotated(t.ann(), t.child(0))}};
    case K::Case:
      return Json{{"case",
                   {{"scrut", term_json(t.child(0))},
                    {"left", binder(t.name(), t.ann(), t.child(1))},
                    {"right", binder(t.name2(), t.ann2(), t.child(2))}}}};
    case K::ExFalso:
      return Json{{"exfalso", annotated(t.ann(), t.child(0))}};
  }
  return {};
}

ProofTerm term_of(const Json& j) {
  if (!j.is_object() || j.size() != 1) bad("a proof term is an object with exactly one key");
  const auto& [key, v] = *j.items().begin();
  auto pair_of = [&]() -> std::pair<ProofTerm, ProofTerm> {
    if (!v.is_array() || v.size() != 2) bad("\"" + key + "\" takes two terms");
    return {term_of(v[0]), term_of(v[1])};
  };
  if (key == "var") return ProofTerm::var(string_of(v, "variable"));
  if (key == "lam") {
    return ProofTerm::lam(string_of(field(v, "var"), "variable"), formula_of(field(v, "ann")),
                          term_of(field(v, "body")));
  }
  if (key == "app") {
    auto [f, a] = pair_of();
    return ProofTerm::app(f, a);
  }
  if (key == "pair") {
    auto [a, b] = pair_of();
    return ProofTerm::pair(a, b);
  }
  if (key == "fst") return ProofTerm::fst(term_of(v));
  if (key == "snd") return ProofTerm::snd(term_of(v));
  if (key == "inl") return ProofTerm::inl(formula_of(field(v, "ann")), term_of(field(v, "body")));
  if (key == "inr") return ProofTerm::inr(formula_of(field(v, "ann")), term_of(field(v, "body")));
  if (key == "exfalso") return ProofTerm::ex_falso(formula_of(field(v, "ann")), term_of(field(v, "body")));
  if (key == "case") {
    const Json& l = field(v, "left");
    const Json& r = field(v, "right");
    return ProofTerm::case_of(term_of(field(v, "scrut")), string_of(field(l, "var"), "variable"),
                              formula_of(field(l, "ann")), term_of(field(l, "body")),
                              string_of(field(r, "var"), "variable"), formula_of(field(r, "ann")),
                              term_of(field(r, "body")));
  }
  bad("unknown proof term constructor \"" + key + "\"");
}

Json context_json(const Context& ctx) {
  Json out = Json::array();
  for (const auto& [var, f] : ctx.entries) out.push_back({{"var", var}, {"formula", format_formula(f)}});
  return out;
}

Context context_of(const Json& j) {
  Context ctx;
  for (const auto& e : array_of(j, "context")) {
    ctx.entries.emplace_back(string_of(field(e, "var"), "variable"), formula_of(field(e, "formula")));
  }
  return ctx;
}

// Derivations.

const char* side_name(Side s) {
  switch (s) {
    case Side::Left:
      return "left";
    case Side::Right:
      return "right";
    case Side::Both:
      return "both";
    default:
      return "none";
  }
}

Side side_of(const std::string& s) {
  if (s == "left") return Side::Left;
  if (s == "right") return Side::Right;
  if (s == "both") return Side::Both;
  if (s == "none") return Side::None;
  bad("unknown side \"" + s + "\"");
}

Json sequent_json(const Sequent& s) { return Json{{"left", formulas(s.left)}, {"right", formulas(s.right)}}; }

Sequent sequent_of(const Json& j) { return Sequent{formulas_of(field(j, "left")), formulas_of(field(j, "right"))}; }

Json derivation_json(const Derivation& d) {
  const Principal& p = d.principal;
  Json principal{{"side", side_name(p.side)}, {"index", p.index}};
  if (d.rule == RuleKind::Axiom) principal["index2"] = p.index2;
  if (p.reduct) principal["reduct"] = format_formula(*p.reduct);
  if (p.reduct2) principal["reduct2"] = format_formula(*p.reduct2);
  if (p.cut_left) principal["cut_left"] = format_formula(*p.cut_left);
  if (p.cut_right) principal["cut_right"] = format_formula(*p.cut_right);
  Json premises = Json::array();
  for (const auto& sub : d.premises) premises.push_back(derivation_json(sub));
  return Json{{"rule", rule_name(d.rule)},
              {"conclusion", sequent_json(d.conclusion)},
              {"principal", principal},
              {"premises", premises}};
}

Derivation derivation_of(const Json& j) {
  Derivation d;
  auto rule = rule_from_name(string_of(field(j, "rule"), "rule"));
  if (!rule) bad("unknown rule \"" + j.at("rule").get<std::string>() + "\"");
  d.rule = *rule;
  d.conclusion = sequent_of(field(j, "conclusion"));
  const Json& p = field(j, "principal");
  d.principal.side = side_of(string_of(field(p, "side"), "side"));
  d.principal.index = index_of(field(p, "index"), "index");
  if (p.contains("index2")) d.principal.index2 = index_of(p.at("index2"), "index2");
  if (p.contains("reduct")) d.principal.reduct = formula_of(p.at("reduct"));
  if (p.contains("reduct2")) d.principal.reduct2 = formula_of(p.at("reduct2"));
  if (p.contains("cut_left")) d.principal.cut_left = formula_of(p.at("cut_left"));
  if (p.contains("cut_right")) d.principal.cut_right = formula_of(p.at("cut_right"));
  for (const auto& sub : array_of(field(j, "premises"), "premises")) d.premises.push_back(derivation_of(sub));
  return d;
}

// Compile reports.

Json clause_json(const Clause& c) {
  Json out = Json::array();
  for (const auto& lit : c.literals()) out.push_back((lit.positive ? "" : "~") + lit.atom);
  return out;
}

Clause clause_of(const Json& j) {
  std::vector<Literal> lits;
  for (const auto& l : array_of(j, "clause")) {
    std::string s = string_of(l, "literal");
    bool positive = s.empty() || s[0] != '~';
    std::string atom = positive ? s : s.substr(1);
    if (!is_identifier(atom)) bad("bad literal \"" + s + "\"");
    lits.push_back({atom, positive});
  }
  return Clause(std::move(lits));
}

Json rule_json(const RewriteRule& r) { return Json{{"lhs", r.lhs}, {"rhs", format_formula(r.rhs)}}; }

RewriteRule rule_of(const Json& j) {
  return RewriteRule{string_of(field(j, "lhs"), "lhs"), formula_of(field(j, "rhs"))};
}

const char* polarity_name(Polarity p) { return p == Polarity::Negative ? "negative" : "positive"; }

Polarity polarity_of(const Json& j) {
  std::string s = string_of(j, "polarity");
  if (s == "negative") return Polarity::Negative;
  if (s == "positive") return Polarity::Positive;
  bad("unknown polarity \"" + s + "\"");
}

Json rules_json(const RewriteSystem& sys) {
  Json out = Json::object();
  for (Polarity pol : {Polarity::Negative, Polarity::Positive}) {
    Json list = Json::array();
    for (const auto& r : sys.rules(pol)) list.push_back(rule_json(r));
    out[polarity_name(pol)] = list;
  }
  return out;
}

RewriteSystem rules_of(const Json& j) {
  RewriteSystem sys;
  for (Polarity pol : {Polarity::Negative, Polarity::Positive}) {
    for (const auto& r : array_of(field(j, polarity_name(pol)), "rules")) {
      auto rule = rule_of(r);
      sys.add(pol, rule.lhs, rule.rhs);
    }
  }
  return sys;
}

Json valuation_json(const Valuation& v) {
  Json out = Json::object();
  for (const auto& [atom, value] : v) out[atom] = value;
  return out;
}

Valuation valuation_of(const Json& j) {
  if (!j.is_object()) bad("a valuation is an object of booleans");
  Valuation v;
  for (const auto& [atom, value] : j.items()) {
    if (!is_identifier(atom)) bad("bad atom \"" + atom + "\"");
    v[atom] = bool_of(value, "truth value");
  }
  return v;
}

}  // namespace

std::string write_term(const ProofTerm& t) { return dump(term_json(t)); }
ProofTerm read_term(std::string_view text) { return term_of(parse(text)); }

std::string write_context(const Context& ctx) { return dump(context_json(ctx)); }
Context read_context(std::string_view text) { return context_of(parse(text)); }

std::string write_bundle(const ProofBundle& b) {
  return dump(Json{{"context", context_json(b.context)}, {"proof", term_json(b.proof)}});
}

ProofBundle read_bundle(std::string_view text) {
  Json j = parse(text);
  if (j.is_object() && j.contains("proof")) {
    Context ctx = j.contains("context") ? context_of(j.at("context")) : Context{};
    return {ctx, term_of(j.at("proof"))};
  }
  return {Context{}, term_of(j)};
}

std::string write_derivation(const Derivation& d) { return dump(derivation_json(d)); }
Derivation read_derivation(std::string_view text) { return derivation_of(parse(text)); }

std::string write_search_result(const SearchResult& r) {
  if (const auto* d = std::get_if<Derivation>(&r)) return write_derivation(*d);
  const auto& e = std::get<Exhausted>(r);
  return dump(Json{{"exhausted", {{"frontier", e.frontier}, {"depth_hit", e.depth_hit}}}});
}

SearchResult read_search_result(std::string_view text) {
  Json j = parse(text);
  if (j.is_object() && j.contains("exhausted")) {
    const Json& e = j.at("exhausted");
    return Exhausted{index_of(field(e, "frontier"), "frontier"), bool_of(field(e, "depth_hit"), "depth_hit")};
  }
  return derivation_of(j);
}

std::string write_report(const CompileReport& r) {
  Json atoms = Json::array();
  for (const auto& a : r.clausal.atoms) atoms.push_back(a);
  Json clauses = Json::array();
  for (const auto& c : r.clausal.clauses) clauses.push_back(clause_json(c));
  Json trace = Json::array();
  for (const auto& t : r.trace) {
    Json consumed = Json::array();
    for (const auto& c : t.consumed) consumed.push_back(clause_json(c));
    trace.push_back({{"clause", clause_json(t.chosen)},
                     {"literal", (t.literal.positive ? "" : "~") + t.literal.atom},
                     {"consumed", consumed},
                     {"polarity", polarity_name(t.polarity)},
                     {"rule", rule_json(t.rule)}});
  }
  return dump(Json{{"model", valuation_json(r.model)},
                   {"atoms", atoms},
                   {"clauses", clauses},
                   {"rules", rules_json(r.system)},
                   {"trace", trace}});
}

CompileReport read_report(std::string_view text) {
  Json j = parse(text);
  CompileReport r;
  r.model = valuation_of(field(j, "model"));
  for (const auto& a : array_of(field(j, "atoms"), "atoms")) r.clausal.atoms.insert(string_of(a, "atom"));
  for (const auto& c : array_of(field(j, "clauses"), "clauses")) r.clausal.clauses.push_back(clause_of(c));
  r.system = rules_of(field(j, "rules"));
  for (const auto& t : array_of(field(j, "trace"), "trace")) {
    TraceEntry e;
    e.chosen = clause_of(field(t, "clause"));
    Clause lit = clause_of(Json::array({field(t, "literal")}));
    e.literal = lit.literals().front();
    for (const auto& c : array_of(field(t, "consumed"), "consumed")) e.consumed.push_back(clause_of(c));
    e.polarity = polarity_of(field(t, "polarity"));
    e.rule = rule_of(field(t, "rule"));
    r.trace.push_back(std::move(e));
  }
  return r;
}

std::string write_analysis(const DisjointnessReport& r) {
  return dump(Json{{"disjoint", r.disjoint},
                   {"clashes", r.clashes},
                   {"rule_count_neg", r.rule_count_neg},
                   {"rule_count_pos", r.rule_count_pos}});
}

DisjointnessReport read_analysis(std::string_view text) {
  Json j = parse(text);
  DisjointnessReport r;
  r.disjoint = bool_of(field(j, "disjoint"), "disjoint");
  for (const auto& c : array_of(field(j, "clashes"), "clashes")) r.clashes.push_back(string_of(c, "atom"));
  r.rule_count_neg = index_of(field(j, "rule_count_neg"), "rule_count_neg");
  r.rule_count_pos = index_of(field(j, "rule_count_pos"), "rule_count_pos");
  return r;
}

std::string write_valuation(const Valuation& v) { return dump(valuation_json(v)); }
Valuation read_valuation(std::string_view text) { return valuation_of(parse(text)); }

std::string write_normalized(const NormalizeResult& r) {
  return dump(Json{{"steps", r.steps}, {"normal", term_json(r.normal)}});
}

NormalizeResult read_normalized(std::string_view text) {
  Json j = parse(text);
  return {term_of(field(j, "normal")), index_of(field(j, "steps"), "steps")};
}

std::string write_oracle(bool provable) { return dump(Json{{"provable", provable}}); }

std::string write_formula(const Formula& f) { return dump(Json{{"formula", format_formula(f)}}); }

std::string write_verdict(const CheckVerdict& v) {
  const char* status = v.status == CheckStatus::Ok ? "ok" : v.status == CheckStatus::Fail ? "fail" : "inconclusive";
  Json j{{"status", status}};
  if (!v.ok()) {
    j["path"] = v.path;
    j["reason"] = v.reason;
  }
  return dump(j);
}

std::string write_verdict(const DerivationVerdict& v) {
  Json j{{"status", v.ok ? "ok" : "fail"}};
  if (!v.ok) {
    j["path"] = v.path;
    j["reason"] = v.reason;
  }
  return dump(j);
}

}  // namespace pdm::json
