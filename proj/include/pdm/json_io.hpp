#pragma once

#include <string>
#include <string_view>

#include "pdm/compile.hpp"
#include "pdm/proofterm.hpp"
#include "pdm/prover.hpp"
#include "pdm/rewrite.hpp"

// JSON readers and writers. Formulas are stored as grammar strings. Writers
// produce deterministic, pretty-printed text; readers throw InvalidInput on
// malformed structure and ParseError on malformed formulas.
namespace pdm::json {

// {"var":n} | {"lam":{"var","ann","body"}} | {"app":[T,T]} | {"pair":[T,T]}
// | {"fst":T} | {"snd":T} | {"inl":{"ann","body"}} | {"inr":{"ann","body"}}
// | {"case":{"scrut":T,"left":{"var","ann","body"},"right":{...}}}
// | {"exfalso":{"ann","body"}}
std::string write_term(const ProofTerm& t);
ProofTerm read_term(std::string_view text);

// [{"var":n,"formula":F}, ...]
std::string write_context(const Context& ctx);
Context read_context(std::string_view text);

/// A proof together with its hypotheses: {"context":[...], "proof":T}.
struct ProofBundle {
  Context context;
  ProofTerm proof;
};
std::string write_bundle(const ProofBundle& b);
/// Also accepts a bare term, read with an empty context.
ProofBundle read_bundle(std::string_view text);

// {rule, conclusion:{left:[F],right:[F]}, principal:{side,index,reduct,...}, premises:[...]}
std::string write_derivation(const Derivation& d);
Derivation read_derivation(std::string_view text);

// Derivation, or {"exhausted":{"frontier":n,"depth_hit":b}}.
std::string write_search_result(const SearchResult& r);
SearchResult read_search_result(std::string_view text);

// {"model":{...}, "atoms":[...], "clauses":[[lit,...]], "rules":{"negative":[...],"positive":[...]},
//  "trace":[{"clause","literal","consumed","polarity","rule"}]}
std::string write_report(const CompileReport& r);
CompileReport read_report(std::string_view text);

// {"disjoint":b, "clashes":[...], "rule_count_neg":n, "rule_count_pos":n}
std::string write_analysis(const DisjointnessReport& r);
DisjointnessReport read_analysis(std::string_view text);

// {"P":true, "Q":false}
std::string write_valuation(const Valuation& v);
Valuation read_valuation(std::string_view text);

// {"steps":n, "normal":T}
std::string write_normalized(const NormalizeResult& r);
NormalizeResult read_normalized(std::string_view text);

// {"provable":b}
std::string write_oracle(bool provable);

// {"formula":F}
std::string write_formula(const Formula& f);

std::string write_verdict(const CheckVerdict& v);
std::string write_verdict(const DerivationVerdict& v);

}  // namespace pdm::json
