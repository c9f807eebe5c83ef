#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pdm/clausal.hpp"
#include "pdm/rewrite.hpp"
#include "pdm/syntax.hpp"

namespace pdm {

/// DPLL with unit propagation. Branches on the first unassigned atom in
/// name order and tries false before true, unless `preferred` names a value
/// for that atom, which is then tried first. Returns a valuation total on
/// `cs.atoms` and on every clause atom, or nullopt when unsatisfiable.
std::optional<Valuation> find_model(const ClauseSet& cs, const Valuation& preferred = {});

struct TraceEntry {
  /// Clause that triggered this step.
  Clause chosen;
  /// First literal of `chosen` that the model satisfies.
  Literal literal;
  /// Every remaining clause containing `literal`, in clause order.
  std::vector<Clause> consumed;
  RewriteRule rule;
  Polarity polarity;
};

struct CompileReport {
  Valuation model;
  ClauseSet clausal;
  RewriteSystem system;
  std::vector<TraceEntry> trace;
};

struct CompileOptions {
  std::size_t clause_limit = kDefaultClauseLimit;
  /// Values tried first by the model search; a seed that is itself a model
  /// is returned unchanged.
  Valuation seed;
};

/// Turns a consistent quantifier-free theory into a polarized rewrite system
/// whose negative and positive left-hand sides are disjoint.
///
/// Repeatedly takes the first remaining clause and its first literal true in
/// the model. For a literal P, all remaining clauses P \/ A_j become
///   P ->+ D_1 \/ ... \/ D_n
/// with D_j the conjunction of the complements of A_j's literals (~false for
/// an empty remainder). For a literal ~P, all remaining clauses ~P \/ A_j
/// become
///   P ->- A_1 /\ ... /\ A_n
/// with A_j read as a disjunction (false for an empty remainder). A positive
/// rule is only ever emitted for an atom true in the model and a negative one
/// for an atom false in it, so the two sides cannot share an atom.
///
/// Throws Inconsistent when the clausal form has no model, SizeLimit from
/// the clausal conversion.
CompileReport compile_theory(const Theory& t, const CompileOptions& opts = {});

/// Checks, by exhaustive truth tables, that the axioms of `sys` and the
/// theory have exactly the same models. Returns a disagreeing valuation over
/// atoms(t) and atoms(sys), or nullopt when equivalent: the lowest model of
/// the theory that falsifies the axioms if there is one, otherwise the lowest
/// model of the axioms that falsifies the theory.
/// Throws TooManyAtoms above the exhaustive bound.
std::optional<Valuation> verify_presentation(const Theory& t, const RewriteSystem& sys);

}  // namespace pdm
