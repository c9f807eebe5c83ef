#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "pdm/rewrite.hpp"
#include "pdm/syntax.hpp"

namespace pdm {

enum class RuleKind { Axiom, Cut, ContrL, ContrR, WeakL, WeakR, ImpL, ImpR, AndL, AndR, OrL, OrR, BotL };

const char* rule_name(RuleKind r);
std::optional<RuleKind> rule_from_name(std::string_view name);

enum class Side { None, Left, Right, Both };

/// Principal formula position(s) and the reducts witnessing the rewriting
/// side conditions of a sequent rule.
///
///   Axiom       side Both, index (left), index2 (right), reduct = common reduct
///   BotL        side Left, index, reduct = false
///   ImpL/AndL/OrL, ImpR/AndR/OrR
///               side Left/Right, index, reduct = the reduct of the matching shape
///   ContrL/ContrR
///               side Left/Right, index, reduct = B1, reduct2 = B2
///   WeakL/WeakR side Left/Right, index
///   Cut         side None, reduct = C, cut_left = A, cut_right = B
struct Principal {
  Side side = Side::None;
  std::size_t index = 0;
  std::size_t index2 = 0;
  std::optional<Formula> reduct;
  std::optional<Formula> reduct2;
  std::optional<Formula> cut_left;
  std::optional<Formula> cut_right;

  friend bool operator==(const Principal&, const Principal&) = default;
};

struct Derivation {
  RuleKind rule = RuleKind::Axiom;
  Sequent conclusion;
  Principal principal;
  std::vector<Derivation> premises;

  std::size_t node_count() const;
  /// Nodes on the longest branch; a leaf has height 1.
  std::size_t height() const;
  friend bool operator==(const Derivation&, const Derivation&) = default;
};

struct SearchConfig {
  std::size_t depth = 30;
  RewriteBounds rewrite;
  bool intuitionistic = false;
  bool allow_cut = false;
  /// Total sequents the search may visit before giving up; counts as a
  /// depth hit.
  std::size_t node_budget = 1'000'000;
};

struct Exhausted {
  /// Open branches left when the search gave up.
  std::size_t frontier = 0;
  /// Some branch was cut off by the depth bound rather than saturated.
  bool depth_hit = false;
};

/// Proved(derivation) or Exhausted. Exhausted is not a disproof.
using SearchResult = std::variant<Derivation, Exhausted>;

inline bool proved(const SearchResult& r) { return std::holds_alternative<Derivation>(r); }

/// Backward, cut-free (unless `allow_cut`) proof search.
///
/// Classical mode keeps sequents as growing sets: the principal formula stays
/// in every premise, so each rule is invertible and the search never
/// backtracks. A rule instance is applied only if every premise gains a
/// formula, which rules out repeated sequents on a branch. Compound formulas
/// keep their shape under rewriting, so only atoms are rewritten at the top
/// (following the unique rule chain); inner rewrites are reached when the
/// subformulas become principal.
///
/// Intuitionistic mode keeps at most one formula on the right, backtracks
/// over the non-invertible choices (implication left, disjunction right) and
/// uses the set of sequents on the current branch as loop check.
SearchResult prove(const Sequent& s, const RewriteSystem& sys, const SearchConfig& cfg = {});

struct DerivationVerdict {
  bool ok = true;
  /// Premise indices from the root, e.g. `0/1`; empty for the root.
  std::string path;
  std::string reason;
};

/// Re-validates every node against the sequent rules modulo: arity, the
/// shape of the recorded reducts and their membership in the bounded
/// reachable sets. Logical rules may keep their principal formula and may
/// drop context formulas in the premises (implicit contraction and
/// weakening); contraction and weakening nodes must match exactly as
/// multisets. In intuitionistic mode every sequent has at most one formula
/// on the right.
DerivationVerdict check_derivation(const Derivation& d, const RewriteSystem& sys,
                                   const SearchConfig& cfg = {});

/// Classical decision through the axioms of `sys`: true iff the axioms and
/// the left formulas entail the disjunction of the right formulas (false when
/// empty). Throws TooManyAtoms above the exhaustive bound.
bool oracle_provable(const Sequent& s, const RewriteSystem& sys);

/// True iff |- false is not classically derivable from the axioms of `sys`.
bool consistency_check(const RewriteSystem& sys);

/// Indented text rendering, one node per line.
std::string format_derivation(const Derivation& d);

}  // namespace pdm
