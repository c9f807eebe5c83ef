#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "pdm/syntax.hpp"

namespace pdm {

enum class Polarity { Negative, Positive };

constexpr Polarity flip(Polarity p) {
  return p == Polarity::Negative ? Polarity::Positive : Polarity::Negative;
}

/// P -> A with P atomic.
struct RewriteRule {
  std::string lhs;
  Formula rhs;

  friend bool operator==(const RewriteRule&, const RewriteRule&) = default;
};

/// A pair of rule lists <R-, R+>. At most one rule per (atom, polarity);
/// `add` rejects a second one with InvalidInput.
class RewriteSystem {
 public:
  RewriteSystem() = default;

  void add(Polarity pol, std::string lhs, Formula rhs);

  const std::vector<RewriteRule>& rules(Polarity pol) const {
    return pol == Polarity::Negative ? negative_ : positive_;
  }
  const std::vector<RewriteRule>& negative() const { return negative_; }
  const std::vector<RewriteRule>& positive() const { return positive_; }

  /// Right-hand side of the rule for `atom` at `pol`, or nullptr.
  const Formula* lookup(const std::string& atom, Polarity pol) const;

  bool empty() const { return negative_.empty() && positive_.empty(); }
  std::set<std::string> atoms() const;

  /// <R+, R->: negative and positive rules exchanged.
  RewriteSystem swapped() const;

  friend bool operator==(const RewriteSystem& a, const RewriteSystem& b) {
    return a.negative_ == b.negative_ && a.positive_ == b.positive_;
  }

 private:
  std::vector<RewriteRule> negative_;
  std::vector<RewriteRule> positive_;
};

/// Rules file: `P ->- F` (negative) and `P ->+ F` (positive) lines, `#`
/// comments, blank lines ignored.
RewriteSystem parse_rules(std::string_view text);
/// Negative rules first, each list in system order.
std::string format_rules(const RewriteSystem& sys);
std::string format_rule(const RewriteRule& rule, Polarity pol);

struct RewriteBounds {
  std::size_t depth = 12;
  std::size_t cap = 512;
};

/// All formulas reachable from `f` in exactly one step at polarity `pol`.
/// A redex is an atom occurrence; the polarity flips under the left argument
/// of an implication and is kept everywhere else.
std::set<Formula> one_step(const Formula& f, Polarity pol, const RewriteSystem& sys);

/// Bounded reflexive-transitive closure, in BFS discovery order.
struct ReachSet {
  std::vector<Formula> items;
  /// The set would have exceeded the cap; `items` is a partial set.
  bool cap_exceeded = false;
  /// Some formula at the depth horizon still had unexplored successors.
  bool depth_exhausted = false;

  bool complete() const { return !cap_exceeded && !depth_exhausted; }
  bool contains(const Formula& f) const;
};

ReachSet reachable(const Formula& f, Polarity pol, const RewriteSystem& sys,
                   RewriteBounds bounds = {});

/// Formulas that reach `f` in exactly one step at polarity `pol`.
std::set<Formula> one_step_back(const Formula& f, Polarity pol, const RewriteSystem& sys);

/// Bounded closure of `one_step_back`: formulas that reach `f`.
ReachSet ancestors(const Formula& f, Polarity pol, const RewriteSystem& sys, RewriteBounds bounds = {});

enum class JoinStatus { Found, Absent, Inconclusive };

struct JoinResult {
  JoinStatus status = JoinStatus::Absent;
  /// Set when status is Found: smallest common reduct, ties broken by
  /// printed form.
  std::optional<Formula> witness;
};

/// Some C with a ->- C <-+ b.
JoinResult joinable(const Formula& a, const Formula& b, const RewriteSystem& sys,
                    RewriteBounds bounds = {});

/// Memoizes `reachable` for one system and one set of bounds. Not
/// thread-safe; give each thread its own instance.
class ReachCache {
 public:
  ReachCache(const RewriteSystem& sys, RewriteBounds bounds) : sys_(&sys), bounds_(bounds) {}

  const ReachSet& reach(const Formula& f, Polarity pol);
  JoinResult join(const Formula& a, const Formula& b);

  const RewriteSystem& system() const { return *sys_; }
  RewriteBounds bounds() const { return bounds_; }
  /// Total size of the formulas held across all memoized sets.
  std::size_t stored() const { return stored_; }

 private:
  const RewriteSystem* sys_;
  RewriteBounds bounds_;
  std::size_t stored_ = 0;
  std::unordered_map<Formula, std::unique_ptr<ReachSet>, FormulaHash> neg_;
  std::unordered_map<Formula, std::unique_ptr<ReachSet>, FormulaHash> pos_;
};

struct DisjointnessReport {
  bool disjoint = true;
  /// Atoms with both a negative and a positive rule, sorted.
  std::vector<std::string> clashes;
  std::size_t rule_count_neg = 0;
  std::size_t rule_count_pos = 0;
};

/// Disjoint left-hand sides imply that ->- and ->+ commute: all redexes are
/// atoms, so two distinct redexes never overlap.
DisjointnessReport check_disjoint(const RewriteSystem& sys);

/// P => A for each negative rule P -> A, then A => P for each positive one.
Theory rules_to_axioms(const RewriteSystem& sys);

/// Light double negation A'' (atoms and false unchanged at the top, every
/// strict subformula wrapped by the primed translation).
Formula light_dneg(const Formula& f);

}  // namespace pdm
