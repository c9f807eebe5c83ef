#pragma once

#include <cstddef>
#include <set>
#include <string>
#include <vector>

#include "pdm/syntax.hpp"

namespace pdm {

struct Literal {
  std::string atom;
  bool positive = true;

  Literal complement() const { return {atom, !positive}; }

  /// Canonical order: by atom name, then ~P before P.
  friend auto operator<=>(const Literal& a, const Literal& b) {
    if (auto c = a.atom <=> b.atom; c != 0) return c;
    return a.positive <=> b.positive;
  }
  friend bool operator==(const Literal&, const Literal&) = default;
};

/// Duplicate-free disjunction of literals kept in canonical order.
class Clause {
 public:
  Clause() = default;
  /// Sorts and deduplicates.
  explicit Clause(std::vector<Literal> literals);

  const std::vector<Literal>& literals() const { return literals_; }
  bool empty() const { return literals_.empty(); }
  std::size_t size() const { return literals_.size(); }

  bool contains(const Literal& lit) const;
  bool is_tautology() const;
  /// Every literal of this clause occurs in `other`.
  bool subsumes(const Clause& other) const;
  /// This clause with `lit` removed.
  Clause without(const Literal& lit) const;
  bool satisfied_by(const Valuation& v) const;

  friend bool operator==(const Clause&, const Clause&) = default;

 private:
  std::vector<Literal> literals_;
};

/// Clausal form of a theory. Contains no tautology and no clause subsumed by
/// another one. `atoms` is the atom set of the source theory, so a valuation
/// total on it is total on the theory as well.
struct ClauseSet {
  std::vector<Clause> clauses;
  std::set<std::string> atoms;
};

inline constexpr std::size_t kDefaultClauseLimit = 4096;

/// NNF followed by distribution; no fresh atoms, so the result is
/// classically equivalent to the theory. Clause order is the order of first
/// appearance during conversion. Throws SizeLimit when an intermediate or
/// final clause list exceeds `clause_limit`.
ClauseSet to_clausal(const Theory& t, std::size_t clause_limit = kDefaultClauseLimit);

/// Disjunction in canonical literal order; the empty clause is false.
Formula clause_to_formula(const Clause& c);
Formula literal_to_formula(const Literal& lit);

std::string format_clause(const Clause& c);

}  // namespace pdm
