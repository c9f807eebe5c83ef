#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace pdm {

/// Propositional formula over atoms, falsum, implication, conjunction and
/// disjunction. Negation is not a constructor: ~A is Implies(A, Falsum).
///
/// Formulas are immutable trees with shared structure, so copies are cheap
/// and values may be shared freely between threads. Ordering is structural:
/// size first, then connective, then atom name, then children left to right.
class Formula {
 public:
  enum class Kind : std::uint8_t { Atom, Falsum, Implies, And, Or };

  /// Default-constructed formula is Falsum.
  Formula();

  static Formula atom(std::string name);
  static Formula falsum();
  static Formula implies(Formula lhs, Formula rhs);
  static Formula conj(Formula lhs, Formula rhs);
  static Formula disj(Formula lhs, Formula rhs);
  static Formula neg(Formula body) { return implies(std::move(body), falsum()); }
  /// Truth is not primitive; it is written ~false.
  static Formula top() { return neg(falsum()); }

  Kind kind() const { return node_->kind; }
  bool is_atom() const { return kind() == Kind::Atom; }
  bool is_falsum() const { return kind() == Kind::Falsum; }
  bool is_binary() const { return kind() >= Kind::Implies; }
  /// Implies(X, Falsum).
  bool is_negation() const { return kind() == Kind::Implies && rhs().is_falsum(); }

  /// Atom name; empty for every other kind.
  const std::string& name() const { return node_->name; }
  const Formula& lhs() const { return node_->children->first; }
  const Formula& rhs() const { return node_->children->second; }

  /// Number of nodes in the tree.
  std::size_t size() const { return node_->size; }
  /// Connective nesting depth; atoms and falsum have depth 0.
  std::size_t depth() const { return node_->depth; }
  std::size_t hash() const { return node_->hash; }

  friend bool operator==(const Formula& a, const Formula& b);
  friend std::strong_ordering operator<=>(const Formula& a, const Formula& b);

 private:
  struct Node {
    Kind kind;
    std::string name;
    std::unique_ptr<std::pair<Formula, Formula>> children;
    std::size_t size;
    std::size_t depth;
    std::size_t hash;
  };

  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  static Formula binary(Kind kind, Formula lhs, Formula rhs);

  std::shared_ptr<const Node> node_;
};

struct FormulaHash {
  std::size_t operator()(const Formula& f) const { return f.hash(); }
};

/// True iff `name` matches [A-Za-z_][A-Za-z0-9_']* and is not the keyword `false`.
bool is_identifier(std::string_view name);

/// Parses the ASCII grammar: `false`, `~`, `/\`, `\/`, `->`, parentheses.
/// Precedence ~ > /\ > \/ > ->; `->` is right-associative, the others left.
/// Throws ParseError with the byte offset of the offending token.
Formula parse_formula(std::string_view text);

/// Prints with minimal parentheses; Implies(X, Falsum) prints as ~X.
std::string format_formula(const Formula& f);

/// Total assignment of truth values on a finite atom set.
using Valuation = std::map<std::string, bool>;

/// Classical truth-table semantics. Throws MissingAtom when `v` is not total
/// on the atoms of `f`.
bool eval(const Formula& f, const Valuation& v);

std::set<std::string> atoms(const Formula& f);

/// Axioms in input order.
struct Theory {
  std::vector<Formula> axioms;
};

std::set<std::string> atoms(const Theory& t);

/// Conjunction of the axioms (empty theory is ~false).
Formula conjunction(const std::vector<Formula>& fs);
/// Disjunction of the formulas (empty list is false).
Formula disjunction(const std::vector<Formula>& fs);

/// Theory file: one axiom per line, `#` starts a comment, blank lines skipped.
/// Parse errors report the offset within the whole text.
Theory parse_theory(std::string_view text);
std::string format_theory(const Theory& t);

/// Sequent `Gamma |- Delta` with comma-separated formulas on either side.
struct Sequent {
  std::vector<Formula> left;
  std::vector<Formula> right;

  friend bool operator==(const Sequent&, const Sequent&) = default;
};

Sequent parse_sequent(std::string_view text);
std::string format_sequent(const Sequent& s);

}  // namespace pdm

template <>
struct std::hash<pdm::Formula> {
  std::size_t operator()(const pdm::Formula& f) const { return f.hash(); }
};
