#include "pdm/clausal.hpp"

#include <algorithm>

#include "pdm/error.hpp"

namespace pdm {

Clause::Clause(std::vector<Literal> literals) : literals_(std::move(literals)) {
  std::sort(literals_.begin(), literals_.end());
  literals_.erase(std::unique(literals_.begin(), literals_.end()), literals_.end());
}

bool Clause::contains(const Literal& lit) const {
  return std::binary_search(literals_.begin(), literals_.end(), lit);
}

bool Clause::is_tautology() const {
  // Complementary literals are adjacent in canonical order.
  for (std::size_t i = 1; i < literals_.size(); ++i) {
    if (literals_[i - 1].atom == literals_[i].atom) return true;
  }
  return false;
}

bool Clause::subsumes(const Clause& other) const {
  return std::includes(other.literals_.begin(), other.literals_.end(), literals_.begin(),
                       literals_.end());
}

Clause Clause::without(const Literal& lit) const {
  Clause out;
  for (const auto& l : literals_) {
    if (!(l == lit)) out.literals_.push_back(l);
  }
  return out;
}

bool Clause::satisfied_by(const Valuation& v) const {
  for (const auto& lit : literals_) {
    auto it = v.find(lit.atom);
    if (it == v.end()) throw MissingAtom(lit.atom);
    if (it->second == lit.positive) return true;
  }
  return false;
}

namespace {

// A CNF under construction: no clauses is truth, one empty clause is falsum.
using Cnf = std::vector<Clause>;

class Converter {
 public:
  explicit Converter(std::size_t limit) : limit_(limit) {}

  // CNF of `f` when `positive`, of ~f otherwise. Negation is pushed to the
  // atoms on the fly, which is the NNF pass fused with distribution.
  Cnf convert(const Formula& f, bool positive) {
    switch (f.kind()) {
      case Formula::Kind::Atom:
        return {Clause({Literal{f.name(), positive}})};
      case Formula::Kind::Falsum:
        return positive ? Cnf{Clause()} : Cnf{};
      case Formula::Kind::And:
        return positive ? both(convert(f.lhs(), true), convert(f.rhs(), true))
                        : either(convert(f.lhs(), false), convert(f.rhs(), false));
      case Formula::Kind::Or:
        return positive ? either(convert(f.lhs(), true), convert(f.rhs(), true))
                        : both(convert(f.lhs(), false), convert(f.rhs(), false));
      case Formula::Kind::Implies:
        return positive ? either(convert(f.lhs(), false), convert(f.rhs(), true))
                        : both(convert(f.lhs(), true), convert(f.rhs(), false));
    }
    return {};
  }

  Cnf both(Cnf a, Cnf b) {
    a.insert(a.end(), std::make_move_iterator(b.begin()), std::make_move_iterator(b.end()));
    check(a.size());
    return a;
  }

  Cnf either(const Cnf& a, const Cnf& b) {
    Cnf out;
    for (const auto& ca : a) {
      for (const auto& cb : b) {
        std::vector<Literal> lits = ca.literals();
        lits.insert(lits.end(), cb.literals().begin(), cb.literals().end());
        Clause c(std::move(lits));
        if (c.is_tautology()) continue;
        out.push_back(std::move(c));
        check(out.size());
      }
    }
    return out;
  }

 private:
  void check(std::size_t n) const {
    if (n > limit_) throw SizeLimit(limit_);
  }

  std::size_t limit_;
};

}  // namespace

ClauseSet to_clausal(const Theory& t, std::size_t clause_limit) {
  Converter conv(clause_limit);
  std::vector<Clause> raw;
  for (const auto& axiom : t.axioms) {
    Cnf part = conv.convert(axiom, true);
    raw.insert(raw.end(), part.begin(), part.end());
    if (raw.size() > clause_limit) throw SizeLimit(clause_limit);
  }

  // Keep a clause unless a strictly smaller clause, or an identical earlier
  // one, subsumes it.
  ClauseSet out;
  out.atoms = atoms(t);
  for (std::size_t i = 0; i < raw.size(); ++i) {
    if (raw[i].is_tautology()) continue;
    bool keep = true;
    for (std::size_t j = 0; j < raw.size() && keep; ++j) {
      if (i == j || raw[j].is_tautology()) continue;
      if (!raw[j].subsumes(raw[i])) continue;
      if (raw[j].size() < raw[i].size() || j < i) keep = false;
    }
    if (keep) out.clauses.push_back(raw[i]);
  }
  return out;
}

Formula literal_to_formula(const Literal& lit) {
  Formula a = Formula::atom(lit.atom);
  return lit.positive ? a : Formula::neg(std::move(a));
}

Formula clause_to_formula(const Clause& c) {
  std::vector<Formula> parts;
  for (const auto& lit : c.literals()) parts.push_back(literal_to_formula(lit));
  return disjunction(parts);
}

std::string format_clause(const Clause& c) {
  if (c.empty()) return "false";
  return format_formula(clause_to_formula(c));
}

}  // namespace pdm
