#include "pdm/compile.hpp"

#include <algorithm>

#include "pdm/error.hpp"
#include "pdm/truth_table.hpp"

namespace pdm {

namespace {

class Dpll {
 public:
  Dpll(const ClauseSet& cs, const Valuation& preferred) : clauses_(cs.clauses), preferred_(preferred) {
    std::set<std::string> all = cs.atoms;
    for (const auto& c : clauses_) {
      for (const auto& lit : c.literals()) all.insert(lit.atom);
    }
    atoms_.assign(all.begin(), all.end());
  }

  std::optional<Valuation> solve() {
    std::map<std::string, bool> assignment;
    if (!search(assignment)) return std::nullopt;
    return Valuation(assignment.begin(), assignment.end());
  }

 private:
  enum class State { Satisfied, Conflict, Unit, Open };

  State inspect(const Clause& c, const std::map<std::string, bool>& a, Literal* unit) const {
    std::size_t open = 0;
    for (const auto& lit : c.literals()) {
      auto it = a.find(lit.atom);
      if (it == a.end()) {
        ++open;
        *unit = lit;
      } else if (it->second == lit.positive) {
        return State::Satisfied;
      }
    }
    if (open == 0) return State::Conflict;
    return open == 1 ? State::Unit : State::Open;
  }

  // Assigns forced literals until fixpoint; false on conflict.
  bool propagate(std::map<std::string, bool>& a) const {
    bool changed = true;
    while (changed) {
      changed = false;
      for (const auto& c : clauses_) {
        Literal unit;
        switch (inspect(c, a, &unit)) {
          case State::Conflict:
            return false;
          case State::Unit:
            a[unit.atom] = unit.positive;
            changed = true;
            break;
          default:
            break;
        }
      }
    }
    return true;
  }

  bool search(std::map<std::string, bool>& a) const {
    if (!propagate(a)) return false;
    auto next = std::find_if(atoms_.begin(), atoms_.end(), [&](const std::string& x) { return !a.contains(x); });
    if (next == atoms_.end()) return true;
    bool first = false;
    if (auto it = preferred_.find(*next); it != preferred_.end()) first = it->second;
    for (bool value : {first, !first}) {
      auto trial = a;
      trial[*next] = value;
      if (search(trial)) {
        a = std::move(trial);
        return true;
      }
    }
    return false;
  }

  const std::vector<Clause>& clauses_;
  const Valuation& preferred_;
  std::vector<std::string> atoms_;
};

Formula complement_conjunction(const Clause& remainder) {
  std::vector<Formula> parts;
  for (const auto& lit : remainder.literals()) parts.push_back(literal_to_formula(lit.complement()));
  return conjunction(parts);
}

}  // namespace

std::optional<Valuation> find_model(const ClauseSet& cs, const Valuation& preferred) {
  return Dpll(cs, preferred).solve();
}

CompileReport compile_theory(const Theory& t, const CompileOptions& opts) {
  CompileReport report;
  report.clausal = to_clausal(t, opts.clause_limit);
  auto model = find_model(report.clausal, opts.seed);
  if (!model) throw Inconsistent();
  report.model = *model;

  std::vector<Clause> remaining = report.clausal.clauses;
  while (!remaining.empty()) {
    const Clause chosen = remaining.front();
    auto lit = std::find_if(chosen.literals().begin(), chosen.literals().end(), [&](const Literal& l) {
      return report.model.at(l.atom) == l.positive;
    });
    // A model satisfies every clause, so some literal is true.
    TraceEntry entry{chosen, *lit, {}, {}, lit->positive ? Polarity::Positive : Polarity::Negative};

    std::vector<Clause> kept;
    std::vector<Formula> parts;
    for (auto& c : remaining) {
      if (!c.contains(entry.literal)) {
        kept.push_back(std::move(c));
        continue;
      }
      Clause rest = c.without(entry.literal);
      parts.push_back(entry.literal.positive ? complement_conjunction(rest) : clause_to_formula(rest));
      entry.consumed.push_back(std::move(c));
    }
    remaining = std::move(kept);

    Formula rhs = entry.literal.positive ? disjunction(parts) : conjunction(parts);
    entry.rule = {entry.literal.atom, rhs};
    report.system.add(entry.polarity, entry.literal.atom, rhs);
    report.trace.push_back(std::move(entry));
  }
  return report;
}

std::optional<Valuation> verify_presentation(const Theory& t, const RewriteSystem& sys) {
  Formula theory = conjunction(t.axioms);
  Formula presented = conjunction(rules_to_axioms(sys).axioms);
  auto all = atoms(t);
  auto more = sys.atoms();
  all.insert(more.begin(), more.end());
  if (all.size() > tt::kMaxAtoms) throw TooManyAtoms(all.size(), tt::kMaxAtoms);
  // Models of the theory lost by the presentation are reported before
  // models the presentation adds.
  auto diff = tt::first_countermodel({theory}, {presented});
  if (!diff) diff = tt::first_countermodel({presented}, {theory});
  if (!diff) return std::nullopt;
  // Atoms that occur on neither side are irrelevant; report them as false.
  for (const auto& a : all) diff->try_emplace(a, false);
  return diff;
}

}  // namespace pdm
