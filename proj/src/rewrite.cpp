#include "pdm/rewrite.hpp"

#include <algorithm>
#include <cctype>
#include <unordered_set>

#include "pdm/error.hpp"

namespace pdm {

void RewriteSystem::add(Polarity pol, std::string lhs, Formula rhs) {
  if (!is_identifier(lhs)) throw InvalidInput("rule left-hand side '" + lhs + "' is not an atom");
  auto& list = pol == Polarity::Negative ? negative_ : positive_;
  for (const auto& r : list) {
    if (r.lhs == lhs) {
      throw InvalidInput("second " + std::string(pol == Polarity::Negative ? "negative" : "positive") +
                         " rule for atom '" + lhs + "'");
    }
  }
  list.push_back({std::move(lhs), std::move(rhs)});
}

const Formula* RewriteSystem::lookup(const std::string& atom, Polarity pol) const {
  for (const auto& r : rules(pol)) {
    if (r.lhs == atom) return &r.rhs;
  }
  return nullptr;
}

std::set<std::string> RewriteSystem::atoms() const {
  std::set<std::string> out;
  for (const auto* list : {&negative_, &positive_}) {
    for (const auto& r : *list) {
      out.insert(r.lhs);
      auto rhs_atoms = pdm::atoms(r.rhs);
      out.insert(rhs_atoms.begin(), rhs_atoms.end());
    }
  }
  return out;
}

RewriteSystem RewriteSystem::swapped() const {
  RewriteSystem out;
  out.negative_ = positive_;
  out.positive_ = negative_;
  return out;
}

RewriteSystem parse_rules(std::string_view text) {
  RewriteSystem sys;
  std::size_t offset = 0;
  while (offset <= text.size()) {
    std::size_t end = text.find('\n', offset);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(offset, end - offset);
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);

    std::size_t i = 0;
    auto skip = [&] {
      while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    };
    skip();
    if (i < line.size()) {
      std::size_t start = i;
      while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i])) &&
             line.substr(i, 2) != "->") {
        ++i;
      }
      std::string lhs(line.substr(start, i - start));
      if (!is_identifier(lhs)) throw ParseError("rule left-hand side must be an atom", offset + start, "identifier");
      skip();
      Polarity pol;
      if (line.substr(i, 3) == "->-") {
        pol = Polarity::Negative;
      } else if (line.substr(i, 3) == "->+") {
        pol = Polarity::Positive;
      } else {
        throw ParseError("missing rule arrow", offset + i, "'->-' or '->+'");
      }
      i += 3;
      std::string_view body = line.substr(i);
      Formula rhs;
      try {
        rhs = parse_formula(body);
      } catch (const ParseError& e) {
        throw ParseError("bad rule right-hand side", offset + i + e.offset(), e.expected());
      }
      try {
        sys.add(pol, std::move(lhs), std::move(rhs));
      } catch (const InvalidInput& e) {
        throw ParseError(e.what(), offset + start);
      }
    }
    offset = end + 1;
  }
  return sys;
}

std::string format_rule(const RewriteRule& rule, Polarity pol) {
  return rule.lhs + (pol == Polarity::Negative ? " ->- " : " ->+ ") + format_formula(rule.rhs);
}

std::string format_rules(const RewriteSystem& sys) {
  std::string out;
  for (const auto& r : sys.negative()) out += format_rule(r, Polarity::Negative) + '\n';
  for (const auto& r : sys.positive()) out += format_rule(r, Polarity::Positive) + '\n';
  return out;
}

namespace {

void collect_one_step(const Formula& f, Polarity pol, const RewriteSystem& sys,
                      std::set<Formula>& out) {
  switch (f.kind()) {
    case Formula::Kind::Atom:
      if (const Formula* rhs = sys.lookup(f.name(), pol)) out.insert(*rhs);
      return;
    case Formula::Kind::Falsum:
      return;
    case Formula::Kind::Implies:
    case Formula::Kind::And:
    case Formula::Kind::Or: {
      Polarity left = f.kind() == Formula::Kind::Implies ? flip(pol) : pol;
      std::set<Formula> sub;
      collect_one_step(f.lhs(), left, sys, sub);
      for (const auto& g : sub) {
        out.insert(f.kind() == Formula::Kind::Implies ? Formula::implies(g, f.rhs())
                   : f.kind() == Formula::Kind::And   ? Formula::conj(g, f.rhs())
                                                      : Formula::disj(g, f.rhs()));
      }
      sub.clear();
      collect_one_step(f.rhs(), pol, sys, sub);
      for (const auto& g : sub) {
        out.insert(f.kind() == Formula::Kind::Implies ? Formula::implies(f.lhs(), g)
                   : f.kind() == Formula::Kind::And   ? Formula::conj(f.lhs(), g)
                                                      : Formula::disj(f.lhs(), g));
      }
      return;
    }
  }
}

// Formulas that rewrite to `f` in one step at `pol`.
void collect_one_step_back(const Formula& f, Polarity pol, const RewriteSystem& sys,
                           std::set<Formula>& out) {
  for (const auto& rule : pol == Polarity::Negative ? sys.negative() : sys.positive()) {
    if (rule.rhs == f) out.insert(Formula::atom(rule.lhs));
  }
  if (f.kind() == Formula::Kind::Atom || f.kind() == Formula::Kind::Falsum) return;
  Polarity left = f.kind() == Formula::Kind::Implies ? flip(pol) : pol;
  auto rebuild = [&](const Formula& a, const Formula& b) {
    return f.kind() == Formula::Kind::Implies ? Formula::implies(a, b)
           : f.kind() == Formula::Kind::And   ? Formula::conj(a, b)
                                              : Formula::disj(a, b);
  };
  std::set<Formula> sub;
  collect_one_step_back(f.lhs(), left, sys, sub);
  for (const auto& g : sub) out.insert(rebuild(g, f.rhs()));
  sub.clear();
  collect_one_step_back(f.rhs(), pol, sys, sub);
  for (const auto& g : sub) out.insert(rebuild(f.lhs(), g));
}

template <typename Step>
ReachSet bounded_closure(const Formula& f, RewriteBounds bounds, Step step) {
  ReachSet out;
  std::unordered_set<Formula, FormulaHash> seen{f};
  out.items.push_back(f);
  std::vector<Formula> frontier{f};
  for (std::size_t d = 0; d < bounds.depth && !frontier.empty(); ++d) {
    std::vector<Formula> next;
    for (const auto& g : frontier) {
      for (auto& h : step(g)) {
        if (seen.contains(h)) continue;
        if (out.items.size() >= bounds.cap) {
          out.cap_exceeded = true;
          return out;
        }
        seen.insert(h);
        out.items.push_back(h);
        next.push_back(h);
      }
    }
    frontier = std::move(next);
  }
  for (const auto& g : frontier) {
    for (const auto& h : step(g)) {
      if (!seen.contains(h)) {
        out.depth_exhausted = true;
        return out;
      }
    }
  }
  return out;
}

}  // namespace

std::set<Formula> one_step(const Formula& f, Polarity pol, const RewriteSystem& sys) {
  std::set<Formula> out;
  collect_one_step(f, pol, sys, out);
  return out;
}

std::set<Formula> one_step_back(const Formula& f, Polarity pol, const RewriteSystem& sys) {
  std::set<Formula> out;
  collect_one_step_back(f, pol, sys, out);
  return out;
}

bool ReachSet::contains(const Formula& f) const {
  return std::find(items.begin(), items.end(), f) != items.end();
}

ReachSet reachable(const Formula& f, Polarity pol, const RewriteSystem& sys, RewriteBounds bounds) {
  return bounded_closure(f, bounds, [&](const Formula& g) { return one_step(g, pol, sys); });
}

ReachSet ancestors(const Formula& f, Polarity pol, const RewriteSystem& sys, RewriteBounds bounds) {
  return bounded_closure(f, bounds, [&](const Formula& g) { return one_step_back(g, pol, sys); });
}

namespace {

JoinResult join_sets(const ReachSet& from_a, const ReachSet& from_b) {
  std::unordered_set<Formula, FormulaHash> right(from_b.items.begin(), from_b.items.end());
  std::optional<Formula> best;
  std::string best_text;
  for (const auto& c : from_a.items) {
    if (!right.contains(c)) continue;
    if (best && c.size() > best->size()) continue;
    std::string text = format_formula(c);
    if (!best || c.size() < best->size() || text < best_text) {
      best = c;
      best_text = std::move(text);
    }
  }
  if (best) return {JoinStatus::Found, best};
  if (!from_a.complete() || !from_b.complete()) return {JoinStatus::Inconclusive, std::nullopt};
  return {JoinStatus::Absent, std::nullopt};
}

}  // namespace

JoinResult joinable(const Formula& a, const Formula& b, const RewriteSystem& sys,
                    RewriteBounds bounds) {
  return join_sets(reachable(a, Polarity::Negative, sys, bounds),
                   reachable(b, Polarity::Positive, sys, bounds));
}

const ReachSet& ReachCache::reach(const Formula& f, Polarity pol) {
  auto& table = pol == Polarity::Negative ? neg_ : pos_;
  auto it = table.find(f);
  if (it != table.end()) return *it->second;
  auto set = std::make_unique<ReachSet>(reachable(f, pol, *sys_, bounds_));
  for (const auto& g : set->items) stored_ += g.size();
  return *table.emplace(f, std::move(set)).first->second;
}

JoinResult ReachCache::join(const Formula& a, const Formula& b) {
  if (a == b) return {JoinStatus::Found, a};
  return join_sets(reach(a, Polarity::Negative), reach(b, Polarity::Positive));
}

DisjointnessReport check_disjoint(const RewriteSystem& sys) {
  DisjointnessReport report;
  report.rule_count_neg = sys.negative().size();
  report.rule_count_pos = sys.positive().size();
  std::set<std::string> clashes;
  for (const auto& r : sys.negative()) {
    if (sys.lookup(r.lhs, Polarity::Positive)) clashes.insert(r.lhs);
  }
  report.clashes.assign(clashes.begin(), clashes.end());
  report.disjoint = report.clashes.empty();
  return report;
}

Theory rules_to_axioms(const RewriteSystem& sys) {
  Theory t;
  for (const auto& r : sys.negative()) t.axioms.push_back(Formula::implies(Formula::atom(r.lhs), r.rhs));
  for (const auto& r : sys.positive()) t.axioms.push_back(Formula::implies(r.rhs, Formula::atom(r.lhs)));
  return t;
}

namespace {

Formula dneg(Formula f) { return Formula::neg(Formula::neg(std::move(f))); }

Formula rebuild(const Formula& f, Formula lhs, Formula rhs) {
  switch (f.kind()) {
    case Formula::Kind::Implies:
      return Formula::implies(std::move(lhs), std::move(rhs));
    case Formula::Kind::And:
      return Formula::conj(std::move(lhs), std::move(rhs));
    default:
      return Formula::disj(std::move(lhs), std::move(rhs));
  }
}

// A' in the light translation: every node gets a double negation.
Formula primed(const Formula& f) {
  if (!f.is_binary()) return dneg(f);
  return dneg(rebuild(f, primed(f.lhs()), primed(f.rhs())));
}

}  // namespace

Formula light_dneg(const Formula& f) {
  if (!f.is_binary()) return f;
  return rebuild(f, primed(f.lhs()), primed(f.rhs()));
}

}  // namespace pdm
