#include "pdm/prover.hpp"

#include <algorithm>
#include <array>
#include <set>
#include <sstream>

#include "pdm/error.hpp"
#include "pdm/truth_table.hpp"

namespace pdm {

namespace {

constexpr std::array<std::pair<RuleKind, const char*>, 13> kRuleNames{{
    {RuleKind::Axiom, "Axiom"},
    {RuleKind::Cut, "Cut"},
    {RuleKind::ContrL, "ContrL"},
    {RuleKind::ContrR, "ContrR"},
    {RuleKind::WeakL, "WeakL"},
    {RuleKind::WeakR, "WeakR"},
    {RuleKind::ImpL, "ImpL"},
    {RuleKind::ImpR, "ImpR"},
    {RuleKind::AndL, "AndL"},
    {RuleKind::AndR, "AndR"},
    {RuleKind::OrL, "OrL"},
    {RuleKind::OrR, "OrR"},
    {RuleKind::BotL, "BotL"},
}};

bool contains(const std::vector<Formula>& v, const Formula& f) { return std::find(v.begin(), v.end(), f) != v.end(); }

// Appends `f` unless present; reports whether the side grew.
bool add(std::vector<Formula>& v, const Formula& f) {
  if (contains(v, f)) return false;
  v.push_back(f);
  return true;
}

Polarity side_polarity(Side s) { return s == Side::Left ? Polarity::Negative : Polarity::Positive; }

Formula::Kind shape_of(RuleKind r) {
  switch (r) {
    case RuleKind::ImpL:
    case RuleKind::ImpR:
      return Formula::Kind::Implies;
    case RuleKind::AndL:
    case RuleKind::AndR:
      return Formula::Kind::And;
    default:
      return Formula::Kind::Or;
  }
}

Side side_of(RuleKind r) {
  switch (r) {
    case RuleKind::ImpL:
    case RuleKind::AndL:
    case RuleKind::OrL:
    case RuleKind::ContrL:
    case RuleKind::WeakL:
    case RuleKind::BotL:
      return Side::Left;
    case RuleKind::Axiom:
      return Side::Both;
    case RuleKind::Cut:
      return Side::None;
    default:
      return Side::Right;
  }
}

// Premises of a logical rule whose principal formula has reduct `r`, keeping
// the conclusion as context. The intuitionistic variants replace the right
// side where the single-conclusion calculus requires it.
std::vector<Sequent> logical_premises(RuleKind rule, const Sequent& s, const Formula& r, bool intuitionistic) {
  const Formula& a = r.lhs();
  const Formula& b = r.rhs();
  auto with = [&](std::vector<Formula> left_add, std::vector<Formula> right_add, bool replace_right) {
    Sequent p = s;
    for (const auto& f : left_add) add(p.left, f);
    if (replace_right) p.right.clear();
    for (const auto& f : right_add) add(p.right, f);
    return p;
  };
  const bool i = intuitionistic;
  switch (rule) {
    case RuleKind::AndL:
      return {with({a, b}, {}, false)};
    case RuleKind::OrR:
      return {with({}, {a, b}, false)};
    case RuleKind::ImpR:
      return {with({a}, {b}, i)};
    case RuleKind::AndR:
      return {with({}, {a}, i), with({}, {b}, i)};
    case RuleKind::OrL:
      return {with({a}, {}, false), with({b}, {}, false)};
    case RuleKind::ImpL:
      return {with({}, {a}, i), with({b}, {}, false)};
    default:
      return {};
  }
}

bool same_sides(const Sequent& a, const Sequent& b) {
  auto covered = [](const std::vector<Formula>& x, const std::vector<Formula>& y) {
    return std::all_of(x.begin(), x.end(), [&](const Formula& f) { return contains(y, f); });
  };
  return covered(a.left, b.left) && covered(b.left, a.left) && covered(a.right, b.right) &&
         covered(b.right, a.right);
}

class Search {
 public:
  Search(const RewriteSystem& sys, const SearchConfig& cfg) : sys_(sys), cfg_(cfg), cache_(sys, cfg.rewrite) {}

  SearchResult run(const Sequent& s) {
    if (cfg_.intuitionistic && s.right.size() > 1) {
      throw InvalidInput("intuitionistic sequents have at most one formula on the right");
    }
    auto d = cfg_.intuitionistic ? intuitionistic(s, cfg_.depth) : classical(s, cfg_.depth);
    if (d) return std::move(*d);
    return Exhausted{std::max<std::size_t>(frontier_, 1), depth_hit_};
  }

 private:
  // Top-level reduct of `f` with a connective: `f` itself when compound,
  // otherwise the end of its (deterministic) chain of atom rewrites.
  std::optional<Formula> head_reduct(const Formula& f, Polarity pol) const {
    Formula cur = f;
    std::set<std::string> seen;
    for (std::size_t steps = 0; cur.kind() == Formula::Kind::Atom; ++steps) {
      if (steps >= cfg_.rewrite.depth || !seen.insert(cur.name()).second) return std::nullopt;
      const Formula* next = sys_.lookup(cur.name(), pol);
      if (!next) return std::nullopt;
      cur = *next;
    }
    if (cur.kind() == Formula::Kind::Falsum) return std::nullopt;
    return cur;
  }

  std::optional<Derivation> close(const Sequent& s) {
    for (std::size_t i = 0; i < s.left.size(); ++i) {
      for (std::size_t j = 0; j < s.right.size(); ++j) {
        auto join = cache_.join(s.left[i], s.right[j]);
        if (join.status != JoinStatus::Found) continue;
        Derivation d{RuleKind::Axiom, s, {}, {}};
        d.principal.side = Side::Both;
        d.principal.index = i;
        d.principal.index2 = j;
        d.principal.reduct = join.witness;
        return d;
      }
    }
    for (std::size_t i = 0; i < s.left.size(); ++i) {
      const Formula& f = s.left[i];
      bool bottom = f.kind() == Formula::Kind::Falsum ||
                    (f.kind() == Formula::Kind::Atom && cache_.reach(f, Polarity::Negative).contains(Formula::falsum()));
      if (!bottom) continue;
      Derivation d{RuleKind::BotL, s, {}, {}};
      d.principal.side = Side::Left;
      d.principal.index = i;
      d.principal.reduct = Formula::falsum();
      return d;
    }
    return std::nullopt;
  }

  bool spend() {
    if (++nodes_ <= cfg_.node_budget) return true;
    depth_hit_ = true;
    return false;
  }

  struct Step {
    RuleKind rule;
    std::size_t index;
    Formula reduct;
    std::vector<Sequent> premises;
  };

  Derivation node(const Sequent& s, const Step& step, std::vector<Derivation> premises) const {
    Derivation d{step.rule, s, {}, std::move(premises)};
    d.principal.side = side_of(step.rule);
    d.principal.index = step.index;
    d.principal.reduct = step.reduct;
    return d;
  }

  // Every instance of `rule` in `s`, in formula order.
  std::vector<Step> instances(RuleKind rule, const Sequent& s) const {
    std::vector<Step> out;
    Side side = side_of(rule);
    const auto& formulas = side == Side::Left ? s.left : s.right;
    for (std::size_t i = 0; i < formulas.size(); ++i) {
      auto r = head_reduct(formulas[i], side_polarity(side));
      if (!r || r->kind() != shape_of(rule)) continue;
      out.push_back({rule, i, *r, logical_premises(rule, s, *r, cfg_.intuitionistic)});
    }
    return out;
  }

  std::vector<Formula> cut_candidates(const Sequent& s) const {
    std::set<std::string> names = sys_.atoms();
    for (const auto& f : s.left) names.merge(atoms(f));
    for (const auto& f : s.right) names.merge(atoms(f));
    std::vector<Formula> out;
    for (const auto& n : names) {
      Formula a = Formula::atom(n);
      if (!contains(s.left, a) && !contains(s.right, a)) out.push_back(a);
    }
    return out;
  }

  template <typename Prove>
  std::optional<Derivation> try_cuts(const Sequent& s, std::size_t depth, Prove&& prove_premise) {
    for (const auto& c : cut_candidates(s)) {
      Sequent with_left = s;
      with_left.left.push_back(c);
      Sequent with_right = s;
      if (cfg_.intuitionistic) with_right.right.clear();
      with_right.right.push_back(c);
      auto p1 = prove_premise(with_left, depth - 1);
      if (!p1) continue;
      auto p2 = prove_premise(with_right, depth - 1);
      if (!p2) continue;
      Derivation d{RuleKind::Cut, s, {}, {std::move(*p1), std::move(*p2)}};
      d.principal.reduct = c;
      d.principal.cut_left = c;
      d.principal.cut_right = c;
      return d;
    }
    return std::nullopt;
  }

  static constexpr std::array<RuleKind, 6> kOrder{RuleKind::AndL, RuleKind::OrR, RuleKind::ImpR,
                                                  RuleKind::AndR, RuleKind::OrL, RuleKind::ImpL};

  // Sets only grow, and an instance is used only when each premise gains a
  // formula, so the first usable instance is as good as any other.
  std::optional<Derivation> classical(const Sequent& s, std::size_t depth) {
    if (!spend()) return std::nullopt;
    if (auto d = close(s)) return d;
    if (depth == 0) {
      depth_hit_ = true;
      ++frontier_;
      return std::nullopt;
    }
    for (RuleKind rule : kOrder) {
      for (auto& step : instances(rule, s)) {
        bool grows = std::all_of(step.premises.begin(), step.premises.end(),
                                 [&](const Sequent& p) { return !same_sides(p, s); });
        if (!grows) continue;
        std::vector<Derivation> proofs;
        for (const auto& p : step.premises) {
          auto d = classical(p, depth - 1);
          if (!d) return std::nullopt;
          proofs.push_back(std::move(*d));
        }
        return node(s, step, std::move(proofs));
      }
    }
    if (cfg_.allow_cut) {
      if (auto d = try_cuts(s, depth, [this](const Sequent& p, std::size_t n) { return classical(p, n); })) return d;
    }
    ++frontier_;
    return std::nullopt;
  }

  using Key = std::pair<std::vector<Formula>, std::vector<Formula>>;

  static Key key_of(const Sequent& s) {
    Key k{s.left, s.right};
    for (auto* v : {&k.first, &k.second}) {
      std::sort(v->begin(), v->end());
      v->erase(std::unique(v->begin(), v->end()), v->end());
    }
    return k;
  }

  std::optional<Derivation> intuitionistic(const Sequent& s, std::size_t depth) {
    if (!spend()) return std::nullopt;
    if (auto d = close(s)) return d;
    if (depth == 0) {
      depth_hit_ = true;
      ++frontier_;
      return std::nullopt;
    }
    Key key = key_of(s);
    if (!branch_.insert(key).second) {
      ++frontier_;
      return std::nullopt;
    }
    auto result = intuitionistic_expand(s, depth);
    branch_.erase(key);
    return result;
  }

  std::optional<Derivation> prove_all(const Sequent& s, const Step& step, std::size_t depth) {
    std::vector<Derivation> proofs;
    for (const auto& p : step.premises) {
      auto d = intuitionistic(p, depth - 1);
      if (!d) return std::nullopt;
      proofs.push_back(std::move(*d));
    }
    return node(s, step, std::move(proofs));
  }

  std::optional<Derivation> intuitionistic_expand(const Sequent& s, std::size_t depth) {
    auto fresh = [&](const Sequent& p) { return !same_sides(p, s); };

    // Invertible rules: commit to the first usable instance.
    for (RuleKind rule : {RuleKind::AndL, RuleKind::ImpR, RuleKind::AndR, RuleKind::OrL}) {
      for (auto& step : instances(rule, s)) {
        if (!std::all_of(step.premises.begin(), step.premises.end(), fresh)) continue;
        return prove_all(s, step, depth);
      }
    }

    // A disjunction on the right is proved through one of its disjuncts.
    for (auto& step : instances(RuleKind::OrR, s)) {
      for (const Formula& pick : {step.reduct.lhs(), step.reduct.rhs()}) {
        Sequent p{s.left, {pick}};
        if (!fresh(p)) continue;
        if (auto d = intuitionistic(p, depth - 1)) {
          return node(s, {RuleKind::OrR, step.index, step.reduct, {}}, {std::move(*d)});
        }
      }
    }

    for (auto& step : instances(RuleKind::ImpL, s)) {
      if (!std::all_of(step.premises.begin(), step.premises.end(), fresh)) continue;
      if (auto d = prove_all(s, step, depth)) return d;
    }

    if (cfg_.allow_cut) {
      if (auto d = try_cuts(s, depth, [this](const Sequent& p, std::size_t n) { return intuitionistic(p, n); })) {
        return d;
      }
    }
    ++frontier_;
    return std::nullopt;
  }

  const RewriteSystem& sys_;
  const SearchConfig& cfg_;
  ReachCache cache_;
  std::set<Key> branch_;
  std::size_t nodes_ = 0;
  std::size_t frontier_ = 0;
  bool depth_hit_ = false;
};

class DerivationChecker {
 public:
  DerivationChecker(const RewriteSystem& sys, const SearchConfig& cfg) : cfg_(cfg), cache_(sys, cfg.rewrite) {}

  DerivationVerdict check(const Derivation& d, const std::string& path) {
    if (auto why = check_node(d)) return {false, path, *why};
    for (std::size_t i = 0; i < d.premises.size(); ++i) {
      auto sub = check(d.premises[i], path.empty() ? std::to_string(i) : path + "/" + std::to_string(i));
      if (!sub.ok) return sub;
    }
    return {};
  }

 private:
  static std::size_t arity(RuleKind r) {
    switch (r) {
      case RuleKind::Axiom:
      case RuleKind::BotL:
        return 0;
      case RuleKind::Cut:
      case RuleKind::ImpL:
      case RuleKind::AndR:
      case RuleKind::OrL:
        return 2;
      default:
        return 1;
    }
  }

  // Empty when `to` is reachable from `from`, otherwise the reason.
  std::optional<std::string> reaches(const Formula& from, Polarity pol, const Formula& to) {
    const auto& r = cache_.reach(from, pol);
    if (r.contains(to)) return std::nullopt;
    std::string arrow = pol == Polarity::Negative ? " ->- " : " ->+ ";
    std::string msg = "no rewriting " + format_formula(from) + arrow + format_formula(to);
    if (!r.complete()) msg += " within the rewriting bounds";
    return msg;
  }

  static bool subset(const std::vector<Formula>& part, const std::vector<Formula>& base,
                     const std::vector<Formula>& extra) {
    return std::all_of(part.begin(), part.end(),
                       [&](const Formula& f) { return contains(base, f) || contains(extra, f); });
  }

  static bool same_multiset(std::vector<Formula> a, std::vector<Formula> b) {
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    return a == b;
  }

  static std::vector<Formula> without(std::vector<Formula> v, std::size_t i) {
    v.erase(v.begin() + static_cast<std::ptrdiff_t>(i));
    return v;
  }

  // Premise `p` may use the conclusion's formulas plus the listed new ones.
  static std::optional<std::string> premise_within(const Derivation& d, std::size_t k,
                                                   const std::vector<Formula>& new_left,
                                                   const std::vector<Formula>& new_right) {
    const Sequent& c = d.conclusion;
    const Sequent& p = d.premises[k].conclusion;
    if (!subset(p.left, c.left, new_left)) {
      return "premise " + std::to_string(k) + " has a left formula outside the rule schema";
    }
    if (!subset(p.right, c.right, new_right)) {
      return "premise " + std::to_string(k) + " has a right formula outside the rule schema";
    }
    return std::nullopt;
  }

  std::optional<std::string> check_node(const Derivation& d) {
    const Sequent& c = d.conclusion;
    const Principal& pr = d.principal;
    if (cfg_.intuitionistic && c.right.size() > 1) return "more than one formula on the right";
    if (d.premises.size() != arity(d.rule)) {
      return std::string(rule_name(d.rule)) + " expects " + std::to_string(arity(d.rule)) + " premise(s), got " +
             std::to_string(d.premises.size());
    }
    Side expected = side_of(d.rule);
    if (pr.side != expected) return "principal on the wrong side";
    if (expected == Side::Left && pr.index >= c.left.size()) return "principal index out of range";
    if (expected == Side::Right && pr.index >= c.right.size()) return "principal index out of range";

    switch (d.rule) {
      case RuleKind::Axiom: {
        if (pr.index >= c.left.size() || pr.index2 >= c.right.size()) return "principal index out of range";
        if (!pr.reduct) return "missing common reduct";
        if (auto why = reaches(c.left[pr.index], Polarity::Negative, *pr.reduct)) return why;
        return reaches(c.right[pr.index2], Polarity::Positive, *pr.reduct);
      }
      case RuleKind::BotL:
        return reaches(c.left[pr.index], Polarity::Negative, Formula::falsum());
      case RuleKind::Cut: {
        if (!pr.reduct || !pr.cut_left || !pr.cut_right) return "missing cut formulas";
        if (auto why = reaches(*pr.reduct, Polarity::Negative, *pr.cut_left)) return why;
        if (auto why = reaches(*pr.reduct, Polarity::Positive, *pr.cut_right)) return why;
        if (auto why = premise_within(d, 0, {*pr.cut_left}, {})) return why;
        return premise_within(d, 1, {}, {*pr.cut_right});
      }
      case RuleKind::ContrL:
      case RuleKind::ContrR: {
        if (!pr.reduct || !pr.reduct2) return "missing contraction reducts";
        bool left = d.rule == RuleKind::ContrL;
        const Formula& a = left ? c.left[pr.index] : c.right[pr.index];
        Polarity pol = left ? Polarity::Negative : Polarity::Positive;
        if (auto why = reaches(a, pol, *pr.reduct)) return why;
        if (auto why = reaches(a, pol, *pr.reduct2)) return why;
        Sequent want = c;
        auto& side = left ? want.left : want.right;
        side = without(side, pr.index);
        side.push_back(*pr.reduct);
        side.push_back(*pr.reduct2);
        const Sequent& p = d.premises[0].conclusion;
        if (!same_multiset(p.left, want.left) || !same_multiset(p.right, want.right)) {
          return "premise does not match the contraction";
        }
        return std::nullopt;
      }
      case RuleKind::WeakL:
      case RuleKind::WeakR: {
        Sequent want = c;
        auto& side = d.rule == RuleKind::WeakL ? want.left : want.right;
        side = without(side, pr.index);
        const Sequent& p = d.premises[0].conclusion;
        if (!same_multiset(p.left, want.left) || !same_multiset(p.right, want.right)) {
          return "premise does not match the weakening";
        }
        return std::nullopt;
      }
      default:
        break;
    }

    // Logical rules.
    if (!pr.reduct) return "missing reduct";
    const Formula& r = *pr.reduct;
    if (r.kind() != shape_of(d.rule)) return "reduct " + format_formula(r) + " has the wrong connective";
    const Formula& principal = expected == Side::Left ? c.left[pr.index] : c.right[pr.index];
    if (auto why = reaches(principal, side_polarity(expected), r)) return why;
    const Formula& a = r.lhs();
    const Formula& b = r.rhs();
    switch (d.rule) {
      case RuleKind::AndL:
        return premise_within(d, 0, {a, b}, {});
      case RuleKind::OrR:
        return premise_within(d, 0, {}, {a, b});
      case RuleKind::ImpR:
        return premise_within(d, 0, {a}, {b});
      case RuleKind::AndR:
        if (auto why = premise_within(d, 0, {}, {a})) return why;
        return premise_within(d, 1, {}, {b});
      case RuleKind::OrL:
        if (auto why = premise_within(d, 0, {a}, {})) return why;
        return premise_within(d, 1, {b}, {});
      case RuleKind::ImpL:
        if (auto why = premise_within(d, 0, {}, {a})) return why;
        return premise_within(d, 1, {b}, {});
      default:
        return "unknown rule";
    }
  }

  const SearchConfig& cfg_;
  ReachCache cache_;
};

void render(const Derivation& d, int indent, std::ostringstream& out) {
  out << std::string(static_cast<std::size_t>(indent) * 2, ' ') << rule_name(d.rule) << "  "
      << format_sequent(d.conclusion);
  const Principal& p = d.principal;
  if (p.reduct) out << "  [" << format_formula(*p.reduct) << "]";
  out << "\n";
  for (const auto& sub : d.premises) render(sub, indent + 1, out);
}

}  // namespace

const char* rule_name(RuleKind r) {
  for (const auto& [kind, name] : kRuleNames) {
    if (kind == r) return name;
  }
  return "?";
}

std::optional<RuleKind> rule_from_name(std::string_view name) {
  for (const auto& [kind, n] : kRuleNames) {
    if (name == n) return kind;
  }
  return std::nullopt;
}

std::size_t Derivation::node_count() const {
  std::size_t n = 1;
  for (const auto& p : premises) n += p.node_count();
  return n;
}

std::size_t Derivation::height() const {
  std::size_t h = 0;
  for (const auto& p : premises) h = std::max(h, p.height());
  return h + 1;
}

SearchResult prove(const Sequent& s, const RewriteSystem& sys, const SearchConfig& cfg) {
  return Search(sys, cfg).run(s);
}

DerivationVerdict check_derivation(const Derivation& d, const RewriteSystem& sys, const SearchConfig& cfg) {
  return DerivationChecker(sys, cfg).check(d, "");
}

bool oracle_provable(const Sequent& s, const RewriteSystem& sys) {
  std::vector<Formula> hyps = rules_to_axioms(sys).axioms;
  hyps.insert(hyps.end(), s.left.begin(), s.left.end());
  return !tt::first_countermodel(hyps, s.right).has_value();
}

bool consistency_check(const RewriteSystem& sys) { return !oracle_provable(Sequent{}, sys); }

std::string format_derivation(const Derivation& d) {
  std::ostringstream out;
  render(d, 0, out);
  return out.str();
}

}  // namespace pdm
