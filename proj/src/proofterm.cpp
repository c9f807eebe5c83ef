#include "pdm/proofterm.hpp"

#include <algorithm>
#include <set>

namespace pdm {

ProofTerm ProofTerm::make(Node node) {
  node.size = 1;
  for (const auto& k : node.kids) node.size += k.size();
  return ProofTerm(std::make_shared<const Node>(std::move(node)));
}

ProofTerm ProofTerm::var(std::string name) {
  if (!is_identifier(name)) throw InvalidInput("invalid proof variable '" + name + "'");
  return make({Kind::Var, std::move(name), {}, {}, {}, {}});
}

ProofTerm ProofTerm::lam(std::string var, Formula ann, ProofTerm body) {
  if (!is_identifier(var)) throw InvalidInput("invalid proof variable '" + var + "'");
  return make({Kind::Lam, std::move(var), {}, std::move(ann), {}, {std::move(body)}});
}

ProofTerm ProofTerm::app(ProofTerm fun, ProofTerm arg) {
  return make({Kind::App, {}, {}, {}, {}, {std::move(fun), std::move(arg)}});
}

ProofTerm ProofTerm::pair(ProofTerm fst, ProofTerm snd) {
  return make({Kind::Pair, {}, {}, {}, {}, {std::move(fst), std::move(snd)}});
}

ProofTerm ProofTerm::fst(ProofTerm body) { return make({Kind::Fst, {}, {}, {}, {}, {std::move(body)}}); }
ProofTerm ProofTerm::snd(ProofTerm body) { return make({Kind::Snd, {}, {}, {}, {}, {std::move(body)}}); }

ProofTerm ProofTerm::inl(Formula ann, ProofTerm body) {
  return make({Kind::Inl, {}, {}, std::move(ann), {}, {std::move(body)}});
}

ProofTerm ProofTerm::inr(Formula ann, ProofTerm body) {
  return make({Kind::Inr, {}, {}, std::move(ann), {}, {std::move(body)}});
}

ProofTerm ProofTerm::case_of(ProofTerm scrut, std::string left_var, Formula left_ann, ProofTerm left_body,
                             std::string right_var, Formula right_ann, ProofTerm right_body) {
  if (!is_identifier(left_var) || !is_identifier(right_var))
    throw InvalidInput("invalid case binder");
  return make({Kind::Case, std::move(left_var), std::move(right_var), std::move(left_ann),
               std::move(right_ann), {std::move(scrut), std::move(left_body), std::move(right_body)}});
}

ProofTerm ProofTerm::ex_falso(Formula ann, ProofTerm body) {
  return make({Kind::ExFalso, {}, {}, std::move(ann), {}, {std::move(body)}});
}

ProofTerm ProofTerm::with_children(std::vector<ProofTerm> kids) const {
  Node copy{node_->kind, node_->name, node_->name2, node_->ann, node_->ann2, std::move(kids)};
  return make(std::move(copy));
}

bool operator==(const ProofTerm& a, const ProofTerm& b) {
  if (a.node_ == b.node_) return true;
  return a.kind() == b.kind() && a.size() == b.size() && a.name() == b.name() &&
         a.name2() == b.name2() && a.ann() == b.ann() && a.ann2() == b.ann2() &&
         a.children() == b.children();
}

namespace {

void print(const ProofTerm& t, std::string& out) {
  using K = ProofTerm::Kind;
  switch (t.kind()) {
    case K::Var:
      out += t.name();
      return;
    case K::Lam:
      out += "(\\" + t.name() + ":" + format_formula(t.ann()) + ". ";
      print(t.child(0), out);
      out += ')';
      return;
    case K::App:
      out += '(';
      print(t.child(0), out);
      out += ' ';
      print(t.child(1), out);
      out += ')';
      return;
    case K::Pair:
      out += '<';
      print(t.child(0), out);
      out += ", ";
      print(t.child(1), out);
      out += '>';
      return;
    case K::Fst:
    case K::Snd:
      out += t.kind() == K::Fst ? "fst(" : "snd(";
      print(t.child(0), out);
      out += ')';
      return;
    case K::Inl:
    case K::Inr:
    case K::ExFalso:
      out += t.kind() == K::Inl ? "inl[" : t.kind() == K::Inr ? "inr[" : "efq[";
      out += format_formula(t.ann()) + "](";
      print(t.child(0), out);
      out += ')';
      return;
    case K::Case:
      out += "case(";
      print(t.child(0), out);
      out += "; " + t.name() + ":" + format_formula(t.ann()) + ". ";
      print(t.child(1), out);
      out += "; " + t.name2() + ":" + format_formula(t.ann2()) + ". ";
      print(t.child(2), out);
      out += ')';
      return;
  }
}

void collect_free(const ProofTerm& t, std::set<std::string>& bound, std::set<std::string>& out) {
  using K = ProofTerm::Kind;
  auto under = [&](const std::string& binder, const ProofTerm& body) {
    bool fresh = bound.insert(binder).second;
    collect_free(body, bound, out);
    if (fresh) bound.erase(binder);
  };
  switch (t.kind()) {
    case K::Var:
      if (!bound.contains(t.name())) out.insert(t.name());
      return;
    case K::Lam:
      under(t.name(), t.child(0));
      return;
    case K::Case:
      collect_free(t.child(0), bound, out);
      under(t.name(), t.child(1));
      under(t.name2(), t.child(2));
      return;
    default:
      for (const auto& k : t.children()) collect_free(k, bound, out);
  }
}

std::set<std::string> free_set(const ProofTerm& t) {
  std::set<std::string> bound, out;
  collect_free(t, bound, out);
  return out;
}

std::string fresh_name(std::string base, const std::set<std::string>& avoid) {
  do {
    base += '\'';
  } while (avoid.contains(base));
  return base;
}

// Substitution under one binder: returns (binder', body') with the binder
// renamed when it would capture a free variable of the replacement.
std::pair<std::string, ProofTerm> subst_binder(const std::string& binder, const ProofTerm& body,
                                               const std::string& var, const ProofTerm& repl,
                                               const std::set<std::string>& repl_free) {
  if (binder == var) return {binder, body};
  std::set<std::string> body_free = free_set(body);
  if (!body_free.contains(var)) return {binder, body};
  if (!repl_free.contains(binder)) return {binder, substitute(body, var, repl)};
  std::set<std::string> avoid = repl_free;
  avoid.insert(body_free.begin(), body_free.end());
  avoid.insert(var);
  std::string renamed = fresh_name(binder, avoid);
  ProofTerm moved = substitute(body, binder, ProofTerm::var(renamed));
  return {renamed, substitute(moved, var, repl)};
}

}  // namespace

std::string format_term(const ProofTerm& t) {
  std::string out;
  print(t, out);
  return out;
}

std::vector<std::string> free_vars(const ProofTerm& t) {
  auto s = free_set(t);
  return {s.begin(), s.end()};
}

ProofTerm substitute(const ProofTerm& term, const std::string& var, const ProofTerm& replacement) {
  using K = ProofTerm::Kind;
  switch (term.kind()) {
    case K::Var:
      return term.name() == var ? replacement : term;
    case K::Lam: {
      auto [binder, body] = subst_binder(term.name(), term.child(0), var, replacement, free_set(replacement));
      return ProofTerm::lam(binder, term.ann(), body);
    }
    case K::Case: {
      auto repl_free = free_set(replacement);
      auto [lv, lb] = subst_binder(term.name(), term.child(1), var, replacement, repl_free);
      auto [rv, rb] = subst_binder(term.name2(), term.child(2), var, replacement, repl_free);
      return ProofTerm::case_of(substitute(term.child(0), var, replacement), lv, term.ann(), lb, rv,
                                term.ann2(), rb);
    }
    default: {
      std::vector<ProofTerm> kids;
      kids.reserve(term.children().size());
      for (const auto& k : term.children()) kids.push_back(substitute(k, var, replacement));
      return term.with_children(std::move(kids));
    }
  }
}

namespace {

// Root contraction by the ordinary rules.
std::optional<ProofTerm> contract(const ProofTerm& t) {
  using K = ProofTerm::Kind;
  switch (t.kind()) {
    case K::App:
      if (t.child(0).kind() == K::Lam)
        return substitute(t.child(0).child(0), t.child(0).name(), t.child(1));
      break;
    case K::Fst:
      if (t.child(0).kind() == K::Pair) return t.child(0).child(0);
      break;
    case K::Snd:
      if (t.child(0).kind() == K::Pair) return t.child(0).child(1);
      break;
    case K::Case:
      if (t.child(0).kind() == K::Inl) return substitute(t.child(1), t.name(), t.child(0).child(0));
      if (t.child(0).kind() == K::Inr) return substitute(t.child(2), t.name2(), t.child(0).child(0));
      break;
    default:
      break;
  }
  return std::nullopt;
}

}  // namespace

std::vector<ProofTerm> ultra_contractions(const ProofTerm& t) {
  if (t.kind() != ProofTerm::Kind::Case) return {};
  return {t.child(1), t.child(2)};
}

std::optional<ProofTerm> reduce_step(const ProofTerm& t, bool ultra) {
  if (auto r = contract(t)) return r;
  if (ultra && t.kind() == ProofTerm::Kind::Case) return t.child(1);
  for (std::size_t i = 0; i < t.children().size(); ++i) {
    if (auto r = reduce_step(t.child(i), ultra)) {
      std::vector<ProofTerm> kids = t.children();
      kids[i] = *r;
      return t.with_children(std::move(kids));
    }
  }
  return std::nullopt;
}

bool has_redex(const ProofTerm& t, bool ultra) {
  if (contract(t)) return true;
  if (ultra && t.kind() == ProofTerm::Kind::Case) return true;
  return std::any_of(t.children().begin(), t.children().end(),
                     [&](const ProofTerm& k) { return has_redex(k, ultra); });
}

std::vector<ProofTerm> all_reducts(const ProofTerm& t, bool ultra) {
  std::vector<ProofTerm> out;
  if (auto r = contract(t)) out.push_back(*r);
  if (ultra) {
    for (auto& r : ultra_contractions(t)) out.push_back(std::move(r));
  }
  for (std::size_t i = 0; i < t.children().size(); ++i) {
    for (auto& r : all_reducts(t.child(i), ultra)) {
      std::vector<ProofTerm> kids = t.children();
      kids[i] = std::move(r);
      out.push_back(t.with_children(std::move(kids)));
    }
  }
  return out;
}

NormalizeResult normalize(const ProofTerm& t, bool ultra, std::size_t budget) {
  ProofTerm current = t;
  for (std::size_t steps = 0; steps < budget; ++steps) {
    auto next = reduce_step(current, ultra);
    if (!next) return {current, steps};
    current = std::move(*next);
  }
  if (has_redex(current, ultra)) throw BudgetExhausted(current, budget);
  return {current, budget};
}

const Formula* Context::lookup(const std::string& var) const {
  for (auto it = entries.rbegin(); it != entries.rend(); ++it) {
    if (it->first == var) return &it->second;
  }
  return nullptr;
}

Context Context::extended(std::string var, Formula hyp) const {
  Context out = *this;
  out.entries.emplace_back(std::move(var), std::move(hyp));
  return out;
}

namespace {

struct Outcome {
  bool ok = true;
  std::string path;
  std::string reason;

  static Outcome fail(std::string reason) { return {false, {}, std::move(reason)}; }
  Outcome& under(const char* segment) {
    path = path.empty() ? std::string(segment) : std::string(segment) + "/" + path;
    return *this;
  }
};

// Bidirectional checker. `check` verifies against a goal, `infer`
// synthesizes the formula of an elimination head. Side conditions follow
// the natural deduction rules modulo: introductions look at positive
// reducts of the goal, eliminations at negative reducts of the synthesized
// formula, and a variable closes a goal it joins with.
class Checker {
 public:
  Checker(const RewriteSystem& sys, CheckConfig cfg) : cache_(sys, cfg) {}

  bool incomplete() const { return incomplete_; }

  Outcome check(const Context& ctx, const ProofTerm& t, const Formula& goal) {
    using K = ProofTerm::Kind;
    if (exhausted()) return Outcome::fail("checker work budget exhausted");
    switch (t.kind()) {
      case K::Var: {
        const Formula* hyp = ctx.lookup(t.name());
        if (!hyp) return Outcome::fail("unbound proof variable '" + t.name() + "'");
        if (joins(*hyp, goal)) return {};
        return Outcome::fail("hypothesis " + format_formula(*hyp) + " has no common reduct with " +
                             format_formula(goal));
      }
      case K::Lam: {
        Outcome last = Outcome::fail("no positive reduct of " + format_formula(goal) +
                                     " is an implication from " + format_formula(t.ann()));
        for (const Formula& r : reach(goal, Polarity::Positive)) {
          if (r.kind() != Formula::Kind::Implies) continue;
          if (!(r.lhs() == t.ann()) && !reach_contains(t.ann(), Polarity::Positive, r.lhs())) continue;
          Outcome body = check(ctx.extended(t.name(), t.ann()), t.child(0), r.rhs());
          if (body.ok) return body;
          last = body.under("lam.body");
        }
        return last;
      }
      case K::App: {
        Outcome why;
        auto heads = infer(ctx, t.child(0), why);
        if (heads.empty()) return why.under("app.fun");
        Outcome last = Outcome::fail("no negative reduct of " + format_formula(heads.front()) +
                                     " is an implication concluding " + format_formula(goal));
        for (const Formula& head : heads) {
          for (const Formula& r : reach(head, Polarity::Negative)) {
            if (r.kind() != Formula::Kind::Implies) continue;
            if (!joins(r.rhs(), goal)) continue;
            Outcome arg = check(ctx, t.child(1), r.lhs());
            if (arg.ok) return arg;
            last = arg.under("app.arg");
          }
        }
        return last;
      }
      case K::Pair: {
        Outcome last = Outcome::fail("no positive reduct of " + format_formula(goal) + " is a conjunction");
        for (const Formula& r : reach(goal, Polarity::Positive)) {
          if (r.kind() != Formula::Kind::And) continue;
          Outcome a = check(ctx, t.child(0), r.lhs());
          if (!a.ok) {
            last = a.under("pair.fst");
            continue;
          }
          Outcome b = check(ctx, t.child(1), r.rhs());
          if (b.ok) return b;
          last = b.under("pair.snd");
        }
        return last;
      }
      case K::Fst:
      case K::Snd: {
        bool first = t.kind() == K::Fst;
        Outcome why;
        auto heads = infer(ctx, t.child(0), why);
        if (heads.empty()) return why.under(first ? "fst.body" : "snd.body");
        for (const Formula& head : heads) {
          for (const Formula& r : reach(head, Polarity::Negative)) {
            if (r.kind() != Formula::Kind::And) continue;
            if (joins(first ? r.lhs() : r.rhs(), goal)) return {};
          }
        }
        return Outcome::fail("no negative reduct of " + format_formula(heads.front()) +
                             " is a conjunction whose " + (first ? "left" : "right") + " part joins " +
                             format_formula(goal));
      }
      case K::Inl:
      case K::Inr: {
        bool left = t.kind() == K::Inl;
        Outcome last = Outcome::fail("no positive reduct of " + format_formula(goal) +
                                     " is a disjunction matching " + format_formula(t.ann()));
        for (const Formula& r : reach(goal, Polarity::Positive)) {
          if (r.kind() != Formula::Kind::Or) continue;
          if (!(r == t.ann()) && !reach_contains(t.ann(), Polarity::Negative, r)) continue;
          Outcome body = check(ctx, t.child(0), left ? r.lhs() : r.rhs());
          if (body.ok) return body;
          last = body.under(left ? "inl.body" : "inr.body");
        }
        return last;
      }
      case K::Case: {
        Outcome why;
        if (!case_scrutinee(ctx, t, why)) return why;
        Outcome a = check(ctx.extended(t.name(), t.ann()), t.child(1), goal);
        if (!a.ok) return a.under("case.left");
        Outcome b = check(ctx.extended(t.name2(), t.ann2()), t.child(2), goal);
        if (!b.ok) return b.under("case.right");
        return {};
      }
      case K::ExFalso: {
        Outcome why;
        auto bodies = infer(ctx, t.child(0), why);
        if (bodies.empty()) return why.under("exfalso.body");
        for (const Formula& body : bodies) {
          if (reach_contains(body, Polarity::Negative, Formula::falsum())) return {};
        }
        return Outcome::fail(format_formula(bodies.front()) + " does not rewrite negatively to false");
      }
    }
    return Outcome::fail("unknown term");
  }

  // Formulas `t` can be given as an elimination head, most specific first.
  // Empty when `t` does not check, with the reason in `why`.
  std::vector<Formula> infer(const Context& ctx, const ProofTerm& t, Outcome& why) {
    using K = ProofTerm::Kind;
    std::vector<Formula> out;
    if (exhausted()) {
      why = Outcome::fail("checker work budget exhausted");
      return out;
    }
    switch (t.kind()) {
      case K::Var: {
        const Formula* hyp = ctx.lookup(t.name());
        if (!hyp) {
          why = Outcome::fail("unbound proof variable '" + t.name() + "'");
        } else {
          out.push_back(*hyp);
        }
        return out;
      }
      case K::Lam: {
        auto bodies = infer(ctx.extended(t.name(), t.ann()), t.child(0), why);
        if (bodies.empty()) why.under("lam.body");
        for (const Formula& b : bodies) add(out, Formula::implies(t.ann(), b));
        return out;
      }
      case K::App: {
        auto heads = infer(ctx, t.child(0), why);
        if (heads.empty()) {
          why.under("app.fun");
          return out;
        }
        why = Outcome::fail("no negative reduct of " + format_formula(heads.front()) + " is an implication");
        for (const Formula& head : heads) {
          for (const Formula& r : reach(head, Polarity::Negative)) {
            if (r.kind() != Formula::Kind::Implies) continue;
            Outcome arg = check(ctx, t.child(1), r.lhs());
            if (arg.ok) {
              add(out, r.rhs());
            } else {
              why = arg.under("app.arg");
            }
          }
        }
        return out;
      }
      case K::Pair: {
        auto as = infer(ctx, t.child(0), why);
        if (as.empty()) {
          why.under("pair.fst");
          return out;
        }
        auto bs = infer(ctx, t.child(1), why);
        if (bs.empty()) {
          why.under("pair.snd");
          return out;
        }
        for (const Formula& a : as) {
          for (const Formula& b : bs) add(out, Formula::conj(a, b));
        }
        return out;
      }
      case K::Fst:
      case K::Snd: {
        bool first = t.kind() == K::Fst;
        auto heads = infer(ctx, t.child(0), why);
        if (heads.empty()) {
          why.under(first ? "fst.body" : "snd.body");
          return out;
        }
        for (const Formula& head : heads) {
          for (const Formula& r : reach(head, Polarity::Negative)) {
            if (r.kind() == Formula::Kind::And) add(out, first ? r.lhs() : r.rhs());
          }
        }
        if (out.empty()) why = Outcome::fail("no negative reduct of " + format_formula(heads.front()) + " is a conjunction");
        return out;
      }
      case K::Inl:
      case K::Inr:
      case K::ExFalso: {
        Outcome self = check(ctx, t, t.ann());
        if (self.ok) {
          out.push_back(t.ann());
        } else {
          why = self;
        }
        return out;
      }
      case K::Case: {
        if (!case_scrutinee(ctx, t, why)) return out;
        // The branches agree on a formula one of them synthesizes, on a
        // negative reduct of it, or failing both on a positive ancestor.
        Context left_ctx = ctx.extended(t.name(), t.ann());
        Context right_ctx = ctx.extended(t.name2(), t.ann2());
        std::vector<Formula> synth[2];
        for (int side = 0; side < 2; ++side) {
          Outcome inner;
          synth[side] = infer(side == 0 ? left_ctx : right_ctx, t.child(side + 1), inner);
          if (synth[side].empty()) {
            why = inner.under(side == 0 ? "case.left" : "case.right");
            return {};
          }
        }
        auto full = [&] {
          if (out.size() < kMaxCandidates) return false;
          incomplete_ = true;
          return true;
        };
        auto agree = [&](const Formula& r) {
          if (std::find(out.begin(), out.end(), r) != out.end()) return;
          if (check(left_ctx, t.child(1), r).ok && check(right_ctx, t.child(2), r).ok) add(out, r);
        };
        for (const auto& side : synth) {
          for (const Formula& s : side) {
            for (const Formula& r : reach(s, Polarity::Negative)) {
              if (full()) return out;
              agree(r);
            }
          }
        }
        for (const auto& side : synth) {
          if (!out.empty()) break;
          for (const Formula& s : side) {
            ReachSet up = ancestors(s, Polarity::Positive, cache_.system(), cache_.bounds());
            if (!up.complete()) incomplete_ = true;
            for (const Formula& r : up.items) {
              if (full()) return out;
              agree(r);
            }
          }
        }
        if (out.empty()) why = Outcome::fail("the branches have no common formula");
        return out;
      }
    }
    return out;
  }
 private:
  const std::vector<Formula>& reach(const Formula& f, Polarity pol) {
    const ReachSet& r = cache_.reach(f, pol);
    if (!r.complete()) incomplete_ = true;
    return r.items;
  }

  bool reach_contains(const Formula& from, Polarity pol, const Formula& target) {
    const ReachSet& r = cache_.reach(from, pol);
    if (r.contains(target)) return true;
    if (!r.complete()) incomplete_ = true;
    return false;
  }

  bool joins(const Formula& a, const Formula& b) {
    JoinResult j = cache_.join(a, b);
    if (j.status == JoinStatus::Inconclusive) incomplete_ = true;
    return j.status == JoinStatus::Found;
  }

  // A branch hypothesis may be stronger than the disjunct it stands for:
  // hypothesis H covers disjunct D when H ->+ D.
  bool case_matches(const ProofTerm& t, const Formula& r) {
    if (r.kind() != Formula::Kind::Or) return false;
    auto covers = [&](const Formula& hyp, const Formula& part) {
      return hyp == part || reach_contains(hyp, Polarity::Positive, part);
    };
    return covers(t.ann(), r.lhs()) && covers(t.ann2(), r.rhs());
  }

  // The scrutinee either checks against the disjunction of the branch
  // hypotheses or synthesizes a formula that rewrites negatively to one the
  // hypotheses cover.
  bool case_scrutinee(const Context& ctx, const ProofTerm& t, Outcome& why) {
    const ProofTerm& s = t.child(0);
    Outcome direct = check(ctx, s, Formula::disj(t.ann(), t.ann2()));
    if (direct.ok) return true;
    auto scruts = infer(ctx, s, why);
    if (scruts.empty()) {
      why.under("case.scrut");
      return false;
    }
    for (const Formula& scrut : scruts) {
      for (const Formula& r : reach(scrut, Polarity::Negative)) {
        if (case_matches(t, r)) return true;
      }
    }
    why = Outcome::fail("no negative reduct of " + format_formula(scruts.front()) +
                        " is a disjunction matching the branch hypotheses");
    return false;
  }

  void add(std::vector<Formula>& out, const Formula& f) {
    if (std::find(out.begin(), out.end(), f) != out.end()) return;
    if (out.size() >= kMaxCandidates) {
      incomplete_ = true;
      return;
    }
    out.push_back(f);
  }

  // Past this much memoized formula size the search stops and the verdict is
  // Inconclusive; it keeps non-terminating systems from exhausting memory.
  bool exhausted() {
    if (cache_.stored() <= kMaxStored) return false;
    incomplete_ = true;
    return true;
  }

  static constexpr std::size_t kMaxCandidates = 32;
  static constexpr std::size_t kMaxStored = 2'000'000;

  ReachCache cache_;
  bool incomplete_ = false;
};

CheckVerdict to_verdict(const Outcome& o, bool incomplete) {
  if (o.ok) return {CheckStatus::Ok, {}, {}};
  return {incomplete ? CheckStatus::Inconclusive : CheckStatus::Fail, o.path, o.reason};
}

}  // namespace

CheckVerdict check_proof(const Context& ctx, const ProofTerm& term, const Formula& goal,
                         const RewriteSystem& sys, CheckConfig cfg) {
  Checker checker(sys, cfg);
  Outcome o = checker.check(ctx, term, goal);
  return to_verdict(o, checker.incomplete());
}

std::optional<Formula> infer_proof(const Context& ctx, const ProofTerm& term, const RewriteSystem& sys,
                                   CheckConfig cfg) {
  Checker checker(sys, cfg);
  Outcome why;
  auto all = checker.infer(ctx, term, why);
  if (all.empty()) return std::nullopt;
  return all.front();
}

}  // namespace pdm
