#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <set>

#include "pdm/proofterm.hpp"
#include "support.hpp"
#include "term_gen.hpp"

using namespace pdm;
using pdm::testing::Rng;

namespace {

using K = ProofTerm::Kind;

Formula f(const char* s) { return parse_formula(s); }
ProofTerm v(const char* n) { return ProofTerm::var(n); }

// Nameless rendering: bound variables become binder depths, free variables
// keep their names. Two terms are alpha-equivalent iff these agree.
std::string nameless(const ProofTerm& t, std::vector<std::string>& scope) {
  auto bind = [&](const std::string& x, const ProofTerm& body) {
    scope.push_back(x);
    std::string s = nameless(body, scope);
    scope.pop_back();
    return s;
  };
  auto ann = [](const Formula& a) { return "[" + format_formula(a) + "]"; };
  switch (t.kind()) {
    case K::Var: {
      for (std::size_t i = scope.size(); i-- > 0;) {
        if (scope[i] == t.name()) return "#" + std::to_string(scope.size() - 1 - i);
      }
      return "$" + t.name();
    }
    case K::Lam:
      return "(L" + ann(t.ann()) + bind(t.name(), t.child(0)) + ")";
    case K::App:
      return "(A " + nameless(t.child(0), scope) + " " + nameless(t.child(1), scope) + ")";
    case K::Pair:
      return "(P " + nameless(t.child(0), scope) + " " + nameless(t.child(1), scope) + ")";
    case K::Fst:
      return "(F " + nameless(t.child(0), scope) + ")";
    case K::Snd:
      return "(S " + nameless(t.child(0), scope) + ")";
    case K::Inl:
      return "(IL" + ann(t.ann()) + nameless(t.child(0), scope) + ")";
    case K::Inr:
      return "(IR" + ann(t.ann()) + nameless(t.child(0), scope) + ")";
    case K::ExFalso:
      return "(E" + ann(t.ann()) + nameless(t.child(0), scope) + ")";
    case K::Case:
      return "(C " + nameless(t.child(0), scope) + " " + ann(t.ann()) + bind(t.name(), t.child(1)) + " " +
             ann(t.ann2()) + bind(t.name2(), t.child(2)) + ")";
  }
  return "?";
}

std::string nameless(const ProofTerm& t) {
  std::vector<std::string> scope;
  return nameless(t, scope);
}

bool alpha_eq(const ProofTerm& a, const ProofTerm& b) { return nameless(a) == nameless(b); }

// Reference substitution: first rename every binder to a globally unique
// name, then replace without any capture check.
ProofTerm uniquify(const ProofTerm& t, std::map<std::string, std::string>& env, int& counter) {
  auto fresh = [&] { return "u" + std::to_string(counter++) + "_"; };
  auto under = [&](const std::string& x, const std::string& y, const ProofTerm& body) {
    auto saved = env;
    env[x] = y;
    ProofTerm r = uniquify(body, env, counter);
    env = saved;
    return r;
  };
  switch (t.kind()) {
    case K::Var: {
      auto it = env.find(t.name());
      return it == env.end() ? t : ProofTerm::var(it->second);
    }
    case K::Lam: {
      std::string y = fresh();
      return ProofTerm::lam(y, t.ann(), under(t.name(), y, t.child(0)));
    }
    case K::Case: {
      std::string y1 = fresh();
      std::string y2 = fresh();
      return ProofTerm::case_of(uniquify(t.child(0), env, counter), y1, t.ann(), under(t.name(), y1, t.child(1)),
                                y2, t.ann2(), under(t.name2(), y2, t.child(2)));
    }
    default: {
      std::vector<ProofTerm> kids;
      for (const auto& c : t.children()) kids.push_back(uniquify(c, env, counter));
      return t.with_children(std::move(kids));
    }
  }
}

ProofTerm naive_replace(const ProofTerm& t, const std::string& x, const ProofTerm& u) {
  if (t.kind() == K::Var) return t.name() == x ? u : t;
  std::vector<ProofTerm> kids;
  for (const auto& c : t.children()) kids.push_back(naive_replace(c, x, u));
  return t.with_children(std::move(kids));
}

ProofTerm ref_substitute(const ProofTerm& t, const std::string& x, const ProofTerm& u) {
  std::map<std::string, std::string> env;
  int counter = 0;
  return naive_replace(uniquify(t, env, counter), x, u);
}

// Reference one-step reducts at every position.
std::vector<ProofTerm> ref_reducts(const ProofTerm& t, bool ultra) {
  std::vector<ProofTerm> out;
  switch (t.kind()) {
    case K::App:
      if (t.child(0).kind() == K::Lam) {
        out.push_back(ref_substitute(t.child(0).child(0), t.child(0).name(), t.child(1)));
      }
      break;
    case K::Fst:
    case K::Snd:
      if (t.child(0).kind() == K::Pair) out.push_back(t.child(0).child(t.kind() == K::Fst ? 0 : 1));
      break;
    case K::Case: {
      const ProofTerm& s = t.child(0);
      if (s.kind() == K::Inl) {
        out.push_back(ref_substitute(t.child(1), t.name(), s.child(0)));
      } else if (s.kind() == K::Inr) {
        out.push_back(ref_substitute(t.child(2), t.name2(), s.child(0)));
      }
      // Ultra rules fire whatever the scrutinee is.
      if (ultra) {
        out.push_back(t.child(1));
        out.push_back(t.child(2));
      }
      break;
    }
    default:
      break;
  }
  for (std::size_t i = 0; i < t.children().size(); ++i) {
    for (const auto& r : ref_reducts(t.child(i), ultra)) {
      auto kids = t.children();
      kids[i] = r;
      out.push_back(t.with_children(std::move(kids)));
    }
  }
  return out;
}

std::set<std::string> nameless_set(const std::vector<ProofTerm>& ts) {
  std::set<std::string> out;
  for (const auto& t : ts) out.insert(nameless(t));
  return out;
}

// Normal forms reachable from `t` and the lengths of the reduction paths to
// them, by exhaustive search of the reduction graph.
void explore(const ProofTerm& t, std::size_t depth, std::set<std::string>& normals, std::set<std::size_t>& lengths) {
  auto next = ref_reducts(t, false);
  if (next.empty()) {
    normals.insert(nameless(t));
    lengths.insert(depth);
    return;
  }
  for (const auto& n : next) explore(n, depth + 1, normals, lengths);
}

std::vector<pdm::testing::TermCase> corpus(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  auto systems = pdm::testing::reduction_systems(rng);
  return pdm::testing::well_typed_corpus(rng, systems, n);
}

}  // namespace

TEST(Check, Examples) {
  RewriteSystem empty;
  EXPECT_TRUE(check_proof(Context{{{"a", f("P")}}}, v("a"), f("P"), empty).ok());
  auto and_sys = parse_rules("P ->- Q /\\ R\n");
  EXPECT_TRUE(check_proof(Context{{{"a", f("P")}}}, ProofTerm::fst(v("a")), f("Q"), and_sys).ok());
  auto asym = parse_rules("P ->- Q\n");
  auto bad = check_proof(Context{{{"a", f("Q")}}}, v("a"), f("P"), asym);
  EXPECT_EQ(bad.status, CheckStatus::Fail);
  EXPECT_TRUE(check_proof(Context{{{"a", f("P")}}}, v("a"), f("Q"), asym).ok());
}

TEST(Check, IntroductionsAndEliminations) {
  RewriteSystem empty;
  Context none;
  auto id = ProofTerm::lam("x", f("A"), v("x"));
  EXPECT_TRUE(check_proof(none, id, f("A -> A"), empty).ok());
  EXPECT_FALSE(check_proof(none, id, f("A -> B"), empty).ok());
  auto swap = ProofTerm::lam("p", f("A /\\ B"), ProofTerm::pair(ProofTerm::snd(v("p")), ProofTerm::fst(v("p"))));
  EXPECT_TRUE(check_proof(none, swap, f("A /\\ B -> B /\\ A"), empty).ok());
  auto comm = ProofTerm::lam(
      "d", f("A \\/ B"),
      ProofTerm::case_of(v("d"), "x", f("A"), ProofTerm::inr(f("B \\/ A"), v("x")), "y", f("B"),
                         ProofTerm::inl(f("B \\/ A"), v("y"))));
  EXPECT_TRUE(check_proof(none, comm, f("A \\/ B -> B \\/ A"), empty).ok());
  auto efq = ProofTerm::lam("z", f("false"), ProofTerm::ex_falso(f("C"), v("z")));
  EXPECT_TRUE(check_proof(none, efq, f("false -> C"), empty).ok());
  auto mp = ProofTerm::app(v("f"), v("a"));
  EXPECT_TRUE(check_proof(Context{{{"f", f("A -> B")}, {"a", f("A")}}}, mp, f("B"), empty).ok());
  auto wrong = check_proof(Context{{{"f", f("A -> B")}, {"a", f("C")}}}, mp, f("B"), empty);
  EXPECT_EQ(wrong.status, CheckStatus::Fail);
  EXPECT_EQ(wrong.path, "app.arg");
}

TEST(Check, RewritingEnablesIntroductions) {
  // A ->+ B -> C lets a lambda prove A.
  auto sys = parse_rules("A ->+ B -> C\n");
  auto t = ProofTerm::lam("x", f("B"), v("y"));
  EXPECT_TRUE(check_proof(Context{{{"y", f("C")}}}, t, f("A"), sys).ok());
  EXPECT_FALSE(check_proof(Context{{{"y", f("C")}}}, t, f("A"), RewriteSystem{}).ok());
  // The Crabbe presentation: A ->- false gives ex falso from A.
  auto crabbe = parse_rules("A ->- false\nB ->- A\n");
  EXPECT_TRUE(check_proof(Context{{{"b", f("B")}}}, ProofTerm::ex_falso(f("Q"), v("b")), f("Q"), crabbe).ok());
  EXPECT_FALSE(check_proof(Context{}, v("b"), f("Q"), crabbe).ok());
}

// After a beta step the cut formula is gone from the term; the checker has
// to recover a formula the subterm proves.
TEST(Check, ScrutineeCheckedAgainstBranchHypotheses) {
  auto sys = parse_rules("C ->+ ~false\nA ->+ ~false\n");
  auto tt = ProofTerm::lam("z", f("false"), v("z"));
  auto inner = ProofTerm::case_of(ProofTerm::inl(f("C \\/ ~false"), tt), "p", f("C"),
                                  ProofTerm::inl(f("C \\/ ~false"), tt), "q", f("A"),
                                  ProofTerm::inl(f("~false \\/ A"), tt));
  // Neither branch of the scrutinee synthesizes C \/ A, but both prove it.
  auto t = ProofTerm::case_of(inner, "x", f("C"), ProofTerm::inr(f("(A -> ~false) \\/ C"), v("x")), "y", f("A"),
                              ProofTerm::inr(f("(A -> C) \\/ C"), tt));
  EXPECT_TRUE(check_proof(Context{}, t, f("(A -> C) \\/ C"), sys).ok());
}

TEST(Check, CaseHeadsUseNegativeReducts) {
  // The pair's type (A -> false) /\ A is a negative reduct of what the left
  // branch synthesizes.
  auto sys = parse_rules("A ->- false\nC ->- false\n");
  auto pairs = ProofTerm::case_of(
      v("h"), "x", f("false"), ProofTerm::pair(ProofTerm::lam("a", f("A"), v("a")), ProofTerm::ex_falso(f("A"), v("x"))),
      "y", f("false"),
      ProofTerm::pair(ProofTerm::lam("b", f("false"), v("b")), ProofTerm::ex_falso(f("A"), v("y"))));
  Context ctx{{{"h", f("false \\/ false")}}};
  EXPECT_TRUE(check_proof(ctx, ProofTerm::snd(pairs), f("A"), sys).ok());
}

TEST(Check, CaseHeadsUsePositiveAncestors) {
  // The branches synthesize A \/ ~false and ~false \/ B; both prove A \/ B.
  auto sys = parse_rules("A ->+ ~false\nB ->+ ~false\n");
  auto tt = ProofTerm::lam("z", f("false"), v("z"));
  auto c = ProofTerm::case_of(v("d"), "x", f("C"), ProofTerm::inr(f("A \\/ ~false"), tt), "y", f("C"),
                              ProofTerm::inl(f("~false \\/ B"), tt));
  Context ctx{{{"d", f("C \\/ C")}, {"e", f("E")}}};
  EXPECT_TRUE(check_proof(ctx, ProofTerm::fst(ProofTerm::pair(v("e"), c)), f("E"), sys).ok());
  EXPECT_FALSE(check_proof(ctx, ProofTerm::fst(ProofTerm::pair(v("e"), c)), f("E"), RewriteSystem{}).ok());
}

TEST(Check, InconclusiveWhenBoundsBite) {
  auto grow = parse_rules("P ->- P /\\ P\n");
  auto verdict = check_proof(Context{{{"a", f("P")}}}, v("a"), f("Q"), grow, CheckConfig{3, 8});
  EXPECT_EQ(verdict.status, CheckStatus::Inconclusive);
}

TEST(Substitute, Examples) {
  EXPECT_EQ(substitute(v("a"), "a", v("b")), v("b"));
  auto shadow = ProofTerm::lam("a", f("P"), v("a"));
  EXPECT_EQ(substitute(shadow, "a", v("b")), shadow);
  auto capture = ProofTerm::lam("b", f("P"), v("a"));
  EXPECT_EQ(substitute(capture, "a", v("b")), ProofTerm::lam("b'", f("P"), v("b")));
}

TEST(Substitute, AgreesWithRenamingOracle) {
  Rng rng(31);
  auto cases = corpus(80, 31);
  ASSERT_FALSE(cases.empty());
  std::vector<ProofTerm> replacements{v("a0"), v("h1"), ProofTerm::pair(v("h0"), v("a1")),
                                      ProofTerm::lam("h2", f("A"), v("h3"))};
  for (const auto& c : cases) {
    for (const auto& x : {"a0", "a1", "h0", "h1"}) {
      for (const auto& u : replacements) {
        auto got = substitute(c.term, x, u);
        EXPECT_TRUE(alpha_eq(got, ref_substitute(c.term, x, u))) << format_term(c.term) << " [" << x << "]";
      }
    }
  }
}

TEST(Reduce, ContractionGoldens) {
  auto pair = ProofTerm::pair(v("a"), v("b"));
  EXPECT_EQ(reduce_step(ProofTerm::fst(pair)), v("a"));
  EXPECT_EQ(reduce_step(ProofTerm::snd(pair)), v("b"));
  EXPECT_EQ(reduce_step(ProofTerm::app(ProofTerm::lam("a", f("P"), v("a")), v("b"))), v("b"));
  auto scrut_l = ProofTerm::inl(f("P \\/ Q"), v("p"));
  auto scrut_r = ProofTerm::inr(f("P \\/ Q"), v("q"));
  auto branches = [](const ProofTerm& s) {
    return ProofTerm::case_of(s, "x", f("P"), ProofTerm::pair(v("x"), v("x")), "y", f("Q"), v("y"));
  };
  EXPECT_EQ(reduce_step(branches(scrut_l)), ProofTerm::pair(v("p"), v("p")));
  EXPECT_EQ(reduce_step(branches(scrut_r)), v("q"));
  EXPECT_FALSE(reduce_step(v("a")));
  auto stuck = branches(v("s"));
  EXPECT_FALSE(reduce_step(stuck));
  EXPECT_EQ(reduce_step(stuck, true), ProofTerm::pair(v("x"), v("x")));
  EXPECT_EQ(ultra_contractions(stuck), (std::vector<ProofTerm>{ProofTerm::pair(v("x"), v("x")), v("y")}));
}

TEST(Reduce, HasRedex) {
  EXPECT_FALSE(has_redex(ProofTerm::pair(v("a"), v("b"))));
  EXPECT_TRUE(has_redex(ProofTerm::fst(ProofTerm::pair(v("a"), v("b")))));
  auto c = ProofTerm::case_of(v("s"), "x", f("P"), v("x"), "y", f("Q"), v("y"));
  EXPECT_FALSE(has_redex(c));
  EXPECT_TRUE(has_redex(c, true));
}

TEST(Reduce, LeftmostOutermost) {
  // The outer beta redex goes first even though its argument is reducible.
  auto inner = ProofTerm::fst(ProofTerm::pair(v("c"), v("d")));
  auto t = ProofTerm::app(ProofTerm::lam("x", f("P"), v("z")), inner);
  EXPECT_EQ(reduce_step(t), v("z"));
  auto left_first = ProofTerm::pair(inner, ProofTerm::snd(ProofTerm::pair(v("e"), v("g"))));
  EXPECT_EQ(reduce_step(left_first), ProofTerm::pair(v("c"), ProofTerm::snd(ProofTerm::pair(v("e"), v("g")))));
}

TEST(Normalize, Examples) {
  auto n = normalize(v("a"), false, 10);
  EXPECT_EQ(n.normal, v("a"));
  EXPECT_EQ(n.steps, 0u);
  n = normalize(ProofTerm::snd(ProofTerm::pair(v("a"), v("b"))), false, 10);
  EXPECT_EQ(n.normal, v("b"));
  EXPECT_EQ(n.steps, 1u);
  auto t = ProofTerm::app(ProofTerm::lam("a", f("P"), ProofTerm::fst(ProofTerm::pair(v("a"), v("a")))), v("b"));
  n = normalize(t, false, 10);
  EXPECT_EQ(n.normal, v("b"));
  EXPECT_EQ(n.steps, 2u);
  std::set<std::string> normals;
  std::set<std::size_t> lengths;
  explore(t, 0, normals, lengths);
  EXPECT_EQ(normals, (std::set<std::string>{nameless(v("b"))}));
  EXPECT_EQ(lengths, (std::set<std::size_t>{2}));
}

TEST(Normalize, BudgetExhausted) {
  // Self-application of an untyped-looking term loops forever.
  auto w = ProofTerm::lam("x", f("P"), ProofTerm::app(v("x"), v("x")));
  auto omega = ProofTerm::app(w, w);
  try {
    normalize(omega, false, 25);
    FAIL() << "expected the budget to run out";
  } catch (const BudgetExhausted& e) {
    EXPECT_EQ(e.budget(), 25u);
    EXPECT_EQ(e.exit_code(), 3);
    EXPECT_TRUE(has_redex(e.last()));
  }
}

TEST(Reduce, StepsMatchReferenceEnumeration) {
  for (const auto& c : corpus(60, 41)) {
    for (bool ultra : {false, true}) {
      auto got = all_reducts(c.term, ultra);
      EXPECT_EQ(nameless_set(got), nameless_set(ref_reducts(c.term, ultra))) << format_term(c.term);
      auto step = reduce_step(c.term, ultra);
      ASSERT_TRUE(step);
      EXPECT_TRUE(nameless_set(got).contains(nameless(*step)));
    }
  }
}

TEST(Reduce, SubjectReductionSample) {
  auto cases = corpus(60, 43);
  EXPECT_GE(cases.size(), 40u);
  for (const auto& c : cases) {
    ProofTerm t = c.term;
    for (int i = 0; i < 200; ++i) {
      auto next = reduce_step(t);
      if (!next) break;
      t = *next;
      auto verdict = check_proof(c.ctx, t, c.goal, c.sys);
      ASSERT_TRUE(verdict.ok()) << format_term(c.term) << "\n -> " << format_term(t) << "\n" << verdict.path << ": "
                                << verdict.reason;
    }
    EXPECT_FALSE(has_redex(t));
  }
}

TEST(Context, RightmostBindingWins) {
  Context ctx{{{"a", f("P")}, {"a", f("Q")}}};
  ASSERT_NE(ctx.lookup("a"), nullptr);
  EXPECT_EQ(*ctx.lookup("a"), f("Q"));
  EXPECT_EQ(ctx.lookup("b"), nullptr);
  EXPECT_TRUE(check_proof(ctx, v("a"), f("Q"), RewriteSystem{}).ok());
}

TEST(Terms, FreeVarsAndFormatting) {
  auto t = ProofTerm::lam("x", f("A"), ProofTerm::app(v("x"), v("y")));
  EXPECT_EQ(free_vars(t), (std::vector<std::string>{"y"}));
  EXPECT_EQ(t.size(), 4u);
  EXPECT_FALSE(format_term(t).empty());
}
