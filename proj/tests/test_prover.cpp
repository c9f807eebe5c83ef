#include <gtest/gtest.h>

#include <algorithm>

#include "pdm/compile.hpp"
#include "pdm/error.hpp"
#include "pdm/prover.hpp"
#include "support.hpp"

using namespace pdm;
using pdm::testing::Rng;

namespace {

Formula f(const char* s) { return parse_formula(s); }
Sequent seq(const char* s) { return parse_sequent(s); }

const Derivation& derivation(const SearchResult& r) { return std::get<Derivation>(r); }

Derivation leaf(RuleKind rule, const char* s, Principal p) { return {rule, seq(s), std::move(p), {}}; }

Principal axiom_at(std::size_t l, std::size_t r, const char* reduct) {
  Principal p;
  p.side = Side::Both;
  p.index = l;
  p.index2 = r;
  p.reduct = f(reduct);
  return p;
}

Principal at(Side side, std::size_t i, const char* reduct) {
  Principal p;
  p.side = side;
  p.index = i;
  if (reduct) p.reduct = f(reduct);
  return p;
}

RewriteSystem crabbe_rules() { return parse_rules("A ->- false\nB ->- A\n"); }

// Compiled systems over A, B, C, from a fixed seed.
std::vector<RewriteSystem> compiled_corpus(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<RewriteSystem> out;
  while (out.size() < n) {
    Theory t = pdm::testing::random_theory(rng, 3, 3, 2);
    try {
      out.push_back(compile_theory(t).system);
    } catch (const Inconsistent&) {
    }
  }
  return out;
}

}  // namespace

TEST(Prove, Examples) {
  RewriteSystem empty;
  auto r = prove(seq("P |- P"), empty);
  ASSERT_TRUE(proved(r));
  EXPECT_EQ(derivation(r).rule, RuleKind::Axiom);

  auto pq = parse_rules("P ->- Q\n");
  r = prove(seq("P |- Q"), pq);
  ASSERT_TRUE(proved(r));
  EXPECT_EQ(derivation(r).rule, RuleKind::Axiom);
  EXPECT_EQ(derivation(r).principal.reduct, f("Q"));
  EXPECT_TRUE(proved(prove(seq("P |- P"), pq)));

  // Polarization: Q |- P has no derivation, and the theory P => Q does not
  // entail it either.
  auto q = prove(seq("Q |- P"), pq);
  ASSERT_FALSE(proved(q));
  EXPECT_FALSE(std::get<Exhausted>(q).depth_hit);
  EXPECT_FALSE(oracle_provable(seq("Q |- P"), pq));

  EXPECT_FALSE(proved(prove(seq("|- false"), crabbe_rules())));
  EXPECT_TRUE(proved(prove(seq("B |- false"), crabbe_rules())));
  EXPECT_TRUE(proved(prove(seq("|- A \\/ ~A"), empty)));
  EXPECT_TRUE(proved(prove(seq("false |- P"), empty)));
}

TEST(Prove, BotLeftThroughRewriting) {
  auto r = prove(seq("A |- Q"), crabbe_rules());
  ASSERT_TRUE(proved(r));
  EXPECT_EQ(derivation(r).rule, RuleKind::BotL);
}

TEST(Prove, RewritingExposesConnectives) {
  // P unfolds to a conjunction on the left and an implication on the right.
  auto sys = parse_rules("P ->- Q /\\ R\nS ->+ Q -> R\n");
  EXPECT_TRUE(proved(prove(seq("P |- R"), sys)));
  EXPECT_TRUE(proved(prove(seq("|- S \\/ Q"), sys)));
  EXPECT_FALSE(proved(prove(seq("|- S \\/ ~Q"), sys)));
  EXPECT_TRUE(proved(prove(seq("R |- S"), sys)));
  EXPECT_FALSE(proved(prove(seq("Q |- S"), sys)));
}

TEST(Prove, Intuitionistic) {
  RewriteSystem empty;
  SearchConfig ij;
  ij.intuitionistic = true;
  EXPECT_TRUE(proved(prove(seq("|- A -> A"), empty, ij)));
  EXPECT_TRUE(proved(prove(seq("A \\/ B |- B \\/ A"), empty, ij)));
  EXPECT_TRUE(proved(prove(seq("|- ~~(A \\/ ~A)"), empty, ij)));
  EXPECT_TRUE(proved(prove(seq("A -> B, B -> C |- A -> C"), empty, ij)));
  EXPECT_FALSE(proved(prove(seq("|- A \\/ ~A"), empty, ij)));
  EXPECT_FALSE(proved(prove(seq("|- ((A -> B) -> A) -> A"), empty, ij)));
  EXPECT_FALSE(proved(prove(seq("~~A |- A"), empty, ij)));
  EXPECT_TRUE(proved(prove(seq("|- ((A -> B) -> A) -> A"), empty)));
  EXPECT_THROW(prove(seq("|- A, B"), empty, ij), InvalidInput);
  auto r = prove(seq("A \\/ B |- B \\/ A"), empty, ij);
  EXPECT_TRUE(check_derivation(derivation(r), empty, ij).ok);
}

TEST(Prove, DepthBoundIsReported) {
  SearchConfig shallow;
  shallow.depth = 1;
  auto r = prove(seq("A /\\ B |- B /\\ A"), RewriteSystem{}, shallow);
  ASSERT_FALSE(proved(r));
  EXPECT_TRUE(std::get<Exhausted>(r).depth_hit);
  EXPECT_GE(std::get<Exhausted>(r).frontier, 1u);
}

TEST(Prove, AtomicCutsAreChecked) {
  // With cuts enabled, whatever the search finds must still pass the checker.
  auto sys = parse_rules("B ->- A\n");
  SearchConfig cut;
  cut.allow_cut = true;
  for (const char* s : {"A -> C, ~A -> C |- C", "|- B -> A", "B |- A \\/ C"}) {
    auto r = prove(seq(s), sys, cut);
    ASSERT_TRUE(proved(r)) << s;
    EXPECT_TRUE(check_derivation(derivation(r), sys, cut).ok) << s;
    EXPECT_TRUE(oracle_provable(seq(s), sys)) << s;
  }
}

TEST(CheckDerivation, Examples) {
  RewriteSystem empty;
  auto pq = parse_rules("P ->- Q\n");
  EXPECT_TRUE(check_derivation(leaf(RuleKind::Axiom, "P |- P", axiom_at(0, 0, "P")), empty).ok);

  auto bad = check_derivation(leaf(RuleKind::Axiom, "Q |- P", axiom_at(0, 0, "Q")), pq);
  EXPECT_FALSE(bad.ok);
  EXPECT_EQ(bad.path, "");
  EXPECT_EQ(bad.reason, "no rewriting P ->+ Q");

  // Forged witness: C does not rewrite to A -> B.
  Derivation forged{RuleKind::ImpR, seq("|- C"), at(Side::Right, 0, "A -> B"),
                    {leaf(RuleKind::Axiom, "A |- B", axiom_at(0, 0, "A"))}};
  auto v = check_derivation(forged, empty);
  EXPECT_FALSE(v.ok);
  EXPECT_EQ(v.path, "");
  EXPECT_EQ(v.reason, "no rewriting C ->+ A -> B");

  // The same shape is fine once C ->+ A -> A; the failure moves to the leaf
  // when that one is wrong.
  auto ca = parse_rules("C ->+ A -> A\n");
  Derivation good{RuleKind::ImpR, seq("|- C"), at(Side::Right, 0, "A -> A"),
                  {leaf(RuleKind::Axiom, "A |- A", axiom_at(0, 0, "A"))}};
  EXPECT_TRUE(check_derivation(good, ca).ok);
  good.premises[0].principal.reduct = f("B");
  v = check_derivation(good, ca);
  EXPECT_FALSE(v.ok);
  EXPECT_EQ(v.path, "0");
}

TEST(CheckDerivation, ShapeErrors) {
  RewriteSystem empty;
  Derivation no_premise{RuleKind::AndL, seq("A /\\ B |- A"), at(Side::Left, 0, "A /\\ B"), {}};
  EXPECT_FALSE(check_derivation(no_premise, empty).ok);
  Derivation wrong_side = leaf(RuleKind::BotL, "false |- A", at(Side::Right, 0, "false"));
  EXPECT_FALSE(check_derivation(wrong_side, empty).ok);
  Derivation out_of_range = leaf(RuleKind::BotL, "false |- A", at(Side::Left, 3, "false"));
  EXPECT_FALSE(check_derivation(out_of_range, empty).ok);
  // AndL premise may only add the conjuncts.
  Derivation extra{RuleKind::AndL, seq("A /\\ B |- A"), at(Side::Left, 0, "A /\\ B"),
                   {leaf(RuleKind::Axiom, "C |- A", axiom_at(0, 0, "A"))}};
  EXPECT_FALSE(check_derivation(extra, empty).ok);
  SearchConfig ij;
  ij.intuitionistic = true;
  EXPECT_FALSE(check_derivation(leaf(RuleKind::Axiom, "A |- A, B", axiom_at(0, 0, "A")), empty, ij).ok);
  EXPECT_TRUE(check_derivation(leaf(RuleKind::Axiom, "A |- A, B", axiom_at(0, 0, "A")), empty).ok);
}

TEST(CheckDerivation, StructuralAndCutNodes) {
  auto sys = parse_rules("P ->- Q /\\ R\n");
  // ContrL: P |- Q from Q /\ R, Q /\ R |- Q.
  Principal contr = at(Side::Left, 0, "Q /\\ R");
  contr.reduct2 = f("Q /\\ R");
  Derivation inner{RuleKind::AndL, seq("Q /\\ R, Q /\\ R |- Q"), at(Side::Left, 0, "Q /\\ R"),
                   {leaf(RuleKind::Axiom, "Q |- Q", axiom_at(0, 0, "Q"))}};
  Derivation c{RuleKind::ContrL, seq("P |- Q"), contr, {inner}};
  EXPECT_TRUE(check_derivation(c, sys).ok);
  c.premises[0].conclusion = seq("Q /\\ R |- Q");
  EXPECT_FALSE(check_derivation(c, sys).ok);

  // WeakR: A |- A, B from A |- A.
  Derivation w{RuleKind::WeakR, seq("A |- A, B"), at(Side::Right, 1, nullptr),
               {leaf(RuleKind::Axiom, "A |- A", axiom_at(0, 0, "A"))}};
  EXPECT_TRUE(check_derivation(w, sys).ok);
  w.principal.index = 0;
  EXPECT_FALSE(check_derivation(w, sys).ok);

  // Cut on C = P with A = Q /\ R (negative reduct) and B = P.
  Principal cut;
  cut.reduct = f("P");
  cut.cut_left = f("Q /\\ R");
  cut.cut_right = f("P");
  Derivation left{RuleKind::AndL, seq("P, Q /\\ R |- Q"), at(Side::Left, 1, "Q /\\ R"),
                  {leaf(RuleKind::Axiom, "Q |- Q", axiom_at(0, 0, "Q"))}};
  Derivation right = leaf(RuleKind::Axiom, "P |- P, Q", axiom_at(0, 0, "P"));
  Derivation d{RuleKind::Cut, seq("P |- Q"), cut, {left, right}};
  EXPECT_TRUE(check_derivation(d, sys).ok);
  d.principal.cut_right = f("Q /\\ R");
  EXPECT_FALSE(check_derivation(d, sys).ok);
}

TEST(Oracle, Examples) {
  RewriteSystem empty;
  EXPECT_TRUE(oracle_provable(seq("P |- P"), empty));
  EXPECT_FALSE(oracle_provable(seq("|- false"), crabbe_rules()));
  EXPECT_TRUE(oracle_provable(seq("|- A \\/ ~A"), empty));
  EXPECT_TRUE(oracle_provable(seq("|- ~B"), crabbe_rules()));
  EXPECT_TRUE(consistency_check(empty));
  EXPECT_FALSE(consistency_check(parse_rules("P ->- false\nP ->+ ~false\n")));
  EXPECT_TRUE(consistency_check(crabbe_rules()));
}

// With no rules the prover decides classical validity: every sequent
// |- F and F |- G over two atoms, against enumeration.
TEST(Prove, EmptySystemDecidesValidity) {
  RewriteSystem empty;
  auto names = pdm::testing::atom_names(2);
  auto deep = pdm::testing::formulas_upto(2, names);
  for (const auto& g : deep) {
    Sequent s{{}, {g}};
    auto r = prove(s, empty);
    ASSERT_EQ(proved(r), pdm::testing::entails({}, {g})) << format_sequent(s);
    if (proved(r)) {
      EXPECT_TRUE(check_derivation(derivation(r), empty).ok) << format_sequent(s);
    }
  }
  auto shallow = pdm::testing::formulas_upto(1, names);
  for (const auto& a : shallow) {
    for (const auto& b : shallow) {
      Sequent s{{a}, {b}};
      ASSERT_EQ(proved(prove(s, empty)), pdm::testing::entails({a}, {b})) << format_sequent(s);
    }
  }
}

// On compiled (disjoint) systems the prover agrees with an enumeration
// oracle written against the rules read as axioms.
TEST(Prove, AgreesWithOracleOnCompiledSystems) {
  Rng rng(61);
  auto systems = compiled_corpus(6, 61);
  auto names = pdm::testing::atom_names(3);
  for (const auto& sys : systems) {
    auto axioms = rules_to_axioms(sys).axioms;
    for (int i = 0; i < 150; ++i) {
      Formula a = pdm::testing::random_formula(rng, names, 2);
      Formula b = pdm::testing::random_formula(rng, names, 2);
      Sequent s{{a}, {b}};
      auto hyps = axioms;
      hyps.push_back(a);
      bool expect = pdm::testing::entails(hyps, {b});
      EXPECT_EQ(oracle_provable(s, sys), expect);
      auto r = prove(s, sys);
      EXPECT_EQ(proved(r), expect) << format_rules(sys) << format_sequent(s);
      if (proved(r)) {
        EXPECT_TRUE(check_derivation(derivation(r), sys).ok);
      }
    }
  }
}

TEST(Prove, IntuitionisticWithinClassical) {
  Rng rng(67);
  auto systems = compiled_corpus(4, 67);
  systems.push_back(RewriteSystem{});
  auto names = pdm::testing::atom_names(3);
  SearchConfig ij;
  ij.intuitionistic = true;
  int proved_ij = 0;
  for (const auto& sys : systems) {
    for (int i = 0; i < 150; ++i) {
      Sequent s{{pdm::testing::random_formula(rng, names, 2)}, {pdm::testing::random_formula(rng, names, 2)}};
      auto r = prove(s, sys, ij);
      if (!proved(r)) continue;
      ++proved_ij;
      EXPECT_TRUE(check_derivation(derivation(r), sys, ij).ok) << format_sequent(s);
      EXPECT_TRUE(proved(prove(s, sys))) << format_sequent(s);
    }
  }
  EXPECT_GT(proved_ij, 50);
}

TEST(Derivation, FormatAndCounts) {
  auto r = prove(seq("A /\\ B |- B /\\ A"), RewriteSystem{});
  ASSERT_TRUE(proved(r));
  const auto& d = derivation(r);
  EXPECT_EQ(d.rule, RuleKind::AndL);
  EXPECT_EQ(d.node_count(), 4u);
  EXPECT_EQ(d.height(), 3u);
  std::string text = format_derivation(d);
  EXPECT_EQ(text.substr(0, text.find('\n')), "AndL  A /\\ B |- B /\\ A  [A /\\ B]");
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 4);
  for (auto rule : {RuleKind::Axiom, RuleKind::Cut, RuleKind::ContrL, RuleKind::OrR, RuleKind::BotL}) {
    EXPECT_EQ(rule_from_name(rule_name(rule)), rule);
  }
  EXPECT_FALSE(rule_from_name("Nope"));
}
