#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pdm/error.hpp"
#include "pdm/rewrite.hpp"
#include "pdm/syntax.hpp"

namespace pdm {

/// Natural-deduction proof term with Church-style annotations:
///
///   Var a | Lam(a:A. t) | App(t, u) | Pair(t, u) | Fst t | Snd t
///   | Inl[A\/B] t | Inr[A\/B] t | Case(s, a:A. t, b:B. u) | ExFalso[A] t
///
/// Inl/Inr carry the whole disjunction they conclude, ExFalso the formula it
/// concludes, Lam and the Case branches their bound hypotheses.
class ProofTerm {
 public:
  enum class Kind { Var, Lam, App, Pair, Fst, Snd, Inl, Inr, Case, ExFalso };

  static ProofTerm var(std::string name);
  static ProofTerm lam(std::string var, Formula ann, ProofTerm body);
  static ProofTerm app(ProofTerm fun, ProofTerm arg);
  static ProofTerm pair(ProofTerm fst, ProofTerm snd);
  static ProofTerm fst(ProofTerm body);
  static ProofTerm snd(ProofTerm body);
  static ProofTerm inl(Formula ann, ProofTerm body);
  static ProofTerm inr(Formula ann, ProofTerm body);
  static ProofTerm case_of(ProofTerm scrut, std::string left_var, Formula left_ann, ProofTerm left_body,
                           std::string right_var, Formula right_ann, ProofTerm right_body);
  static ProofTerm ex_falso(Formula ann, ProofTerm body);

  Kind kind() const { return node_->kind; }

  /// Var name, Lam binder, Case left binder.
  const std::string& name() const { return node_->name; }
  /// Case right binder.
  const std::string& name2() const { return node_->name2; }
  /// Lam/Inl/Inr/ExFalso annotation, Case left hypothesis.
  const Formula& ann() const { return node_->ann; }
  /// Case right hypothesis.
  const Formula& ann2() const { return node_->ann2; }

  /// Children in left-to-right order: Lam/Fst/Snd/Inl/Inr/ExFalso have one,
  /// App/Pair two, Case three (scrutinee, left body, right body).
  const std::vector<ProofTerm>& children() const { return node_->kids; }
  const ProofTerm& child(std::size_t i) const { return node_->kids.at(i); }

  /// Number of term nodes; annotations are not counted.
  std::size_t size() const { return node_->size; }

  /// Same node, equal children, equal annotations; binder names must match
  /// literally (no alpha-equivalence).
  friend bool operator==(const ProofTerm& a, const ProofTerm& b);

  /// Copy of this node with `kids` replaced.
  ProofTerm with_children(std::vector<ProofTerm> kids) const;

 private:
  struct Node {
    Kind kind;
    std::string name;
    std::string name2;
    Formula ann;
    Formula ann2;
    std::vector<ProofTerm> kids;
    std::size_t size = 1;
  };

  explicit ProofTerm(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  static ProofTerm make(Node node);

  std::shared_ptr<const Node> node_;
};

/// Readable one-line rendering, e.g. `\a:P. fst(a)`.
std::string format_term(const ProofTerm& t);

std::vector<std::string> free_vars(const ProofTerm& t);

/// Capture-avoiding [replacement/var]term. A binder that would capture a free
/// variable of `replacement` is renamed by appending primes until fresh.
ProofTerm substitute(const ProofTerm& term, const std::string& var, const ProofTerm& replacement);

/// Contracts the leftmost-outermost redex. Beta, fst/snd of a pair and case
/// of inl/inr always count; with `ultra`, any other case(s, ...) contracts to
/// its left body.
std::optional<ProofTerm> reduce_step(const ProofTerm& t, bool ultra = false);

bool has_redex(const ProofTerm& t, bool ultra = false);

/// Both ultra contractions of a root `case` (left body, right body), for
/// reduction-graph exploration. Empty when the root is not a case.
std::vector<ProofTerm> ultra_contractions(const ProofTerm& t);

/// Every one-step reduct under any strategy (reduction graph successors).
std::vector<ProofTerm> all_reducts(const ProofTerm& t, bool ultra = false);

struct NormalizeResult {
  ProofTerm normal;
  std::size_t steps = 0;
};

class BudgetExhausted : public ResourceError {
 public:
  BudgetExhausted(ProofTerm last, std::size_t budget)
      : ResourceError("reduction budget of " + std::to_string(budget) + " steps exhausted"),
        last_(std::move(last)),
        budget_(budget) {}
  const ProofTerm& last() const { return last_; }
  std::size_t budget() const { return budget_; }

 private:
  ProofTerm last_;
  std::size_t budget_;
};

/// Repeats reduce_step until normal. Throws BudgetExhausted after `budget`
/// steps without reaching a normal form.
NormalizeResult normalize(const ProofTerm& t, bool ultra, std::size_t budget);

/// Hypotheses; lookup takes the rightmost binding.
struct Context {
  std::vector<std::pair<std::string, Formula>> entries;

  const Formula* lookup(const std::string& var) const;
  Context extended(std::string var, Formula hyp) const;
};

using CheckConfig = RewriteBounds;

enum class CheckStatus { Ok, Fail, Inconclusive };

struct CheckVerdict {
  CheckStatus status = CheckStatus::Ok;
  /// Subterm path to the failure, e.g. `app.arg/lam.body`; empty at the root.
  std::string path;
  std::string reason;

  bool ok() const { return status == CheckStatus::Ok; }
};

/// Checks that `term` proves `goal` under `ctx` modulo `sys`. Elimination
/// heads synthesize a small set of candidate formulas; every rewriting side
/// condition is a bounded reachability query, and any witness found in BFS
/// order is accepted. A failure that may be due to the bounds, the candidate
/// cap or the internal work budget is reported as Inconclusive.
CheckVerdict check_proof(const Context& ctx, const ProofTerm& term, const Formula& goal,
                         const RewriteSystem& sys, CheckConfig cfg = {});

/// First synthesized formula of `term`, or nullopt when it does not check.
std::optional<Formula> infer_proof(const Context& ctx, const ProofTerm& term, const RewriteSystem& sys,
                                   CheckConfig cfg = {});

}  // namespace pdm
