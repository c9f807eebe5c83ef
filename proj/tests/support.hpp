#pragma once

// Shared generators and brute-force reference computations for the tests.
// Nothing here calls the library code under test beyond the data types,
// parsing and eval.

#include <cstdint>
#include <functional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "pdm/rewrite.hpp"
#include "pdm/syntax.hpp"

namespace pdm::testing {

using Rng = std::mt19937_64;

inline Formula random_formula(Rng& rng, const std::vector<std::string>& atoms, int depth) {
  std::uniform_int_distribution<int> pick(0, 9);
  int k = pick(rng);
  if (depth <= 0 || k < 3) {
    if (k == 0) return Formula::falsum();
    std::uniform_int_distribution<std::size_t> a(0, atoms.size() - 1);
    return Formula::atom(atoms[a(rng)]);
  }
  Formula l = random_formula(rng, atoms, depth - 1);
  Formula r = random_formula(rng, atoms, depth - 1);
  switch (k % 4) {
    case 0:
      return Formula::neg(l);
    case 1:
      return Formula::implies(l, r);
    case 2:
      return Formula::conj(l, r);
    default:
      return Formula::disj(l, r);
  }
}

inline std::vector<std::string> atom_names(std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(std::string(1, static_cast<char>('A' + i)));
  return out;
}

inline Theory random_theory(Rng& rng, std::size_t max_atoms, std::size_t max_axioms, int depth) {
  std::uniform_int_distribution<std::size_t> na(1, max_atoms);
  std::uniform_int_distribution<std::size_t> nx(1, max_axioms);
  auto names = atom_names(na(rng));
  Theory t;
  std::size_t count = nx(rng);
  for (std::size_t i = 0; i < count; ++i) t.axioms.push_back(random_formula(rng, names, depth));
  return t;
}

// Every valuation of `atoms`, in binary counting order.
inline std::vector<Valuation> all_valuations(const std::set<std::string>& atoms) {
  std::vector<std::string> names(atoms.begin(), atoms.end());
  std::vector<Valuation> out;
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << names.size()); ++bits) {
    Valuation v;
    for (std::size_t i = 0; i < names.size(); ++i) v[names[i]] = (bits >> i) & 1;
    out.push_back(std::move(v));
  }
  return out;
}

inline bool holds_all(const std::vector<Formula>& fs, const Valuation& v) {
  for (const auto& f : fs) {
    if (!eval(f, v)) return false;
  }
  return true;
}

inline bool holds_any(const std::vector<Formula>& fs, const Valuation& v) {
  for (const auto& f : fs) {
    if (eval(f, v)) return true;
  }
  return false;
}

inline std::set<std::string> atoms_of(const std::vector<Formula>& fs) {
  std::set<std::string> out;
  for (const auto& f : fs) out.merge(atoms(f));
  return out;
}

// hyps |= \/goals by enumeration.
inline bool entails(const std::vector<Formula>& hyps, const std::vector<Formula>& goals) {
  auto all = atoms_of(hyps);
  all.merge(atoms_of(goals));
  for (const auto& v : all_valuations(all)) {
    if (holds_all(hyps, v) && !holds_any(goals, v)) return false;
  }
  return true;
}

inline bool same_models(const std::vector<Formula>& a, const std::vector<Formula>& b) {
  auto all = atoms_of(a);
  all.merge(atoms_of(b));
  for (const auto& v : all_valuations(all)) {
    if (holds_all(a, v) != holds_all(b, v)) return false;
  }
  return true;
}

inline bool satisfiable(const std::vector<Formula>& fs) {
  for (const auto& v : all_valuations(atoms_of(fs))) {
    if (holds_all(fs, v)) return true;
  }
  return false;
}

// Every formula of depth <= `depth` over `atoms` and false, built with
// implication, conjunction and disjunction.
inline std::vector<Formula> formulas_upto(int depth, const std::vector<std::string>& atoms) {
  std::vector<Formula> base{Formula::falsum()};
  for (const auto& a : atoms) base.push_back(Formula::atom(a));
  if (depth == 0) return base;
  auto sub = formulas_upto(depth - 1, atoms);
  std::vector<Formula> out = base;
  for (const auto& x : sub) {
    for (const auto& y : sub) {
      out.push_back(Formula::implies(x, y));
      out.push_back(Formula::conj(x, y));
      out.push_back(Formula::disj(x, y));
    }
  }
  return out;
}

// Reference rewriting: enumerates atom occurrences by explicit paths
// (0 = left child, 1 = right child) and the polarity each one sits at.
struct Occurrence {
  std::vector<int> path;
  std::string atom;
  Polarity polarity;
};

inline void collect_occurrences(const Formula& f, Polarity pol, std::vector<int>& path,
                                std::vector<Occurrence>& out) {
  switch (f.kind()) {
    case Formula::Kind::Atom:
      out.push_back({path, f.name(), pol});
      return;
    case Formula::Kind::Falsum:
      return;
    default:
      path.push_back(0);
      collect_occurrences(f.lhs(), f.kind() == Formula::Kind::Implies ? flip(pol) : pol, path, out);
      path.back() = 1;
      collect_occurrences(f.rhs(), pol, path, out);
      path.pop_back();
  }
}

inline Formula replace_at(const Formula& f, const std::vector<int>& path, std::size_t i, const Formula& by) {
  if (i == path.size()) return by;
  Formula l = f.lhs();
  Formula r = f.rhs();
  if (path[i] == 0) {
    l = replace_at(l, path, i + 1, by);
  } else {
    r = replace_at(r, path, i + 1, by);
  }
  switch (f.kind()) {
    case Formula::Kind::Implies:
      return Formula::implies(l, r);
    case Formula::Kind::And:
      return Formula::conj(l, r);
    default:
      return Formula::disj(l, r);
  }
}

inline std::set<Formula> ref_one_step(const Formula& f, Polarity pol, const RewriteSystem& sys) {
  std::vector<Occurrence> occ;
  std::vector<int> path;
  collect_occurrences(f, pol, path, occ);
  std::set<Formula> out;
  for (const auto& o : occ) {
    for (const auto& rule : sys.rules(o.polarity)) {
      if (rule.lhs == o.atom) out.insert(replace_at(f, o.path, 0, rule.rhs));
    }
  }
  return out;
}

// Reflexive-transitive closure by naive fixpoint, giving up (empty result)
// past `limit` formulas or once some formula exceeds `max_size` nodes.
inline std::set<Formula> ref_closure(const Formula& f, Polarity pol, const RewriteSystem& sys,
                                     std::size_t limit = 4096, std::size_t max_size = 256) {
  std::set<Formula> seen{f};
  std::vector<Formula> frontier{f};
  while (!frontier.empty()) {
    std::vector<Formula> next;
    for (const auto& g : frontier) {
      for (const auto& h : ref_one_step(g, pol, sys)) {
        if (h.size() > max_size) return {};
        if (seen.insert(h).second) next.push_back(h);
      }
    }
    if (seen.size() > limit) return {};
    frontier = std::move(next);
  }
  return seen;
}

}  // namespace pdm::testing
