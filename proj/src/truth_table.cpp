#include "pdm/truth_table.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <set>

#include "pdm/error.hpp"

namespace pdm::tt {

namespace {

// Bit j of kLowPattern[k] is bit k of j, for the six atoms that vary inside
// a 64-valuation block.
constexpr std::uint64_t kLowPattern[6] = {
    0xAAAAAAAAAAAAAAAAULL, 0xCCCCCCCCCCCCCCCCULL, 0xF0F0F0F0F0F0F0F0ULL,
    0xFF00FF00FF00FF00ULL, 0xFFFF0000FFFF0000ULL, 0xFFFFFFFF00000000ULL,
};

void check_atom_count(std::size_t n) {
  if (n > kMaxAtoms) throw TooManyAtoms(n, kMaxAtoms);
}

std::uint64_t block_count(std::size_t n) { return n <= 6 ? 1 : (std::uint64_t{1} << (n - 6)); }

std::uint64_t valid_mask(std::size_t n) {
  return n >= 6 ? ~std::uint64_t{0} : (std::uint64_t{1} << (std::uint64_t{1} << n)) - 1;
}

std::vector<std::string> sorted_atoms(const std::vector<Formula>& fs) {
  std::set<std::string> all;
  for (const auto& f : fs) {
    auto a = atoms(f);
    all.insert(a.begin(), a.end());
  }
  return {all.begin(), all.end()};
}

std::optional<std::uint64_t> first_model_serial(const Formula& f,
                                                const std::vector<std::string>& atoms) {
  std::uint64_t total = std::uint64_t{1} << atoms.size();
  for (std::uint64_t i = 0; i < total; ++i) {
    if (eval(f, valuation_at(atoms, i))) return i;
  }
  return std::nullopt;
}

std::optional<std::uint64_t> first_model_bits(const Formula& f, const std::vector<std::string>& atoms) {
  BitProgram prog(f, atoms);
  std::uint64_t blocks = block_count(atoms.size());
  std::uint64_t mask = valid_mask(atoms.size());
  for (std::uint64_t b = 0; b < blocks; ++b) {
    if (std::uint64_t hits = prog.eval_block(b) & mask) return b * 64 + std::countr_zero(hits);
  }
  return std::nullopt;
}

std::optional<std::uint64_t> first_model_parallel(const Formula& f,
                                                  const std::vector<std::string>& atoms) {
  BitProgram prog(f, atoms);
  const std::int64_t blocks = static_cast<std::int64_t>(block_count(atoms.size()));
  const std::uint64_t mask = valid_mask(atoms.size());
  std::uint64_t best = std::numeric_limits<std::uint64_t>::max();
#pragma omp parallel for schedule(static) reduction(min : best)
  for (std::int64_t b = 0; b < blocks; ++b) {
    std::uint64_t hits = prog.eval_block(static_cast<std::uint64_t>(b)) & mask;
    if (hits) best = std::min(best, static_cast<std::uint64_t>(b) * 64 + std::countr_zero(hits));
  }
  if (best == std::numeric_limits<std::uint64_t>::max()) return std::nullopt;
  return best;
}

}  // namespace

Valuation valuation_at(const std::vector<std::string>& atoms, std::uint64_t index) {
  Valuation v;
  for (std::size_t k = 0; k < atoms.size(); ++k) v[atoms[k]] = (index >> k) & 1;
  return v;
}

BitProgram::BitProgram(const Formula& f, const std::vector<std::string>& atoms) {
  check_atom_count(atoms.size());
  emit(f, atoms);
  std::size_t depth = 0;
  for (const auto& in : code_) {
    if (in.op == Op::Atom || in.op == Op::False) {
      max_stack_ = std::max(max_stack_, ++depth);
    } else {
      --depth;
    }
  }
}

void BitProgram::emit(const Formula& f, const std::vector<std::string>& atoms) {
  switch (f.kind()) {
    case Formula::Kind::Atom: {
      auto it = std::find(atoms.begin(), atoms.end(), f.name());
      if (it == atoms.end()) throw MissingAtom(f.name());
      code_.push_back({Op::Atom, static_cast<std::uint32_t>(it - atoms.begin())});
      return;
    }
    case Formula::Kind::Falsum:
      code_.push_back({Op::False, 0});
      return;
    case Formula::Kind::Implies:
    case Formula::Kind::And:
    case Formula::Kind::Or:
      emit(f.lhs(), atoms);
      emit(f.rhs(), atoms);
      code_.push_back({f.kind() == Formula::Kind::Implies ? Op::Implies
                       : f.kind() == Formula::Kind::And   ? Op::And
                                                          : Op::Or,
                       0});
      return;
  }
}

std::uint64_t BitProgram::eval_block(std::uint64_t block) const {
  std::uint64_t small[32] = {};
  std::vector<std::uint64_t> large;
  std::uint64_t* stack = small;
  if (max_stack_ > 32) {
    large.resize(max_stack_);
    stack = large.data();
  }
  std::size_t sp = 0;
  const std::uint64_t base = block * 64;
  for (const auto& in : code_) {
    switch (in.op) {
      case Op::Atom:
        stack[sp++] = in.atom < 6 ? kLowPattern[in.atom]
                                  : (((base >> in.atom) & 1) ? ~std::uint64_t{0} : 0);
        break;
      case Op::False:
        stack[sp++] = 0;
        break;
      case Op::Implies:
        --sp;
        stack[sp - 1] = ~stack[sp - 1] | stack[sp];
        break;
      case Op::And:
        --sp;
        stack[sp - 1] &= stack[sp];
        break;
      case Op::Or:
        --sp;
        stack[sp - 1] |= stack[sp];
        break;
    }
  }
  return stack[0];
}

std::optional<std::uint64_t> first_model(const Formula& f, const std::vector<std::string>& atoms,
                                         Engine engine) {
  check_atom_count(atoms.size());
  switch (engine) {
    case Engine::Serial:
      return first_model_serial(f, atoms);
    case Engine::BitSliced:
      return first_model_bits(f, atoms);
    case Engine::Parallel:
      return first_model_parallel(f, atoms);
  }
  return std::nullopt;
}

std::uint64_t count_models(const Formula& f, const std::vector<std::string>& atoms, Engine engine) {
  check_atom_count(atoms.size());
  if (engine == Engine::Serial) {
    std::uint64_t n = 0;
    for (std::uint64_t i = 0; i < (std::uint64_t{1} << atoms.size()); ++i) n += eval(f, valuation_at(atoms, i));
    return n;
  }
  BitProgram prog(f, atoms);
  const std::int64_t blocks = static_cast<std::int64_t>(block_count(atoms.size()));
  const std::uint64_t mask = valid_mask(atoms.size());
  std::uint64_t n = 0;
  if (engine == Engine::Parallel) {
#pragma omp parallel for schedule(static) reduction(+ : n)
    for (std::int64_t b = 0; b < blocks; ++b) n += std::popcount(prog.eval_block(b) & mask);
  } else {
    for (std::int64_t b = 0; b < blocks; ++b) n += std::popcount(prog.eval_block(b) & mask);
  }
  return n;
}

std::optional<Valuation> first_disagreement(const Formula& a, const Formula& b, Engine engine) {
  auto atoms = sorted_atoms({a, b});
  Formula differ = Formula::disj(Formula::conj(a, Formula::neg(b)), Formula::conj(b, Formula::neg(a)));
  auto index = first_model(differ, atoms, engine);
  if (!index) return std::nullopt;
  return valuation_at(atoms, *index);
}

std::optional<Valuation> first_countermodel(const std::vector<Formula>& hyps,
                                            const std::vector<Formula>& goals, Engine engine) {
  std::vector<Formula> all = hyps;
  all.insert(all.end(), goals.begin(), goals.end());
  auto atoms = sorted_atoms(all);
  Formula bad = Formula::conj(conjunction(hyps), Formula::neg(disjunction(goals)));
  auto index = first_model(bad, atoms, engine);
  if (!index) return std::nullopt;
  return valuation_at(atoms, *index);
}

}  // namespace pdm::tt
