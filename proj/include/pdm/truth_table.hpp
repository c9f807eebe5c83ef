#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pdm/syntax.hpp"

namespace pdm::tt {

/// Exhaustive enumeration is refused above this many atoms.
inline constexpr std::size_t kMaxAtoms = 20;

/// Evaluation strategy. All three return identical results; `Serial` is the
/// reference the other two are tested against.
enum class Engine {
  Serial,     // one valuation at a time through pdm::eval
  BitSliced,  // 64 valuations per machine word, single thread
  Parallel,   // bit-sliced, blocks distributed with OpenMP
};

/// Valuation index i assigns atoms[k] the value of bit k of i.
Valuation valuation_at(const std::vector<std::string>& atoms, std::uint64_t index);

/// Formula compiled to a postfix program over 64-bit truth vectors.
class BitProgram {
 public:
  BitProgram(const Formula& f, const std::vector<std::string>& atoms);

  /// Truth vector of the formula on valuations [64*block, 64*block + 64).
  std::uint64_t eval_block(std::uint64_t block) const;

 private:
  enum class Op : std::uint8_t { Atom, False, Implies, And, Or };
  struct Instr {
    Op op;
    std::uint32_t atom;
  };

  void emit(const Formula& f, const std::vector<std::string>& atoms);

  std::vector<Instr> code_;
  std::size_t max_stack_ = 0;
};

/// Lowest valuation index over `atoms` that satisfies `f`, or nullopt.
/// `atoms` must cover atoms(f). Throws TooManyAtoms above kMaxAtoms.
std::optional<std::uint64_t> first_model(const Formula& f, const std::vector<std::string>& atoms,
                                         Engine engine = Engine::Parallel);

/// Number of satisfying valuations.
std::uint64_t count_models(const Formula& f, const std::vector<std::string>& atoms,
                           Engine engine = Engine::Parallel);

/// Lowest valuation on which `a` and `b` take different values.
std::optional<Valuation> first_disagreement(const Formula& a, const Formula& b,
                                            Engine engine = Engine::Parallel);

/// Lowest valuation making every `hyps` true and every `goals` false.
std::optional<Valuation> first_countermodel(const std::vector<Formula>& hyps,
                                            const std::vector<Formula>& goals,
                                            Engine engine = Engine::Parallel);

}  // namespace pdm::tt
