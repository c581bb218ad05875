#pragma once

#include <optional>
#include <string>
#include <vector>

#include "focksynth/gates.hpp"

namespace focksynth {

/// Instructions with |angle| below this are dropped from emitted programs.
inline constexpr double kPruneAngle = 1e-12;

/// Amplitudes below this modulus are treated as exact zeros when solving for
/// angles.
inline constexpr double kSolverZero = 1e-12;

struct SynthesisOptions {
  /// Subtraction: sweep mode-A columns k = 0 -> N_a instead of N_a -> 0.
  bool reverse_columns = false;
  /// Keep every solved phase inside (-pi + 1e-9, pi - 1e-9] by trading a
  /// phase of pi for the supplementary transfer angle. This is the branch the
  /// NOON golden programs use.
  bool fold_phases = true;
  /// Store a state snapshot after every trace step.
  bool record_states = true;
};

/// One reverse-evolution step. `inverse_ops` are the solved instructions in
/// the order their adjoints were applied, before pruning.
struct TraceStep {
  std::string stage;
  int outer = 0;  ///< j for ladder sweeps, l for diagonal sweeps
  int inner = 0;  ///< k (subtraction column) or m (swapping position); 0 if unused
  std::vector<Instruction> inverse_ops;
  StateVector state_after;
};

struct SynthesisTrace {
  std::vector<TraceStep> steps;
  StateVector final_state;  ///< exp(i chi) |ground>
  double chi = 0.0;

  /// All solved instructions, unpruned, in reverse-evolution order.
  std::vector<Instruction> all_inverse_ops() const;
};

struct SynthesisResult {
  PulseProgram program;
  SynthesisTrace trace;
};

/// Algorithm tags written into PulseProgram::algorithm.
namespace algorithm {
inline constexpr const char* kQuditDirect = "qudit-direct";
inline constexpr const char* kQuditReverse = "qudit-reverse";
inline constexpr const char* kLawEberly = "law-eberly";
inline constexpr const char* kSubtraction = "subtraction";
inline constexpr const char* kSwapping = "swapping";
inline constexpr const char* kDiagonal = "diagonal";
}  // namespace algorithm

/// Qudit programs act on mode-A levels 0..d-1 (dims (d-1, 0)), starting from |0>.
SynthesisResult synth_qudit_direct(std::span<const Complex> coeffs);
SynthesisResult synth_qudit_reverse(std::span<const Complex> coeffs,
                                    const SynthesisOptions& opts = {});

/// Single resonator, target sum_n c_n |0, n, 0> with N_max = dims.n_a.
SynthesisResult synth_law_eberly(const StateVector& target, const SynthesisOptions& opts = {});

/// Two resonators by photon subtraction: empties mode B row by row, then runs
/// the single-resonator ladder on mode A.
SynthesisResult synth_subtraction(const StateVector& target, const SynthesisOptions& opts = {});

/// Two resonators by photon swapping along diagonals of fixed n_a + n_b.
/// `max_total` overrides the top diagonal (default: highest occupied). The
/// program space is widened to (max(N_a, L), max(N_b, L)).
SynthesisResult synth_swapping(const StateVector& target, const SynthesisOptions& opts = {},
                               std::optional<int> max_total = std::nullopt);

/// Target confined to one diagonal n_a + n_b = N. One swap pass followed by the
/// mode-A ladder; the program has no selective rotations.
SynthesisResult synth_diagonal(const StateVector& target, const SynthesisOptions& opts = {});

/// Dispatch by algorithm tag; qudit tags read the mode-A column of `target`.
SynthesisResult synthesize(const std::string& algorithm_name, const StateVector& target,
                           const SynthesisOptions& opts = {});

}  // namespace focksynth
