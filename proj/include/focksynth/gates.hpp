#pragma once

#include <optional>
#include <string>
#include <vector>

#include "focksynth/fock_state.hpp"

namespace focksynth {

class InvalidInstruction : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class GateKind {
  QubitRotation,      ///< R(gamma) = exp(-i gamma/2 sigma_x)
  QubitPhase,         ///< Z(phi) = exp(-i phi/2 sigma_z)
  SwapA,              ///< exp(-i theta (a sigma+ + a^dag sigma-))
  SwapB,              ///< same with mode B
  SelectiveRotation,  ///< R(gamma) conditioned on photon numbers
  QuditRotation,      ///< exp(-i theta/2 X_{n,n+1}) on mode-A levels
  QuditPhase,         ///< |n> -> exp(i phi)|n>
};

enum class SelectMode { ExactFock, ModeA, ModeB };

/// Photon-number predicate for a selective rotation. Unused fields are ignored.
struct Selectivity {
  SelectMode mode = SelectMode::ExactFock;
  int n_a = 0;
  int n_b = 0;

  bool matches(int a, int b) const {
    switch (mode) {
      case SelectMode::ExactFock: return a == n_a && b == n_b;
      case SelectMode::ModeA: return a == n_a;
      case SelectMode::ModeB: return b == n_b;
    }
    return false;
  }

  static Selectivity exact(int n_a, int n_b) { return {SelectMode::ExactFock, n_a, n_b}; }
  static Selectivity mode_a(int n_a) { return {SelectMode::ModeA, n_a, 0}; }
  static Selectivity mode_b(int n_b) { return {SelectMode::ModeB, 0, n_b}; }

  friend bool operator==(const Selectivity&, const Selectivity&) = default;
};

struct Instruction {
  GateKind kind = GateKind::QubitPhase;
  double angle = 0.0;
  int level = 0;  ///< qudit level n for QuditRotation / QuditPhase
  std::optional<Selectivity> selectivity;

  static Instruction rotation(double gamma) { return {GateKind::QubitRotation, gamma, 0, {}}; }
  static Instruction phase(double phi) { return {GateKind::QubitPhase, phi, 0, {}}; }
  static Instruction swap_a(double theta) { return {GateKind::SwapA, theta, 0, {}}; }
  static Instruction swap_b(double theta) { return {GateKind::SwapB, theta, 0, {}}; }
  static Instruction selective(double gamma, Selectivity s) {
    return {GateKind::SelectiveRotation, gamma, 0, s};
  }
  static Instruction qudit_rotation(double theta, int n) {
    return {GateKind::QuditRotation, theta, n, {}};
  }
  static Instruction qudit_phase(double phi, int n) { return {GateKind::QuditPhase, phi, n, {}}; }

  friend bool operator==(const Instruction&, const Instruction&) = default;
};

std::string to_string(GateKind kind);
std::string to_string(const Instruction& instr);

enum class Direction { Forward, Inverse };

/// Throws InvalidInstruction if `instr` cannot act on a space of `dims`.
void validate(const Instruction& instr, Dims dims);

/// Exact unitary action, in place. Inverse applies the adjoint.
void apply(const Instruction& instr, StateVector& state, Direction direction = Direction::Forward);

/// Value-returning convenience wrapper.
StateVector applied(const Instruction& instr, StateVector state,
                    Direction direction = Direction::Forward);

struct PulseProgram {
  std::string algorithm;
  Dims dims;
  StateVector target;
  double residual_global_phase = 0.0;
  /// Execution order: instructions[0] acts first.
  std::vector<Instruction> instructions;
};

/// Left fold of apply over the program. Every instruction is validated against
/// the initial state's dims first.
StateVector run_program(const PulseProgram& prog, const StateVector& initial);
StateVector run_program(std::span<const Instruction> instructions, const StateVector& initial);

struct SelectivityFlag {
  std::size_t index = 0;  ///< position in prog.instructions
  bool required = false;
  double deviation = 0.0;  ///< 2-norm change if the rotation were unconditioned
};

inline constexpr double kSelectivityThreshold = 1e-10;

/// One entry per SelectiveRotation. Each is tested by replacing it with an
/// unconditioned rotation on the state reached just before it.
std::vector<SelectivityFlag> required_selectivity(const PulseProgram& prog,
                                                  const StateVector& initial);

struct Census {
  int qubit_rotations = 0;
  int selective_rotations = 0;
  int qubit_phases = 0;
  int swaps_a = 0;
  int swaps_b = 0;
  int qudit_rotations = 0;
  int qudit_phases = 0;

  int rotations() const { return qubit_rotations + selective_rotations; }
  int swaps() const { return swaps_a + swaps_b; }
};

Census census(std::span<const Instruction> instructions);

}  // namespace focksynth
