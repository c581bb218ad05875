#include "focksynth/gates.hpp"

#include <cmath>
#include <sstream>

namespace focksynth {

namespace {

const Complex kI{0.0, 1.0};

// (x, y) -> (c x - i s y, c y - i s x)
inline void rotate_pair(Complex& x, Complex& y, double angle) {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  const Complex nx = c * x - kI * s * y;
  const Complex ny = c * y - kI * s * x;
  x = nx;
  y = ny;
}

void check_angle(const Instruction& instr) {
  if (!std::isfinite(instr.angle)) throw InvalidInstruction("non-finite angle in " + to_string(instr));
}

}  // namespace

std::string to_string(GateKind kind) {
  switch (kind) {
    case GateKind::QubitRotation: return "R";
    case GateKind::QubitPhase: return "Z";
    case GateKind::SwapA: return "A";
    case GateKind::SwapB: return "B";
    case GateKind::SelectiveRotation: return "Rsel";
    case GateKind::QuditRotation: return "Rq";
    case GateKind::QuditPhase: return "Zq";
  }
  return "?";
}

std::string to_string(const Instruction& instr) {
  std::ostringstream out;
  out << to_string(instr.kind) << '(' << instr.angle;
  if (instr.kind == GateKind::QuditRotation || instr.kind == GateKind::QuditPhase) {
    out << ", n=" << instr.level;
  }
  if (instr.selectivity) {
    const auto& s = *instr.selectivity;
    switch (s.mode) {
      case SelectMode::ExactFock: out << ", n_a=" << s.n_a << " n_b=" << s.n_b; break;
      case SelectMode::ModeA: out << ", n_a=" << s.n_a; break;
      case SelectMode::ModeB: out << ", n_b=" << s.n_b; break;
    }
  }
  out << ')';
  return out.str();
}

void validate(const Instruction& instr, Dims dims) {
  check_angle(instr);
  switch (instr.kind) {
    case GateKind::SelectiveRotation: {
      if (!instr.selectivity) throw InvalidInstruction("selective rotation without a predicate");
      const auto& s = *instr.selectivity;
      const bool a_ok = s.n_a >= 0 && s.n_a <= dims.n_a;
      const bool b_ok = s.n_b >= 0 && s.n_b <= dims.n_b;
      if ((s.mode != SelectMode::ModeB && !a_ok) || (s.mode != SelectMode::ModeA && !b_ok)) {
        throw InvalidInstruction("selectivity index outside the space in " + to_string(instr));
      }
      break;
    }
    case GateKind::QuditRotation:
      if (instr.level < 0 || instr.level + 1 > dims.n_a) {
        throw InvalidInstruction("qudit rotation level outside the space in " + to_string(instr));
      }
      break;
    case GateKind::QuditPhase:
      if (instr.level < 0 || instr.level > dims.n_a) {
        throw InvalidInstruction("qudit phase level outside the space in " + to_string(instr));
      }
      break;
    default:
      if (instr.selectivity) throw InvalidInstruction("predicate on a non-selective gate");
      break;
  }
}

void apply(const Instruction& instr, StateVector& state, Direction direction) {
  validate(instr, state.dims());
  const double angle = direction == Direction::Forward ? instr.angle : -instr.angle;
  const Dims d = state.dims();

  switch (instr.kind) {
    case GateKind::QubitPhase: {
      const Complex p0 = std::polar(1.0, -angle / 2);
      const Complex p1 = std::polar(1.0, angle / 2);
      for (int a = 0; a <= d.n_a; ++a)
        for (int b = 0; b <= d.n_b; ++b) {
          state(0, a, b) *= p0;
          state(1, a, b) *= p1;
        }
      break;
    }
    case GateKind::QubitRotation:
      for (int a = 0; a <= d.n_a; ++a)
        for (int b = 0; b <= d.n_b; ++b) rotate_pair(state(0, a, b), state(1, a, b), angle / 2);
      break;
    case GateKind::SelectiveRotation:
      for (int a = 0; a <= d.n_a; ++a)
        for (int b = 0; b <= d.n_b; ++b)
          if (instr.selectivity->matches(a, b)) rotate_pair(state(0, a, b), state(1, a, b), angle / 2);
      break;
    case GateKind::SwapA:
      // |1, N_a, n_b> has no partner inside the cutoff and is left alone.
      for (int a = 1; a <= d.n_a; ++a) {
        const double rate = std::sqrt(static_cast<double>(a)) * angle;
        for (int b = 0; b <= d.n_b; ++b) rotate_pair(state(0, a, b), state(1, a - 1, b), rate);
      }
      break;
    case GateKind::SwapB:
      for (int b = 1; b <= d.n_b; ++b) {
        const double rate = std::sqrt(static_cast<double>(b)) * angle;
        for (int a = 0; a <= d.n_a; ++a) rotate_pair(state(0, a, b), state(1, a, b - 1), rate);
      }
      break;
    case GateKind::QuditRotation: {
      const int n = instr.level;
      for (int q = 0; q < 2; ++q)
        for (int b = 0; b <= d.n_b; ++b) rotate_pair(state(q, n, b), state(q, n + 1, b), angle / 2);
      break;
    }
    case GateKind::QuditPhase: {
      const Complex p = std::polar(1.0, angle);
      for (int q = 0; q < 2; ++q)
        for (int b = 0; b <= d.n_b; ++b) state(q, instr.level, b) *= p;
      break;
    }
  }
}

StateVector applied(const Instruction& instr, StateVector state, Direction direction) {
  apply(instr, state, direction);
  return state;
}

StateVector run_program(std::span<const Instruction> instructions, const StateVector& initial) {
  for (const auto& instr : instructions) validate(instr, initial.dims());
  StateVector state = initial;
  for (const auto& instr : instructions) apply(instr, state);
  return state;
}

StateVector run_program(const PulseProgram& prog, const StateVector& initial) {
  return run_program(std::span<const Instruction>(prog.instructions), initial);
}

std::vector<SelectivityFlag> required_selectivity(const PulseProgram& prog,
                                                  const StateVector& initial) {
  for (const auto& instr : prog.instructions) validate(instr, initial.dims());
  std::vector<SelectivityFlag> flags;
  StateVector state = initial;
  for (std::size_t i = 0; i < prog.instructions.size(); ++i) {
    const auto& instr = prog.instructions[i];
    if (instr.kind == GateKind::SelectiveRotation) {
      const StateVector plain = applied(Instruction::rotation(instr.angle), state);
      apply(instr, state);
      const double dev = distance(plain, state);
      flags.push_back({i, dev > kSelectivityThreshold, dev});
    } else {
      apply(instr, state);
    }
  }
  return flags;
}

Census census(std::span<const Instruction> instructions) {
  Census c;
  for (const auto& instr : instructions) {
    switch (instr.kind) {
      case GateKind::QubitRotation: ++c.qubit_rotations; break;
      case GateKind::SelectiveRotation: ++c.selective_rotations; break;
      case GateKind::QubitPhase: ++c.qubit_phases; break;
      case GateKind::SwapA: ++c.swaps_a; break;
      case GateKind::SwapB: ++c.swaps_b; break;
      case GateKind::QuditRotation: ++c.qudit_rotations; break;
      case GateKind::QuditPhase: ++c.qudit_phases; break;
    }
  }
  return c;
}

}  // namespace focksynth
