#include "focksynth/synthesis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace focksynth {

namespace {

constexpr double kPi = std::numbers::pi;
const Complex kI{0.0, 1.0};

Complex snap(Complex z) { return std::abs(z) < kSolverZero ? Complex{} : z; }

/// Checks shared by all resonator synthesizers; returns a normalized copy.
StateVector checked_target(const StateVector& target) {
  const double n = target.norm();
  if (!(n > 0.0) || !std::isfinite(n)) throw InvalidTarget("target has zero or non-finite norm");
  const Dims d = target.dims();
  for (int a = 0; a <= d.n_a; ++a)
    for (int b = 0; b <= d.n_b; ++b)
      if (std::abs(target(1, a, b)) > kAmplitudeZero * n) {
        throw InvalidTarget("target has amplitude on the excited qubit level");
      }
  StateVector out = target;
  out.normalize();
  return out;
}

/// Drives a state to the ground state one zeroing condition at a time and
/// records the adjoint of each solved gate.
class ReverseEvolver {
 public:
  ReverseEvolver(StateVector state, const SynthesisOptions& opts)
      : state_(std::move(state)), opts_(opts) {}

  void begin(std::string stage, int outer, int inner) {
    current_ = TraceStep{std::move(stage), outer, inner, {}, {}};
  }

  void end() {
    if (opts_.record_states) current_.state_after = state_;
    trace_.steps.push_back(std::move(current_));
  }

  /// Empty the q = 0 amplitude `zeroed` into its q = 1 partner through a swap
  /// whose pair frequency is sqrt(n).
  void swap_from_ground(BasisIndex zeroed, BasisIndex partner, GateKind swap, int n) {
    const Complex a = snap(state_[zeroed]);
    const Complex b = snap(state_[partner]);
    auto [phase, x] = solve(a, b, a == Complex{} ? 0.0 : phase_of(b * std::conj(kI * a)));
    emit(Instruction::phase(phase));
    emit(swap_instruction(swap, x, n));
  }

  /// Empty the q = 1 amplitude `zeroed` into its q = 0 partner, either through
  /// a swap (sqrt(n) frequency) or a qubit rotation.
  void swap_from_excited(BasisIndex zeroed, BasisIndex partner, GateKind swap, int n) {
    const auto [phase, x] = excited_angles(zeroed, partner);
    emit(Instruction::phase(phase));
    emit(swap_instruction(swap, x, n));
  }

  void rotate_from_excited(BasisIndex zeroed, BasisIndex partner,
                           std::optional<Selectivity> selectivity) {
    const auto [phase, x] = excited_angles(zeroed, partner);
    emit(Instruction::phase(phase));
    emit(selectivity ? Instruction::selective(2 * x, *selectivity) : Instruction::rotation(2 * x));
  }

  /// Raw adjoint application for algorithms that solve their own angles.
  void emit(const Instruction& instr) {
    apply(instr, state_, Direction::Inverse);
    current_.inverse_ops.push_back(instr);
  }

  const StateVector& state() const { return state_; }

  SynthesisResult finish(std::string algorithm_name, const StateVector& target) {
    trace_.final_state = state_;
    trace_.chi = phase_of(state_(0, 0, 0));

    SynthesisResult result;
    result.program.algorithm = std::move(algorithm_name);
    result.program.dims = state_.dims();
    result.program.target = target;
    result.program.residual_global_phase = wrap_angle(-trace_.chi);
    for (auto step = trace_.steps.rbegin(); step != trace_.steps.rend(); ++step) {
      for (auto op = step->inverse_ops.rbegin(); op != step->inverse_ops.rend(); ++op) {
        if (std::abs(op->angle) >= kPruneAngle) result.program.instructions.push_back(*op);
      }
    }
    result.trace = std::move(trace_);
    return result;
  }

 private:
  std::pair<double, double> excited_angles(BasisIndex zeroed, BasisIndex partner) const {
    const Complex b = snap(state_[zeroed]);
    const Complex a = snap(state_[partner]);
    return solve(b, a, b == Complex{} ? 0.0 : phase_of(kI * b * std::conj(a)));
  }

  /// Transfer angle x in [0, pi/2] with tan x = |zeroed / partner|, then the
  /// optional fold of a near-pi phase into x -> pi - x.
  std::pair<double, double> solve(Complex zeroed, Complex partner, double phase) const {
    if (zeroed == Complex{}) return {0.0, 0.0};
    double x = partner == Complex{} ? kPi / 2 : std::atan(std::abs(zeroed) / std::abs(partner));
    if (opts_.fold_phases && std::abs(phase) > kPi - 1e-9) {
      phase -= std::copysign(kPi, phase);
      x = kPi - x;
    }
    return {phase, x};
  }

  static Instruction swap_instruction(GateKind swap, double x, int n) {
    const double theta = x / std::sqrt(static_cast<double>(n));
    return swap == GateKind::SwapA ? Instruction::swap_a(theta) : Instruction::swap_b(theta);
  }

  StateVector state_;
  SynthesisOptions opts_;
  SynthesisTrace trace_;
  TraceStep current_;
};

/// Mode-A ladder along n_b = 0 for j = top -> 1.
void law_eberly_sweep(ReverseEvolver& ev, int top, const std::string& stage,
                      bool selective_rotations) {
  for (int j = top; j >= 1; --j) {
    ev.begin(stage, j, 0);
    ev.swap_from_ground({0, j, 0}, {1, j - 1, 0}, GateKind::SwapA, j);
    ev.rotate_from_excited({1, j - 1, 0}, {0, j - 1, 0},
                           selective_rotations ? std::optional(Selectivity::exact(j - 1, 0))
                                               : std::nullopt);
    ev.end();
  }
}

/// One diagonal pass at total excitation l: moves everything on n_a + n_b = l
/// to |0, l-1, 0> and the diagonals below.
void diagonal_pass(ReverseEvolver& ev, int l, std::optional<Selectivity> final_rotation) {
  for (int m = l; m >= 1; --m) {
    ev.begin("diagonal", l, m);
    ev.swap_from_ground({0, l - m, m}, {1, l - m, m - 1}, GateKind::SwapB, m);
    if (m > 1) {
      ev.swap_from_excited({1, l - m, m - 1}, {0, l - m + 1, m - 1}, GateKind::SwapA, l - m + 1);
    } else {
      ev.swap_from_ground({0, l, 0}, {1, l - 1, 0}, GateKind::SwapA, l);
    }
    ev.end();
  }
  ev.begin("diagonal", l, 0);
  ev.rotate_from_excited({1, l - 1, 0}, {0, l - 1, 0}, final_rotation);
  ev.end();
}

}  // namespace

std::vector<Instruction> SynthesisTrace::all_inverse_ops() const {
  std::vector<Instruction> out;
  for (const auto& s : steps) out.insert(out.end(), s.inverse_ops.begin(), s.inverse_ops.end());
  return out;
}

SynthesisResult synth_qudit_direct(std::span<const Complex> coeffs) {
  if (coeffs.size() < 2) throw InvalidTarget("qudit dimension must be at least 2");
  const StateVector target = single_mode_state(coeffs);
  const int d = static_cast<int>(coeffs.size());
  std::vector<Complex> normalized(static_cast<std::size_t>(d));
  for (int n = 0; n < d; ++n) normalized[static_cast<std::size_t>(n)] = target(0, n, 0);
  const SphericalCoords sc = to_spherical(normalized);

  SynthesisResult result;
  result.program.algorithm = algorithm::kQuditDirect;
  result.program.dims = target.dims();
  result.program.target = target;
  auto push = [&](const Instruction& instr) {
    if (std::abs(instr.angle) >= kPruneAngle) result.program.instructions.push_back(instr);
  };
  for (int k = 0; k + 1 < d; ++k) {
    const auto ks = static_cast<std::size_t>(k);
    push(Instruction::qudit_rotation(2 * sc.thetas[ks], k));
    push(Instruction::qudit_phase(kPi / 2, k + 1));
    push(Instruction::qudit_phase(sc.phis[ks], k));
  }
  push(Instruction::qudit_phase(sc.phis[static_cast<std::size_t>(d - 1)], d - 1));
  result.trace.final_state = StateVector::ground(target.dims());
  return result;
}

SynthesisResult synth_qudit_reverse(std::span<const Complex> coeffs, const SynthesisOptions& opts) {
  if (coeffs.size() < 2) throw InvalidTarget("qudit dimension must be at least 2");
  const StateVector target = single_mode_state(coeffs);
  const int d = static_cast<int>(coeffs.size());
  ReverseEvolver ev(target, opts);
  for (int j = d - 1; j >= 1; --j) {
    const Complex lo = snap(ev.state()(0, j - 1, 0));
    const Complex hi = snap(ev.state()(0, j, 0));
    double alpha = 0.0, beta = 0.0, gamma = 0.0;
    if (lo != Complex{} || hi != Complex{}) {
      alpha = phase_of(lo);
      beta = wrap_angle(kPi / 2 + phase_of(hi));
      gamma = 2 * std::atan2(std::abs(hi), std::abs(lo));
    }
    ev.begin("qudit", j, 0);
    ev.emit(Instruction::qudit_phase(alpha, j - 1));
    ev.emit(Instruction::qudit_phase(beta, j));
    ev.emit(Instruction::qudit_rotation(gamma, j - 1));
    ev.end();
  }
  return ev.finish(algorithm::kQuditReverse, target);
}

SynthesisResult synth_law_eberly(const StateVector& target, const SynthesisOptions& opts) {
  StateVector t = checked_target(target);
  const Dims d = t.dims();
  for (int a = 0; a <= d.n_a; ++a)
    for (int b = 1; b <= d.n_b; ++b)
      if (std::abs(t(0, a, b)) > kAmplitudeZero) {
        throw InvalidTarget("single-resonator target has photons in mode B");
      }
  if (d.n_b != 0) t = t.truncated({d.n_a, 0});
  ReverseEvolver ev(t, opts);
  law_eberly_sweep(ev, d.n_a, "ladder", false);
  return ev.finish(algorithm::kLawEberly, t);
}

SynthesisResult synth_subtraction(const StateVector& target, const SynthesisOptions& opts) {
  const StateVector t = checked_target(target);
  const Dims d = t.dims();
  ReverseEvolver ev(t, opts);
  for (int j = d.n_b; j >= 1; --j) {
    for (int i = 0; i <= d.n_a; ++i) {
      const int k = opts.reverse_columns ? i : d.n_a - i;
      ev.begin("subtract", j, k);
      ev.swap_from_ground({0, k, j}, {1, k, j - 1}, GateKind::SwapB, j);
      ev.rotate_from_excited({1, k, j - 1}, {0, k, j - 1}, Selectivity::exact(k, j - 1));
      ev.end();
    }
  }
  law_eberly_sweep(ev, d.n_a, "ladder", true);
  return ev.finish(algorithm::kSubtraction, t);
}

SynthesisResult synth_swapping(const StateVector& target, const SynthesisOptions& opts,
                               std::optional<int> max_total) {
  const StateVector t = checked_target(target);
  const SupportBounds sb = support_bounds(t);
  int top = std::max(0, sb.max_excitation);
  if (max_total) {
    if (*max_total < top) throw InvalidTarget("target has support above the requested diagonal");
    top = *max_total;
  }
  const Dims wide{std::max(t.dims().n_a, top), std::max(t.dims().n_b, top)};
  const StateVector working = t.embedded(wide);
  ReverseEvolver ev(working, opts);
  for (int l = top; l >= 1; --l) diagonal_pass(ev, l, Selectivity::mode_a(l - 1));
  return ev.finish(algorithm::kSwapping, working);
}

SynthesisResult synth_diagonal(const StateVector& target, const SynthesisOptions& opts) {
  const StateVector t = checked_target(target);
  const SupportBounds sb = support_bounds(t);
  const int n = std::max(0, sb.max_excitation);
  const auto amps = t.amplitudes();
  for (std::size_t i = 0; i < amps.size(); ++i) {
    const auto idx = t.index_of(i);
    if (std::abs(amps[i]) > kAmplitudeZero && idx.n_a + idx.n_b != n) {
      throw InvalidTarget("diagonal target has support off n_a + n_b = " + std::to_string(n));
    }
  }
  const Dims wide{std::max(t.dims().n_a, n), std::max(t.dims().n_b, n)};
  const StateVector working = t.embedded(wide);
  ReverseEvolver ev(working, opts);
  if (n >= 1) {
    diagonal_pass(ev, n, std::nullopt);
    law_eberly_sweep(ev, n - 1, "ladder", false);
  }
  return ev.finish(algorithm::kDiagonal, working);
}

SynthesisResult synthesize(const std::string& name, const StateVector& target,
                           const SynthesisOptions& opts) {
  if (name == algorithm::kQuditDirect || name == algorithm::kQuditReverse) {
    const StateVector t = checked_target(target);
    std::vector<Complex> c(static_cast<std::size_t>(t.dims().n_a + 1));
    for (int n = 0; n <= t.dims().n_a; ++n) {
      for (int b = 1; b <= t.dims().n_b; ++b)
        if (std::abs(t(0, n, b)) > kAmplitudeZero) throw InvalidTarget("qudit target uses mode B");
      c[static_cast<std::size_t>(n)] = t(0, n, 0);
    }
    return name == algorithm::kQuditDirect ? synth_qudit_direct(c) : synth_qudit_reverse(c, opts);
  }
  if (name == algorithm::kLawEberly) return synth_law_eberly(target, opts);
  if (name == algorithm::kSubtraction) return synth_subtraction(target, opts);
  if (name == algorithm::kSwapping) return synth_swapping(target, opts);
  if (name == algorithm::kDiagonal) return synth_diagonal(target, opts);
  throw std::invalid_argument("unknown algorithm '" + name + "'");
}

}  // namespace focksynth
