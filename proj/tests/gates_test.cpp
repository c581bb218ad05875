#include <gtest/gtest.h>

#include <Eigen/Dense>
#include <cmath>
#include <numbers>
#include <unsupported/Eigen/MatrixFunctions>

#include "focksynth/gates.hpp"

using namespace focksynth;

namespace {

constexpr double kPi = std::numbers::pi;
const Complex kI{0, 1};

using Mat = Eigen::MatrixXcd;

// Dense generator oracle: builds each gate as exp(-i H) from ladder operators
// on the full qubit x A x B space, independent of the pairwise kernels.
struct Oracle {
  Dims d;
  int dim() const { return 2 * (d.n_a + 1) * (d.n_b + 1); }
  int idx(int q, int a, int b) const { return (q * (d.n_a + 1) + a) * (d.n_b + 1) + b; }

  Mat lower_a() const {  // a
    Mat m = Mat::Zero(dim(), dim());
    for (int q = 0; q < 2; ++q)
      for (int a = 1; a <= d.n_a; ++a)
        for (int b = 0; b <= d.n_b; ++b) m(idx(q, a - 1, b), idx(q, a, b)) = std::sqrt(double(a));
    return m;
  }
  Mat lower_b() const {
    Mat m = Mat::Zero(dim(), dim());
    for (int q = 0; q < 2; ++q)
      for (int a = 0; a <= d.n_a; ++a)
        for (int b = 1; b <= d.n_b; ++b) m(idx(q, a, b - 1), idx(q, a, b)) = std::sqrt(double(b));
    return m;
  }
  Mat sigma() const {  // |0><1|
    Mat m = Mat::Zero(dim(), dim());
    for (int a = 0; a <= d.n_a; ++a)
      for (int b = 0; b <= d.n_b; ++b) m(idx(0, a, b), idx(1, a, b)) = 1.0;
    return m;
  }
  Mat sigma_z() const {
    Mat m = Mat::Zero(dim(), dim());
    for (int a = 0; a <= d.n_a; ++a)
      for (int b = 0; b <= d.n_b; ++b) {
        m(idx(0, a, b), idx(0, a, b)) = 1.0;
        m(idx(1, a, b), idx(1, a, b)) = -1.0;
      }
    return m;
  }
  Mat projector(const std::function<bool(int, int)>& pred) const {
    Mat m = Mat::Zero(dim(), dim());
    for (int q = 0; q < 2; ++q)
      for (int a = 0; a <= d.n_a; ++a)
        for (int b = 0; b <= d.n_b; ++b)
          if (pred(a, b)) m(idx(q, a, b), idx(q, a, b)) = 1.0;
    return m;
  }

  Mat unitary(const Instruction& in) const {
    const Mat s = sigma();
    const Mat sx = s + s.adjoint();
    Mat h;
    switch (in.kind) {
      case GateKind::QubitPhase: h = in.angle / 2 * sigma_z(); break;
      case GateKind::QubitRotation: h = in.angle / 2 * sx; break;
      case GateKind::SelectiveRotation: {
        const Mat p = projector([&](int a, int b) { return in.selectivity->matches(a, b); });
        h = in.angle / 2 * p * sx * p;
        break;
      }
      case GateKind::SwapA: {
        const Mat a = lower_a();
        h = in.angle * (a * s.adjoint() + a.adjoint() * s);
        break;
      }
      case GateKind::SwapB: {
        const Mat b = lower_b();
        h = in.angle * (b * s.adjoint() + b.adjoint() * s);
        break;
      }
      case GateKind::QuditRotation: {
        h = Mat::Zero(dim(), dim());
        for (int q = 0; q < 2; ++q)
          for (int b = 0; b <= d.n_b; ++b) {
            h(idx(q, in.level, b), idx(q, in.level + 1, b)) = in.angle / 2;
            h(idx(q, in.level + 1, b), idx(q, in.level, b)) = in.angle / 2;
          }
        break;
      }
      case GateKind::QuditPhase:
        h = -in.angle * projector([&](int a, int) { return a == in.level; });
        break;
    }
    return (Complex(0, -1) * h).exp();
  }
};

Eigen::VectorXcd as_vector(const StateVector& s) {
  Eigen::VectorXcd v(static_cast<Eigen::Index>(s.size()));
  for (std::size_t i = 0; i < s.size(); ++i) v(static_cast<Eigen::Index>(i)) = s.amplitudes()[i];
  return v;
}

StateVector random_full_state(Dims d, std::mt19937_64& rng) {
  std::normal_distribution<double> n;
  StateVector s(d);
  for (auto& a : s.amplitudes()) a = Complex(n(rng), n(rng));
  s.normalize();
  return s;
}

std::vector<Instruction> sample_instructions(Dims d) {
  return {Instruction::rotation(0.731),
          Instruction::phase(-2.2),
          Instruction::swap_a(0.413),
          Instruction::swap_b(1.37),
          Instruction::selective(2.1, Selectivity::exact(1, d.n_b)),
          Instruction::selective(-0.9, Selectivity::mode_a(d.n_a)),
          Instruction::selective(0.5, Selectivity::mode_b(0)),
          Instruction::qudit_rotation(1.9, 0),
          Instruction::qudit_rotation(-0.3, d.n_a - 1),
          Instruction::qudit_phase(2.9, d.n_a)};
}

}  // namespace

TEST(GateAction, MatchesMatrixExponentialOracle) {
  std::mt19937_64 rng(17);
  for (Dims d : {Dims{3, 2}, Dims{2, 0}, Dims{1, 3}}) {
    const Oracle o{d};
    for (const auto& in : sample_instructions(d)) {
      const Mat u = o.unitary(in);
      for (int t = 0; t < 5; ++t) {
        const StateVector psi = random_full_state(d, rng);
        const StateVector got = applied(in, psi);
        const Eigen::VectorXcd want = u * as_vector(psi);
        EXPECT_LT((as_vector(got) - want).norm(), 1e-12) << to_string(in);
        const StateVector back = applied(in, psi, Direction::Inverse);
        const Eigen::VectorXcd want_back = u.adjoint() * as_vector(psi);
        EXPECT_LT((as_vector(back) - want_back).norm(), 1e-12) << to_string(in);
      }
    }
  }
}

TEST(GateAction, PhaseAndRotationConventions) {
  StateVector s({0, 0});
  s(0, 0, 0) = 1.0;
  s(1, 0, 0) = 1.0;
  apply(Instruction::phase(0.6), s);
  EXPECT_LT(std::abs(s(0, 0, 0) - std::polar(1.0, -0.3)), 1e-15);
  EXPECT_LT(std::abs(s(1, 0, 0) - std::polar(1.0, 0.3)), 1e-15);

  StateVector g = StateVector::ground({0, 0});
  apply(Instruction::rotation(kPi / 3), g);
  EXPECT_LT(std::abs(g(0, 0, 0) - std::cos(kPi / 6)), 1e-15);
  EXPECT_LT(std::abs(g(1, 0, 0) - (-kI * std::sin(kPi / 6))), 1e-15);
}

TEST(GateAction, SwapExamplesFromTheGoldenPrograms) {
  StateVector s = StateVector(Dims{3, 0});
  s(1, 0, 0) = -kI;
  apply(Instruction::swap_a(kPi / 2), s);
  EXPECT_LT(std::abs(s(0, 1, 0) - Complex(-1.0)), 1e-15);
  EXPECT_NEAR(s.norm(), 1.0, 1e-15);

  StateVector t = StateVector(Dims{3, 0});
  t(1, 1, 0) = kI;
  apply(Instruction::swap_a(kPi / (2 * std::sqrt(2.0))), t);
  EXPECT_LT(std::abs(t(0, 2, 0) - Complex(1.0)), 1e-15);

  StateVector u = StateVector(Dims{3, 3});
  u(1, 2, 0) = -kI;
  apply(Instruction::swap_a(0.2153), u);
  EXPECT_NEAR(u(0, 3, 0).real(), -0.3643, 1e-4);
  EXPECT_NEAR(u(0, 3, 0).imag(), 0.0, 1e-15);
  EXPECT_NEAR(u(1, 2, 0).imag(), -0.9313, 1e-4);
  EXPECT_NEAR(u(1, 2, 0).real(), 0.0, 1e-15);
}

TEST(GateAction, UnitarityOnRandomStates) {
  std::mt19937_64 rng(23);
  const Dims d{4, 3};
  for (const auto& in : sample_instructions(d)) {
    for (int t = 0; t < 100; ++t) {
      const StateVector psi = random_full_state(d, rng);
      const StateVector fwd = applied(in, psi);
      EXPECT_NEAR(fwd.norm(), psi.norm(), 1e-12);
      EXPECT_LT(distance(applied(in, fwd, Direction::Inverse), psi), 1e-12);
      EXPECT_LT(distance(applied(in, applied(in, psi, Direction::Inverse)), psi), 1e-12);
    }
  }
}

TEST(GateAction, SwapsConserveExcitationNumber) {
  const Dims d{4, 4};
  for (const auto& in : {Instruction::swap_a(0.77), Instruction::swap_b(1.21)}) {
    for (int q = 0; q < 2; ++q)
      for (int a = 0; a <= d.n_a; ++a)
        for (int b = 0; b <= d.n_b; ++b) {
          const StateVector out = applied(in, StateVector::basis(d, {q, a, b}));
          const int total = q + a + b;
          for (std::size_t i = 0; i < out.size(); ++i) {
            if (out.amplitudes()[i] == Complex{}) continue;
            const auto idx = out.index_of(i);
            EXPECT_EQ(idx.q + idx.n_a + idx.n_b, total) << to_string(in);
          }
        }
  }
}

TEST(GateAction, SelectiveRotationLeavesOtherPairsUntouched) {
  std::mt19937_64 rng(29);
  const Dims d{3, 3};
  for (const auto& sel : {Selectivity::exact(2, 1), Selectivity::mode_a(1), Selectivity::mode_b(3)}) {
    const StateVector psi = random_full_state(d, rng);
    const StateVector out = applied(Instruction::selective(1.234, sel), psi);
    for (int q = 0; q < 2; ++q)
      for (int a = 0; a <= d.n_a; ++a)
        for (int b = 0; b <= d.n_b; ++b) {
          if (sel.matches(a, b)) {
            EXPECT_NE(out(q, a, b), psi(q, a, b));
          } else {
            EXPECT_EQ(out(q, a, b), psi(q, a, b));
          }
        }
  }
}

TEST(GateAction, LadderTopHasNoPartnerAboveCutoff) {
  const Dims d{2, 2};
  for (int b = 0; b <= d.n_b; ++b) {
    const StateVector top = StateVector::basis(d, {1, d.n_a, b});
    EXPECT_EQ(distance(applied(Instruction::swap_a(0.9), top), top), 0.0);
  }
  for (int a = 0; a <= d.n_a; ++a) {
    const StateVector top = StateVector::basis(d, {1, a, d.n_b});
    EXPECT_EQ(distance(applied(Instruction::swap_b(0.9), top), top), 0.0);
  }
  // |0, 0, n_b> has no lower partner either.
  const StateVector vac = StateVector::basis(d, {0, 0, 1});
  EXPECT_EQ(distance(applied(Instruction::swap_a(0.9), vac), vac), 0.0);
}

TEST(GateAction, QuditGates) {
  StateVector s = StateVector::ground({2, 0});
  apply(Instruction::qudit_rotation(kPi, 0), s);
  EXPECT_LT(std::abs(s(0, 1, 0) - (-kI)), 1e-15);
  apply(Instruction::qudit_phase(kPi / 2, 1), s);
  EXPECT_LT(std::abs(s(0, 1, 0) - Complex(1.0)), 1e-15);
  apply(Instruction::qudit_rotation(kPi / 2, 1), s);
  EXPECT_NEAR(std::norm(s(0, 1, 0)), 0.5, 1e-15);
  EXPECT_NEAR(std::norm(s(0, 2, 0)), 0.5, 1e-15);
}

TEST(Validate, RejectsOutOfRangeInstructions) {
  const Dims d{2, 1};
  EXPECT_THROW(validate(Instruction::qudit_rotation(1.0, 2), d), InvalidInstruction);
  EXPECT_THROW(validate(Instruction::qudit_phase(1.0, 3), d), InvalidInstruction);
  EXPECT_THROW(validate(Instruction::selective(1.0, Selectivity::exact(3, 0)), d), InvalidInstruction);
  EXPECT_THROW(validate(Instruction::selective(1.0, Selectivity::mode_b(2)), d), InvalidInstruction);
  EXPECT_NO_THROW(validate(Instruction::selective(1.0, Selectivity::mode_a(2)), d));
  EXPECT_THROW(validate(Instruction::rotation(std::nan("")), d), InvalidInstruction);
  Instruction bad = Instruction::selective(1.0, Selectivity::mode_a(0));
  bad.selectivity.reset();
  EXPECT_THROW(validate(bad, d), InvalidInstruction);
  StateVector s(d);
  EXPECT_THROW(apply(Instruction::qudit_rotation(1.0, 5), s), InvalidInstruction);
}

TEST(RunProgram, EmptyProgramIsIdentity) {
  const StateVector g = StateVector::ground({2, 2});
  PulseProgram p;
  p.dims = g.dims();
  EXPECT_EQ(distance(run_program(p, g), g), 0.0);
}

TEST(RunProgram, NormDriftStaysSmallOverLongPrograms) {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> ang(-kPi, kPi);
  const Dims d{4, 4};
  std::vector<Instruction> prog;
  for (int i = 0; i < 1000; ++i) {
    switch (i % 4) {
      case 0: prog.push_back(Instruction::phase(ang(rng))); break;
      case 1: prog.push_back(Instruction::swap_a(ang(rng))); break;
      case 2: prog.push_back(Instruction::swap_b(ang(rng))); break;
      default: prog.push_back(Instruction::selective(ang(rng), Selectivity::mode_a(i % 5))); break;
    }
  }
  const StateVector out = run_program(prog, random_full_state(d, rng));
  EXPECT_NEAR(out.norm(), 1.0, 1e-12 * 10);
}

TEST(RequiredSelectivity, EmptyWithoutSelectiveRotations) {
  PulseProgram p;
  p.dims = {2, 2};
  p.instructions = {Instruction::rotation(1.0), Instruction::swap_a(0.5)};
  EXPECT_TRUE(required_selectivity(p, StateVector::ground(p.dims)).empty());
}

TEST(RequiredSelectivity, FlagsOnlyWhenOtherPairsAreOccupied) {
  PulseProgram p;
  p.dims = {1, 0};
  // First rotation acts on the ground state only; the second sees |0,1,0> too.
  p.instructions = {Instruction::selective(kPi / 2, Selectivity::exact(0, 0)),
                    Instruction::swap_a(kPi / 4),
                    Instruction::selective(1.0, Selectivity::exact(0, 0))};
  const auto flags = required_selectivity(p, StateVector::ground(p.dims));
  ASSERT_EQ(flags.size(), 2u);
  EXPECT_EQ(flags[0].index, 0u);
  EXPECT_FALSE(flags[0].required);
  EXPECT_EQ(flags[1].index, 2u);
  EXPECT_TRUE(flags[1].required);
  EXPECT_GT(flags[1].deviation, 0.1);
}

TEST(Census, CountsEachKind) {
  const std::vector<Instruction> p{Instruction::rotation(1), Instruction::selective(1, Selectivity::mode_a(0)),
                                   Instruction::phase(1),    Instruction::phase(2),
                                   Instruction::swap_a(1),   Instruction::swap_b(1),
                                   Instruction::swap_b(1),   Instruction::qudit_phase(1, 0)};
  const Census c = census(p);
  EXPECT_EQ(c.qubit_rotations, 1);
  EXPECT_EQ(c.selective_rotations, 1);
  EXPECT_EQ(c.rotations(), 2);
  EXPECT_EQ(c.qubit_phases, 2);
  EXPECT_EQ(c.swaps_a, 1);
  EXPECT_EQ(c.swaps_b, 2);
  EXPECT_EQ(c.swaps(), 3);
  EXPECT_EQ(c.qudit_phases, 1);
  EXPECT_EQ(c.qudit_rotations, 0);
}
