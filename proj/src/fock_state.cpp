#include "focksynth/fock_state.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace focksynth {

std::string to_string(const BasisIndex& index) {
  std::ostringstream out;
  out << '|' << index.q << ',' << index.n_a << ',' << index.n_b << '>';
  return out.str();
}

StateVector::StateVector(Dims dims) : dims_(dims) {
  if (dims.n_a < 0 || dims.n_b < 0) {
    throw DimensionMismatch("photon-number cutoffs must be non-negative");
  }
  amplitudes_.assign(2 * static_cast<std::size_t>(dims.n_a + 1) *
                         static_cast<std::size_t>(dims.n_b + 1),
                     Complex{});
}

StateVector StateVector::ground(Dims dims) { return basis(dims, {0, 0, 0}); }

StateVector StateVector::basis(Dims dims, BasisIndex index) {
  StateVector s(dims);
  s.at(index) = 1.0;
  return s;
}

bool StateVector::contains(const BasisIndex& i) const {
  return (i.q == 0 || i.q == 1) && i.n_a >= 0 && i.n_a <= dims_.n_a && i.n_b >= 0 &&
         i.n_b <= dims_.n_b;
}

Complex& StateVector::at(const BasisIndex& index) {
  if (!contains(index)) {
    throw std::out_of_range("basis index " + to_string(index) + " outside the space");
  }
  return (*this)[index];
}

const Complex& StateVector::at(const BasisIndex& index) const {
  if (!contains(index)) {
    throw std::out_of_range("basis index " + to_string(index) + " outside the space");
  }
  return (*this)[index];
}

BasisIndex StateVector::index_of(std::size_t flat) const {
  const auto cols = static_cast<std::size_t>(dims_.n_b + 1);
  const auto rows = static_cast<std::size_t>(dims_.n_a + 1);
  return {static_cast<int>(flat / (rows * cols)), static_cast<int>((flat / cols) % rows),
          static_cast<int>(flat % cols)};
}

double StateVector::norm() const {
  double sum = 0.0;
  for (const auto& a : amplitudes_) sum += std::norm(a);
  return std::sqrt(sum);
}

void StateVector::normalize() {
  const double n = norm();
  if (n == 0.0) throw InvalidTarget("cannot normalize the zero vector");
  for (auto& a : amplitudes_) a /= n;
}

StateVector StateVector::embedded(Dims larger) const {
  if (larger.n_a < dims_.n_a || larger.n_b < dims_.n_b) {
    throw DimensionMismatch("embedding target space is smaller than the state space");
  }
  StateVector out(larger);
  for (int q = 0; q < 2; ++q)
    for (int a = 0; a <= dims_.n_a; ++a)
      for (int b = 0; b <= dims_.n_b; ++b) out(q, a, b) = (*this)(q, a, b);
  return out;
}

StateVector StateVector::truncated(Dims smaller) const {
  StateVector out(smaller);
  for (std::size_t i = 0; i < amplitudes_.size(); ++i) {
    const auto idx = index_of(i);
    if (out.contains(idx)) {
      out[idx] = amplitudes_[i];
    } else if (std::abs(amplitudes_[i]) > kAmplitudeZero) {
      throw DimensionMismatch("amplitude at " + to_string(idx) + " lies outside the smaller space");
    }
  }
  return out;
}

Complex overlap(const StateVector& a, const StateVector& b) {
  if (!(a.dims() == b.dims())) throw DimensionMismatch("overlap of states in different spaces");
  Complex sum{};
  const auto x = a.amplitudes();
  const auto y = b.amplitudes();
  for (std::size_t i = 0; i < x.size(); ++i) sum += std::conj(x[i]) * y[i];
  return sum;
}

double distance(const StateVector& a, const StateVector& b) {
  if (!(a.dims() == b.dims())) throw DimensionMismatch("distance between states in different spaces");
  double sum = 0.0;
  const auto x = a.amplitudes();
  const auto y = b.amplitudes();
  for (std::size_t i = 0; i < x.size(); ++i) sum += std::norm(x[i] - y[i]);
  return std::sqrt(sum);
}

StateVector make_state(std::span<const FockCoefficient> coeffs) {
  if (coeffs.empty()) throw InvalidTarget("empty coefficient list");
  Dims dims;
  for (const auto& c : coeffs) {
    dims.n_a = std::max(dims.n_a, c.n_a);
    dims.n_b = std::max(dims.n_b, c.n_b);
  }
  return make_state(dims, coeffs);
}

StateVector make_state(Dims dims, std::span<const FockCoefficient> coeffs) {
  if (coeffs.empty()) throw InvalidTarget("empty coefficient list");
  StateVector s(dims);
  for (const auto& c : coeffs) {
    if (!s.contains({0, c.n_a, c.n_b})) {
      throw InvalidTarget("coefficient index (" + std::to_string(c.n_a) + ", " +
                          std::to_string(c.n_b) + ") outside the declared cutoffs");
    }
    if (!std::isfinite(c.value.real()) || !std::isfinite(c.value.imag())) {
      throw InvalidTarget("non-finite coefficient");
    }
    s(0, c.n_a, c.n_b) += c.value;
  }
  if (s.norm() == 0.0) throw InvalidTarget("target has zero norm");
  s.normalize();
  return s;
}

StateVector single_mode_state(std::span<const Complex> coeffs) {
  if (coeffs.empty()) throw InvalidTarget("empty coefficient list");
  std::vector<FockCoefficient> list;
  list.reserve(coeffs.size());
  for (std::size_t n = 0; n < coeffs.size(); ++n) list.push_back({static_cast<int>(n), 0, coeffs[n]});
  return make_state(Dims{static_cast<int>(coeffs.size()) - 1, 0}, list);
}

StateVector noon_state(int n) {
  if (n < 0) throw InvalidTarget("NOON photon number must be non-negative");
  const std::vector<FockCoefficient> c{{n, 0, 1.0}, {0, n, 1.0}};
  return make_state(Dims{n, n}, c);
}

double phase_of(Complex z) { return z == Complex{} ? 0.0 : std::arg(z); }

double wrap_angle(double angle) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double w = std::remainder(angle, two_pi);  // [-pi, pi]
  if (w <= -std::numbers::pi) w += two_pi;
  return w;
}

SphericalCoords to_spherical(std::span<const Complex> coeffs) {
  const std::size_t d = coeffs.size();
  if (d == 0) throw InvalidTarget("empty coefficient vector");
  // tail[k] = sqrt(sum_{m >= k} |c_m|^2)
  std::vector<double> tail(d + 1, 0.0);
  for (std::size_t k = d; k-- > 0;) tail[k] = std::hypot(tail[k + 1], std::abs(coeffs[k]));

  SphericalCoords out;
  out.thetas.resize(d - 1);
  out.phis.resize(d);
  bool degenerate = false;
  for (std::size_t k = 0; k + 1 < d; ++k) {
    if (degenerate || tail[k] == 0.0) {
      degenerate = true;
      out.thetas[k] = 0.0;
      continue;
    }
    out.thetas[k] = std::atan2(tail[k + 1], std::abs(coeffs[k]));
  }
  degenerate = false;
  for (std::size_t k = 0; k < d; ++k) {
    if (tail[k] == 0.0) degenerate = true;
    out.phis[k] = degenerate ? 0.0 : phase_of(coeffs[k]);
  }
  return out;
}

std::vector<Complex> from_spherical(const SphericalCoords& coords) {
  const std::size_t d = coords.phis.size();
  if (d == 0 || coords.thetas.size() + 1 != d) {
    throw InvalidTarget("spherical coordinates need d phases and d-1 polar angles");
  }
  std::vector<Complex> c(d);
  double sines = 1.0;
  for (std::size_t k = 0; k < d; ++k) {
    const double radial = (k + 1 < d) ? sines * std::cos(coords.thetas[k]) : sines;
    c[k] = std::polar(radial, coords.phis[k]);
    if (k + 1 < d) sines *= std::sin(coords.thetas[k]);
  }
  return c;
}

std::mt19937_64 derive_stream(std::uint64_t seed, std::initializer_list<std::uint64_t> stream) {
  std::vector<std::uint32_t> words;
  words.reserve(2 + 2 * stream.size());
  auto push = [&words](std::uint64_t v) {
    words.push_back(static_cast<std::uint32_t>(v & 0xffffffffu));
    words.push_back(static_cast<std::uint32_t>(v >> 32));
  };
  push(seed);
  for (auto s : stream) push(s);
  std::seed_seq seq(words.begin(), words.end());
  return std::mt19937_64(seq);
}

StateVector random_target(Dims dims, std::mt19937_64& rng, const Admissible& admissible) {
  std::normal_distribution<double> normal(0.0, 1.0);
  StateVector s(dims);
  for (int a = 0; a <= dims.n_a; ++a) {
    for (int b = 0; b <= dims.n_b; ++b) {
      if (admissible && !admissible(a, b)) continue;
      const double re = normal(rng);
      const double im = normal(rng);
      s(0, a, b) = Complex(re, im);
    }
  }
  s.normalize();
  return s;
}

StateVector random_target(Dims dims, std::uint64_t seed, const Admissible& admissible) {
  auto rng = derive_stream(seed, {});
  return random_target(dims, rng, admissible);
}

SupportBounds support_bounds(const StateVector& state, double threshold) {
  SupportBounds out;
  const auto amps = state.amplitudes();
  for (std::size_t i = 0; i < amps.size(); ++i) {
    if (std::abs(amps[i]) <= threshold) continue;
    const auto idx = state.index_of(i);
    out.max_n_a = std::max(out.max_n_a, idx.n_a);
    out.max_n_b = std::max(out.max_n_b, idx.n_b);
    out.max_excitation = std::max(out.max_excitation, idx.n_a + idx.n_b + idx.q);
  }
  return out;
}

}  // namespace focksynth
