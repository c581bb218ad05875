#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace focksynth {

using Complex = std::complex<double>;

/// Amplitudes below this modulus count as unoccupied in support and
/// cleared-state checks.
inline constexpr double kAmplitudeZero = 1e-10;

/// Tolerance for norm preservation after every gate application.
inline constexpr double kNormTolerance = 1e-12;

class InvalidTarget : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class DimensionMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Photon-number cutoffs of the two resonator modes. A single resonator (or a
/// qudit) is the case n_b == 0.
struct Dims {
  int n_a = 0;
  int n_b = 0;

  friend bool operator==(const Dims&, const Dims&) = default;
};

/// |q, n_a, n_b>: qubit level q, n_a photons in mode A, n_b photons in mode B.
struct BasisIndex {
  int q = 0;
  int n_a = 0;
  int n_b = 0;

  friend bool operator==(const BasisIndex&, const BasisIndex&) = default;
};

std::string to_string(const BasisIndex& index);

/// Dense amplitude vector over qubit x mode A x mode B.
class StateVector {
 public:
  StateVector() : StateVector(Dims{}) {}
  explicit StateVector(Dims dims);

  static StateVector ground(Dims dims);
  static StateVector basis(Dims dims, BasisIndex index);

  Dims dims() const { return dims_; }
  std::size_t size() const { return amplitudes_.size(); }

  bool contains(const BasisIndex& index) const;

  Complex& operator()(int q, int n_a, int n_b) { return amplitudes_[offset(q, n_a, n_b)]; }
  const Complex& operator()(int q, int n_a, int n_b) const {
    return amplitudes_[offset(q, n_a, n_b)];
  }
  Complex& operator[](const BasisIndex& i) { return (*this)(i.q, i.n_a, i.n_b); }
  const Complex& operator[](const BasisIndex& i) const { return (*this)(i.q, i.n_a, i.n_b); }

  /// Bounds-checked access.
  Complex& at(const BasisIndex& index);
  const Complex& at(const BasisIndex& index) const;

  std::span<Complex> amplitudes() { return amplitudes_; }
  std::span<const Complex> amplitudes() const { return amplitudes_; }

  BasisIndex index_of(std::size_t flat) const;

  double norm() const;
  void normalize();

  /// Copy into a space with cutoffs at least as large as ours.
  StateVector embedded(Dims larger) const;

  /// Copy into a smaller space. Throws DimensionMismatch if any amplitude
  /// above kAmplitudeZero would be dropped.
  StateVector truncated(Dims smaller) const;

 private:
  std::size_t offset(int q, int n_a, int n_b) const {
    const auto cols = static_cast<std::size_t>(dims_.n_b + 1);
    const auto rows = static_cast<std::size_t>(dims_.n_a + 1);
    return (static_cast<std::size_t>(q) * rows + static_cast<std::size_t>(n_a)) * cols +
           static_cast<std::size_t>(n_b);
  }

  Dims dims_;
  std::vector<Complex> amplitudes_;
};

/// <a|b>. Throws DimensionMismatch when the spaces differ.
Complex overlap(const StateVector& a, const StateVector& b);

/// ||a - b||_2.
double distance(const StateVector& a, const StateVector& b);

/// One resonator-space coefficient c_{n_a, n_b}; the qubit is in |0>.
struct FockCoefficient {
  int n_a = 0;
  int n_b = 0;
  Complex value;
};

/// Normalized state with all amplitude in q = 0. Dims are inferred from the
/// largest indices present unless given explicitly. Repeated indices add.
StateVector make_state(std::span<const FockCoefficient> coeffs);
StateVector make_state(Dims dims, std::span<const FockCoefficient> coeffs);

/// sum_n c_n |0, n, 0>; used for single resonators and qudits alike.
StateVector single_mode_state(std::span<const Complex> coeffs);

/// (|N,0> + |0,N>)/sqrt(2) in a (N, N) space.
StateVector noon_state(int n);

/// Polar angles theta_0..theta_{d-2} in [0, pi/2] and phases phi_0..phi_{d-1}
/// in (-pi, pi] such that
///   c_k = sin(theta_0)...sin(theta_{k-1}) cos(theta_k) exp(i phi_k)
/// with the last coefficient taking the full sine product.
struct SphericalCoords {
  std::vector<double> thetas;
  std::vector<double> phis;
};

SphericalCoords to_spherical(std::span<const Complex> coeffs);
std::vector<Complex> from_spherical(const SphericalCoords& coords);

/// arg(z) with arg(0) = 0, result in (-pi, pi].
double phase_of(Complex z);

/// Wrap an angle into (-pi, pi].
double wrap_angle(double angle);

/// Predicate over (n_a, n_b) selecting the admissible part of a space.
using Admissible = std::function<bool(int n_a, int n_b)>;

/// Haar-random normalized state on the q = 0 subspace (normalized standard
/// complex Gaussian vector). Entries rejected by `admissible` stay zero.
StateVector random_target(Dims dims, std::mt19937_64& rng, const Admissible& admissible = {});
StateVector random_target(Dims dims, std::uint64_t seed, const Admissible& admissible = {});

/// Independent generator for (seed, stream...) tuples.
std::mt19937_64 derive_stream(std::uint64_t seed, std::initializer_list<std::uint64_t> stream);

struct SupportBounds {
  int max_n_a = -1;
  int max_n_b = -1;
  int max_excitation = -1;  ///< max of n_a + n_b + q
};

/// Largest occupied ladder levels (modulus above `threshold`); -1 for an empty state.
SupportBounds support_bounds(const StateVector& state, double threshold = kAmplitudeZero);

}  // namespace focksynth
