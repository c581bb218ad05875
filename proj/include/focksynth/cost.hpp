#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "focksynth/synthesis.hpp"

namespace focksynth {

/// Constant control amplitudes in rad/s.
struct ControlRates {
  double delta_omega = 1.0;  ///< phase shifts
  double omega = 1.0;        ///< qubit rotations
  double g = 1.0;            ///< resonator swaps
  std::optional<double> omega_selective;  ///< selective rotations; defaults to omega

  /// Throws std::invalid_argument unless every rate is finite and positive.
  void validate() const;
};

struct AngleTotals {
  double sum_abs_phases = 0.0;  ///< qubit and qudit phases
  double sum_rotations = 0.0;   ///< plain, selective and qudit rotations
  double sum_swaps = 0.0;       ///< A and B swaps
  Census counts;
};

AngleTotals angle_totals(std::span<const Instruction> instructions);
inline AngleTotals angle_totals(const PulseProgram& prog) { return angle_totals(prog.instructions); }

/// Sequential duration: |phase|/delta_omega + |rotation|/omega (or
/// omega_selective) + |swap|/g, summed over the program.
double estimate_time(const PulseProgram& prog, const ControlRates& rates);

/// Duration of a reverse-solved qudit sequence when each step's two phases run
/// in parallel with the upper-level phase setting the pace:
/// sum |beta_j|/delta_omega + sum gamma_j/omega.
double qudit_sequence_time(const SynthesisTrace& trace, const ControlRates& rates);

/// Closed-form average of qudit_sequence_time over Haar targets.
double qudit_average_time(int d, const ControlRates& rates);

/// Average polar angle for a sine-power weight:
///   int theta sin^p(theta) / int sin^p(theta) over [0, pi/2].
double mean_polar_angle(int power);

/// Large-power approximation pi/2 - (pi/4)/sqrt(power).
double mean_polar_angle_asymptotic(int power);

enum class ModelFamily { Linear, Quadratic, Sqrt };

std::string to_string(ModelFamily family);

struct FitResult {
  ModelFamily family = ModelFamily::Linear;
  /// Highest power first: (a, b) for aN+b, (a, b, c) for aN^2+bN+c,
  /// (a, b) for a sqrt(N) + b.
  std::vector<double> coefficients;
  double rms = 0.0;

  double operator()(double n) const;
};

/// Unweighted least squares. Throws std::invalid_argument when there are
/// fewer points than parameters or the design matrix is rank deficient.
FitResult fit_model(std::span<const double> sizes, std::span<const double> values,
                    ModelFamily family);

enum class Quantity { Phases, Rotations, Swaps };

std::string to_string(Quantity quantity);

struct SizeStats {
  int n = 0;
  int samples = 0;
  double mean[3] = {0, 0, 0};  ///< indexed by Quantity
  double stddev[3] = {0, 0, 0};
  int required_selective = 0;  ///< summed over samples; NOON reports only
};

struct FitRow {
  Quantity quantity = Quantity::Phases;
  FitResult fit;
  bool primary = false;  ///< the model shape conventionally used for this quantity
};

struct ScalingReport {
  std::string algorithm;
  std::vector<SizeStats> points;
  std::vector<FitRow> fits;

  const FitRow& primary_fit(Quantity quantity) const;
  const FitRow& fit(Quantity quantity, ModelFamily family) const;
};

struct CampaignConfig {
  std::string algorithm = algorithm::kLawEberly;
  std::vector<int> sizes = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  int samples = 100;
  std::uint64_t seed = 7;
  SynthesisOptions options{.reverse_columns = false, .fold_phases = true, .record_states = false};
  /// Called once per synthesized sample.
  std::function<void(int n, int sample, const SynthesisResult&)> observer;
};

/// Random target for one campaign sample at size n:
///   law-eberly  (n, 0) single resonator
///   subtraction (n, n) two resonators
///   swapping    n_a + n_b <= 2n
StateVector campaign_target(const std::string& algorithm, int n, std::uint64_t seed, int sample);

/// Averaged angle totals over random targets plus fits in every model family.
/// Each sample's generator is derived from (seed, n, sample index) alone.
ScalingReport run_campaign(const CampaignConfig& config);

/// Deterministic NOON totals for each N in `sizes` with `method` in
/// {subtraction, swapping, diagonal}.
ScalingReport noon_scaling(const std::string& method, const std::vector<int>& sizes,
                           const SynthesisOptions& options = {});

void write_campaign_csv(std::ostream& out, const ScalingReport& report, bool header = true);
void write_fit_csv(std::ostream& out, const ScalingReport& report, bool header = true);

}  // namespace focksynth
