#include "focksynth/cost.hpp"

#include <Eigen/Dense>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <numbers>
#include <ostream>
#include <stdexcept>

namespace focksynth {

namespace {

constexpr double kPi = std::numbers::pi;

bool positive(double x) { return std::isfinite(x) && x > 0.0; }

ModelFamily primary_family(const std::string& algorithm, Quantity q) {
  if (algorithm == algorithm::kSubtraction) {
    return q == Quantity::Swaps ? ModelFamily::Linear : ModelFamily::Quadratic;
  }
  if (algorithm == algorithm::kSwapping) {
    return q == Quantity::Rotations ? ModelFamily::Linear : ModelFamily::Quadratic;
  }
  // law-eberly and the deterministic NOON reports
  return q == Quantity::Swaps ? ModelFamily::Sqrt : ModelFamily::Linear;
}

void fill_fits(ScalingReport& report, bool noon) {
  std::vector<double> sizes;
  for (const auto& p : report.points) sizes.push_back(p.n);
  for (Quantity q : {Quantity::Phases, Quantity::Rotations, Quantity::Swaps}) {
    std::vector<double> values;
    for (const auto& p : report.points) values.push_back(p.mean[static_cast<int>(q)]);
    const ModelFamily primary =
        noon ? (q == Quantity::Swaps ? ModelFamily::Sqrt : ModelFamily::Linear)
             : primary_family(report.algorithm, q);
    for (ModelFamily f : {ModelFamily::Linear, ModelFamily::Quadratic, ModelFamily::Sqrt}) {
      const std::size_t params = f == ModelFamily::Quadratic ? 3 : 2;
      if (sizes.size() < params) continue;
      try {
        report.fits.push_back({q, fit_model(sizes, values, f), f == primary});
      } catch (const std::invalid_argument&) {
        // rank-deficient size sets (e.g. a single repeated N) have no fit
      }
    }
  }
}

void accumulate(SizeStats& stats, const AngleTotals& t, double (&sum)[3], double (&sq)[3]) {
  const double v[3] = {t.sum_abs_phases, t.sum_rotations, t.sum_swaps};
  for (int i = 0; i < 3; ++i) {
    sum[i] += v[i];
    sq[i] += v[i] * v[i];
  }
  ++stats.samples;
}

void finalize(SizeStats& stats, const double (&sum)[3], const double (&sq)[3]) {
  const double n = stats.samples;
  for (int i = 0; i < 3; ++i) {
    stats.mean[i] = sum[i] / n;
    stats.stddev[i] = stats.samples > 1
                          ? std::sqrt(std::max(0.0, (sq[i] - sum[i] * sum[i] / n) / (n - 1)))
                          : 0.0;
  }
}

}  // namespace

void ControlRates::validate() const {
  if (!positive(delta_omega) || !positive(omega) || !positive(g) ||
      (omega_selective && !positive(*omega_selective))) {
    throw std::invalid_argument("control rates must be finite and strictly positive");
  }
}

AngleTotals angle_totals(std::span<const Instruction> instructions) {
  AngleTotals t;
  for (const auto& instr : instructions) {
    const double a = std::abs(instr.angle);
    switch (instr.kind) {
      case GateKind::QubitPhase:
      case GateKind::QuditPhase: t.sum_abs_phases += a; break;
      case GateKind::QubitRotation:
      case GateKind::SelectiveRotation:
      case GateKind::QuditRotation: t.sum_rotations += a; break;
      case GateKind::SwapA:
      case GateKind::SwapB: t.sum_swaps += a; break;
    }
  }
  t.counts = census(instructions);
  return t;
}

double estimate_time(const PulseProgram& prog, const ControlRates& rates) {
  rates.validate();
  const double omega_sel = rates.omega_selective.value_or(rates.omega);
  double t = 0.0;
  for (const auto& instr : prog.instructions) {
    const double a = std::abs(instr.angle);
    switch (instr.kind) {
      case GateKind::QubitPhase:
      case GateKind::QuditPhase: t += a / rates.delta_omega; break;
      case GateKind::QubitRotation:
      case GateKind::QuditRotation: t += a / rates.omega; break;
      case GateKind::SelectiveRotation: t += a / omega_sel; break;
      case GateKind::SwapA:
      case GateKind::SwapB: t += a / rates.g; break;
    }
  }
  return t;
}

double qudit_sequence_time(const SynthesisTrace& trace, const ControlRates& rates) {
  rates.validate();
  double t = 0.0;
  for (const auto& step : trace.steps) {
    for (const auto& instr : step.inverse_ops) {
      if (instr.kind == GateKind::QuditPhase && instr.level == step.outer) {
        t += std::abs(instr.angle) / rates.delta_omega;
      } else if (instr.kind == GateKind::QuditRotation) {
        t += std::abs(instr.angle) / rates.omega;
      }
    }
  }
  return t;
}

double qudit_average_time(int d, const ControlRates& rates) {
  if (d < 2) throw std::invalid_argument("qudit dimension must be at least 2");
  rates.validate();
  double harmonic = 0.0;
  for (int k = 1; k <= d - 1; ++k) harmonic += 1.0 / std::sqrt(static_cast<double>(k));
  return (kPi / rates.omega + kPi / (2 * rates.delta_omega)) * (d - 1) -
         kPi / (2 * rates.omega) * harmonic;
}

double mean_polar_angle(int power) {
  if (power < 0) throw std::invalid_argument("sine power must be non-negative");
  using boost::math::quadrature::gauss_kronrod;
  const double p = power;
  const double num = gauss_kronrod<double, 61>::integrate(
      [p](double th) { return th * std::pow(std::sin(th), p); }, 0.0, kPi / 2, 15, 1e-14);
  const double den = gauss_kronrod<double, 61>::integrate(
      [p](double th) { return std::pow(std::sin(th), p); }, 0.0, kPi / 2, 15, 1e-14);
  return num / den;
}

double mean_polar_angle_asymptotic(int power) {
  if (power < 1) throw std::invalid_argument("asymptotic form needs power >= 1");
  return kPi / 2 - (kPi / 4) / std::sqrt(static_cast<double>(power));
}

std::string to_string(ModelFamily family) {
  switch (family) {
    case ModelFamily::Linear: return "linear";
    case ModelFamily::Quadratic: return "quadratic";
    case ModelFamily::Sqrt: return "sqrt";
  }
  return "?";
}

std::string to_string(Quantity quantity) {
  switch (quantity) {
    case Quantity::Phases: return "phases";
    case Quantity::Rotations: return "rotations";
    case Quantity::Swaps: return "swaps";
  }
  return "?";
}

double FitResult::operator()(double n) const {
  const auto& c = coefficients;
  switch (family) {
    case ModelFamily::Linear: return c[0] * n + c[1];
    case ModelFamily::Quadratic: return (c[0] * n + c[1]) * n + c[2];
    case ModelFamily::Sqrt: return c[0] * std::sqrt(n) + c[1];
  }
  return 0.0;
}

FitResult fit_model(std::span<const double> sizes, std::span<const double> values,
                    ModelFamily family) {
  if (sizes.size() != values.size()) throw std::invalid_argument("fit input lengths differ");
  const Eigen::Index rows = static_cast<Eigen::Index>(sizes.size());
  const Eigen::Index cols = family == ModelFamily::Quadratic ? 3 : 2;
  if (rows < cols) throw std::invalid_argument("under-determined fit: too few points");

  Eigen::MatrixXd m(rows, cols);
  Eigen::VectorXd y(rows);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const double n = sizes[static_cast<std::size_t>(i)];
    y(i) = values[static_cast<std::size_t>(i)];
    switch (family) {
      case ModelFamily::Linear: m.row(i) << n, 1.0; break;
      case ModelFamily::Quadratic: m.row(i) << n * n, n, 1.0; break;
      case ModelFamily::Sqrt: m.row(i) << std::sqrt(n), 1.0; break;
    }
  }
  const Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(m);
  if (qr.rank() < cols) throw std::invalid_argument("rank-deficient fit: repeated sizes");
  const Eigen::VectorXd c = qr.solve(y);

  FitResult r;
  r.family = family;
  r.coefficients.assign(c.data(), c.data() + c.size());
  r.rms = std::sqrt((m * c - y).squaredNorm() / static_cast<double>(rows));
  return r;
}

const FitRow& ScalingReport::primary_fit(Quantity quantity) const {
  for (const auto& f : fits)
    if (f.quantity == quantity && f.primary) return f;
  throw std::out_of_range("no primary fit for " + to_string(quantity));
}

const FitRow& ScalingReport::fit(Quantity quantity, ModelFamily family) const {
  for (const auto& f : fits)
    if (f.quantity == quantity && f.fit.family == family) return f;
  throw std::out_of_range("no " + to_string(family) + " fit for " + to_string(quantity));
}

StateVector campaign_target(const std::string& name, int n, std::uint64_t seed, int sample) {
  if (n < 0) throw std::invalid_argument("campaign size must be non-negative");
  auto rng = derive_stream(seed, {static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(sample)});
  if (name == algorithm::kLawEberly) return random_target(Dims{n, 0}, rng);
  if (name == algorithm::kSubtraction) return random_target(Dims{n, n}, rng);
  if (name == algorithm::kSwapping) {
    const int top = 2 * n;
    return random_target(Dims{top, top}, rng, [top](int a, int b) { return a + b <= top; });
  }
  throw std::invalid_argument("campaign algorithm must be law-eberly, subtraction or swapping, got '" +
                              name + "'");
}

ScalingReport run_campaign(const CampaignConfig& config) {
  if (config.samples < 1) throw std::invalid_argument("samples must be at least 1");
  if (config.sizes.empty()) throw std::invalid_argument("no campaign sizes given");
  ScalingReport report;
  report.algorithm = config.algorithm;
  for (int n : config.sizes) {
    SizeStats stats;
    stats.n = n;
    double sum[3] = {0, 0, 0};
    double sq[3] = {0, 0, 0};
    for (int s = 0; s < config.samples; ++s) {
      const StateVector target = campaign_target(config.algorithm, n, config.seed, s);
      const SynthesisResult r = synthesize(config.algorithm, target, config.options);
      accumulate(stats, angle_totals(r.program), sum, sq);
      if (config.observer) config.observer(n, s, r);
    }
    finalize(stats, sum, sq);
    report.points.push_back(stats);
  }
  fill_fits(report, false);
  return report;
}

ScalingReport noon_scaling(const std::string& method, const std::vector<int>& sizes,
                           const SynthesisOptions& options) {
  if (method != algorithm::kSubtraction && method != algorithm::kSwapping &&
      method != algorithm::kDiagonal) {
    throw std::invalid_argument("NOON method must be subtraction, swapping or diagonal");
  }
  ScalingReport report;
  report.algorithm = method;
  for (int n : sizes) {
    const StateVector target = noon_state(n);
    const SynthesisResult r = synthesize(method, target, options);
    SizeStats stats;
    stats.n = n;
    double sum[3] = {0, 0, 0};
    double sq[3] = {0, 0, 0};
    accumulate(stats, angle_totals(r.program), sum, sq);
    finalize(stats, sum, sq);
    for (const auto& f : required_selectivity(r.program, StateVector::ground(r.program.dims))) {
      if (f.required) ++stats.required_selective;
    }
    report.points.push_back(stats);
  }
  fill_fits(report, true);
  return report;
}

void write_campaign_csv(std::ostream& out, const ScalingReport& report, bool header) {
  if (header) {
    out << "algorithm,N,samples,sum_phases_mean,sum_phases_std,sum_rot_mean,sum_rot_std,"
           "sum_swap_mean,sum_swap_std\n";
  }
  const auto old = out.precision(17);
  for (const auto& p : report.points) {
    out << report.algorithm << ',' << p.n << ',' << p.samples;
    for (int i = 0; i < 3; ++i) out << ',' << p.mean[i] << ',' << p.stddev[i];
    out << '\n';
  }
  out.precision(old);
}

void write_fit_csv(std::ostream& out, const ScalingReport& report, bool header) {
  if (header) out << "algorithm,quantity,family,c0,c1,c2,rms\n";
  const auto old = out.precision(17);
  for (const auto& f : report.fits) {
    out << report.algorithm << ',' << to_string(f.quantity) << ',' << to_string(f.fit.family);
    for (std::size_t i = 0; i < 3; ++i) {
      out << ',';
      if (i < f.fit.coefficients.size()) out << f.fit.coefficients[i];
    }
    out << ',' << f.fit.rms << '\n';
  }
  out.precision(old);
}

}  // namespace focksynth
