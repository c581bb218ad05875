#include "focksynth/cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <filesystem>
#include <iomanip>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include "focksynth/cost.hpp"
#include "focksynth/program_io.hpp"
#include "focksynth/synthesis.hpp"

namespace focksynth {

namespace {

class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string target_path;
  std::string program_path;
  std::string algorithm;
  std::string rates = "1,1,1";
  std::optional<double> omega_sel;
  bool reverse_columns = false;
  bool no_phase_fold = false;
  std::string out;
  std::string sizes = "1..10";
  int samples = 100;
  std::uint64_t seed = 7;
  int noon_n = 3;
};

std::vector<double> split_numbers(const std::string& text, char sep) {
  std::vector<double> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep)) {
    try {
      std::size_t used = 0;
      values.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw InputError("cannot parse number '" + item + "'");
    }
  }
  return values;
}

ControlRates parse_rates(const Options& o) {
  const auto v = split_numbers(o.rates, ',');
  if (v.size() != 3) throw InputError("--rates expects delta_omega,omega,g");
  ControlRates r{v[0], v[1], v[2], o.omega_sel};
  try {
    r.validate();
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
  return r;
}

std::vector<int> parse_sizes(const std::string& text) {
  std::vector<int> sizes;
  const auto dots = text.find("..");
  if (dots != std::string::npos) {
    const auto lo = split_numbers(text.substr(0, dots), ',');
    const auto hi = split_numbers(text.substr(dots + 2), ',');
    if (lo.size() != 1 || hi.size() != 1 || lo[0] > hi[0]) {
      throw InputError("--sizes expects a..b with a <= b");
    }
    for (int n = static_cast<int>(lo[0]); n <= static_cast<int>(hi[0]); ++n) sizes.push_back(n);
  } else {
    for (double v : split_numbers(text, ',')) sizes.push_back(static_cast<int>(v));
  }
  for (int n : sizes)
    if (n < 1) throw InputError("--sizes entries must be at least 1");
  if (sizes.empty()) throw InputError("--sizes is empty");
  return sizes;
}

std::string default_algorithm(TargetKind kind) {
  switch (kind) {
    case TargetKind::Qudit: return algorithm::kQuditReverse;
    case TargetKind::Single: return algorithm::kLawEberly;
    case TargetKind::Double: return algorithm::kSubtraction;
    case TargetKind::Diagonal: return algorithm::kDiagonal;
    case TargetKind::Noon: return algorithm::kSwapping;
  }
  return "";
}

bool admissible(TargetKind kind, const std::string& alg) {
  static const std::map<TargetKind, std::vector<std::string>> table{
      {TargetKind::Qudit, {algorithm::kQuditDirect, algorithm::kQuditReverse}},
      {TargetKind::Single, {algorithm::kLawEberly, algorithm::kSubtraction, algorithm::kSwapping}},
      {TargetKind::Double, {algorithm::kSubtraction, algorithm::kSwapping}},
      {TargetKind::Diagonal, {algorithm::kSubtraction, algorithm::kSwapping, algorithm::kDiagonal}},
      {TargetKind::Noon, {algorithm::kSubtraction, algorithm::kSwapping, algorithm::kDiagonal}},
  };
  const auto& list = table.at(kind);
  return std::find(list.begin(), list.end(), alg) != list.end();
}

SynthesisOptions synthesis_options(const Options& o) {
  SynthesisOptions s;
  s.reverse_columns = o.reverse_columns;
  s.fold_phases = !o.no_phase_fold;
  s.record_states = false;
  return s;
}

/// Target expressed in the program's space.
StateVector align(const StateVector& target, Dims dims) {
  const Dims t = target.dims();
  try {
    if (t.n_a <= dims.n_a && t.n_b <= dims.n_b) return target.embedded(dims);
    return target.truncated(dims).embedded(dims);
  } catch (const DimensionMismatch& e) {
    throw InputError(std::string("target does not fit the program space: ") + e.what());
  }
}

struct Verification {
  double fidelity = 0.0;
  double phase = 0.0;
  double phase_error = 0.0;
  double max_norm_drift = 0.0;
  std::vector<SelectivityFlag> flags;
  bool pass = false;
};

Verification verify(const PulseProgram& prog, const StateVector& target) {
  Verification v;
  StateVector state = StateVector::ground(prog.dims);
  for (const auto& instr : prog.instructions) {
    apply(instr, state);
    v.max_norm_drift = std::max(v.max_norm_drift, std::abs(state.norm() - 1.0));
  }
  const Complex ov = overlap(target, state);
  v.fidelity = std::abs(ov);
  v.phase = phase_of(ov);
  v.phase_error = std::abs(wrap_angle(v.phase - prog.residual_global_phase));
  v.flags = required_selectivity(prog, StateVector::ground(prog.dims));
  v.pass = v.fidelity >= 1.0 - kVerifyFidelity && v.phase_error <= kVerifyPhase;
  return v;
}

void print_verification(std::ostream& out, const Verification& v) {
  int required = 0;
  for (const auto& f : v.flags) required += f.required ? 1 : 0;
  out << "fidelity |<target|run>|  " << std::setprecision(17) << v.fidelity << '\n'
      << "infidelity               " << std::setprecision(3) << 1.0 - v.fidelity << '\n'
      << "overlap phase            " << std::setprecision(12) << v.phase << '\n'
      << "phase error              " << std::setprecision(3) << v.phase_error << '\n'
      << "max norm drift           " << v.max_norm_drift << '\n'
      << "selective rotations      " << v.flags.size() << " (" << required
      << " require selectivity)\n";
  for (const auto& f : v.flags) {
    out << "  instruction " << f.index << ": " << (f.required ? "required" : "not required")
        << " (deviation " << f.deviation << ")\n";
  }
  out << "verification             " << (v.pass ? "PASS" : "FAIL") << '\n';
}

void print_program(std::ostream& out, const PulseProgram& prog) {
  out << std::setprecision(10);
  for (std::size_t i = 0; i < prog.instructions.size(); ++i) {
    out << "  " << std::setw(3) << i << "  " << to_string(prog.instructions[i]) << '\n';
  }
}

void print_summary(std::ostream& out, const PulseProgram& prog, const ControlRates& rates) {
  const AngleTotals t = angle_totals(prog);
  const Census& c = t.counts;
  out << "algorithm                " << prog.algorithm << '\n'
      << "dims                     (" << prog.dims.n_a << ", " << prog.dims.n_b << ")\n"
      << "instructions             " << prog.instructions.size() << '\n'
      << "  phases                 " << c.qubit_phases + c.qudit_phases << '\n'
      << "  rotations              " << c.qubit_rotations + c.qudit_rotations << " plain, "
      << c.selective_rotations << " selective\n"
      << "  swaps                  " << c.swaps_a << " A, " << c.swaps_b << " B\n"
      << std::setprecision(10) << "sum |phases|             " << t.sum_abs_phases << '\n'
      << "sum rotations            " << t.sum_rotations << '\n'
      << "sum swaps                " << t.sum_swaps << '\n'
      << "estimated time           " << estimate_time(prog, rates) << '\n'
      << "residual global phase    " << prog.residual_global_phase << '\n';
}

int cmd_synth(const Options& o, std::ostream& out) {
  const TargetSpec spec = load_target(o.target_path);
  const std::string alg = o.algorithm.empty() ? default_algorithm(spec.kind) : o.algorithm;
  if (!admissible(spec.kind, alg)) {
    throw InputError("algorithm '" + alg + "' is not admissible for a " + to_string(spec.kind) +
                     " target");
  }
  const ControlRates rates = parse_rates(o);
  const SynthesisResult r = synthesize(alg, spec.state, synthesis_options(o));
  if (!o.out.empty()) save_program(o.out, r.program);
  print_summary(out, r.program, rates);
  print_program(out, r.program);
  const Verification v = verify(r.program, align(spec.state, r.program.dims));
  print_verification(out, v);
  return v.pass ? kExitPass : kExitVerifyFailed;
}

int cmd_verify(const Options& o, std::ostream& out) {
  const PulseProgram prog = load_program(o.program_path);
  const StateVector target =
      o.target_path.empty() ? prog.target : align(load_target(o.target_path).state, prog.dims);
  if (target.norm() == 0.0) throw InputError("verification target is empty");
  const Verification v = verify(prog, align(target, prog.dims));
  out << "program                  " << o.program_path << " (" << prog.instructions.size()
      << " instructions, " << prog.algorithm << ")\n";
  print_verification(out, v);
  return v.pass ? kExitPass : kExitVerifyFailed;
}

int cmd_bench(const Options& o, std::ostream& out) {
  CampaignConfig cfg;
  cfg.algorithm = o.algorithm.empty() ? algorithm::kLawEberly : o.algorithm;
  if (cfg.algorithm != algorithm::kLawEberly && cfg.algorithm != algorithm::kSubtraction &&
      cfg.algorithm != algorithm::kSwapping) {
    throw InputError("bench algorithm must be law-eberly, subtraction or swapping");
  }
  if (o.samples < 1) throw InputError("--samples must be at least 1");
  cfg.sizes = parse_sizes(o.sizes);
  cfg.samples = o.samples;
  cfg.seed = o.seed;
  cfg.options = synthesis_options(o);
  const std::filesystem::path dir = o.out.empty() ? "." : o.out;
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw InputError("cannot create output directory '" + dir.string() + "'");

  const ScalingReport report = run_campaign(cfg);
  std::ostringstream campaign, fits;
  write_campaign_csv(campaign, report);
  write_fit_csv(fits, report);
  const auto campaign_path = dir / (cfg.algorithm + "_campaign.csv");
  const auto fit_path = dir / (cfg.algorithm + "_fits.csv");
  try {
    write_text(campaign_path, campaign.str());
    write_text(fit_path, fits.str());
  } catch (const std::runtime_error& e) {
    throw InputError(e.what());
  }

  out << "algorithm " << cfg.algorithm << ", " << cfg.sizes.size() << " sizes, " << cfg.samples
      << " samples, seed " << cfg.seed << '\n'
      << std::setprecision(6);
  for (Quantity q : {Quantity::Phases, Quantity::Rotations, Quantity::Swaps}) {
    const FitRow& f = report.primary_fit(q);
    out << "  " << std::setw(10) << to_string(q) << "  " << std::setw(9) << to_string(f.fit.family);
    for (double c : f.fit.coefficients) out << "  " << std::setw(10) << c;
    out << "  rms " << f.fit.rms << '\n';
  }
  out << "wrote " << campaign_path.string() << " and " << fit_path.string() << '\n';
  return kExitPass;
}

int cmd_noon(const Options& o, std::ostream& out) {
  const std::string alg = o.algorithm.empty() ? algorithm::kSwapping : o.algorithm;
  if (!admissible(TargetKind::Noon, alg)) {
    throw InputError("NOON algorithm must be subtraction, swapping or diagonal");
  }
  if (o.noon_n < 0) throw InputError("--n must be non-negative");
  const ControlRates rates = parse_rates(o);
  const StateVector target = noon_state(o.noon_n);
  const SynthesisResult r = synthesize(alg, target, synthesis_options(o));
  if (!o.out.empty()) save_program(o.out, r.program);
  print_summary(out, r.program, rates);
  print_program(out, r.program);
  const Verification v = verify(r.program, align(target, r.program.dims));
  print_verification(out, v);
  return v.pass ? kExitPass : kExitVerifyFailed;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Fock-state synthesis compiler and verifier for qubit-resonator systems"};
  app.require_subcommand(1);
  Options o;

  const std::string alg_help =
      "qudit-direct | qudit-reverse | law-eberly | subtraction | swapping | diagonal";

  auto* synth = app.add_subcommand("synth", "Compile a target-state file into a pulse program");
  synth->add_option("--target", o.target_path, "Target-state JSON file")->required();
  synth->add_option("--algorithm", o.algorithm, alg_help);
  synth->add_option("--out", o.out, "Write the program JSON here");

  auto* ver = app.add_subcommand("verify", "Run a program from the ground state and compare");
  ver->add_option("--program", o.program_path, "Pulse-program JSON file")->required();
  ver->add_option("--target", o.target_path, "Target-state JSON file (default: embedded target)");

  auto* bench = app.add_subcommand("bench", "Averaged angle totals over random targets");
  bench->add_option("--algorithm", o.algorithm, "law-eberly | subtraction | swapping");
  bench->add_option("--sizes", o.sizes, "a..b or a comma list")->capture_default_str();
  bench->add_option("--samples", o.samples, "Random targets per size")->capture_default_str();
  bench->add_option("--seed", o.seed, "Campaign seed")->capture_default_str();
  bench->add_option("--out", o.out, "Output directory for CSV files");

  auto* noon = app.add_subcommand("noon", "Emit the program for (|N,0> + |0,N>)/sqrt(2)");
  noon->add_option("--n", o.noon_n, "Photon number N")->capture_default_str();
  noon->add_option("--algorithm", o.algorithm, "subtraction | swapping | diagonal");
  noon->add_option("--out", o.out, "Write the program JSON here");

  for (auto* sub : {synth, bench, noon}) {
    sub->add_flag("--reverse-columns", o.reverse_columns, "Subtraction: sweep columns upward");
    sub->add_flag("--no-phase-fold", o.no_phase_fold, "Keep near-pi phases unfolded");
  }
  for (auto* sub : {synth, noon}) {
    sub->add_option("--rates", o.rates, "delta_omega,omega,g")->capture_default_str();
    sub->add_option("--omega-sel", o.omega_sel, "Rabi rate for selective rotations");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitPass : kExitInputError;
  }

  try {
    if (synth->parsed()) return cmd_synth(o, out);
    if (ver->parsed()) return cmd_verify(o, out);
    if (bench->parsed()) return cmd_bench(o, out);
    if (noon->parsed()) return cmd_noon(o, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  }
  return kExitInputError;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv{"focksynth"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace focksynth
