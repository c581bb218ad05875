#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "focksynth/gates.hpp"

namespace focksynth {

class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Program documents:
///   {"algorithm": str, "dims": [N_a, N_b],
///    "target": [{"n_a", "n_b", "re", "im"}...],
///    "residual_global_phase": float,
///    "instructions": [{"kind", "angle", "level"?, "selectivity"?}...]}
/// Angles are written in shortest round-trip form, so a re-read is bit exact.
std::string program_to_json(const PulseProgram& prog, int indent = 2);
PulseProgram program_from_json(const std::string& text);

void save_program(const std::filesystem::path& path, const PulseProgram& prog);
PulseProgram load_program(const std::filesystem::path& path);

GateKind gate_kind_from_string(const std::string& name);
std::string gate_kind_name(GateKind kind);

enum class TargetKind { Qudit, Single, Double, Diagonal, Noon };

std::string to_string(TargetKind kind);

/// Target-state documents:
///   qudit:    {"kind": "qudit", "dims": [d], "coefficients": [{"n", "re"?, "im"?}...]}
///   single:   {"kind": "single", "dims": [N], "coefficients": [{"n", ...}]}
///   double:   {"kind": "double", "dims": [N_a, N_b], "coefficients": [{"n_a", "n_b", ...}]}
///   diagonal: as double, all entries on one n_a + n_b
///   noon:     {"kind": "noon", "N": n}
/// "re" and "im" default to 0. Coefficients are normalized on load.
struct TargetSpec {
  TargetKind kind = TargetKind::Double;
  StateVector state;
  std::optional<int> noon_n;
};

TargetSpec target_from_json(const std::string& text);
std::string target_to_json(const TargetSpec& spec, int indent = 2);

TargetSpec load_target(const std::filesystem::path& path);
void save_target(const std::filesystem::path& path, const TargetSpec& spec);

std::string read_text(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace focksynth
