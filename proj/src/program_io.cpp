#include "focksynth/program_io.hpp"

#include <fstream>
#include <json.hpp>
#include <sstream>

namespace focksynth {

using nlohmann::json;

namespace {

template <typename T>
T field(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object() || !obj.contains(key)) {
    throw FormatError(where + ": missing field '" + key + "'");
  }
  try {
    return obj.at(key).get<T>();
  } catch (const json::exception& e) {
    throw FormatError(where + ": bad field '" + key + "': " + e.what());
  }
}

double optional_double(const json& obj, const char* key, const std::string& where) {
  return obj.contains(key) ? field<double>(obj, key, where) : 0.0;
}

json parse(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw FormatError(std::string("malformed JSON: ") + e.what());
  }
}

const char* mode_name(SelectMode m) {
  switch (m) {
    case SelectMode::ExactFock: return "exact";
    case SelectMode::ModeA: return "mode_a";
    case SelectMode::ModeB: return "mode_b";
  }
  return "?";
}

json target_entries(const StateVector& s) {
  json list = json::array();
  const Dims d = s.dims();
  for (int a = 0; a <= d.n_a; ++a)
    for (int b = 0; b <= d.n_b; ++b) {
      const Complex c = s(0, a, b);
      if (c == Complex{}) continue;
      list.push_back({{"n_a", a}, {"n_b", b}, {"re", c.real()}, {"im", c.imag()}});
    }
  return list;
}

}  // namespace

std::string gate_kind_name(GateKind kind) {
  switch (kind) {
    case GateKind::QubitRotation: return "qubit_rotation";
    case GateKind::QubitPhase: return "qubit_phase";
    case GateKind::SwapA: return "swap_a";
    case GateKind::SwapB: return "swap_b";
    case GateKind::SelectiveRotation: return "selective_rotation";
    case GateKind::QuditRotation: return "qudit_rotation";
    case GateKind::QuditPhase: return "qudit_phase";
  }
  return "?";
}

GateKind gate_kind_from_string(const std::string& name) {
  for (GateKind k : {GateKind::QubitRotation, GateKind::QubitPhase, GateKind::SwapA, GateKind::SwapB,
                     GateKind::SelectiveRotation, GateKind::QuditRotation, GateKind::QuditPhase}) {
    if (gate_kind_name(k) == name) return k;
  }
  throw FormatError("unknown instruction kind '" + name + "'");
}

std::string program_to_json(const PulseProgram& prog, int indent) {
  json doc;
  doc["algorithm"] = prog.algorithm;
  doc["dims"] = {prog.dims.n_a, prog.dims.n_b};
  doc["target"] = target_entries(prog.target);
  doc["residual_global_phase"] = prog.residual_global_phase;
  json list = json::array();
  for (const auto& instr : prog.instructions) {
    json j{{"kind", gate_kind_name(instr.kind)}, {"angle", instr.angle}};
    if (instr.kind == GateKind::QuditRotation || instr.kind == GateKind::QuditPhase) {
      j["level"] = instr.level;
    }
    if (instr.selectivity) {
      const auto& s = *instr.selectivity;
      json sel{{"mode", mode_name(s.mode)}};
      if (s.mode != SelectMode::ModeB) sel["n_a"] = s.n_a;
      if (s.mode != SelectMode::ModeA) sel["n_b"] = s.n_b;
      j["selectivity"] = sel;
    }
    list.push_back(j);
  }
  doc["instructions"] = list;
  return doc.dump(indent) + "\n";
}

PulseProgram program_from_json(const std::string& text) {
  const json doc = parse(text);
  const std::string where = "program";
  PulseProgram prog;
  prog.algorithm = field<std::string>(doc, "algorithm", where);
  const auto dims = field<std::vector<int>>(doc, "dims", where);
  if (dims.size() != 2 || dims[0] < 0 || dims[1] < 0) {
    throw FormatError("program: dims must be [N_a, N_b] with non-negative entries");
  }
  prog.dims = {dims[0], dims[1]};
  prog.residual_global_phase = field<double>(doc, "residual_global_phase", where);

  prog.target = StateVector(prog.dims);
  const json target = doc.contains("target") ? doc["target"] : json::array();
  if (!target.is_array()) throw FormatError("program: target must be a list");
  for (const auto& e : target) {
    const int a = field<int>(e, "n_a", "program target");
    const int b = field<int>(e, "n_b", "program target");
    if (!prog.target.contains({0, a, b})) throw FormatError("program: target index outside dims");
    prog.target(0, a, b) = Complex(field<double>(e, "re", "program target"),
                                   optional_double(e, "im", "program target"));
  }

  const json list = field<json>(doc, "instructions", where);
  if (!list.is_array()) throw FormatError("program: instructions must be a list");
  for (std::size_t i = 0; i < list.size(); ++i) {
    const json& e = list[i];
    const std::string at = "instruction " + std::to_string(i);
    Instruction instr;
    instr.kind = gate_kind_from_string(field<std::string>(e, "kind", at));
    instr.angle = field<double>(e, "angle", at);
    if (e.contains("level")) instr.level = field<int>(e, "level", at);
    if (e.contains("selectivity")) {
      const json& s = e["selectivity"];
      const std::string mode = field<std::string>(s, "mode", at + " selectivity");
      Selectivity sel;
      if (mode == "exact") {
        sel = Selectivity::exact(field<int>(s, "n_a", at), field<int>(s, "n_b", at));
      } else if (mode == "mode_a") {
        sel = Selectivity::mode_a(field<int>(s, "n_a", at));
      } else if (mode == "mode_b") {
        sel = Selectivity::mode_b(field<int>(s, "n_b", at));
      } else {
        throw FormatError(at + ": unknown selectivity mode '" + mode + "'");
      }
      instr.selectivity = sel;
    }
    try {
      validate(instr, prog.dims);
    } catch (const InvalidInstruction& err) {
      throw FormatError(at + ": " + err.what());
    }
    prog.instructions.push_back(instr);
  }
  return prog;
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  out << text;
  if (!out) throw std::runtime_error("write to '" + path.string() + "' failed");
}

void save_program(const std::filesystem::path& path, const PulseProgram& prog) {
  write_text(path, program_to_json(prog));
}

PulseProgram load_program(const std::filesystem::path& path) {
  return program_from_json(read_text(path));
}

std::string to_string(TargetKind kind) {
  switch (kind) {
    case TargetKind::Qudit: return "qudit";
    case TargetKind::Single: return "single";
    case TargetKind::Double: return "double";
    case TargetKind::Diagonal: return "diagonal";
    case TargetKind::Noon: return "noon";
  }
  return "?";
}

TargetSpec target_from_json(const std::string& text) {
  const json doc = parse(text);
  const std::string where = "target";
  const std::string kind = field<std::string>(doc, "kind", where);
  TargetSpec spec;

  if (kind == "noon") {
    spec.kind = TargetKind::Noon;
    const int n = field<int>(doc, "N", where);
    if (n < 0) throw InvalidTarget("NOON photon number must be non-negative");
    spec.noon_n = n;
    spec.state = noon_state(n);
    return spec;
  }

  const auto dims = field<std::vector<int>>(doc, "dims", where);
  const json list = field<json>(doc, "coefficients", where);
  if (!list.is_array()) throw FormatError("target: coefficients must be a list");
  std::vector<FockCoefficient> coeffs;
  Dims d;

  if (kind == "qudit" || kind == "single") {
    spec.kind = kind == "qudit" ? TargetKind::Qudit : TargetKind::Single;
    if (dims.size() != 1) throw FormatError("target: " + kind + " dims must be a single number");
    const int top = spec.kind == TargetKind::Qudit ? dims[0] - 1 : dims[0];
    if (top < (spec.kind == TargetKind::Qudit ? 1 : 0)) {
      throw InvalidTarget("target: " + kind + " dimension too small");
    }
    d = {top, 0};
    for (const auto& e : list) {
      coeffs.push_back({field<int>(e, "n", "target coefficient"), 0,
                        Complex(optional_double(e, "re", "target coefficient"),
                                optional_double(e, "im", "target coefficient"))});
    }
  } else if (kind == "double" || kind == "diagonal") {
    spec.kind = kind == "double" ? TargetKind::Double : TargetKind::Diagonal;
    if (dims.size() != 2) throw FormatError("target: " + kind + " dims must be [N_a, N_b]");
    d = {dims[0], dims[1]};
    for (const auto& e : list) {
      coeffs.push_back({field<int>(e, "n_a", "target coefficient"),
                        field<int>(e, "n_b", "target coefficient"),
                        Complex(optional_double(e, "re", "target coefficient"),
                                optional_double(e, "im", "target coefficient"))});
    }
  } else {
    throw FormatError("target: unknown kind '" + kind + "'");
  }
  if (d.n_a < 0 || d.n_b < 0) throw FormatError("target: negative dims");
  spec.state = make_state(d, coeffs);

  if (spec.kind == TargetKind::Diagonal) {
    int total = -1;
    for (const auto& c : coeffs) {
      if (c.value == Complex{}) continue;
      if (total >= 0 && c.n_a + c.n_b != total) {
        throw InvalidTarget("diagonal target entries lie on more than one n_a + n_b");
      }
      total = c.n_a + c.n_b;
    }
  }
  return spec;
}

std::string target_to_json(const TargetSpec& spec, int indent) {
  json doc;
  doc["kind"] = to_string(spec.kind);
  if (spec.kind == TargetKind::Noon) {
    doc["N"] = spec.noon_n.value_or(spec.state.dims().n_a);
    return doc.dump(indent) + "\n";
  }
  const Dims d = spec.state.dims();
  json list = json::array();
  if (spec.kind == TargetKind::Qudit || spec.kind == TargetKind::Single) {
    doc["dims"] = {spec.kind == TargetKind::Qudit ? d.n_a + 1 : d.n_a};
    for (int n = 0; n <= d.n_a; ++n) {
      const Complex c = spec.state(0, n, 0);
      if (c != Complex{}) list.push_back({{"n", n}, {"re", c.real()}, {"im", c.imag()}});
    }
  } else {
    doc["dims"] = {d.n_a, d.n_b};
    list = target_entries(spec.state);
  }
  doc["coefficients"] = list;
  return doc.dump(indent) + "\n";
}

TargetSpec load_target(const std::filesystem::path& path) { return target_from_json(read_text(path)); }

void save_target(const std::filesystem::path& path, const TargetSpec& spec) {
  write_text(path, target_to_json(spec));
}

}  // namespace focksynth
