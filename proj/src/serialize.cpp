#include "wenplaq/serialize.hpp"

#include <charconv>
#include <cstring>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace wenplaq::io {

json to_json(const model::HamiltonianSpec& h) {
  json terms = json::array();
  for (const auto& t : h.terms)
    terms.push_back({{"c", t.coeff},
                     {"x", t.op.x_mask().hex()},
                     {"z", t.op.z_mask().hex()},
                     {"phase", t.op.phase_exponent()}});
  return {{"lattice",
           {{"lx", h.lattice.lx},
            {"ly", h.lattice.ly},
            {"parity_class", model::to_string(h.lattice.parity_class())},
            {"tunneling_length", h.lattice.tunneling_length()},
            {"short_edge", h.lattice.has_short_edge()}}},
          {"params", h.params},
          {"terms", terms}};
}

model::HamiltonianSpec hamiltonian_from_json(const json& j) {
  model::HamiltonianSpec h;
  h.lattice = model::LatticeSpec::make(j.at("lattice").at("lx").get<int>(),
                                       j.at("lattice").at("ly").get<int>());
  if (j.contains("params"))
    h.params = j.at("params").get<std::map<std::string, double>>();
  std::size_t n = h.n_sites();
  for (const auto& t : j.at("terms")) {
    auto x = pauli::BitMask::from_hex(t.at("x").get<std::string>(), n);
    auto z = pauli::BitMask::from_hex(t.at("z").get<std::string>(), n);
    h.terms.push_back({t.at("c").get<double>(),
                       pauli::PauliString::from_masks(x, z, t.at("phase").get<int>())});
  }
  h.validate();
  return h;
}

json to_json(const spectra::SpectrumResult& r) {
  json clusters = json::array();
  for (auto [lo, hi] : r.clusters) clusters.push_back({{"begin", lo}, {"end", hi}});
  return {{"eigenvalues", r.eigenvalues},
          {"residual_norms", r.residual_norms},
          {"cluster_tolerance", r.cluster_tolerance},
          {"clusters", clusters},
          {"metadata",
           {{"seed", r.seed},
            {"iterations", r.iterations},
            {"tolerance", r.tolerance},
            {"method", r.method}}}};
}

json to_json(const toric::EffectiveParams& p) {
  return {{"J_xx", p.J_xx},   {"J_yy", p.J_yy},  {"J_zz", p.J_zz},
          {"J_zx", p.J_zx},   {"J_xz", p.J_xz},  {"h1_x", p.h1_x},
          {"h1_z", p.h1_z},   {"h2_x", p.h2_x},  {"h2_z", p.h2_z},
          {"energy_offset", p.energy_offset},
          {"fit_residual", p.fit_residual},
          {"dimension", p.dimension},
          {"continuity", p.continuity}};
}

json to_json(const toric::ScalingFit& f) {
  return {{"exponent", f.exponent},
          {"prefactor", f.prefactor},
          {"r_squared", f.r_squared},
          {"points_used", f.points_used},
          {"points_dropped", f.points_dropped}};
}

json to_json(const qubit::PulseSequence& seq) {
  json steps = json::array();
  for (const auto& s : seq.steps)
    steps.push_back({{"axis", s.axis == qubit::Axis::Z ? "Z" : "XY-diagonal"},
                     {"duration", s.duration},
                     {"coupling", s.coupling}});
  return {{"steps", steps}};
}

qubit::PulseSequence pulse_sequence_from_json(const json& j) {
  qubit::PulseSequence seq;
  for (const auto& s : j.at("steps")) {
    qubit::PulseStep step;
    std::string axis = s.at("axis").get<std::string>();
    if (axis == "Z")
      step.axis = qubit::Axis::Z;
    else if (axis == "XY-diagonal")
      step.axis = qubit::Axis::XYDiagonal;
    else
      throw std::invalid_argument("pulse_sequence_from_json: unknown axis " + axis);
    step.duration = s.at("duration").get<double>();
    step.coupling = s.at("coupling").get<double>();
    seq.steps.push_back(step);
  }
  return seq;
}

json to_json(const interference::ShotCounts& c) {
  return {{"particle", c.particle == interference::Particle::fermion ? "fermion" : "vortex"},
          {"shots", c.shots},
          {"constructive", c.constructive},
          {"constructive_fraction", c.constructive_fraction()},
          {"hop_amplitude", c.hop_amplitude},
          {"T_constructive", interference::transition_amplitude(1, c.hop_amplitude)},
          {"T_destructive", 0.0},
          {"seed", c.seed}};
}

json to_json(const interference::ReconstructionResult& r) {
  return {{"alpha_hat", r.alpha_hat},
          {"beta_hat", r.beta_hat},
          {"phi_hat", r.phi_hat},
          {"phi_determined", r.phi_determined},
          {"confidence_radius", r.confidence_radius},
          {"sigma_alpha", r.sigma_alpha},
          {"sigma_cos_phi", r.sigma_cos_phi},
          {"sigma_phi", r.sigma_phi}};
}

namespace {

template <typename T>
void write_le(std::ostream& os, T value) {
  unsigned char buf[sizeof(T)];
  std::memcpy(buf, &value, sizeof(T));
  // this code only targets little-endian hosts; document rather than swap
  os.write(reinterpret_cast<const char*>(buf), sizeof(T));
}

template <typename T>
T read_le(std::istream& is) {
  unsigned char buf[sizeof(T)];
  is.read(reinterpret_cast<char*>(buf), sizeof(T));
  T value;
  std::memcpy(&value, buf, sizeof(T));
  return value;
}

}  // namespace

void write_vectors_binary(std::ostream& os, const std::vector<pauli::StateVector>& vecs) {
  write_le<std::uint64_t>(os, vecs.size());
  for (const auto& v : vecs) {
    write_le<std::uint64_t>(os, v.amplitudes.size());
    for (const auto& a : v.amplitudes) {
      write_le<double>(os, a.real());
      write_le<double>(os, a.imag());
    }
  }
}

std::vector<pauli::StateVector> read_vectors_binary(std::istream& is, std::size_t n_sites) {
  auto count = read_le<std::uint64_t>(is);
  std::vector<pauli::StateVector> out;
  for (std::uint64_t k = 0; k < count; ++k) {
    auto len = read_le<std::uint64_t>(is);
    pauli::StateVector v(n_sites);
    if (len != v.amplitudes.size())
      throw std::runtime_error("read_vectors_binary: length prefix mismatch");
    for (auto& a : v.amplitudes) {
      double re = read_le<double>(is);
      double im = read_le<double>(is);
      a = {re, im};
    }
    if (!is) throw std::runtime_error("read_vectors_binary: truncated stream");
    out.push_back(std::move(v));
  }
  return out;
}

std::string csv_escape(const std::string& field) {
  bool needs = field.find_first_of(",\"\n\r") != std::string::npos;
  if (!needs) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += "\"\"";
    else out += c;
  }
  out += '"';
  return out;
}

std::string csv_row(const std::vector<std::string>& fields) {
  std::string out;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out += ',';
    out += csv_escape(fields[i]);
  }
  out += '\n';
  return out;
}

std::vector<std::string> csv_parse_row(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (c == '\n' || c == '\r') {
      break;
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

std::string format_double(double v) {
  char buf[64];
  auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  (void)ec;
  return std::string(buf, p);
}

std::string validate_against_schema(const json& doc, const json& schema, const std::string& path) {
  if (schema.contains("type")) {
    std::string t = schema["type"].get<std::string>();
    bool ok = (t == "object" && doc.is_object()) || (t == "array" && doc.is_array()) ||
              (t == "string" && doc.is_string()) || (t == "number" && doc.is_number()) ||
              (t == "integer" && doc.is_number_integer()) ||
              (t == "boolean" && doc.is_boolean()) || (t == "null" && doc.is_null());
    if (!ok) return path + ": expected type " + t;
  }
  if (schema.contains("enum")) {
    bool found = false;
    for (const auto& v : schema["enum"])
      if (v == doc) found = true;
    if (!found) return path + ": value not in enum";
  }
  if (doc.is_object()) {
    if (schema.contains("required"))
      for (const auto& k : schema["required"])
        if (!doc.contains(k.get<std::string>()))
          return path + ": missing required key '" + k.get<std::string>() + "'";
    if (schema.contains("properties"))
      for (auto it = schema["properties"].begin(); it != schema["properties"].end(); ++it)
        if (doc.contains(it.key())) {
          std::string err = validate_against_schema(doc[it.key()], it.value(), path + "." + it.key());
          if (!err.empty()) return err;
        }
  }
  if (doc.is_array() && schema.contains("items")) {
    for (std::size_t i = 0; i < doc.size(); ++i) {
      std::string err = validate_against_schema(doc[i], schema["items"],
                                                path + "[" + std::to_string(i) + "]");
      if (!err.empty()) return err;
    }
  }
  return "";
}

}  // namespace wenplaq::io
