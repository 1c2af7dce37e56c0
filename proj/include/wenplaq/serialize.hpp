#pragma once

#include <json.hpp>

#include <iosfwd>
#include <string>
#include <vector>

#include "wenplaq/eigensolver.hpp"
#include "wenplaq/gates.hpp"
#include "wenplaq/interference.hpp"
#include "wenplaq/model.hpp"
#include "wenplaq/toric.hpp"

namespace wenplaq::io {

using json = nlohmann::json;

// HamiltonianSpec <-> JSON; term masks as hex, phase as the integer
// exponent of i in the X^x Z^z form. Round-trip is bit-exact.
json to_json(const model::HamiltonianSpec& h);
model::HamiltonianSpec hamiltonian_from_json(const json& j);

json to_json(const spectra::SpectrumResult& r);
json to_json(const toric::EffectiveParams& p);
json to_json(const toric::ScalingFit& f);
json to_json(const qubit::PulseSequence& seq);
qubit::PulseSequence pulse_sequence_from_json(const json& j);
json to_json(const interference::ShotCounts& c);
json to_json(const interference::ReconstructionResult& r);

// eigenvectors as little-endian f64 (re, im) pairs, u64-length-prefixed
void write_vectors_binary(std::ostream& os, const std::vector<pauli::StateVector>& vecs);
std::vector<pauli::StateVector> read_vectors_binary(std::istream& is, std::size_t n_sites);

// RFC-4180-style CSV: fields quoted when they contain separators, quotes
// doubled inside quoted fields
std::string csv_escape(const std::string& field);
std::string csv_row(const std::vector<std::string>& fields);
std::vector<std::string> csv_parse_row(const std::string& line);

std::string format_double(double v);  // shortest round-trip decimal

// Minimal structural validator for the shipped schema files: supports
// type, required, properties, items, enum. Returns an empty string on
// success, else the first violation.
std::string validate_against_schema(const json& doc, const json& schema,
                                    const std::string& path = "$");

}  // namespace wenplaq::io
