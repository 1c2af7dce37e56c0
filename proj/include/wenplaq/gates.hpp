#pragma once

#include <Eigen/Dense>

#include <functional>
#include <string>
#include <vector>

#include "wenplaq/model.hpp"

namespace wenplaq::qubit {

using pauli::cdouble;

// Logical qubit state alpha|up> + beta e^{i phi}|down>, alpha, beta >= 0,
// canonical form keeps the |up> amplitude real non-negative.
struct QubitState {
  double alpha = 1.0;
  double beta = 0.0;
  double phi = 0.0;  // [0, 2 pi)

  static QubitState up() { return {1.0, 0.0, 0.0}; }
  static QubitState make(double alpha, double beta, double phi);
  static QubitState from_amplitudes(cdouble up, cdouble down);

  Eigen::Vector2cd amplitudes() const;
};

enum class Axis { Z, XYDiagonal };

// One pulse: e^{-i coupling * duration * G} with G = tau_z or tau_x+tau_y.
// Note the XY-diagonal generator has norm sqrt(2); angles below are the
// bare products coupling*duration, not Bloch rotation angles.
struct PulseStep {
  Axis axis = Axis::Z;
  double duration = 0.0;
  double coupling = 0.0;
};

struct PulseSequence {
  std::vector<PulseStep> steps;  // application order
};

Eigen::Matrix2cd step_unitary(const PulseStep& s);

// product of step exponentials in application order
Eigen::Matrix2cd sequence_unitary(const PulseSequence& seq);

// canonical-form result of running the sequence on a state
QubitState evolve(const PulseSequence& seq, const QubitState& start);

// |tr(U^dag V)| / 2, phase-insensitive
double gate_fidelity(const Eigen::Matrix2cd& u, const Eigen::Matrix2cd& v);

// Z / XY-diagonal / Z decomposition of an arbitrary single-qubit unitary
// (up to global phase). Durations are angle/coupling, normalized
// non-negative. Throws on non-unitary targets or zero couplings.
PulseSequence compile_gate(const Eigen::Matrix2cd& target, double j, double j_zz,
                           double tol = 1e-9);

// named gates for the CLI: identity, hadamard, pauli-x, pauli-z, phase(lambda)
Eigen::Matrix2cd named_gate(const std::string& name, double lambda = 0.0);

// the sequence the paper's constants describe: gamma = pi/4,
// theta = 7 pi/4, phi = pi/4, as durations against (j, j_zz)
PulseSequence paper_hadamard_sequence(double j, double j_zz);

struct RampResult {
  QubitState final_state;
  double overlap_up = 0.0;  // |<up|psi>|^2
  int steps = 0;
};

// Time-ordered evolution under H(t) = effective_hz(t) tau_z +
// transverse_j (tau_x + tau_y), starting from the ground state of H(0),
// midpoint-exponential stepping. Throws if dt violates the per-step
// rotation-angle bound of 0.1 rad.
RampResult simulate_initialization(double t0, double duration, double dt,
                                   const std::function<double(double)>& effective_hz,
                                   double transverse_j = 0.0);

// Full-lattice cross-check: integrates the time-dependent Schroedinger
// equation for H_wen + h(t) sum_i Z_i with a classical RK4 stepper
// (sites <= 12), starting from the ground state at t = 0 and reporting
// the final overlap with a target code state.
struct LatticeRampResult {
  double overlap_target = 0.0;
  double norm_drift = 0.0;
  int steps = 0;
};

LatticeRampResult full_lattice_ramp(const model::HamiltonianSpec& base,
                                    const std::function<double(double)>& field,
                                    double duration, double dt,
                                    const pauli::StateVector& start,
                                    const pauli::StateVector& target);

}  // namespace wenplaq::qubit
