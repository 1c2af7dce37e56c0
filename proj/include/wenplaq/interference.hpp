#pragma once

#include <cstdint>
#include <vector>

#include "wenplaq/gates.hpp"

namespace wenplaq::interference {

enum class Particle { fermion, vortex };

struct InterferenceConfig {
  Particle particle = Particle::fermion;
  double hop_amplitude = 1.0;  // t_f or t_v
  std::uint64_t shots = 1;
  std::uint64_t seed = 0;

  void validate() const;
};

// Two symmetric paths with equal amplitude t: |Psi1|^2 + |Psi2|^2 +
// 2 eps |Psi2 Psi1| = 2 t^2 (1 + eps).
double transition_amplitude(int epsilon, double t);

// (alpha^2, beta^2): weights of the eps = +1 / -1 fermion-boundary sectors
std::pair<double, double> fermion_branch_probabilities(const qubit::QubitState& state);

// (1/2 + alpha beta cos phi, 1/2 - alpha beta cos phi): weights of the
// |up'> / |down'> = (|up> +- |down>)/sqrt2 sectors seen by the vortex
std::pair<double, double> vortex_branch_probabilities(const qubit::QubitState& state);

struct ShotCounts {
  Particle particle = Particle::fermion;
  std::uint64_t shots = 0;
  std::uint64_t constructive = 0;  // outcomes with T = 4 t^2
  double hop_amplitude = 1.0;
  std::uint64_t seed = 0;

  double constructive_fraction() const {
    return shots ? static_cast<double>(constructive) / static_cast<double>(shots) : 0.0;
  }
  std::vector<int> per_shot;  // 1 = constructive, kept for CSV export
};

// Bernoulli sampling of the configured branch probability; deterministic
// for a fixed seed.
ShotCounts run_experiment(const qubit::QubitState& state, const InterferenceConfig& cfg);

struct ReconstructionResult {
  double alpha_hat = 0;
  double beta_hat = 0;
  double phi_hat = 0;           // in [0, pi]; sign unobservable
  bool phi_determined = false;  // false when alpha*beta is too small
  double confidence_radius = 0; // max of the propagated radii below
  double sigma_alpha = 0;
  double sigma_cos_phi = 0;
  double sigma_phi = 0;
};

// alpha = sqrt(fermion constructive fraction); cos phi from the vortex
// channel, clamped to [-1, 1]; binomial standard errors propagated.
// phi is undetermined when alpha*beta < threshold.
ReconstructionResult reconstruct(const ShotCounts& fermion_counts,
                                 const ShotCounts& vortex_counts,
                                 double ab_threshold = 0.05);

// infinite-shot-limit inversion used by round-trip tests
ReconstructionResult reconstruct_exact(double fermion_up_fraction, double vortex_up_fraction,
                                       double ab_threshold = 0.05);

}  // namespace wenplaq::interference
