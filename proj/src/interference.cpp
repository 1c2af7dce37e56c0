#include "wenplaq/interference.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace wenplaq::interference {

void InterferenceConfig::validate() const {
  if (shots < 1) throw std::invalid_argument("InterferenceConfig: shots must be >= 1");
  if (hop_amplitude <= 0) throw std::invalid_argument("InterferenceConfig: hop amplitude must be > 0");
}

double transition_amplitude(int epsilon, double t) {
  if (t <= 0) throw std::invalid_argument("transition_amplitude: t must be > 0");
  if (epsilon != 1 && epsilon != -1)
    throw std::invalid_argument("transition_amplitude: epsilon must be +-1");
  return 2.0 * t * t + 2.0 * epsilon * t * t;
}

std::pair<double, double> fermion_branch_probabilities(const qubit::QubitState& s) {
  return {s.alpha * s.alpha, s.beta * s.beta};
}

std::pair<double, double> vortex_branch_probabilities(const qubit::QubitState& s) {
  double c = s.alpha * s.beta * std::cos(s.phi);
  return {0.5 + c, 0.5 - c};
}

ShotCounts run_experiment(const qubit::QubitState& state, const InterferenceConfig& cfg) {
  cfg.validate();
  double p = cfg.particle == Particle::fermion ? fermion_branch_probabilities(state).first
                                               : vortex_branch_probabilities(state).first;
  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  ShotCounts out;
  out.particle = cfg.particle;
  out.shots = cfg.shots;
  out.hop_amplitude = cfg.hop_amplitude;
  out.seed = cfg.seed;
  out.per_shot.reserve(cfg.shots);
  for (std::uint64_t s = 0; s < cfg.shots; ++s) {
    int hit = u(rng) < p ? 1 : 0;
    out.constructive += hit;
    out.per_shot.push_back(hit);
  }
  return out;
}

namespace {

ReconstructionResult invert(double f_up, double v_up, double n_f, double n_v,
                            double ab_threshold) {
  ReconstructionResult r;
  f_up = std::clamp(f_up, 0.0, 1.0);
  r.alpha_hat = std::sqrt(f_up);
  r.beta_hat = std::sqrt(1.0 - f_up);

  // binomial error on the fermion fraction, propagated through sqrt
  double sig_f = n_f > 0 ? std::sqrt(std::max(f_up * (1 - f_up), 1.0 / n_f) / n_f) : 0.0;
  r.sigma_alpha = r.alpha_hat > 1e-12 ? sig_f / (2 * r.alpha_hat) : std::sqrt(sig_f);

  double ab = r.alpha_hat * r.beta_hat;
  if (ab < ab_threshold) {
    r.phi_determined = false;
    r.phi_hat = 0.0;
    r.confidence_radius = r.sigma_alpha;
    return r;
  }

  double c = std::clamp((v_up - 0.5) / ab, -1.0, 1.0);
  r.phi_hat = std::acos(c);
  r.phi_determined = true;

  double sig_v = n_v > 0 ? std::sqrt(std::max(v_up * (1 - v_up), 1.0 / n_v) / n_v) : 0.0;
  // c = (v - 1/2) / (a sqrt(1-a^2)); da and dv contributions
  double dc_dv = 1.0 / ab;
  double a = r.alpha_hat;
  double dab_da = (1 - 2 * a * a) / std::max(std::sqrt(1 - a * a), 1e-12);
  double dc_da = -(v_up - 0.5) * dab_da / (ab * ab);
  r.sigma_cos_phi = std::sqrt(dc_dv * dc_dv * sig_v * sig_v + dc_da * dc_da * r.sigma_alpha * r.sigma_alpha);
  double s = std::sqrt(std::max(1.0 - c * c, 1e-12));
  r.sigma_phi = r.sigma_cos_phi / s;
  r.confidence_radius = std::max(r.sigma_alpha, r.sigma_phi);
  return r;
}

}  // namespace

ReconstructionResult reconstruct(const ShotCounts& fermion_counts,
                                 const ShotCounts& vortex_counts, double ab_threshold) {
  if (fermion_counts.shots == 0 || vortex_counts.shots == 0)
    throw std::invalid_argument("reconstruct: both count sets must be nonempty");
  if (fermion_counts.particle != Particle::fermion || vortex_counts.particle != Particle::vortex)
    throw std::invalid_argument("reconstruct: counts passed for the wrong particles");
  return invert(fermion_counts.constructive_fraction(), vortex_counts.constructive_fraction(),
                static_cast<double>(fermion_counts.shots),
                static_cast<double>(vortex_counts.shots), ab_threshold);
}

ReconstructionResult reconstruct_exact(double fermion_up_fraction, double vortex_up_fraction,
                                       double ab_threshold) {
  return invert(fermion_up_fraction, vortex_up_fraction, 0.0, 0.0, ab_threshold);
}

}  // namespace wenplaq::interference
