#pragma once

#include <Eigen/Dense>

#include <array>
#include <string>
#include <vector>

#include "wenplaq/eigensolver.hpp"
#include "wenplaq/model.hpp"
#include "wenplaq/pauli_string.hpp"

namespace wenplaq::toric {

// Logical loop operators of the plaquette model and, once labeled, the
// induced pseudo-spin basis of the ground space.
//
// Strings used:
//   z-logicals: straight sigma^z loops (fermion tunneling channels);
//   x-logicals: alternating Y/X loops along a row or column on e*e
//               lattices (vortex tunneling), an all-Y diagonal loop on
//               the others.
struct LogicalFrame {
  model::LatticeSpec lattice;
  std::vector<pauli::PauliString> z_logicals;
  std::vector<pauli::PauliString> x_logicals;
  std::vector<std::string> z_shapes;  // human-readable path metadata
  std::vector<std::string> x_shapes;

  // filled by label_ground_space
  bool labeled = false;
  std::vector<pauli::StateVector> labeled_basis;      // |up..>, ..., |down..>
  std::vector<std::vector<int>> labels;               // z-eigenvalues per state
  Eigen::MatrixXcd basis_transform;  // labeled = gs.basis * transform

  int n_pairs() const { return static_cast<int>(z_logicals.size()); }
};

// Pseudo-spin images of the nine tunneling processes.
struct TunnelingEntry {
  const char* process;      // e.g. "C_v^x"
  const char* pseudo_spin;  // e.g. "tau1_x (x) 1"
};

const std::array<TunnelingEntry, 9>& tunneling_map();

// Constructs the loop operators and checks every frame invariant:
// commutation with all plaquettes, involution, pairwise Heisenberg
// algebra, and non-membership in the plaquette group (GF(2) check).
LogicalFrame find_logicals(const model::LatticeSpec& lat);

// Simultaneous z-logical eigenbasis of an unperturbed ground space, with
// the phase gauge fixed so x-logicals act as exact bit flips.
LogicalFrame label_ground_space(const spectra::GroundSpace& gs, LogicalFrame frame,
                                double block_tol = 1e-10);

// true iff each (z_k, x_k) pair anticommutes with exact phase -1 and all
// cross pairs commute; integer phase arithmetic only.
bool verify_heisenberg_algebra(const LogicalFrame& frame);

// GF(2) membership of (x|z) masks in the group generated by the
// plaquette operators (phases ignored).
bool in_plaquette_group(const model::LatticeSpec& lat, const pauli::PauliString& p);

// Couplings of the projected low-energy Hamiltonian on the pseudo-spin
// basis. Extracted from the perturbed ground cluster via the Loewdin-
// orthogonalized overlap with the labeled h=0 basis (des Cloizeaux
// effective Hamiltonian), then decomposed over tau products.
struct EffectiveParams {
  double J_xx = 0, J_yy = 0, J_zz = 0, J_zx = 0, J_xz = 0;
  double h1_x = 0, h1_z = 0, h2_x = 0, h2_z = 0;
  double energy_offset = 0;  // identity coefficient
  double fit_residual = 0;   // norm of the part outside the named operators
  int dimension = 0;         // 2 or 4
  double continuity = 0;     // smallest overlap singular value
  Eigen::MatrixXcd effective_matrix;  // projected Hamiltonian, labeled basis

  Eigen::MatrixXcd reconstruct() const;  // identity + named couplings
};

// gs: ground cluster of the PERTURBED Hamiltonian; frame: labeled at h=0.
// Throws if the basis-continuity overlap drops below 0.5.
EffectiveParams extract_effective(const model::HamiltonianSpec& h_full,
                                  const spectra::GroundSpace& gs,
                                  const LogicalFrame& frame);

struct ScalingFit {
  double exponent = 0;
  double prefactor = 0;
  double r_squared = 0;
  int points_used = 0;
  int points_dropped = 0;
};

// least-squares slope of log(dE) against log(h); points with dE <= 0 are
// dropped with a warning count, fewer than 4 survivors is an error
ScalingFit fit_scaling_exponent(const std::vector<std::pair<double, double>>& sweep);

}  // namespace wenplaq::toric
