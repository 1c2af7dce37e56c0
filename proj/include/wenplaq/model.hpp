#pragma once

#include <map>
#include <string>
#include <vector>

#include "wenplaq/pauli_string.hpp"

namespace wenplaq::model {

enum class ParityClass { ee, eo, oe, oo };

std::string to_string(ParityClass p);

// Torus geometry. Sites live on an lx-by-ly grid with periodic wrap;
// site (x, y) maps to index y*lx + x (row-major), which is also its bit
// position in basis integers.
struct LatticeSpec {
  int lx = 0;
  int ly = 0;

  static LatticeSpec make(int lx, int ly);

  int sites() const { return lx * ly; }

  int site(int x, int y) const {
    x %= lx; if (x < 0) x += lx;
    y %= ly; if (y < 0) y += ly;
    return y * lx + x;
  }

  ParityClass parity_class() const;
  bool is_even_even() const { return lx % 2 == 0 && ly % 2 == 0; }

  // winding length of the diagonal tunneling path: lx*ly / gcd(lx, ly)
  int tunneling_length() const;

  // plaquette supports share site pairs when an edge has length 2
  bool has_short_edge() const { return lx == 2 || ly == 2; }
};

struct Term {
  double coeff;
  pauli::PauliString op;
};

// Weighted sum of Pauli strings with named parameter roles. Every term
// must be Hermitian (self-product phase +1).
struct HamiltonianSpec {
  LatticeSpec lattice;
  std::vector<Term> terms;
  std::map<std::string, double> params;

  std::size_t n_sites() const { return static_cast<std::size_t>(lattice.sites()); }

  void validate() const;  // throws on non-Hermitian terms or size mismatch
};

// merge term lists of two specs on the same lattice
HamiltonianSpec combine(const HamiltonianSpec& a, const HamiltonianSpec& b);

// F_i = X(i) Y(i+ex) X(i+ex+ey) Y(i+ey), indexed by base site (x, y)
pauli::PauliString plaquette(const LatticeSpec& lat, int x, int y);

// H0 = -g sum_i F_i, one plaquette per site, periodic wrap. g > 0.
HamiltonianSpec build_wen(const LatticeSpec& lat, double g);

// H' = h_x sum_i X_i + h_z sum_i Z_i (zero-coefficient families omitted)
HamiltonianSpec build_uniform_perturbation(const LatticeSpec& lat, double h_x, double h_z);

// H' = h sum_{i odd} (X_i + Y_i) + h_z sum_i Z_i; odd means parity(x+y)=1.
// Requires an even-by-even lattice (the two-coloring is globally
// inconsistent on odd tori).
HamiltonianSpec build_sublattice_perturbation(const LatticeSpec& lat, double h, double h_z);

// Brick-wall (honeycomb) model on a rows-by-cols torus:
//   H = sum_{j+l even} Jx X(j,l)X(j+1,l) + Jy Y(j-1,l)Y(j,l) + Jz Z(j,l)Z(j,l+1)
// with j = column, l = row. rows and cols must both be even, otherwise
// the bond pattern is inconsistent under the periodic wrap.
HamiltonianSpec build_kitaev(int rows, int cols, double j_x, double j_y, double j_z);

// g of the strong-x-bond reduction: Jz^2 Jy^2 / (16 |Jx|^3)
double effective_coupling(double j_x, double j_y, double j_z);

}  // namespace wenplaq::model
