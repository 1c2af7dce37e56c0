#include "wenplaq/model.hpp"

#include <numeric>
#include <stdexcept>

namespace wenplaq::model {

using pauli::PauliString;

std::string to_string(ParityClass p) {
  switch (p) {
    case ParityClass::ee: return "e*e";
    case ParityClass::eo: return "e*o";
    case ParityClass::oe: return "o*e";
    default: return "o*o";
  }
}

LatticeSpec LatticeSpec::make(int lx, int ly) {
  if (lx < 2 || ly < 2)
    throw std::invalid_argument("LatticeSpec: both dimensions must be >= 2");
  return LatticeSpec{lx, ly};
}

ParityClass LatticeSpec::parity_class() const {
  bool ex = lx % 2 == 0, ey = ly % 2 == 0;
  if (ex && ey) return ParityClass::ee;
  if (ex) return ParityClass::eo;
  if (ey) return ParityClass::oe;
  return ParityClass::oo;
}

int LatticeSpec::tunneling_length() const {
  return lx * ly / std::gcd(lx, ly);
}

void HamiltonianSpec::validate() const {
  for (const auto& t : terms) {
    if (t.op.n_sites() != n_sites())
      throw std::invalid_argument("HamiltonianSpec: term size mismatch");
    if (!t.op.is_hermitian())
      throw std::invalid_argument("HamiltonianSpec: non-Hermitian term " + t.op.to_string());
  }
}

HamiltonianSpec combine(const HamiltonianSpec& a, const HamiltonianSpec& b) {
  if (a.lattice.lx != b.lattice.lx || a.lattice.ly != b.lattice.ly)
    throw std::invalid_argument("combine: lattice mismatch");
  HamiltonianSpec out = a;
  out.terms.insert(out.terms.end(), b.terms.begin(), b.terms.end());
  for (const auto& [k, v] : b.params) out.params[k] = v;
  return out;
}

PauliString plaquette(const LatticeSpec& lat, int x, int y) {
  std::size_t n = lat.sites();
  PauliString p = PauliString::single(n, lat.site(x, y), 'X');
  p = p * PauliString::single(n, lat.site(x + 1, y), 'Y');
  p = p * PauliString::single(n, lat.site(x + 1, y + 1), 'X');
  p = p * PauliString::single(n, lat.site(x, y + 1), 'Y');
  return p;
}

HamiltonianSpec build_wen(const LatticeSpec& lat, double g) {
  if (g <= 0.0) throw std::invalid_argument("build_wen: g must be positive");
  HamiltonianSpec h;
  h.lattice = lat;
  h.params["g"] = g;
  h.terms.reserve(lat.sites());
  for (int y = 0; y < lat.ly; ++y)
    for (int x = 0; x < lat.lx; ++x)
      h.terms.push_back({-g, plaquette(lat, x, y)});
  return h;
}

HamiltonianSpec build_uniform_perturbation(const LatticeSpec& lat, double h_x, double h_z) {
  HamiltonianSpec h;
  h.lattice = lat;
  std::size_t n = lat.sites();
  if (h_x != 0.0) {
    h.params["h_x"] = h_x;
    for (std::size_t s = 0; s < n; ++s)
      h.terms.push_back({h_x, PauliString::single(n, s, 'X')});
  }
  if (h_z != 0.0) {
    h.params["h_z"] = h_z;
    for (std::size_t s = 0; s < n; ++s)
      h.terms.push_back({h_z, PauliString::single(n, s, 'Z')});
  }
  return h;
}

HamiltonianSpec build_sublattice_perturbation(const LatticeSpec& lat, double h, double h_z) {
  if (!lat.is_even_even())
    throw std::invalid_argument(
        "build_sublattice_perturbation: odd sublattice is only well-defined on e*e lattices");
  HamiltonianSpec out;
  out.lattice = lat;
  std::size_t n = lat.sites();
  if (h != 0.0) {
    out.params["h_sub"] = h;
    for (int y = 0; y < lat.ly; ++y)
      for (int x = 0; x < lat.lx; ++x) {
        if ((x + y) % 2 != 1) continue;
        out.terms.push_back({h, PauliString::single(n, lat.site(x, y), 'X')});
        out.terms.push_back({h, PauliString::single(n, lat.site(x, y), 'Y')});
      }
  }
  if (h_z != 0.0) {
    out.params["h_z"] = h_z;
    for (std::size_t s = 0; s < n; ++s)
      out.terms.push_back({h_z, PauliString::single(n, s, 'Z')});
  }
  return out;
}

HamiltonianSpec build_kitaev(int rows, int cols, double j_x, double j_y, double j_z) {
  if (rows < 2 || cols < 2 || rows % 2 != 0 || cols % 2 != 0)
    throw std::invalid_argument(
        "build_kitaev: rows and cols must be even (>= 2) for a consistent brick-wall wrap");
  HamiltonianSpec h;
  h.lattice = LatticeSpec{cols, rows};  // site (j, l) -> l*cols + j
  h.params["J_x"] = j_x;
  h.params["J_y"] = j_y;
  h.params["J_z"] = j_z;
  std::size_t n = h.n_sites();
  auto site = [&](int j, int l) {
    j %= cols; if (j < 0) j += cols;
    l %= rows; if (l < 0) l += rows;
    return static_cast<std::size_t>(l * cols + j);
  };
  auto bond = [&](double c, int j1, int l1, int j2, int l2, char letter) {
    if (c == 0.0) return;
    h.terms.push_back({c, PauliString::single(n, site(j1, l1), letter) *
                              PauliString::single(n, site(j2, l2), letter)});
  };
  for (int l = 0; l < rows; ++l)
    for (int j = 0; j < cols; ++j) {
      if ((j + l) % 2 != 0) continue;
      bond(j_x, j, l, j + 1, l, 'X');
      bond(j_y, j - 1, l, j, l, 'Y');
      bond(j_z, j, l, j, l + 1, 'Z');
    }
  return h;
}

double effective_coupling(double j_x, double j_y, double j_z) {
  if (j_x == 0.0) throw std::invalid_argument("effective_coupling: J_x must be nonzero");
  double ax = std::abs(j_x);
  return j_z * j_z * j_y * j_y / (16.0 * ax * ax * ax);
}

}  // namespace wenplaq::model
