#include "wenplaq/toric.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace wenplaq::toric {

using model::LatticeSpec;
using pauli::cdouble;
using pauli::PauliString;
using pauli::StateVector;

const std::array<TunnelingEntry, 9>& tunneling_map() {
  static const std::array<TunnelingEntry, 9> table = {{
      {"C_v^x", "tau1_x (x) 1"},
      {"C_v^y", "1 (x) tau2_x"},
      {"C_v^{x+y}", "tau1_x (x) tau2_x"},
      {"C_c^x", "tau1_x (x) tau2_z"},
      {"C_c^y", "tau1_z (x) tau2_x"},
      {"C_c^{x+y}", "tau1_y (x) tau2_y"},
      {"C_f^x", "1 (x) tau2_z"},
      {"C_f^y", "tau1_z (x) 1"},
      {"C_f^{x+y}", "tau1_z (x) tau2_z"},
  }};
  return table;
}

namespace {

PauliString row_z_string(const LatticeSpec& lat, int row) {
  PauliString p(lat.sites());
  for (int x = 0; x < lat.lx; ++x)
    p = p * PauliString::single(lat.sites(), lat.site(x, row), 'Z');
  return p;
}

PauliString col_z_string(const LatticeSpec& lat, int col) {
  PauliString p(lat.sites());
  for (int y = 0; y < lat.ly; ++y)
    p = p * PauliString::single(lat.sites(), lat.site(col, y), 'Z');
  return p;
}

// all-Y loop along the (1,1) direction; closes after lx*ly/gcd steps
PauliString diag_y_string(const LatticeSpec& lat) {
  PauliString p(lat.sites());
  int steps = lat.tunneling_length();
  int x = 0, y = 0;
  for (int k = 0; k < steps; ++k) {
    p = p * PauliString::single(lat.sites(), lat.site(x, y), 'Y');
    ++x;
    ++y;
  }
  return p;
}

// alternating letters along a row: Y at even x (pattern 0), shifted by
// `pattern`; requires even lx to close
PauliString row_alt_string(const LatticeSpec& lat, int row, int pattern) {
  PauliString p(lat.sites());
  for (int x = 0; x < lat.lx; ++x) {
    char letter = ((x + pattern) % 2 == 0) ? 'Y' : 'X';
    p = p * PauliString::single(lat.sites(), lat.site(x, row), letter);
  }
  return p;
}

PauliString col_alt_string(const LatticeSpec& lat, int col, int pattern) {
  PauliString p(lat.sites());
  for (int y = 0; y < lat.ly; ++y) {
    char letter = ((y + pattern) % 2 == 0) ? 'Y' : 'X';
    p = p * PauliString::single(lat.sites(), lat.site(col, y), letter);
  }
  return p;
}

void check_frame_invariants(const LatticeSpec& lat, const LogicalFrame& f) {
  std::vector<PauliString> plaquettes;
  for (int y = 0; y < lat.ly; ++y)
    for (int x = 0; x < lat.lx; ++x) plaquettes.push_back(model::plaquette(lat, x, y));

  auto fail = [&](const std::string& what) {
    throw std::runtime_error("find_logicals: " + what +
                             " (lattice " + std::to_string(lat.lx) + "x" + std::to_string(lat.ly) + ")");
  };

  auto check_one = [&](const PauliString& p, const std::string& name) {
    for (const auto& fp : plaquettes)
      if (!p.commutes(fp)) fail(name + " fails to commute with a plaquette");
    if (!(p * p).is_identity()) fail(name + " does not square to identity");
    if (in_plaquette_group(lat, p)) fail(name + " lies in the plaquette group");
  };
  for (int i = 0; i < f.n_pairs(); ++i) {
    check_one(f.z_logicals[i], "z[" + std::to_string(i) + "]");
    check_one(f.x_logicals[i], "x[" + std::to_string(i) + "]");
  }
  for (int i = 0; i < f.n_pairs(); ++i)
    for (int j = 0; j < f.n_pairs(); ++j) {
      bool want_commute = (i != j);
      if (f.z_logicals[i].commutes(f.x_logicals[j]) != want_commute)
        fail("z/x pair commutation pattern wrong");
    }
  for (int i = 0; i < f.n_pairs(); ++i)
    for (int j = i + 1; j < f.n_pairs(); ++j) {
      if (!f.z_logicals[i].commutes(f.z_logicals[j])) fail("z logicals anticommute");
      if (!f.x_logicals[i].commutes(f.x_logicals[j])) fail("x logicals anticommute");
    }
}

}  // namespace

bool in_plaquette_group(const LatticeSpec& lat, const PauliString& p) {
  // GF(2) row reduction over concatenated (x|z) masks of the plaquettes
  int n = lat.sites();
  int cols = 2 * n;
  std::vector<std::vector<char>> rows;
  for (int y = 0; y < lat.ly; ++y)
    for (int x = 0; x < lat.lx; ++x) {
      PauliString f = model::plaquette(lat, x, y);
      std::vector<char> r(cols, 0);
      for (int s = 0; s < n; ++s) {
        r[s] = f.x_mask().test(s);
        r[n + s] = f.z_mask().test(s);
      }
      rows.push_back(std::move(r));
    }
  std::vector<char> target(cols, 0);
  for (int s = 0; s < n; ++s) {
    target[s] = p.x_mask().test(s);
    target[n + s] = p.z_mask().test(s);
  }

  int rank = 0;
  for (int c = 0; c < cols && rank < static_cast<int>(rows.size()); ++c) {
    int pivot = -1;
    for (int r = rank; r < static_cast<int>(rows.size()); ++r)
      if (rows[r][c]) { pivot = r; break; }
    if (pivot < 0) continue;
    std::swap(rows[rank], rows[pivot]);
    for (int r = 0; r < static_cast<int>(rows.size()); ++r)
      if (r != rank && rows[r][c])
        for (int cc = 0; cc < cols; ++cc) rows[r][cc] ^= rows[rank][cc];
    if (target[c])
      for (int cc = 0; cc < cols; ++cc) target[cc] ^= rows[rank][cc];
    ++rank;
  }
  // every pivot column already cleared the matching target bit, so the
  // target is in the row space iff nothing is left
  for (int c = 0; c < cols; ++c)
    if (target[c]) return false;
  return true;
}

LogicalFrame find_logicals(const LatticeSpec& lat) {
  LogicalFrame f;
  f.lattice = lat;
  if (lat.is_even_even()) {
    // pair 1: fermion loop winding y (tau1_z), vortex zigzag winding x (tau1_x)
    // pair 2: fermion loop winding x (tau2_z), vortex zigzag winding y (tau2_x)
    int c2 = lat.lx > 2 ? 2 : 1;
    int pattern2 = (c2 % 2 == 0) ? 1 : 0;  // match letters at the (c2, 1) crossing
    f.z_logicals = {col_z_string(lat, 0), row_z_string(lat, 0)};
    f.x_logicals = {row_alt_string(lat, 1, 0), col_alt_string(lat, c2, pattern2)};
    f.z_shapes = {"Z loop, column 0 (winds y)", "Z loop, row 0 (winds x)"};
    f.x_shapes = {"Y/X alternating loop, row 1 (winds x)",
                  "Y/X alternating loop, column " + std::to_string(c2) + " (winds y)"};
  } else {
    // single pair: shorter fermion loop, all-Y diagonal vortex loop
    if (lat.lx <= lat.ly) {
      f.z_logicals = {row_z_string(lat, 0)};
      f.z_shapes = {"Z loop, row 0 (winds x)"};
    } else {
      f.z_logicals = {col_z_string(lat, 0)};
      f.z_shapes = {"Z loop, column 0 (winds y)"};
    }
    f.x_logicals = {diag_y_string(lat)};
    f.x_shapes = {"all-Y diagonal loop, length " + std::to_string(lat.tunneling_length())};
  }
  check_frame_invariants(lat, f);
  return f;
}

bool verify_heisenberg_algebra(const LogicalFrame& f) {
  if (f.z_logicals.empty() || f.z_logicals.size() != f.x_logicals.size()) return false;
  for (int i = 0; i < f.n_pairs(); ++i)
    for (int j = 0; j < f.n_pairs(); ++j) {
      PauliString zx = f.z_logicals[i] * f.x_logicals[j];
      PauliString xz = f.x_logicals[j] * f.z_logicals[i];
      if (zx.x_mask() != xz.x_mask() || zx.z_mask() != xz.z_mask()) return false;
      int dk = ((zx.phase_exponent() - xz.phase_exponent()) % 4 + 4) % 4;
      if (i == j && dk != 2) return false;   // z x = e^{i pi} x z
      if (i != j && dk != 0) return false;
    }
  return true;
}

namespace {

Eigen::MatrixXcd operator_matrix(const PauliString& p, const std::vector<StateVector>& basis) {
  int d = static_cast<int>(basis.size());
  Eigen::MatrixXcd m(d, d);
  for (int b = 0; b < d; ++b) {
    StateVector pb = pauli::apply(p, basis[b]);
    for (int a = 0; a < d; ++a) m(a, b) = pauli::inner(basis[a], pb);
  }
  return m;
}

}  // namespace

LogicalFrame label_ground_space(const spectra::GroundSpace& gs, LogicalFrame frame,
                                double block_tol) {
  int d = gs.dimension;
  if (d != (1 << frame.n_pairs()))
    throw std::invalid_argument("label_ground_space: ground dimension does not match frame");
  if (gs.max_splitting() > 1e-8)
    throw std::invalid_argument("label_ground_space: ground space is split; label at h = 0");

  // z-logicals must act within the space: || (1-P) z |v> || below block_tol
  for (const auto& zl : frame.z_logicals)
    for (const auto& v : gs.basis) {
      StateVector zv = pauli::apply(zl, v);
      double out2 = 1.0;  // |zv|^2 = 1
      for (const auto& u : gs.basis) out2 -= std::norm(pauli::inner(u, zv));
      if (out2 > block_tol)
        throw std::runtime_error("label_ground_space: z-logical leaks out of the ground space");
    }

  Eigen::MatrixXcd z1 = operator_matrix(frame.z_logicals[0], gs.basis);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es1((z1 + z1.adjoint()) / 2.0);

  struct Labeled {
    std::vector<int> eigs;
    Eigen::VectorXcd coeffs;  // in gs.basis
  };
  std::vector<Labeled> states;

  if (frame.n_pairs() == 1) {
    for (int i = 0; i < d; ++i) {
      double ev = es1.eigenvalues()(i);
      if (std::abs(std::abs(ev) - 1.0) > 1e-6)
        throw std::runtime_error("label_ground_space: z-logical eigenvalue far from +-1");
      states.push_back({{ev > 0 ? 1 : -1}, es1.eigenvectors().col(i)});
    }
  } else {
    Eigen::MatrixXcd z2 = operator_matrix(frame.z_logicals[1], gs.basis);
    for (double target : {1.0, -1.0}) {
      std::vector<int> sel;
      for (int i = 0; i < d; ++i)
        if (std::abs(es1.eigenvalues()(i) - target) < 1e-6) sel.push_back(i);
      if (sel.size() != 2)
        throw std::runtime_error("label_ground_space: z1 eigenspaces are not 2+2");
      Eigen::MatrixXcd sub(static_cast<int>(sel.size()), static_cast<int>(sel.size()));
      Eigen::MatrixXcd cols(d, static_cast<int>(sel.size()));
      for (std::size_t a = 0; a < sel.size(); ++a) cols.col(a) = es1.eigenvectors().col(sel[a]);
      sub = cols.adjoint() * z2 * cols;
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es2((sub + sub.adjoint()) / 2.0);
      for (int i = 0; i < es2.eigenvalues().size(); ++i) {
        double ev2 = es2.eigenvalues()(i);
        if (std::abs(std::abs(ev2) - 1.0) > 1e-6)
          throw std::runtime_error("label_ground_space: z-logical eigenvalue far from +-1");
        states.push_back({{target > 0 ? 1 : -1, ev2 > 0 ? 1 : -1},
                          cols * es2.eigenvectors().col(i)});
      }
    }
  }

  // order: (+..+) first, binary descending in eigenvalues
  std::sort(states.begin(), states.end(), [](const Labeled& a, const Labeled& b) {
    return a.eigs > b.eigs;
  });

  auto combine = [&](const Eigen::VectorXcd& c) {
    StateVector v(gs.basis[0].n_sites);
    for (int j = 0; j < d; ++j)
      for (std::size_t i = 0; i < v.amplitudes.size(); ++i)
        v.amplitudes[i] += c(j) * gs.basis[j].amplitudes[i];
    return v;
  };

  // gauge: top state gets largest amplitude real positive, the rest are
  // generated by x-logicals so that they act as exact bit flips
  StateVector top = combine(states.front().coeffs);
  std::size_t arg = 0;
  for (std::size_t i = 1; i < top.amplitudes.size(); ++i)
    if (std::abs(top.amplitudes[i]) > std::abs(top.amplitudes[arg])) arg = i;
  cdouble ph = top.amplitudes[arg] / std::abs(top.amplitudes[arg]);
  for (auto& a : top.amplitudes) a /= ph;

  frame.labeled_basis.clear();
  frame.labels.clear();
  if (frame.n_pairs() == 1) {
    frame.labeled_basis.push_back(top);
    frame.labeled_basis.push_back(pauli::apply(frame.x_logicals[0], top));
    frame.labels = {{1}, {-1}};
  } else {
    StateVector s10 = pauli::apply(frame.x_logicals[1], top);   // flips tau2
    StateVector s01 = pauli::apply(frame.x_logicals[0], top);   // flips tau1
    StateVector s11 = pauli::apply(frame.x_logicals[0], s10);
    frame.labeled_basis = {top, s10, s01, s11};
    frame.labels = {{1, 1}, {1, -1}, {-1, 1}, {-1, -1}};
  }

  // record transform gs.basis -> labeled basis
  frame.basis_transform.resize(d, d);
  for (int a = 0; a < d; ++a)
    for (int j = 0; j < d; ++j)
      frame.basis_transform(j, a) = pauli::inner(gs.basis[j], frame.labeled_basis[a]);

  // labeled states must carry the advertised z-eigenvalues
  for (int a = 0; a < d; ++a)
    for (int p = 0; p < frame.n_pairs(); ++p) {
      cdouble ev = pauli::expectation(frame.z_logicals[p], frame.labeled_basis[a]);
      if (std::abs(ev - cdouble(frame.labels[a][p], 0)) > 1e-7)
        throw std::runtime_error("label_ground_space: labeling self-check failed");
    }

  frame.labeled = true;
  return frame;
}

namespace {

Eigen::Matrix2cd tau_matrix(int a) {
  Eigen::Matrix2cd m;
  switch (a) {
    case 0: m << 1, 0, 0, 1; break;
    case 1: m << 0, 1, 1, 0; break;
    case 2: m << 0, cdouble(0, -1), cdouble(0, 1), 0; break;
    default: m << 1, 0, 0, -1; break;
  }
  return m;
}

Eigen::MatrixXcd tau_product(int a, int b) {
  Eigen::MatrixXcd out(4, 4);
  Eigen::Matrix2cd ma = tau_matrix(a), mb = tau_matrix(b);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      out.block<2, 2>(2 * i, 2 * j) = ma(i, j) * mb;
  return out;
}

}  // namespace

Eigen::MatrixXcd EffectiveParams::reconstruct() const {
  if (dimension == 2) {
    Eigen::MatrixXcd m = energy_offset * tau_matrix(0);
    m += J_xx * tau_matrix(1) + J_yy * tau_matrix(2) + h1_z * tau_matrix(3);
    return m;
  }
  Eigen::MatrixXcd m = energy_offset * tau_product(0, 0);
  m += J_xx * tau_product(1, 1) + J_yy * tau_product(2, 2) + J_zz * tau_product(3, 3);
  m += J_zx * tau_product(3, 1) + J_xz * tau_product(1, 3);
  m += h1_x * tau_product(1, 0) + h1_z * tau_product(3, 0);
  m += h2_x * tau_product(0, 1) + h2_z * tau_product(0, 3);
  return m;
}

EffectiveParams extract_effective(const model::HamiltonianSpec& h_full,
                                  const spectra::GroundSpace& gs,
                                  const LogicalFrame& frame) {
  (void)h_full;  // energies enter through gs; kept for interface symmetry
  if (!frame.labeled)
    throw std::invalid_argument("extract_effective: frame must be labeled first");
  int d = gs.dimension;
  if (d != static_cast<int>(frame.labeled_basis.size()))
    throw std::invalid_argument("extract_effective: dimension mismatch with frame");

  // overlap of the labeled code basis with the perturbed cluster
  Eigen::MatrixXcd overlap(d, d);
  for (int a = 0; a < d; ++a)
    for (int k = 0; k < d; ++k)
      overlap(a, k) = pauli::inner(frame.labeled_basis[a], gs.basis[k]);

  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(overlap, Eigen::ComputeFullU | Eigen::ComputeFullV);
  double smin = svd.singularValues().minCoeff();
  if (smin < 0.5)
    throw std::runtime_error("extract_effective: basis continuity overlap " +
                             std::to_string(smin) + " below 0.5; regime too perturbed");

  // Loewdin orthogonalization keeps the cluster eigenvalues exactly
  Eigen::MatrixXcd q = svd.matrixU() * svd.matrixV().adjoint();
  Eigen::VectorXd energies(d);
  for (int k = 0; k < d; ++k) energies(k) = gs.energies[k];
  Eigen::MatrixXcd m = q * energies.asDiagonal() * q.adjoint();
  m = (m + m.adjoint()) / 2.0;

  EffectiveParams out;
  out.dimension = d;
  out.continuity = smin;
  out.effective_matrix = m;

  if (d == 2) {
    out.energy_offset = (m * tau_matrix(0)).trace().real() / 2.0;
    out.J_xx = (m * tau_matrix(1)).trace().real() / 2.0;
    out.J_yy = (m * tau_matrix(2)).trace().real() / 2.0;
    out.h1_z = (m * tau_matrix(3)).trace().real() / 2.0;
  } else if (d == 4) {
    auto coeff = [&](int a, int b) { return (m * tau_product(a, b)).trace().real() / 4.0; };
    out.energy_offset = coeff(0, 0);
    out.J_xx = coeff(1, 1);
    out.J_yy = coeff(2, 2);
    out.J_zz = coeff(3, 3);
    out.J_zx = coeff(3, 1);
    out.J_xz = coeff(1, 3);
    out.h1_x = coeff(1, 0);
    out.h1_z = coeff(3, 0);
    out.h2_x = coeff(0, 1);
    out.h2_z = coeff(0, 3);
  } else {
    throw std::invalid_argument("extract_effective: ground dimension must be 2 or 4");
  }
  out.fit_residual = (m - out.reconstruct()).norm();
  return out;
}

ScalingFit fit_scaling_exponent(const std::vector<std::pair<double, double>>& sweep) {
  std::vector<double> lx, ly;
  int dropped = 0;
  for (const auto& [h, de] : sweep) {
    if (de <= 0.0 || h <= 0.0) {
      ++dropped;
      continue;
    }
    lx.push_back(std::log(h));
    ly.push_back(std::log(de));
  }
  int n = static_cast<int>(lx.size());
  if (n < 4)
    throw std::invalid_argument("fit_scaling_exponent: need at least 4 positive points, have " +
                                std::to_string(n));
  double mx = std::accumulate(lx.begin(), lx.end(), 0.0) / n;
  double my = std::accumulate(ly.begin(), ly.end(), 0.0) / n;
  double sxx = 0, sxy = 0, syy = 0;
  for (int i = 0; i < n; ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
    syy += (ly[i] - my) * (ly[i] - my);
  }
  ScalingFit fit;
  fit.exponent = sxy / sxx;
  fit.prefactor = std::exp(my - fit.exponent * mx);
  double ss_res = syy - sxy * sxy / sxx;
  fit.r_squared = syy > 0 ? 1.0 - ss_res / syy : 1.0;
  fit.points_used = n;
  fit.points_dropped = dropped;
  return fit;
}

}  // namespace wenplaq::toric
