#include "wenplaq/gates.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "wenplaq/eigensolver.hpp"

namespace wenplaq::qubit {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kXYPeriod = std::numbers::sqrt2 * std::numbers::pi;  // exact period in the angle

double wrap_angle(double a, double period) {
  a = std::fmod(a, period);
  if (a < 0) a += period;
  return a;
}

}  // namespace

QubitState QubitState::make(double alpha, double beta, double phi) {
  if (alpha < 0 || beta < 0)
    throw std::invalid_argument("QubitState: amplitudes must be non-negative");
  double n = std::sqrt(alpha * alpha + beta * beta);
  if (std::abs(n - 1.0) > 1e-9)
    throw std::invalid_argument("QubitState: not normalized");
  QubitState s{alpha / n, beta / n, wrap_angle(phi, 2 * kPi)};
  if (s.beta == 0.0) s.phi = 0.0;
  return s;
}

QubitState QubitState::from_amplitudes(cdouble up, cdouble down) {
  double n = std::sqrt(std::norm(up) + std::norm(down));
  if (n == 0.0) throw std::invalid_argument("QubitState: zero vector");
  up /= n;
  down /= n;
  QubitState s;
  s.alpha = std::abs(up);
  s.beta = std::abs(down);
  if (s.alpha > 1e-14) {
    cdouble gauge = up / s.alpha;  // make |up> amplitude real positive
    down /= gauge;
  }
  s.phi = s.beta > 1e-14 ? wrap_angle(std::arg(down), 2 * kPi) : 0.0;
  return s;
}

Eigen::Vector2cd QubitState::amplitudes() const {
  Eigen::Vector2cd v;
  v << cdouble(alpha, 0.0), beta * std::exp(cdouble(0.0, phi));
  return v;
}

Eigen::Matrix2cd step_unitary(const PulseStep& s) {
  double a = s.coupling * s.duration;
  Eigen::Matrix2cd u;
  if (s.axis == Axis::Z) {
    u << std::exp(cdouble(0, -a)), 0, 0, std::exp(cdouble(0, a));
  } else {
    // exp(-i a (tau_x + tau_y)) = cos(sqrt2 a) I - i sin(sqrt2 a)(tau_x+tau_y)/sqrt2
    double c = std::cos(std::numbers::sqrt2 * a);
    double sn = std::sin(std::numbers::sqrt2 * a) / std::numbers::sqrt2;
    Eigen::Matrix2cd txy;
    txy << 0, cdouble(1, -1), cdouble(1, 1), 0;
    u = c * Eigen::Matrix2cd::Identity() - cdouble(0, sn) * txy;
  }
  return u;
}

Eigen::Matrix2cd sequence_unitary(const PulseSequence& seq) {
  Eigen::Matrix2cd u = Eigen::Matrix2cd::Identity();
  for (const auto& s : seq.steps) u = step_unitary(s) * u;
  return u;
}

QubitState evolve(const PulseSequence& seq, const QubitState& start) {
  Eigen::Vector2cd v = sequence_unitary(seq) * start.amplitudes();
  return QubitState::from_amplitudes(v(0), v(1));
}

double gate_fidelity(const Eigen::Matrix2cd& u, const Eigen::Matrix2cd& v) {
  return std::abs((u.adjoint() * v).trace()) / 2.0;
}

PulseSequence compile_gate(const Eigen::Matrix2cd& target, double j, double j_zz, double tol) {
  if (j == 0.0 || j_zz == 0.0)
    throw std::invalid_argument("compile_gate: couplings must be nonzero");
  Eigen::Matrix2cd utu = target.adjoint() * target;
  if ((utu - Eigen::Matrix2cd::Identity()).norm() > 1e-10)
    throw std::invalid_argument("compile_gate: target is not unitary");

  auto make = [&](double theta, double phi, double gamma) {
    // application order theta (Z), phi (XY), gamma (Z); durations >= 0
    auto z_duration = [&](double ang) {
      ang = wrap_angle(ang, 2 * kPi);
      if (j_zz < 0 && ang > 0) ang -= 2 * kPi;  // exact identity shift
      return ang / j_zz;
    };
    auto xy_duration = [&](double ang) {
      ang = wrap_angle(ang, kXYPeriod);
      if (j < 0 && ang > 0) ang -= kXYPeriod;
      return ang / j;
    };
    PulseSequence seq;
    seq.steps = {{Axis::Z, z_duration(theta), j_zz},
                 {Axis::XYDiagonal, xy_duration(phi), j},
                 {Axis::Z, z_duration(gamma), j_zz}};
    return seq;
  };

  // identity (up to phase): zero-duration sequence
  cdouble t00 = target(0, 0);
  if (std::abs(t00) > 0 &&
      (target - t00 / std::abs(t00) * Eigen::Matrix2cd::Identity()).norm() < 1e-12) {
    PulseSequence seq;
    seq.steps = {{Axis::Z, 0.0, j_zz}, {Axis::XYDiagonal, 0.0, j}, {Axis::Z, 0.0, j_zz}};
    return seq;
  }

  // strip global phase to det = 1
  cdouble det = target.determinant();
  Eigen::Matrix2cd v = target / std::sqrt(det);

  // v = e^{-i a tau_z} e^{-i b tau_x} e^{-i c tau_z}:
  //   v00 = e^{-i(a+c)} cos b,  v01 = -i e^{-i(a-c)} sin b
  double b = std::atan2(std::abs(v(0, 1)), std::abs(v(0, 0)));
  double a, c;
  if (std::abs(v(0, 0)) > 1e-12 && std::abs(v(0, 1)) > 1e-12) {
    double apc = -std::arg(v(0, 0));
    double amc = -std::arg(cdouble(0, 1) * v(0, 1));
    a = (apc + amc) / 2;
    c = (apc - amc) / 2;
  } else if (std::abs(v(0, 1)) <= 1e-12) {
    a = -std::arg(v(0, 0));
    c = 0.0;
  } else {
    a = -std::arg(cdouble(0, 1) * v(0, 1));
    c = 0.0;
  }

  // rotate the x axis into (x+y)/sqrt2: tau_x+tau_y = sqrt2 W tau_x W^dag,
  // W = e^{-i pi/8 tau_z}; so gamma = a - pi/8, theta = c + pi/8, and the
  // XY angle is b / sqrt2
  PulseSequence seq = make(c + kPi / 8, b / std::numbers::sqrt2, a - kPi / 8);
  double fid = gate_fidelity(sequence_unitary(seq), target);
  if (fid < 1.0 - tol)
    throw std::runtime_error("compile_gate: decomposition fidelity " + std::to_string(fid) +
                             " misses tolerance");
  return seq;
}

Eigen::Matrix2cd named_gate(const std::string& name, double lambda) {
  Eigen::Matrix2cd m;
  if (name == "identity") {
    m = Eigen::Matrix2cd::Identity();
  } else if (name == "hadamard") {
    m << 1, 1, 1, -1;
    m /= std::numbers::sqrt2;
  } else if (name == "pauli-x") {
    m << 0, 1, 1, 0;
  } else if (name == "pauli-z") {
    m << 1, 0, 0, -1;
  } else if (name == "phase") {
    m << 1, 0, 0, std::exp(cdouble(0, lambda));
  } else {
    throw std::invalid_argument("named_gate: unknown gate '" + name + "'");
  }
  return m;
}

PulseSequence paper_hadamard_sequence(double j, double j_zz) {
  PulseSequence seq;
  seq.steps = {{Axis::Z, 7 * kPi / 4 / j_zz, j_zz},
               {Axis::XYDiagonal, kPi / 4 / j, j},
               {Axis::Z, kPi / 4 / j_zz, j_zz}};
  return seq;
}

RampResult simulate_initialization(double t0, double duration, double dt,
                                   const std::function<double(double)>& effective_hz,
                                   double transverse_j) {
  if (t0 <= 0 || duration <= 0 || dt <= 0)
    throw std::invalid_argument("simulate_initialization: times must be positive");

  auto hamiltonian = [&](double t) {
    Eigen::Matrix2cd h;
    double hz = effective_hz(t);
    h << hz, transverse_j * cdouble(1, -1), transverse_j * cdouble(1, 1), -hz;
    return h;
  };

  // per-step rotation angle = ||H|| dt must stay small
  int n_steps = static_cast<int>(std::ceil(duration / dt));
  double step = duration / n_steps;
  for (double t : {0.0, duration}) {
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> es(hamiltonian(t));
    double norm = std::max(std::abs(es.eigenvalues()(0)), std::abs(es.eigenvalues()(1)));
    if (norm * step > 0.1)
      throw std::invalid_argument("simulate_initialization: dt too large, per-step angle " +
                                  std::to_string(norm * step) + " exceeds 0.1 rad");
  }

  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> es0(hamiltonian(0.0));
  Eigen::Vector2cd psi = es0.eigenvectors().col(0);

  for (int k = 0; k < n_steps; ++k) {
    double tm = (k + 0.5) * step;
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> es(hamiltonian(tm));
    Eigen::Vector2cd phases;
    phases << std::exp(cdouble(0, -es.eigenvalues()(0) * step)),
        std::exp(cdouble(0, -es.eigenvalues()(1) * step));
    psi = es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint() * psi;
  }

  RampResult out;
  out.final_state = QubitState::from_amplitudes(psi(0), psi(1));
  out.overlap_up = std::norm(psi(0));
  out.steps = n_steps;
  return out;
}

LatticeRampResult full_lattice_ramp(const model::HamiltonianSpec& base,
                                    const std::function<double(double)>& field,
                                    double duration, double dt,
                                    const pauli::StateVector& start,
                                    const pauli::StateVector& target) {
  if (base.n_sites() > 12)
    throw std::invalid_argument("full_lattice_ramp: capped at 12 sites");
  spectra::Matvec base_mv(base, 1);
  std::size_t n = base.n_sites();
  model::HamiltonianSpec zsum;
  zsum.lattice = base.lattice;
  for (std::size_t s = 0; s < n; ++s)
    zsum.terms.push_back({1.0, pauli::PauliString::single(n, s, 'Z')});
  spectra::Matvec z_mv(zsum, 1);

  std::size_t dim = base_mv.dim();
  using Vec = std::vector<cdouble>;
  Vec psi = start.amplitudes;
  Vec hz(dim), tmp(dim), k1(dim), k2(dim), k3(dim), k4(dim), stage(dim);

  auto deriv = [&](const Vec& v, double t, Vec& out) {
    base_mv(v, tmp);
    z_mv(v, hz);
    double f = field(t);
    for (std::size_t i = 0; i < dim; ++i)
      out[i] = cdouble(0, -1) * (tmp[i] + f * hz[i]);
  };

  int n_steps = static_cast<int>(std::ceil(duration / dt));
  double step = duration / n_steps;
  for (int s = 0; s < n_steps; ++s) {
    double t = s * step;
    deriv(psi, t, k1);
    for (std::size_t i = 0; i < dim; ++i) stage[i] = psi[i] + 0.5 * step * k1[i];
    deriv(stage, t + 0.5 * step, k2);
    for (std::size_t i = 0; i < dim; ++i) stage[i] = psi[i] + 0.5 * step * k2[i];
    deriv(stage, t + 0.5 * step, k3);
    for (std::size_t i = 0; i < dim; ++i) stage[i] = psi[i] + step * k3[i];
    deriv(stage, t + step, k4);
    for (std::size_t i = 0; i < dim; ++i)
      psi[i] += step / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
  }

  double norm2 = 0;
  for (const auto& a : psi) norm2 += std::norm(a);
  cdouble ov{0, 0};
  for (std::size_t i = 0; i < dim; ++i) ov += std::conj(target.amplitudes[i]) * psi[i];

  LatticeRampResult out;
  out.norm_drift = std::abs(std::sqrt(norm2) - 1.0);
  out.overlap_target = std::norm(ov) / norm2;
  out.steps = n_steps;
  return out;
}

}  // namespace wenplaq::qubit
