#include "wenplaq/eigensolver.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>
#include <thread>

namespace wenplaq::spectra {

using pauli::cdouble;

namespace {

cdouble ipow(int k) {
  switch (((k % 4) + 4) % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

double vnorm(const std::vector<cdouble>& v) {
  double s = 0;
  for (const auto& a : v) s += std::norm(a);
  return std::sqrt(s);
}

cdouble vdot(const std::vector<cdouble>& a, const std::vector<cdouble>& b) {
  cdouble s{0, 0};
  for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

void vaxpy(std::vector<cdouble>& y, cdouble a, const std::vector<cdouble>& x) {
  for (std::size_t i = 0; i < y.size(); ++i) y[i] += a * x[i];
}

void vscale(std::vector<cdouble>& v, double a) {
  for (auto& e : v) e *= a;
}

}  // namespace

Matvec::Matvec(const model::HamiltonianSpec& h, int threads)
    : n_(h.n_sites()), dim_(std::size_t{1} << h.n_sites()), threads_(std::max(1, threads)) {
  if (n_ > 62) throw std::invalid_argument("Matvec: too many sites for a state vector");
  h.validate();
  plan_.reserve(h.terms.size());
  for (const auto& t : h.terms)
    plan_.push_back({t.op.x_mask().low64(), t.op.z_mask().low64(),
                     t.coeff * ipow(t.op.phase_exponent())});
}

void Matvec::operator()(const std::vector<cdouble>& x, std::vector<cdouble>& y) const {
  ++calls;
  y.assign(dim_, cdouble{0, 0});
  auto run = [&](std::uint64_t begin, std::uint64_t end) {
    for (const auto& t : plan_) {
      for (std::uint64_t c = begin; c < end; ++c) {
        std::uint64_t b = c ^ t.x;
        double sign = __builtin_parityll(t.z & b) ? -1.0 : 1.0;
        y[c] += t.factor * sign * x[b];
      }
    }
  };
  if (threads_ <= 1 || dim_ < (std::uint64_t{1} << 14)) {
    run(0, dim_);
    return;
  }
  std::vector<std::thread> pool;
  std::uint64_t chunk = (dim_ + threads_ - 1) / threads_;
  for (int t = 0; t < threads_; ++t) {
    std::uint64_t lo = t * chunk, hi = std::min<std::uint64_t>(dim_, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back(run, lo, hi);
  }
  for (auto& th : pool) th.join();
}

namespace {

// One converged eigenpair via restarted Lanczos with full
// reorthogonalization, deflating against previously converged vectors.
// Restarting from the best Ritz vector handles degenerate clusters: each
// deflated run converges to one new member of the cluster.
struct LanczosWorker {
  const Matvec& mv;
  const SolverOptions& opt;
  const std::vector<std::vector<cdouble>>& converged;

  void deflate(std::vector<cdouble>& w) const {
    for (const auto& u : converged) vaxpy(w, -vdot(u, w), u);
  }

  // returns (eigenvalue, residual); vec holds the eigenvector
  std::pair<double, double> solve(std::vector<cdouble>& vec, std::mt19937_64& rng) const {
    const std::size_t dim = mv.dim();
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<cdouble> v(dim);
    for (auto& a : v) a = {gauss(rng), gauss(rng)};
    deflate(v);
    vscale(v, 1.0 / vnorm(v));

    double lam = 0.0, res = std::numeric_limits<double>::infinity();
    int m_max = static_cast<int>(std::min<std::size_t>(
        opt.max_subspace, dim - converged.size()));
    m_max = std::max(m_max, 1);

    std::vector<std::vector<cdouble>> basis;
    std::vector<cdouble> w(dim);
    for (int restart = 0; restart < opt.max_restarts; ++restart) {
      basis.clear();
      basis.push_back(v);
      std::vector<double> alpha, beta;
      int used = m_max;
      for (int j = 0; j < m_max; ++j) {
        mv(basis[j], w);
        deflate(w);
        double a = vdot(basis[j], w).real();
        alpha.push_back(a);
        vaxpy(w, {-a, 0.0}, basis[j]);
        if (j > 0) vaxpy(w, {-beta[j - 1], 0.0}, basis[j - 1]);
        for (const auto& u : basis) vaxpy(w, -vdot(u, w), u);
        double b = vnorm(w);
        if (b < 1e-13) {  // invariant subspace exhausted
          used = j + 1;
          break;
        }
        beta.push_back(b);
        vscale(w, 1.0 / b);
        basis.push_back(w);
      }
      if (static_cast<int>(beta.size()) >= used) beta.resize(used - 1);

      Eigen::MatrixXd t = Eigen::MatrixXd::Zero(used, used);
      for (int i = 0; i < used; ++i) {
        t(i, i) = alpha[i];
        if (i + 1 < used) t(i, i + 1) = t(i + 1, i) = beta[i];
      }
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(t);
      lam = es.eigenvalues()(0);
      Eigen::VectorXd y = es.eigenvectors().col(0);

      std::vector<cdouble> x(dim, cdouble{0, 0});
      for (int i = 0; i < used; ++i) vaxpy(x, {y(i), 0.0}, basis[i]);
      deflate(x);
      double nx = vnorm(x);
      if (nx == 0.0) throw std::runtime_error("lanczos: deflation annihilated Ritz vector");
      vscale(x, 1.0 / nx);

      mv(x, w);
      deflate(w);
      vaxpy(w, {-lam, 0.0}, x);
      res = vnorm(w);
      v = std::move(x);
      if (res <= opt.tol) break;
    }
    vec = std::move(v);
    return {lam, res};
  }
};

}  // namespace

SpectrumResult lowest_k(const model::HamiltonianSpec& h, int k, const SolverOptions& options) {
  if (k < 1) throw std::invalid_argument("lowest_k: k must be >= 1");
  if (static_cast<int>(h.n_sites()) > options.max_sites)
    throw std::invalid_argument("lowest_k: site count exceeds configured cap");

  Matvec mv(h, options.threads);
  std::size_t dim = mv.dim();
  if (static_cast<std::size_t>(k) > dim)
    throw std::invalid_argument("lowest_k: k exceeds Hilbert-space dimension");

  std::mt19937_64 rng(options.seed);
  std::vector<std::vector<cdouble>> vecs;
  std::vector<double> vals, residuals;
  LanczosWorker worker{mv, options, vecs};
  for (int j = 0; j < k; ++j) {
    std::vector<cdouble> x;
    auto [lam, res] = worker.solve(x, rng);
    if (res > options.tol)
      throw ConvergenceError("lowest_k: eigenpair " + std::to_string(j) +
                                 " stalled at residual " + std::to_string(res),
                             vals, residuals);
    vecs.push_back(std::move(x));
    vals.push_back(lam);
    residuals.push_back(res);
  }

  std::vector<int> order(k);
  for (int i = 0; i < k; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](int a, int b) { return vals[a] < vals[b]; });

  SpectrumResult out;
  out.seed = options.seed;
  out.tolerance = options.tol;
  out.method = "deflated-lanczos";
  out.iterations = static_cast<int>(mv.calls);
  for (int i : order) {
    out.eigenvalues.push_back(vals[i]);
    out.residual_norms.push_back(residuals[i]);
    if (options.want_vectors) {
      pauli::StateVector sv(h.n_sites());
      sv.amplitudes = std::move(vecs[i]);
      out.eigenvectors.push_back(std::move(sv));
    }
  }
  double ctol = options.cluster_tol;
  if (ctol < 0) ctol = std::max(1e-9, 1e-6 * std::abs(out.eigenvalues.front()));
  out.cluster_tolerance = ctol;
  out.clusters = cluster_eigenvalues(out.eigenvalues, ctol);
  return out;
}

std::vector<std::pair<int, int>> cluster_eigenvalues(const std::vector<double>& vals,
                                                     double cluster_tol) {
  std::vector<std::pair<int, int>> out;
  int n = static_cast<int>(vals.size());
  int begin = 0;
  for (int i = 1; i <= n; ++i) {
    if (i == n || vals[i] - vals[i - 1] > cluster_tol) {
      out.emplace_back(begin, i);
      begin = i;
    }
  }
  return out;
}

GroundSpace ground_space(const model::HamiltonianSpec& h, int expected_dim,
                         double cluster_tol, const SolverOptions& options) {
  SolverOptions opt = options;
  opt.want_vectors = true;
  if (cluster_tol >= 0) opt.cluster_tol = cluster_tol;
  int k = expected_dim + 1;
  SpectrumResult sr = lowest_k(h, k, opt);

  auto [lo, hi] = sr.clusters.front();
  int found = hi - lo;
  if (found != expected_dim)
    throw DegeneracyError("ground_space: expected cluster of " + std::to_string(expected_dim) +
                              ", found " + std::to_string(found),
                          sr.eigenvalues);

  GroundSpace gs;
  gs.dimension = expected_dim;
  for (int i = 0; i < expected_dim; ++i) {
    gs.basis.push_back(sr.eigenvectors[i]);
    gs.energies.push_back(sr.eigenvalues[i]);
    if (i > 0) gs.splitting.push_back(sr.eigenvalues[i] - sr.eigenvalues[0]);
  }
  gs.gap = sr.eigenvalues[expected_dim] - sr.eigenvalues[expected_dim - 1];

  // re-orthonormalize (deflation already keeps this tight)
  for (int i = 0; i < expected_dim; ++i) {
    auto& vi = gs.basis[i].amplitudes;
    for (int j = 0; j < i; ++j) vaxpy(vi, -vdot(gs.basis[j].amplitudes, vi), gs.basis[j].amplitudes);
    vscale(vi, 1.0 / vnorm(vi));
  }

  gs.topological_regime = gs.gap > 10.0 * std::max(gs.max_splitting(), 1e-300);
  return gs;
}

SpectrumResult dense_oracle(const model::HamiltonianSpec& h, bool want_vectors) {
  if (h.n_sites() > 12)
    throw std::invalid_argument("dense_oracle: capped at 12 sites");
  h.validate();
  std::size_t dim = std::size_t{1} << h.n_sites();
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  for (const auto& t : h.terms) {
    std::uint64_t x = t.op.x_mask().low64(), z = t.op.z_mask().low64();
    cdouble f = t.coeff * ipow(t.op.phase_exponent());
    for (std::uint64_t b = 0; b < dim; ++b) {
      double sign = __builtin_parityll(z & b) ? -1.0 : 1.0;
      m(b ^ x, b) += f * sign;
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(
      m, want_vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("dense_oracle: eigensolver failed");

  SpectrumResult out;
  out.method = "dense-oracle";
  out.tolerance = 0.0;
  out.eigenvalues.assign(es.eigenvalues().data(), es.eigenvalues().data() + dim);
  out.residual_norms.assign(dim, 0.0);
  if (want_vectors) {
    for (std::size_t j = 0; j < dim; ++j) {
      pauli::StateVector sv(h.n_sites());
      for (std::size_t i = 0; i < dim; ++i) sv.amplitudes[i] = es.eigenvectors()(i, j);
      out.eigenvectors.push_back(std::move(sv));
    }
  }
  out.cluster_tolerance = std::max(1e-9, 1e-6 * std::abs(out.eigenvalues.front()));
  out.clusters = cluster_eigenvalues(out.eigenvalues, out.cluster_tolerance);
  return out;
}

}  // namespace wenplaq::spectra
