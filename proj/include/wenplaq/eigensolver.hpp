#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "wenplaq/model.hpp"
#include "wenplaq/pauli_string.hpp"

namespace wenplaq::spectra {

struct SolverOptions {
  double tol = 1e-10;            // residual norm target per eigenpair
  int max_subspace = 140;        // Lanczos steps per restart
  int max_restarts = 60;
  std::uint64_t seed = 20240901; // starting-vector PRNG, recorded in results
  int max_sites = 24;            // hard cap on 2^n state vectors
  int threads = 1;               // matvec parallelism
  bool want_vectors = true;
  double cluster_tol = -1.0;     // < 0: auto, max(1e-9, 1e-6 |E0|)
};

struct SpectrumResult {
  std::vector<double> eigenvalues;  // ascending
  std::vector<pauli::StateVector> eigenvectors;  // empty unless requested
  std::vector<double> residual_norms;
  double cluster_tolerance = 0.0;
  std::vector<std::pair<int, int>> clusters;  // half-open index ranges

  // run metadata
  std::uint64_t seed = 0;
  int iterations = 0;  // total matvec count
  double tolerance = 0.0;
  std::string method;
};

struct GroundSpace {
  int dimension = 0;
  std::vector<pauli::StateVector> basis;  // orthonormal
  std::vector<double> energies;           // cluster eigenvalues, ascending
  std::vector<double> splitting;          // energies[i] - energies[0], i >= 1
  double gap = 0.0;                       // first excluded level minus cluster top
  bool topological_regime = true;         // gap > 10 * max splitting (flag only)

  double max_splitting() const {
    double m = 0.0;
    for (double s : splitting) m = std::max(m, s);
    return m;
  }
};

struct ConvergenceError : std::runtime_error {
  std::vector<double> partial_eigenvalues;
  std::vector<double> partial_residuals;
  ConvergenceError(const std::string& msg, std::vector<double> vals, std::vector<double> res)
      : std::runtime_error(msg),
        partial_eigenvalues(std::move(vals)),
        partial_residuals(std::move(res)) {}
};

struct DegeneracyError : std::runtime_error {
  std::vector<double> observed_spectrum;
  DegeneracyError(const std::string& msg, std::vector<double> spectrum)
      : std::runtime_error(msg), observed_spectrum(std::move(spectrum)) {}
};

// Matrix-free action of a HamiltonianSpec on state vectors.
class Matvec {
 public:
  Matvec(const model::HamiltonianSpec& h, int threads = 1);
  std::size_t dim() const { return dim_; }
  std::size_t n_sites() const { return n_; }
  // y = H x (pull form: race-free under output partitioning)
  void operator()(const std::vector<pauli::cdouble>& x,
                  std::vector<pauli::cdouble>& y) const;
  mutable long long calls = 0;

 private:
  struct TermPlan {
    std::uint64_t x, z;
    pauli::cdouble factor;  // coeff * i^k
  };
  std::size_t n_ = 0, dim_ = 0;
  int threads_ = 1;
  std::vector<TermPlan> plan_;
};

// k lowest eigenpairs by deflated Lanczos with full reorthogonalization.
// Deterministic for fixed options.seed. Throws ConvergenceError if any
// pair fails to reach options.tol.
SpectrumResult lowest_k(const model::HamiltonianSpec& h, int k, const SolverOptions& options = {});

// Ground cluster of a given expected dimension; DegeneracyError if the
// computed cluster size differs.
GroundSpace ground_space(const model::HamiltonianSpec& h, int expected_dim,
                         double cluster_tol = -1.0, const SolverOptions& options = {});

// Full dense Hermitian diagonalization, <= 12 sites. Verification oracle
// for lowest_k; kept on an independent code path (Eigen).
SpectrumResult dense_oracle(const model::HamiltonianSpec& h, bool want_vectors = false);

// ascending eigenvalues -> half-open cluster ranges by consecutive gaps
std::vector<std::pair<int, int>> cluster_eigenvalues(const std::vector<double>& vals,
                                                     double cluster_tol);

}  // namespace wenplaq::spectra
