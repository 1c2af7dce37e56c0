#include <doctest.h>

#include <cmath>
#include <numbers>

#include "wenplaq/interference.hpp"

using namespace wenplaq;
using interference::InterferenceConfig;
using interference::Particle;
using qubit::QubitState;

constexpr double kPi = std::numbers::pi;

TEST_CASE("two-path transition amplitude") {
  CHECK(interference::transition_amplitude(+1, 1.0) == doctest::Approx(4.0));
  CHECK(interference::transition_amplitude(-1, 1.0) == doctest::Approx(0.0));
  CHECK(interference::transition_amplitude(+1, 0.5) == doctest::Approx(1.0));
  CHECK_THROWS_AS(interference::transition_amplitude(+1, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(interference::transition_amplitude(2, 1.0), std::invalid_argument);
  for (double t : {0.1, 0.7, 2.0})
    for (int eps : {-1, 1}) CHECK(interference::transition_amplitude(eps, t) >= 0.0);
}

TEST_CASE("branch probabilities") {
  SUBCASE("fermion channel reads alpha^2") {
    auto [pu, pd] = interference::fermion_branch_probabilities(QubitState::up());
    CHECK(pu == doctest::Approx(1.0));
    CHECK(pd == doctest::Approx(0.0));

    auto s = QubitState::make(0.6, 0.8, 1.234);
    auto [a2, b2] = interference::fermion_branch_probabilities(s);
    CHECK(a2 == doctest::Approx(0.36));
    CHECK(b2 == doctest::Approx(0.64));
    CHECK(a2 + b2 == doctest::Approx(1.0));
  }

  SUBCASE("vortex channel reads 1/2 +- alpha beta cos phi") {
    double r = 1 / std::numbers::sqrt2;
    auto [vu, vd] = interference::vortex_branch_probabilities(QubitState::make(r, r, 0.0));
    CHECK(vu == doctest::Approx(1.0));
    CHECK(vd == doctest::Approx(0.0).epsilon(1e-12));

    auto [hu, hd] = interference::vortex_branch_probabilities(QubitState::make(0.6, 0.8, kPi / 2));
    CHECK(hu == doctest::Approx(0.5));
    CHECK(hd == doctest::Approx(0.5));

    auto [au, ad] = interference::vortex_branch_probabilities(QubitState::up());
    CHECK(au == doctest::Approx(0.5));
    CHECK(ad == doctest::Approx(0.5));
    CHECK(au + ad == doctest::Approx(1.0));
  }
}

TEST_CASE("run_experiment sampling") {
  SUBCASE("|up> in the fermion channel is always constructive") {
    InterferenceConfig cfg{Particle::fermion, 1.5, 200, 99};
    auto counts = interference::run_experiment(QubitState::up(), cfg);
    CHECK(counts.constructive == 200);
    CHECK(counts.constructive_fraction() == doctest::Approx(1.0));
  }

  SUBCASE("equal superposition at phi = 0 in the vortex channel is always constructive") {
    double r = 1 / std::numbers::sqrt2;
    InterferenceConfig cfg{Particle::vortex, 1.0, 150, 7};
    auto counts = interference::run_experiment(QubitState::make(r, r, 0.0), cfg);
    CHECK(counts.constructive == 150);
  }

  SUBCASE("empirical frequency lands within 3 sigma at 10^4 shots") {
    InterferenceConfig cfg{Particle::fermion, 1.0, 10000, 4242};
    auto counts = interference::run_experiment(QubitState::make(0.6, 0.8, 0.0), cfg);
    double sigma = std::sqrt(0.36 * 0.64 / 10000.0);
    CHECK(std::abs(counts.constructive_fraction() - 0.36) < 3 * sigma);
  }

  SUBCASE("sampling is deterministic per seed") {
    InterferenceConfig cfg{Particle::vortex, 1.0, 500, 1234};
    auto a = interference::run_experiment(QubitState::make(0.6, 0.8, 1.0), cfg);
    auto b = interference::run_experiment(QubitState::make(0.6, 0.8, 1.0), cfg);
    CHECK(a.constructive == b.constructive);
    CHECK(a.per_shot == b.per_shot);
  }

  SUBCASE("config validation") {
    InterferenceConfig bad{Particle::fermion, 0.0, 10, 1};
    CHECK_THROWS_AS(interference::run_experiment(QubitState::up(), bad), std::invalid_argument);
  }
}

TEST_CASE("exact reconstruction round-trip on the grid") {
  for (double alpha : {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9}) {
    double beta = std::sqrt(1 - alpha * alpha);
    for (double phi : {0.0, kPi / 4, kPi / 2, 3 * kPi / 4, kPi}) {
      double f_up = alpha * alpha;
      double v_up = 0.5 + alpha * beta * std::cos(phi);
      auto r = interference::reconstruct_exact(f_up, v_up);
      CHECK(std::abs(r.alpha_hat - alpha) < 1e-10);
      CHECK(std::abs(r.beta_hat - beta) < 1e-10);
      REQUIRE(r.phi_determined);
      CHECK(std::abs(r.phi_hat - phi) < 1e-10);
    }
  }
}

TEST_CASE("phi is reported undetermined when an amplitude vanishes") {
  auto r = interference::reconstruct_exact(1.0, 0.5);
  CHECK(r.alpha_hat == doctest::Approx(1.0));
  CHECK(!r.phi_determined);
}

TEST_CASE("sampled reconstruction at 10^5 shots lands within 3 radii") {
  auto state = QubitState::make(1 / std::numbers::sqrt2, 1 / std::numbers::sqrt2, 0.0);
  InterferenceConfig fc{Particle::fermion, 1.0, 100000, 11};
  InterferenceConfig vc{Particle::vortex, 1.0, 100000, 12};
  auto fcounts = interference::run_experiment(state, fc);
  auto vcounts = interference::run_experiment(state, vc);
  auto r = interference::reconstruct(fcounts, vcounts);
  CHECK(std::abs(r.alpha_hat - state.alpha) <= 3 * r.sigma_alpha);
  double c_true = 2 * state.alpha * state.beta * std::cos(state.phi) / 2;
  CHECK(std::abs(std::cos(r.phi_hat) - c_true) <= 3 * r.sigma_cos_phi);
}

TEST_CASE("estimator error shrinks with the shot count") {
  auto state = QubitState::make(0.6, 0.8, kPi / 3);
  double prev_err = 1e9;
  for (std::uint64_t shots : {std::uint64_t{100}, std::uint64_t{10000}, std::uint64_t{1000000}}) {
    double err = 0;
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      InterferenceConfig fc{Particle::fermion, 1.0, shots, 1000 + seed};
      InterferenceConfig vc{Particle::vortex, 1.0, shots, 2000 + seed};
      auto r = interference::reconstruct(interference::run_experiment(state, fc),
                                         interference::run_experiment(state, vc));
      err += std::abs(r.alpha_hat - 0.6) + std::abs(r.phi_hat - kPi / 3);
    }
    CHECK(err < prev_err);
    prev_err = err;
  }
}

TEST_CASE("reconstruct validates its inputs") {
  interference::ShotCounts empty;
  empty.particle = Particle::fermion;
  interference::ShotCounts some;
  some.particle = Particle::vortex;
  some.shots = 10;
  CHECK_THROWS_AS(interference::reconstruct(empty, some), std::invalid_argument);
  // swapped particles
  interference::ShotCounts f, v;
  f.particle = Particle::vortex;
  f.shots = 10;
  v.particle = Particle::fermion;
  v.shots = 10;
  CHECK_THROWS_AS(interference::reconstruct(f, v), std::invalid_argument);
}
