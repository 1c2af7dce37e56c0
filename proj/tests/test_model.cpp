#include <doctest.h>

#include <set>

#include "test_support.hpp"
#include "wenplaq/model.hpp"

using namespace wenplaq;
using model::LatticeSpec;
using pauli::PauliString;

TEST_CASE("lattice validation and derived quantities") {
  CHECK_THROWS_AS(LatticeSpec::make(1, 4), std::invalid_argument);
  CHECK_THROWS_AS(LatticeSpec::make(3, 0), std::invalid_argument);

  auto lat = LatticeSpec::make(3, 4);
  CHECK(lat.sites() == 12);
  CHECK(lat.parity_class() == model::ParityClass::oe);
  CHECK(lat.tunneling_length() == 12);
  CHECK(LatticeSpec::make(4, 4).tunneling_length() == 4);
  CHECK(LatticeSpec::make(3, 3).tunneling_length() == 3);
  CHECK(LatticeSpec::make(2, 4).has_short_edge());
  CHECK(model::to_string(LatticeSpec::make(5, 5).parity_class()) == "o*o");
}

TEST_CASE("wen hamiltonian structure") {
  auto lat = LatticeSpec::make(3, 3);
  auto h = model::build_wen(lat, 1.0);
  CHECK(h.terms.size() == 9);
  for (const auto& t : h.terms) {
    CHECK(t.coeff == -1.0);
    CHECK(t.op.weight() == 4);
    CHECK(t.op.is_hermitian());
  }
  CHECK_THROWS_AS(model::build_wen(lat, -0.5), std::invalid_argument);
}

TEST_CASE("all plaquettes commute on lattices 2..6") {
  for (int lx = 2; lx <= 6; ++lx)
    for (int ly = 2; ly <= 6; ++ly) {
      auto lat = LatticeSpec::make(lx, ly);
      std::vector<PauliString> fs;
      for (int y = 0; y < ly; ++y)
        for (int x = 0; x < lx; ++x) fs.push_back(model::plaquette(lat, x, y));
      for (std::size_t i = 0; i < fs.size(); ++i)
        for (std::size_t j = i; j < fs.size(); ++j)
          CHECK(fs[i].commutes(fs[j]));
    }
}

TEST_CASE("constraint structure fixes the ground degeneracy pattern") {
  SUBCASE("3x3: the product of all plaquettes is the identity, no proper sublattice product is") {
    auto lat = LatticeSpec::make(3, 3);
    PauliString all = PauliString::identity(9), even = PauliString::identity(9),
                odd = PauliString::identity(9);
    for (int y = 0; y < 3; ++y)
      for (int x = 0; x < 3; ++x) {
        auto f = model::plaquette(lat, x, y);
        all = all * f;
        ((x + y) % 2 == 0 ? even : odd) = ((x + y) % 2 == 0 ? even : odd) * f;
      }
    CHECK(all.is_identity());
    CHECK(!even.has_identity_masks());
    CHECK(!odd.has_identity_masks());
  }

  SUBCASE("4x4: even and odd sublattice products are both the identity") {
    auto lat = LatticeSpec::make(4, 4);
    PauliString even = PauliString::identity(16), odd = PauliString::identity(16);
    for (int y = 0; y < 4; ++y)
      for (int x = 0; x < 4; ++x) {
        auto f = model::plaquette(lat, x, y);
        ((x + y) % 2 == 0 ? even : odd) = ((x + y) % 2 == 0 ? even : odd) * f;
      }
    CHECK(even.is_identity());
    CHECK(odd.is_identity());
  }
}

TEST_CASE("uniform perturbation construction") {
  auto lat = LatticeSpec::make(3, 3);
  CHECK(model::build_uniform_perturbation(lat, 0.0, 0.0).terms.empty());

  auto hx = model::build_uniform_perturbation(lat, 0.1, 0.0);
  CHECK(hx.terms.size() == 9);
  for (const auto& t : hx.terms) {
    CHECK(t.coeff == 0.1);
    CHECK(t.op.weight() == 1);
  }

  // anticommutation counts against the four plaquettes containing a site:
  // enumeration gives 2 for sigma^x and sigma^y, 4 for sigma^z
  std::vector<PauliString> fs;
  for (int y = 0; y < 3; ++y)
    for (int x = 0; x < 3; ++x) fs.push_back(model::plaquette(lat, x, y));
  for (int site = 0; site < 9; ++site) {
    int nx = 0, ny = 0, nz = 0;
    for (const auto& f : fs) {
      nx += !PauliString::single(9, site, 'X').commutes(f);
      ny += !PauliString::single(9, site, 'Y').commutes(f);
      nz += !PauliString::single(9, site, 'Z').commutes(f);
    }
    CHECK(nx == 2);
    CHECK(ny == 2);
    CHECK(nz == 4);
  }
}

TEST_CASE("sublattice perturbation construction") {
  CHECK_THROWS_AS(model::build_sublattice_perturbation(LatticeSpec::make(3, 4), 0.1, 0.0),
                  std::invalid_argument);

  auto lat = LatticeSpec::make(4, 4);
  auto h = model::build_sublattice_perturbation(lat, 0.1, 0.0);
  CHECK(h.terms.size() == 16);  // 8 odd sites, X and Y each
  int n_x = 0, n_y = 0;
  for (const auto& t : h.terms) {
    CHECK(t.op.weight() == 1);
    for (int s = 0; s < 16; ++s) {
      char l = t.op.letter_at(s);
      if (l == 'I') continue;
      int x = s % 4, y = s / 4;
      CHECK((x + y) % 2 == 1);
      n_x += l == 'X';
      n_y += l == 'Y';
    }
  }
  CHECK(n_x == 8);
  CHECK(n_y == 8);

  SUBCASE("h = 0 leaves only the z part, identical to the uniform builder") {
    auto a = model::build_sublattice_perturbation(lat, 0.0, 0.3);
    auto b = model::build_uniform_perturbation(lat, 0.0, 0.3);
    REQUIRE(a.terms.size() == b.terms.size());
    for (std::size_t i = 0; i < a.terms.size(); ++i) {
      CHECK(a.terms[i].coeff == b.terms[i].coeff);
      CHECK(a.terms[i].op == b.terms[i].op);
    }
  }

  SUBCASE("every term preserves both sublattice charge-parity operators") {
    // each term flips zero or two plaquettes of a given color, so it
    // commutes with both sublattice product operators exactly
    PauliString even = PauliString::identity(16), odd = PauliString::identity(16);
    for (int y = 0; y < 4; ++y)
      for (int x = 0; x < 4; ++x) {
        auto f = model::plaquette(lat, x, y);
        ((x + y) % 2 == 0 ? even : odd) = ((x + y) % 2 == 0 ? even : odd) * f;
      }
    auto both = model::build_sublattice_perturbation(lat, 0.1, 0.2);
    for (const auto& t : both.terms) {
      CHECK(t.op.commutes(even));
      CHECK(t.op.commutes(odd));
    }
  }
}

TEST_CASE("uniform and sublattice z-parts cross-check indexing") {
  auto lat = LatticeSpec::make(4, 6);
  auto u = model::build_uniform_perturbation(lat, 0.0, 0.25);
  auto s = model::build_sublattice_perturbation(lat, 0.0, 0.25);
  REQUIRE(u.terms.size() == s.terms.size());
  for (std::size_t i = 0; i < u.terms.size(); ++i) CHECK(u.terms[i].op == s.terms[i].op);
}

TEST_CASE("kitaev brick-wall bonds") {
  CHECK_THROWS_AS(model::build_kitaev(3, 4, 1, 1, 1), std::invalid_argument);
  CHECK_THROWS_AS(model::build_kitaev(2, 5, 1, 1, 1), std::invalid_argument);

  auto h = model::build_kitaev(2, 4, 1.0, 0.5, 0.25);
  CHECK(h.terms.size() == 12);  // 4 of each bond type
  int per_letter[3] = {0, 0, 0};
  std::vector<int> degree(8, 0);
  for (const auto& t : h.terms) {
    CHECK(t.op.weight() == 2);
    char seen = 'I';
    for (int s = 0; s < 8; ++s) {
      char l = t.op.letter_at(s);
      if (l == 'I') continue;
      if (seen == 'I') seen = l;
      CHECK(l == seen);  // both ends carry the same letter
      ++degree[s];
    }
    per_letter[seen == 'X' ? 0 : seen == 'Y' ? 1 : 2]++;
  }
  CHECK(per_letter[0] == 4);
  CHECK(per_letter[1] == 4);
  CHECK(per_letter[2] == 4);
  for (int d : degree) CHECK(d == 3);  // honeycomb coordination

  SUBCASE("J_y = J_z = 0 leaves mutually commuting x-bonds") {
    auto hx = model::build_kitaev(2, 4, 1.0, 0.0, 0.0);
    CHECK(hx.terms.size() == 4);
    for (const auto& a : hx.terms)
      for (const auto& b : hx.terms) CHECK(a.op.commutes(b.op));
  }

  SUBCASE("the product of the six bonds around a hexagon commutes with every term") {
    auto hk = model::build_kitaev(4, 4, 1.0, 0.7, 0.3);
    auto site = [&](int j, int l) { return ((l % 4 + 4) % 4) * 4 + ((j % 4 + 4) % 4); };
    auto bond = [&](int j1, int l1, int j2, int l2, char letter) {
      return PauliString::single(16, site(j1, l1), letter) *
             PauliString::single(16, site(j2, l2), letter);
    };
    // brick with bottom-left corner (0,0): bottom x and y bonds, two
    // vertical z bonds, top x and y bonds
    auto w = bond(0, 0, 1, 0, 'X') * bond(1, 0, 2, 0, 'Y') * bond(0, 0, 0, 1, 'Z') *
             bond(2, 0, 2, 1, 'Z') * bond(1, 1, 2, 1, 'X') * bond(0, 1, 1, 1, 'Y');
    CHECK(w.weight() == 6);
    for (const auto& t : hk.terms) CHECK(w.commutes(t.op));
  }
}

TEST_CASE("effective coupling arithmetic") {
  CHECK(model::effective_coupling(1, 1, 1) == doctest::Approx(1.0 / 16));
  CHECK(model::effective_coupling(2, 0, 1) == 0.0);
  CHECK(model::effective_coupling(-1, 1, 1) == doctest::Approx(1.0 / 16));
  CHECK(model::effective_coupling(10, 1, 1) == doctest::Approx(1.0 / 16000));
  CHECK_THROWS_AS(model::effective_coupling(0, 1, 1), std::invalid_argument);
}

TEST_CASE("hamiltonian validation rejects non-Hermitian terms") {
  model::HamiltonianSpec h;
  h.lattice = LatticeSpec::make(2, 2);
  // i * X0 Z0 alone (phase exponent 0 on both masks set is -iY: anti-Hermitian times i...)
  auto bad = PauliString::from_masks(pauli::BitMask(4), pauli::BitMask(4), 1);  // i * identity
  h.terms.push_back({1.0, bad});
  CHECK_THROWS_AS(h.validate(), std::invalid_argument);
}
