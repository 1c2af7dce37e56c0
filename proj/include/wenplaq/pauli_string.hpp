#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

namespace wenplaq::pauli {

using cdouble = std::complex<double>;

// Bit set over lattice sites; bit k corresponds to site k.
class BitMask {
 public:
  BitMask() = default;
  explicit BitMask(std::size_t n_bits)
      : n_bits_(n_bits), words_((n_bits + 63) / 64, 0) {}

  std::size_t size() const { return n_bits_; }

  bool test(std::size_t k) const {
    return (words_[k >> 6] >> (k & 63)) & 1u;
  }

  void set(std::size_t k, bool v = true) {
    std::uint64_t bit = std::uint64_t{1} << (k & 63);
    if (v)
      words_[k >> 6] |= bit;
    else
      words_[k >> 6] &= ~bit;
  }

  BitMask& operator^=(const BitMask& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] ^= o.words_[i];
    return *this;
  }

  friend BitMask operator^(BitMask a, const BitMask& b) { return a ^= b; }

  bool operator==(const BitMask&) const = default;

  bool any() const {
    for (auto w : words_)
      if (w) return true;
    return false;
  }

  std::size_t count() const;

  // popcount(a & b); masks must have equal size
  static std::size_t count_and(const BitMask& a, const BitMask& b);

  // parity of popcount(a & b)
  static bool parity_and(const BitMask& a, const BitMask& b) {
    std::uint64_t acc = 0;
    for (std::size_t i = 0; i < a.words_.size(); ++i)
      acc ^= a.words_[i] & b.words_[i];
    return __builtin_parityll(acc);
  }

  // first 64 bits, for basis-index arithmetic (valid when size() <= 64)
  std::uint64_t low64() const { return words_.empty() ? 0 : words_[0]; }

  std::string hex() const;
  static BitMask from_hex(const std::string& s, std::size_t n_bits);

 private:
  std::size_t n_bits_ = 0;
  std::vector<std::uint64_t> words_;
};

// Multi-site Pauli operator in symplectic form:
//
//     P = i^k · X^x · Z^z
//
// where x, z are site masks and k is the phase exponent (mod 4). The
// letter form P = w · ⊗_j sigma_j (with Y at sites where both masks are
// set) carries w = i^(k - |x&z|), exposed as phase(). All phase
// arithmetic is integer-exact.
class PauliString {
 public:
  explicit PauliString(std::size_t n_sites)
      : x_(n_sites), z_(n_sites), k_(0) {}

  static PauliString identity(std::size_t n_sites) { return PauliString(n_sites); }

  // letter in {'X','Y','Z','I'}
  static PauliString single(std::size_t n_sites, std::size_t site, char letter);

  static PauliString from_masks(BitMask x, BitMask z, int phase_exponent);

  std::size_t n_sites() const { return x_.size(); }
  const BitMask& x_mask() const { return x_; }
  const BitMask& z_mask() const { return z_; }
  int phase_exponent() const { return k_; }

  // phase of the letter decomposition, in {1, i, -1, -i}
  cdouble phase() const;

  char letter_at(std::size_t site) const {
    bool xb = x_.test(site), zb = z_.test(site);
    return xb ? (zb ? 'Y' : 'X') : (zb ? 'Z' : 'I');
  }

  // operator product with exact phase tracking
  PauliString operator*(const PauliString& o) const;

  bool commutes(const PauliString& o) const;

  bool is_identity() const { return !x_.any() && !z_.any() && k_ == 0; }
  bool has_identity_masks() const { return !x_.any() && !z_.any(); }

  // self-adjoint iff the self-product phase is +1
  bool is_hermitian() const;

  std::size_t weight() const;  // number of non-identity sites

  std::string to_string() const;

  bool operator==(const PauliString&) const = default;

 private:
  BitMask x_, z_;
  int k_;  // exponent of i, mod 4
};

// Dense complex state vector over n sites; basis index bit k = site k.
struct StateVector {
  std::size_t n_sites = 0;
  std::vector<cdouble> amplitudes;

  StateVector() = default;
  explicit StateVector(std::size_t n)
      : n_sites(n), amplitudes(std::size_t{1} << n, cdouble{0.0, 0.0}) {}

  static StateVector basis_state(std::size_t n, std::uint64_t index);

  std::size_t dim() const { return amplitudes.size(); }
  double norm() const;
  void normalize();
};

cdouble inner(const StateVector& a, const StateVector& b);  // <a|b>

// p|v>; X mask permutes basis indices, Z mask and phase multiply amplitudes.
StateVector apply(const PauliString& p, const StateVector& v);

// <v|p|v>
cdouble expectation(const PauliString& p, const StateVector& v);

}  // namespace wenplaq::pauli
