#include "wenplaq/pauli_string.hpp"

#include <cmath>
#include <stdexcept>

namespace wenplaq::pauli {

std::size_t BitMask::count() const {
  std::size_t c = 0;
  for (auto w : words_) c += __builtin_popcountll(w);
  return c;
}

std::size_t BitMask::count_and(const BitMask& a, const BitMask& b) {
  std::size_t c = 0;
  for (std::size_t i = 0; i < a.words_.size(); ++i)
    c += __builtin_popcountll(a.words_[i] & b.words_[i]);
  return c;
}

std::string BitMask::hex() const {
  static const char* digits = "0123456789abcdef";
  std::size_t n_nibbles = (n_bits_ + 3) / 4;
  if (n_nibbles == 0) n_nibbles = 1;
  std::string s(n_nibbles, '0');
  for (std::size_t i = 0; i < n_nibbles; ++i) {
    std::size_t word = i / 16, shift = (i % 16) * 4;
    std::uint64_t nib = word < words_.size() ? (words_[word] >> shift) & 0xf : 0;
    s[n_nibbles - 1 - i] = digits[nib];  // most significant nibble first
  }
  return s;
}

BitMask BitMask::from_hex(const std::string& s, std::size_t n_bits) {
  BitMask m(n_bits);
  std::size_t i = 0;
  for (auto it = s.rbegin(); it != s.rend(); ++it, ++i) {
    char c = *it;
    std::uint64_t nib;
    if (c >= '0' && c <= '9')
      nib = static_cast<std::uint64_t>(c - '0');
    else if (c >= 'a' && c <= 'f')
      nib = static_cast<std::uint64_t>(c - 'a' + 10);
    else if (c >= 'A' && c <= 'F')
      nib = static_cast<std::uint64_t>(c - 'A' + 10);
    else
      throw std::invalid_argument("BitMask::from_hex: bad digit");
    std::size_t word = i / 16, shift = (i % 16) * 4;
    if (word < m.words_.size()) m.words_[word] |= nib << shift;
  }
  return m;
}

PauliString PauliString::single(std::size_t n_sites, std::size_t site, char letter) {
  if (site >= n_sites) throw std::invalid_argument("PauliString::single: site out of range");
  PauliString p(n_sites);
  switch (letter) {
    case 'I':
      break;
    case 'X':
      p.x_.set(site);
      break;
    case 'Z':
      p.z_.set(site);
      break;
    case 'Y':  // Y = i X Z
      p.x_.set(site);
      p.z_.set(site);
      p.k_ = 1;
      break;
    default:
      throw std::invalid_argument("PauliString::single: letter must be I/X/Y/Z");
  }
  return p;
}

PauliString PauliString::from_masks(BitMask x, BitMask z, int phase_exponent) {
  if (x.size() != z.size()) throw std::invalid_argument("PauliString: mask size mismatch");
  PauliString p(x.size());
  p.x_ = std::move(x);
  p.z_ = std::move(z);
  p.k_ = ((phase_exponent % 4) + 4) % 4;
  return p;
}

cdouble PauliString::phase() const {
  int y = static_cast<int>(BitMask::count_and(x_, z_));
  switch (((k_ - y) % 4 + 4) % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

PauliString PauliString::operator*(const PauliString& o) const {
  if (n_sites() != o.n_sites())
    throw std::invalid_argument("PauliString::operator*: size mismatch");
  // (i^a X^x1 Z^z1)(i^b X^x2 Z^z2) = i^{a+b} (-1)^{|z1 & x2|} X^{x1^x2} Z^{z1^z2}
  PauliString r(n_sites());
  r.x_ = x_ ^ o.x_;
  r.z_ = z_ ^ o.z_;
  int anti = BitMask::parity_and(z_, o.x_) ? 1 : 0;
  r.k_ = (k_ + o.k_ + 2 * anti) % 4;
  return r;
}

bool PauliString::commutes(const PauliString& o) const {
  if (n_sites() != o.n_sites())
    throw std::invalid_argument("PauliString::commutes: size mismatch");
  return BitMask::parity_and(x_, o.z_) == BitMask::parity_and(z_, o.x_);
}

bool PauliString::is_hermitian() const {
  // P^2 = i^{2k} (-1)^{|x&z|} I; self-product phase +1 <=> k + |x&z| even
  return (static_cast<std::size_t>(k_) + BitMask::count_and(x_, z_)) % 2 == 0;
}

std::size_t PauliString::weight() const {
  // |x OR z| = |x| + |z| - |x AND z|
  return x_.count() + z_.count() - BitMask::count_and(x_, z_);
}

std::string PauliString::to_string() const {
  static const char* names[4] = {"+1", "+i", "-1", "-i"};
  int y = static_cast<int>(BitMask::count_and(x_, z_));
  std::string s = names[((k_ - y) % 4 + 4) % 4];
  s += ' ';
  for (std::size_t j = 0; j < n_sites(); ++j) s += letter_at(j);
  return s;
}

StateVector StateVector::basis_state(std::size_t n, std::uint64_t index) {
  StateVector v(n);
  v.amplitudes[index] = {1.0, 0.0};
  return v;
}

double StateVector::norm() const {
  double s = 0;
  for (const auto& a : amplitudes) s += std::norm(a);
  return std::sqrt(s);
}

void StateVector::normalize() {
  double n = norm();
  if (n == 0.0) throw std::runtime_error("StateVector::normalize: zero vector");
  for (auto& a : amplitudes) a /= n;
}

cdouble inner(const StateVector& a, const StateVector& b) {
  if (a.n_sites != b.n_sites)
    throw std::invalid_argument("inner: size mismatch");
  cdouble s{0.0, 0.0};
  for (std::size_t i = 0; i < a.amplitudes.size(); ++i)
    s += std::conj(a.amplitudes[i]) * b.amplitudes[i];
  return s;
}

namespace {
cdouble ipow(int k) {
  switch (((k % 4) + 4) % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}
}  // namespace

StateVector apply(const PauliString& p, const StateVector& v) {
  if (p.n_sites() != v.n_sites)
    throw std::invalid_argument("apply: size mismatch");
  StateVector out(v.n_sites);
  const std::uint64_t x = p.x_mask().low64();
  const std::uint64_t z = p.z_mask().low64();
  const cdouble ph = ipow(p.phase_exponent());
  const std::uint64_t dim = v.dim();
  for (std::uint64_t b = 0; b < dim; ++b) {
    double sign = __builtin_parityll(z & b) ? -1.0 : 1.0;
    out.amplitudes[b ^ x] = ph * sign * v.amplitudes[b];
  }
  return out;
}

cdouble expectation(const PauliString& p, const StateVector& v) {
  if (p.n_sites() != v.n_sites)
    throw std::invalid_argument("expectation: size mismatch");
  const std::uint64_t x = p.x_mask().low64();
  const std::uint64_t z = p.z_mask().low64();
  const cdouble ph = ipow(p.phase_exponent());
  const std::uint64_t dim = v.dim();
  cdouble s{0.0, 0.0};
  for (std::uint64_t b = 0; b < dim; ++b) {
    double sign = __builtin_parityll(z & b) ? -1.0 : 1.0;
    s += std::conj(v.amplitudes[b ^ x]) * ph * sign * v.amplitudes[b];
  }
  return s;
}

}  // namespace wenplaq::pauli
