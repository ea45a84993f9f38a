#pragma once

// The ring R = F2[X]/(X^l - 1), circulants, cyclic, double-circulant and
// tensor-product codes.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "gf2.hpp"

namespace qtanner {

class Poly {
 public:
  Poly() = default;
  explicit Poly(std::size_t ell) : coeffs_(ell) {
    if (ell == 0) throw Error("ring length must be positive");
  }

  // Exponents are reduced mod l; repeated exponents cancel.
  static Poly from_exponents(std::size_t ell, const std::vector<std::size_t>& exps) {
    Poly p(ell);
    for (auto e : exps) p.coeffs_.flip(e % ell);
    return p;
  }
  static Poly one(std::size_t ell) { return from_exponents(ell, {0}); }
  static Poly monomial(std::size_t ell, std::size_t e) { return from_exponents(ell, {e}); }

  // "0,5" -> 1 + X^5
  static Poly parse(std::size_t ell, const std::string& text) {
    std::vector<std::size_t> exps;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
      item.erase(std::remove_if(item.begin(), item.end(), ::isspace), item.end());
      if (item.empty()) continue;
      if (!std::all_of(item.begin(), item.end(), ::isdigit))
        throw Error("bad exponent '" + item + "' in polynomial");
      exps.push_back(std::stoul(item));
    }
    return from_exponents(ell, exps);
  }

  std::size_t ell() const { return coeffs_.size(); }
  const BitVector& coeffs() const { return coeffs_; }
  bool coeff(std::size_t i) const { return coeffs_.get(i); }
  bool is_zero() const { return coeffs_.is_zero(); }
  std::size_t weight() const { return coeffs_.weight(); }
  std::vector<std::size_t> exponents() const { return coeffs_.support(); }

  // Degree of the reduced representative; nullopt for zero.
  std::optional<std::size_t> degree() const {
    auto s = coeffs_.support();
    if (s.empty()) return std::nullopt;
    return s.back();
  }

  Poly operator+(const Poly& o) const {
    check(o);
    Poly r = *this;
    r.coeffs_ ^= o.coeffs_;
    return r;
  }
  Poly operator*(const Poly& o) const {
    check(o);
    Poly r(ell());
    for (auto i : exponents())
      for (auto j : o.exponents()) r.coeffs_.flip((i + j) % ell());
    return r;
  }
  Poly shift(std::size_t k) const {
    Poly r(ell());
    for (auto i : exponents()) r.coeffs_.flip((i + k) % ell());
    return r;
  }

  // f(X^-1) in R.
  Poly conjugate() const {
    Poly r(ell());
    for (auto i : exponents()) r.coeffs_.flip((ell() - i) % ell());
    return r;
  }

  // X^deg(h) h(1/X).
  Poly reciprocal() const {
    auto d = degree();
    if (!d) throw Error("reciprocal of the zero polynomial");
    Poly r(ell());
    for (auto i : exponents()) r.coeffs_.flip(*d - i);
    return r;
  }

  std::string to_string() const {
    if (is_zero()) return "0";
    std::string out;
    for (auto e : exponents()) {
      if (!out.empty()) out += "+";
      out += e == 0 ? "1" : e == 1 ? "X" : "X^" + std::to_string(e);
    }
    return out;
  }
  std::string exponent_list() const {
    std::string out;
    for (auto e : exponents()) out += (out.empty() ? "" : ",") + std::to_string(e);
    return out;
  }

  friend bool operator==(const Poly& a, const Poly& b) { return a.coeffs_ == b.coeffs_; }

 private:
  void check(const Poly& o) const {
    if (o.ell() != ell()) throw Error("polynomials live in different rings");
  }
  BitVector coeffs_;
};

// Row i is the coefficient vector of f rotated right by i, i.e. X^i f.
inline BitMatrix circulant(const Poly& f) {
  const auto ell = f.ell();
  BitMatrix m(ell, ell);
  for (std::size_t i = 0; i < ell; ++i)
    for (auto e : f.exponents()) m.set(i, (i + e) % ell);
  return m;
}

namespace detail {
// Ordinary polynomial division over F2; coefficient vectors, low degree first.
inline std::pair<std::vector<char>, std::vector<char>> divmod(std::vector<char> num,
                                                              const std::vector<char>& den) {
  auto deg = [](const std::vector<char>& p) -> long {
    for (long i = static_cast<long>(p.size()) - 1; i >= 0; --i)
      if (p[static_cast<std::size_t>(i)]) return i;
    return -1;
  };
  const long dd = deg(den);
  if (dd < 0) throw Error("division by zero polynomial");
  std::vector<char> q(num.size(), 0);
  for (long dn = deg(num); dn >= dd; dn = deg(num)) {
    const auto shift = static_cast<std::size_t>(dn - dd);
    q[shift] ^= 1;
    for (long i = 0; i <= dd; ++i)
      if (den[static_cast<std::size_t>(i)]) num[shift + static_cast<std::size_t>(i)] ^= 1;
  }
  return {q, num};
}
}  // namespace detail

// h with g*h = X^l - 1, or nullopt when g does not divide X^l - 1.
inline std::optional<Poly> check_polynomial(const Poly& g) {
  if (g.is_zero()) return std::nullopt;
  const auto ell = g.ell();
  std::vector<char> num(ell + 1, 0), den(ell + 1, 0);
  num[0] = num[ell] = 1;
  for (auto e : g.exponents()) den[e] = 1;
  auto [q, r] = detail::divmod(num, den);
  if (std::any_of(r.begin(), r.end(), [](char c) { return c != 0; })) return std::nullopt;
  // deg h = l - deg g <= l; h = X^l only when g = 1, and X^l = 1 in R.
  Poly h(ell);
  for (std::size_t i = 0; i <= ell; ++i)
    if (q[i]) h = h + Poly::monomial(ell, i);
  return h;
}

inline bool divides_xl_minus_1(const Poly& g) { return check_polynomial(g).has_value(); }

// Generator of the dual cyclic code: reciprocal of h. For g = 1 the dual is
// the zero code, generated by X^l - 1 = 0.
inline std::optional<Poly> dual_generator(const Poly& g) {
  auto h = check_polynomial(g);
  if (!h) return std::nullopt;
  if (h->is_zero()) return Poly(g.ell());
  return h->reciprocal();
}

// Every divisor of X^l - 1 of degree < l (brute force, small l only).
inline std::vector<Poly> divisors_of_xl_minus_1(std::size_t ell) {
  if (ell > 24) throw Error("divisor enumeration limited to l <= 24");
  std::vector<Poly> out;
  for (unsigned long mask = 1; mask < (1UL << ell); ++mask) {
    Poly p(ell);
    for (std::size_t i = 0; i < ell; ++i)
      if (mask >> i & 1UL) p = p + Poly::monomial(ell, i);
    if (divides_xl_minus_1(p)) out.push_back(p);
  }
  return out;
}

class CyclicCode {
 public:
  // g = 0 stands for X^l - 1, the zero code.
  CyclicCode(Poly g) : g_(std::move(g)) {
    if (g_.is_zero()) {
      h_ = Poly::one(g_.ell());
      return;
    }
    auto h = check_polynomial(g_);
    if (!h) throw Error(g_.to_string() + " does not divide X^" + std::to_string(g_.ell()) + "-1");
    h_ = *h;
  }
  std::size_t length() const { return g_.ell(); }
  const Poly& generator() const { return g_; }
  const Poly& check() const { return h_; }
  std::size_t dimension() const { return g_.is_zero() ? 0 : g_.ell() - *g_.degree(); }
  // All l shifts of g; spans the code but is not full rank.
  BitMatrix generator_matrix() const { return circulant(g_); }
  // Full-rank form X^i g, i < dim.
  BitMatrix basis_matrix() const {
    BitMatrix m(0, length());
    for (std::size_t i = 0; i < dimension(); ++i) m.push_row(g_.shift(i).coeffs());
    return m;
  }

 private:
  Poly g_, h_;
};

inline CyclicCode cyclic_dual(const CyclicCode& c) {
  if (c.generator().is_zero()) return CyclicCode(Poly::one(c.length()));
  return CyclicCode(*dual_generator(c.generator()));
}

class DoubleCirculantCode {
 public:
  explicit DoubleCirculantCode(Poly f) : f_(std::move(f)) {}
  std::size_t half_length() const { return f_.ell(); }
  const Poly& defining_poly() const { return f_; }
  // [G(1) | G(f)]; left block [0,l), right block [l,2l).
  BitMatrix generator_matrix() const {
    return hstack(BitMatrix::identity(half_length()), circulant(f_));
  }

 private:
  Poly f_;
};

// [G(f(X^-1)) | G(1)].
inline BitMatrix double_circulant_dual(const DoubleCirculantCode& d) {
  return hstack(circulant(d.defining_poly().conjugate()), BitMatrix::identity(d.half_length()));
}

// Parity checks of C (x) D over index i * ld + j.
inline BitMatrix tensor_parity(const BitMatrix& hc, const BitMatrix& hd) {
  const auto lc = hc.cols(), ld = hd.cols();
  return vstack(kron(hc, BitMatrix::identity(ld)), kron(BitMatrix::identity(lc), hd));
}

// Generators of (C (x) D)^perp: c' (x) e_j and e_i (x) d'.
inline BitMatrix tensor_dual_generators(const BitMatrix& gc_dual, const BitMatrix& gd_dual,
                                        std::size_t lc, std::size_t ld) {
  BitMatrix left = gc_dual.rows() ? kron(gc_dual, BitMatrix::identity(ld)) : BitMatrix(0, lc * ld);
  BitMatrix right = gd_dual.rows() ? kron(BitMatrix::identity(lc), gd_dual) : BitMatrix(0, lc * ld);
  if (left.cols() != lc * ld || right.cols() != lc * ld)
    throw Error("tensor_dual_generators: lengths do not match");
  return vstack(left, right);
}

// A basis of the row space of minimum total weight: codewords sorted by
// (weight, bit pattern) and taken greedily.
inline BitMatrix reduced_generator(const BitMatrix& g) {
  const Echelon ech(g);
  const auto k = ech.rank();
  if (k > 20) throw Error("reduced_generator: dimension too large");
  std::vector<BitVector> words;
  words.reserve((std::size_t{1} << k) - 1);
  for (std::size_t mask = 1; mask < (std::size_t{1} << k); ++mask) {
    BitVector w(g.cols());
    for (std::size_t i = 0; i < k; ++i)
      if (mask >> i & 1U) w ^= ech.rows()[i];
    words.push_back(std::move(w));
  }
  std::stable_sort(words.begin(), words.end(), [](const BitVector& a, const BitVector& b) {
    const auto wa = a.weight(), wb = b.weight();
    if (wa != wb) return wa < wb;
    return a.support() < b.support();
  });
  BitMatrix out(0, g.cols());
  for (auto& w : words) {
    if (out.rows() == k) break;
    if (Echelon(out).contains(w)) continue;
    out.push_row(w);
  }
  return out;
}

}  // namespace qtanner
