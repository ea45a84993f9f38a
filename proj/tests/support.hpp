#pragma once

// Small random generators shared by the property tests.

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "qtanner/gf2.hpp"
#include "qtanner/poly.hpp"

namespace qtanner::testing {

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}
  std::size_t below(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_); }
  bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(rng_); }

  BitVector vec(std::size_t n, double p = 0.5) {
    BitVector v(n);
    for (std::size_t i = 0; i < n; ++i)
      if (coin(p)) v.set(i);
    return v;
  }
  BitMatrix mat(std::size_t r, std::size_t c, double p = 0.5) {
    BitMatrix m(0, c);
    for (std::size_t i = 0; i < r; ++i) m.push_row(vec(c, p));
    return m;
  }
  Poly poly(std::size_t ell) {
    Poly p(ell);
    for (std::size_t i = 0; i < ell; ++i)
      if (coin()) p = p + Poly::monomial(ell, i);
    return p;
  }

 private:
  std::mt19937_64 rng_;
};

// Every vector in the row span, by enumeration.
inline std::vector<BitVector> span_of(const BitMatrix& m) {
  std::vector<BitVector> out;
  for (std::size_t mask = 0; mask < (std::size_t{1} << m.rows()); ++mask) {
    BitVector v(m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
      if (mask >> i & 1U) v ^= m.row(i);
    out.push_back(v);
  }
  return out;
}

}  // namespace qtanner::testing
