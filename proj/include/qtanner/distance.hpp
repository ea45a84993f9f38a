#pragma once

// Minimum distance of CSS codes: exhaustive search over a kernel, and a
// randomized information-set search giving verified upper bounds.

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "complex.hpp"
#include "css.hpp"
#include "gf2.hpp"

namespace qtanner {

enum class DistanceMethod { Exact, Randomized };
inline const char* method_name(DistanceMethod m) { return m == DistanceMethod::Exact ? "exact" : "randomized"; }

struct DistanceReport {
  Side side = Side::X;
  DistanceMethod method = DistanceMethod::Exact;
  // nullopt means no logical operator exists (k = 0): distance infinity.
  std::optional<std::size_t> value;
  BitVector witness;
  // All distinct minimum-weight logicals met, sorted, at most witness_cap.
  std::vector<BitVector> witnesses;
  std::size_t iterations = 0;
  std::uint64_t seed = 0;
  bool exhaustive = false;

  bool infinite() const { return !value.has_value(); }
};

// Side X: logicals live in ker H_Z and are trivial in rowspace(H_X).
inline const BitMatrix& logical_kernel_matrix(const CssCode& c, Side side) {
  return side == Side::X ? c.hz : c.hx;
}
inline const BitMatrix& stabilizer_matrix(const CssCode& c, Side side) {
  return side == Side::X ? c.hx : c.hz;
}

// k vectors completing the stabilizers of `side` to a basis of the kernel.
inline std::vector<BitVector> logical_basis(const CssCode& c, Side side) {
  Echelon span(stabilizer_matrix(c, side));
  std::vector<BitVector> out;
  const auto ker = kernel_basis(logical_kernel_matrix(c, side));
  for (const auto& v : ker.row_data())
    if (span.insert(v)) out.push_back(v);
  return out;
}

inline bool is_nontrivial_logical(const CssCode& c, Side side, const BitVector& v) {
  if (v.size() != c.n) return false;
  if (!mul(logical_kernel_matrix(c, side), v).is_zero()) return false;
  return !in_rowspace(stabilizer_matrix(c, side), v);
}

// Witnesses are in the right kernel, outside the stabilizer space, and of
// the reported weight.
inline bool verify_report(const CssCode& c, const DistanceReport& r) {
  if (r.infinite()) return c.k == 0;
  if (!is_nontrivial_logical(c, r.side, r.witness) || r.witness.weight() != *r.value) return false;
  for (const auto& w : r.witnesses)
    if (w.weight() != *r.value || !is_nontrivial_logical(c, r.side, w)) return false;
  return true;
}

inline constexpr std::size_t kDefaultExactBound = 22;
inline constexpr std::size_t kWitnessCap = 256;

// Gray-code walk over all of ker, keeping vectors with a nonzero logical
// coefficient.
inline DistanceReport exact_distance(const CssCode& c, Side side,
                                     std::size_t max_kernel_dim = kDefaultExactBound) {
  DistanceReport r;
  r.side = side;
  r.method = DistanceMethod::Exact;
  r.exhaustive = true;
  if (c.k == 0) {
    r.witness = BitVector(c.n);
    return r;
  }
  const Echelon stab(stabilizer_matrix(c, side));
  auto logicals = logical_basis(c, side);
  std::vector<BitVector> basis = stab.rows();
  const auto r_dim = basis.size();
  basis.insert(basis.end(), logicals.begin(), logicals.end());
  const auto dim = basis.size();
  if (dim > max_kernel_dim)
    throw Error("exact_distance: kernel dimension " + std::to_string(dim) + " exceeds bound " +
                std::to_string(max_kernel_dim));
  const auto words = words_for(c.n);
  BitVector cur(c.n);
  std::uint64_t logical_mask = 0;
  std::size_t best = std::numeric_limits<std::size_t>::max();
  std::set<BitVector> found;
  const std::uint64_t total = std::uint64_t{1} << dim;
  for (std::uint64_t i = 1; i < total; ++i) {
    const auto flip = static_cast<std::size_t>(std::countr_zero(i));
    Word* dst = cur.data();
    const Word* src = basis[flip].data();
    for (std::size_t w = 0; w < words; ++w) dst[w] ^= src[w];
    if (flip >= r_dim) logical_mask ^= std::uint64_t{1} << (flip - r_dim);
    if (!logical_mask) continue;
    const auto wt = cur.weight();
    if (wt < best) {
      best = wt;
      found.clear();
    }
    if (wt == best && found.size() < kWitnessCap) found.insert(cur);
  }
  r.value = best;
  r.witnesses.assign(found.begin(), found.end());
  r.witness = r.witnesses.front();
  return r;
}

// Bounded draws from mt19937_64 by rejection, so streams are identical on
// every platform.
class SeedStream {
 public:
  explicit SeedStream(std::uint64_t seed) : gen_(seed) {}
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % bound;
    for (;;) {
      const auto x = gen_();
      if (x < limit) return x % bound;
    }
  }
  void shuffle(std::vector<std::size_t>& v) {
    for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[below(i)]);
  }

 private:
  std::mt19937_64 gen_;
};

struct RandomizedOptions {
  std::size_t iterations = 100000;
  std::uint64_t seed = 1;
  // Pairs of rows at most window-1 apart in pivot order are also tried.
  std::size_t window = 2;
  std::size_t streams = 8;
  // 0 = use the hardware concurrency.
  std::size_t threads = 0;
};

namespace detail {

struct SearchState {
  std::size_t best = std::numeric_limits<std::size_t>::max();
  std::set<BitVector> found;

  void offer(const BitVector& v, std::size_t wt) {
    if (wt < best) {
      best = wt;
      found.clear();
    }
    if (wt == best && found.size() < kWitnessCap) found.insert(v);
  }
  void merge(const SearchState& o) {
    if (o.best < best) {
      best = o.best;
      found.clear();
    }
    if (o.best == best)
      for (const auto& v : o.found) {
        if (found.size() >= kWitnessCap) break;
        found.insert(v);
      }
  }
};

// One worker: `count` iterations on its own stream.
inline SearchState search_stream(const BitMatrix& generator, const std::vector<BitVector>& duals,
                                 std::size_t n, std::size_t count, std::uint64_t stream_seed,
                                 std::size_t window) {
  SearchState st;
  SeedStream rng(stream_seed);
  const auto m = generator.rows();
  const auto words = words_for(n);
  std::vector<Word> base(m * words), work(m * words);
  for (std::size_t i = 0; i < m; ++i)
    std::copy(generator.row(i).data(), generator.row(i).data() + words, base.begin() + i * words);
  std::vector<std::size_t> order(n);
  BitVector cand(n);

  auto nontrivial = [&](const Word* v) {
    for (const auto& d : duals) {
      Word acc = 0;
      const Word* p = d.data();
      for (std::size_t w = 0; w < words; ++w) acc ^= v[w] & p[w];
      if (std::popcount(acc) & 1) return true;
    }
    return false;
  };
  auto weight = [words](const Word* v) {
    std::size_t t = 0;
    for (std::size_t w = 0; w < words; ++w) t += static_cast<std::size_t>(std::popcount(v[w]));
    return t;
  };
  auto consider = [&](const Word* v, std::size_t wt) {
    if (wt == 0 || wt > st.best || !nontrivial(v)) return;
    std::copy(v, v + words, cand.data());
    st.offer(cand, wt);
  };

  std::vector<Word> pair(words);
  for (std::size_t it = 0; it < count; ++it) {
    for (std::size_t j = 0; j < n; ++j) order[j] = j;
    rng.shuffle(order);
    work = base;
    // Reduced echelon form with pivots taken in the drawn column order.
    std::size_t rank = 0;
    for (std::size_t oi = 0; oi < n && rank < m; ++oi) {
      const auto col = order[oi];
      const auto cw = col / kWordBits;
      const Word bit = Word{1} << (col % kWordBits);
      std::size_t r = rank;
      while (r < m && !(work[r * words + cw] & bit)) ++r;
      if (r == m) continue;
      if (r != rank)
        std::swap_ranges(work.begin() + r * words, work.begin() + (r + 1) * words,
                         work.begin() + rank * words);
      const Word* piv = work.data() + rank * words;
      for (std::size_t i = 0; i < m; ++i) {
        if (i == rank) continue;
        Word* row = work.data() + i * words;
        if (row[cw] & bit)
          for (std::size_t w = 0; w < words; ++w) row[w] ^= piv[w];
      }
      ++rank;
    }
    for (std::size_t i = 0; i < rank; ++i) {
      const Word* a = work.data() + i * words;
      consider(a, weight(a));
      for (std::size_t j = i + 1; j < rank && j < i + window; ++j) {
        const Word* b = work.data() + j * words;
        for (std::size_t w = 0; w < words; ++w) pair[w] = a[w] ^ b[w];
        consider(pair.data(), weight(pair.data()));
      }
    }
  }
  return st;
}

inline std::uint64_t stream_seed(std::uint64_t seed, std::size_t stream) {
  // splitmix64 of seed + stream
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace detail

// Upper bound on d_side with verified witnesses. Iteration i runs on stream
// i mod streams, so a longer run extends every stream of a shorter one.
inline DistanceReport randomized_distance(const CssCode& c, Side side, const RandomizedOptions& opt) {
  DistanceReport r;
  r.side = side;
  r.method = DistanceMethod::Randomized;
  r.iterations = opt.iterations;
  r.seed = opt.seed;
  if (c.k == 0) {
    r.witness = BitVector(c.n);
    return r;
  }
  const auto generator = kernel_basis(logical_kernel_matrix(c, side));
  const auto other = side == Side::X ? Side::Z : Side::X;
  const auto duals = logical_basis(c, other);
  const auto streams = std::max<std::size_t>(1, opt.streams);
  std::vector<detail::SearchState> results(streams);
  auto count_for = [&](std::size_t s) { return opt.iterations / streams + (s < opt.iterations % streams); };
  auto run = [&](std::size_t s) {
    results[s] = detail::search_stream(generator, duals, c.n, count_for(s),
                                       detail::stream_seed(opt.seed, s), std::max<std::size_t>(1, opt.window));
  };
  std::size_t threads = opt.threads ? opt.threads : std::max(1U, std::thread::hardware_concurrency());
  threads = std::min(threads, streams);
  if (threads <= 1) {
    for (std::size_t s = 0; s < streams; ++s) run(s);
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < threads; ++w)
      pool.emplace_back([&, w] {
        for (std::size_t s = w; s < streams; s += threads) run(s);
      });
    for (auto& t : pool) t.join();
  }
  detail::SearchState merged;
  for (const auto& st : results) merged.merge(st);
  if (merged.found.empty()) {
    // Every nonzero logical coset is met by the first reduced basis, so this
    // only happens for zero iterations.
    auto logicals = logical_basis(c, side);
    merged.offer(logicals.front(), logicals.front().weight());
  }
  r.value = merged.best;
  r.witnesses.assign(merged.found.begin(), merged.found.end());
  r.witness = r.witnesses.front();
  if (!verify_report(c, r)) throw Error("randomized_distance: witness failed re-verification");
  return r;
}

inline DistanceReport randomized_distance(const CssCode& c, Side side, std::size_t iterations,
                                          std::uint64_t seed) {
  RandomizedOptions opt;
  opt.iterations = iterations;
  opt.seed = seed;
  return randomized_distance(c, side, opt);
}

// Exact when the kernel is small enough, randomized otherwise.
inline DistanceReport distance(const CssCode& c, Side side, const RandomizedOptions& opt,
                               std::size_t max_kernel_dim = kDefaultExactBound) {
  if (c.k == 0) return exact_distance(c, side, max_kernel_dim);
  const auto kernel_dim = c.n - (side == Side::X ? c.rank_z : c.rank_x);
  if (kernel_dim <= max_kernel_dim) return exact_distance(c, side, max_kernel_dim);
  return randomized_distance(c, side, opt);
}

}  // namespace qtanner
