#pragma once

// Projection and transfer chain maps between a code and its lift along a
// Galois cover, and the parameter bounds they imply for odd index.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "covering.hpp"
#include "css.hpp"
#include "distance.hpp"
#include "gf2.hpp"

namespace qtanner {

// pi_i sums a fiber of lifted cells onto its base cell; tau_i = pi_i^T sends
// a cell to the sum of its lifts. Index 0: X checks, 1: qubits, 2: Z checks.
struct ChainMapPair {
  std::size_t index = 1;
  BitMatrix pi0, pi1, pi2;
  BitMatrix tau0, tau1, tau2;
};

// cells x (cells * t) with a 1 at (c, c*t + s) for every sheet s.
inline BitMatrix fiber_sum_matrix(std::size_t cells, std::size_t t) {
  BitMatrix m(cells, cells * t);
  for (std::size_t c = 0; c < cells; ++c)
    for (std::size_t s = 0; s < t; ++s) m.set(c, c * t + s);
  return m;
}

inline BitVector apply_transfer(const ChainMapPair& cm, const BitVector& x) { return mul(cm.tau1, x); }
inline BitVector apply_projection(const ChainMapPair& cm, const BitVector& x) { return mul(cm.pi1, x); }

// Throws when a chain square fails to commute.
inline ChainMapPair build_chain_maps(const CssCode& base, const CssCode& lifted, const CoveringMap& cm) {
  const auto t = cm.index();
  if (lifted.n != base.n * t || lifted.hx.rows() != base.hx.rows() * t ||
      lifted.hz.rows() != base.hz.rows() * t || lifted.lift.index != t)
    throw Error("build_chain_maps: lifted code was not produced from this base and cover");
  ChainMapPair p;
  p.index = t;
  p.pi0 = fiber_sum_matrix(base.hx.rows(), t);
  p.pi1 = fiber_sum_matrix(base.n, t);
  p.pi2 = fiber_sum_matrix(base.hz.rows(), t);
  p.tau0 = p.pi0.transpose();
  p.tau1 = p.pi1.transpose();
  p.tau2 = p.pi2.transpose();
  const auto hzt = base.hz.transpose(), lhzt = lifted.hz.transpose();
  if (!(mul(base.hx, p.pi1) == mul(p.pi0, lifted.hx)))
    throw Error("build_chain_maps: H_X pi != pi H~_X");
  if (!(mul(p.pi1, lhzt) == mul(hzt, p.pi2)))
    throw Error("build_chain_maps: pi H~_Z^T != H_Z^T pi");
  if (!(mul(lifted.hx, p.tau1) == mul(p.tau0, base.hx)))
    throw Error("build_chain_maps: H~_X tau != tau H_X");
  if (!(mul(lhzt, p.tau2) == mul(p.tau1, hzt)))
    throw Error("build_chain_maps: H~_Z^T tau != tau H_Z^T");
  return p;
}

// pi tau = t I over F2.
inline bool composition_is_t_identity(const ChainMapPair& p) {
  const auto prod = mul(p.pi1, p.tau1);
  return p.index % 2 ? prod == BitMatrix::identity(prod.rows()) : prod.is_zero();
}

struct TransferReport {
  Side side = Side::X;
  std::size_t index = 1;
  bool applicable = false;  // odd index
  std::string note;
  bool n_scaled = false;    // n~ = t n
  bool k_monotone = false;  // k~ >= k
  bool k_equal = false;
  std::optional<std::size_t> base_distance;
  std::optional<std::size_t> upper_bound;  // t d
  std::size_t witness_weight = 0;
  bool witness_is_logical = false;
  BitVector witness;
  bool injective_on_homology = false;
  // With k~ = k: no verified lifted logical lighter than d.
  std::optional<bool> lower_bound_holds;
  std::optional<std::size_t> lightest_lifted;

  bool ok() const {
    if (!applicable) return n_scaled;
    return n_scaled && k_monotone && (!base_distance || witness_is_logical) && injective_on_homology &&
           lower_bound_holds.value_or(true);
  }
};

// base_dist must be exact. lifted_dist, when given, supplies the lifted
// logicals ("randomized findings") checked against the lower bound.
inline TransferReport verify_parameter_bounds(const CssCode& base, const CssCode& lifted,
                                              const CoveringMap& cm, const DistanceReport& base_dist,
                                              const DistanceReport* lifted_dist = nullptr) {
  TransferReport r;
  r.side = base_dist.side;
  r.index = cm.index();
  const auto t = r.index;
  r.n_scaled = lifted.n == t * base.n;
  r.applicable = t % 2 == 1;
  if (!r.applicable) {
    r.note = "theory not applicable (even index)";
    return r;
  }
  if (base_dist.method != DistanceMethod::Exact) throw Error("verify_parameter_bounds: base distance must be exact");
  const auto chain = build_chain_maps(base, lifted, cm);
  r.k_monotone = lifted.k >= base.k;
  r.k_equal = lifted.k == base.k;

  // tau on the kernel: tau(x) trivial in the lift only if x is trivial.
  r.injective_on_homology = true;
  const auto side = base_dist.side;
  const Echelon lifted_stab(stabilizer_matrix(lifted, side));
  const Echelon base_stab(stabilizer_matrix(base, side));
  const auto base_kernel = kernel_basis(logical_kernel_matrix(base, side));
  for (const auto& x : base_kernel.row_data())
    if (lifted_stab.contains(apply_transfer(chain, x)) && !base_stab.contains(x)) r.injective_on_homology = false;

  if (base_dist.infinite()) {
    r.note = "base code has no logical operators";
    r.witness_is_logical = true;
    return r;
  }
  r.base_distance = base_dist.value;
  r.upper_bound = t * *base_dist.value;
  r.witness = apply_transfer(chain, base_dist.witness);
  r.witness_weight = r.witness.weight();
  r.witness_is_logical =
      r.witness_weight == *r.upper_bound && is_nontrivial_logical(lifted, side, r.witness);
  if (r.k_equal && lifted_dist) {
    if (lifted_dist->side != side) throw Error("verify_parameter_bounds: lifted report is for the other side");
    bool holds = true;
    std::optional<std::size_t> lightest;
    auto check = [&](const BitVector& v) {
      if (!is_nontrivial_logical(lifted, side, v)) return;
      const auto w = v.weight();
      if (!lightest || w < *lightest) lightest = w;
      if (w < *base_dist.value) holds = false;
    };
    if (!lifted_dist->infinite()) {
      check(lifted_dist->witness);
      for (const auto& v : lifted_dist->witnesses) check(v);
    }
    r.lower_bound_holds = holds;
    r.lightest_lifted = lightest;
  }
  return r;
}

// gamma(x) + x lies in the stabilizer space for every deck element gamma.
inline bool verify_gamma_invariance(const CssCode& lifted, const CoveringMap& cm, Side side,
                                    const BitVector& logical) {
  if (!is_nontrivial_logical(lifted, side, logical))
    throw Error("verify_gamma_invariance: input is not a nontrivial logical operator");
  if (!cm.deck_group) throw Error("verify_gamma_invariance: cover has no deck group");
  const Echelon stab(stabilizer_matrix(lifted, side));
  for (std::size_t g = 0; g < cm.deck_group->order(); ++g) {
    const auto img = deck_action(cm, g).faces;
    BitVector moved(logical.size());
    for (auto q : logical.support()) moved.set(img[q]);
    if (!stab.contains(moved ^ logical)) return false;
  }
  return true;
}

}  // namespace qtanner
