#pragma once

// Tanner-code and CSS-code assembly on square complexes and their covers.

#include <algorithm>
#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "complex.hpp"
#include "covering.hpp"
#include "families.hpp"
#include "gf2.hpp"

namespace qtanner {

struct LiftDescriptor {
  std::size_t index = 1;
  std::string deck_group = "1";
  std::size_t hom_a = 0, hom_b = 0;
  std::size_t kernel_id = 0;
};

struct CssCode {
  std::size_t n = 0;
  BitMatrix hx, hz;
  std::size_t k = 0;
  std::size_t rank_x = 0, rank_z = 0;
  std::optional<FamilySpec> family;
  LiftDescriptor lift;
};

class OrthogonalityError : public Error {
 public:
  OrthogonalityError(std::size_t x_row, std::size_t z_row, std::size_t overlap)
      : Error("X check " + std::to_string(x_row) + " and Z check " + std::to_string(z_row) +
              " overlap on " + std::to_string(overlap) + " qubits (odd)"),
        x_row(x_row), z_row(z_row), overlap(overlap) {}
  std::size_t x_row, z_row, overlap;
};

// First pair of anticommuting checks, if any.
inline std::optional<std::pair<std::size_t, std::size_t>> find_anticommuting(const BitMatrix& hx,
                                                                             const BitMatrix& hz) {
  for (std::size_t i = 0; i < hx.rows(); ++i)
    for (std::size_t j = 0; j < hz.rows(); ++j)
      if (hx.row(i).dot(hz.row(j))) return std::make_pair(i, j);
  return std::nullopt;
}

// Throws OrthogonalityError when H_X H_Z^T != 0.
inline CssCode make_css(BitMatrix hx, BitMatrix hz) {
  if (hx.cols() != hz.cols()) throw Error("H_X and H_Z have different lengths");
  if (auto bad = find_anticommuting(hx, hz))
    throw OrthogonalityError(bad->first, bad->second, hx.row(bad->first).overlap(hz.row(bad->second)));
  CssCode c;
  c.n = hx.cols();
  c.rank_x = rank(hx);
  c.rank_z = rank(hz);
  c.k = c.n - c.rank_x - c.rank_z;
  c.hx = std::move(hx);
  c.hz = std::move(hz);
  return c;
}

// Local rows of every vertex on `side`, embedded into F2^F; rows ordered by
// (vertex, local row).
inline BitMatrix tanner_checks(const SquareComplex& s, const LocalCodeAssignment& lca, Side side) {
  BitMatrix h(0, s.face_count());
  for (std::size_t v = 0; v < s.vertex_count(); ++v) {
    if (s.side(v) != side) continue;
    const auto& lc = lca.vertices[v];
    std::vector<std::size_t> face_at(lc.corners.size());
    for (std::size_t k = 0; k < lc.corners.size(); ++k) face_at[lc.coord[k]] = lc.corners[k].face;
    for (std::size_t r = 0; r < lc.checks.rows(); ++r) {
      BitVector row(s.face_count());
      for (auto c : lc.checks.row(r).support()) row.flip(face_at[c]);
      h.push_row(std::move(row));
    }
  }
  return h;
}

inline CssCode assemble(const SquareComplex& s, const LocalCodeAssignment& lca) {
  if (!s.is_bipartite()) throw Error("assemble: complex is not bipartite");
  if (auto v = s.violations(); !v.empty()) throw Error("assemble: invalid complex: " + v[0]);
  if (auto v = local_code_violations(s, lca); !v.empty()) throw Error("assemble: " + v[0]);
  return make_css(tanner_checks(s, lca, Side::X), tanner_checks(s, lca, Side::Z));
}

inline CssCode assemble(const FamilyBuild& fb) {
  auto c = assemble(fb.complex, fb.local);
  c.family = fb.spec;
  return c;
}

// Sheet reached at each position of every base face, started from sheet s:
// prefix[f][c] applied to s.
inline std::vector<std::array<Permutation, 4>> face_prefixes(const SquareComplex& base,
                                                             const VoltageAssignment& va) {
  std::vector<std::array<Permutation, 4>> out(base.face_count());
  for (std::size_t f = 0; f < base.face_count(); ++f) {
    out[f][0] = Permutation(va.index);
    for (std::size_t c = 1; c < 4; ++c) out[f][c] = va[base.face(f)[c - 1]].after(out[f][c - 1]);
  }
  return out;
}

// Local code of lifted vertex (v, s) is that of v, carried through the
// corner bijection induced by the covering.
inline LocalCodeAssignment lift_local_codes(const CoveringMap& cm, const LocalCodeAssignment& lca) {
  const auto t = cm.index();
  const auto prefix = face_prefixes(cm.base, cm.voltage);
  LocalCodeAssignment out;
  out.vertices.resize(cm.total.vertex_count());
  for (std::size_t v = 0; v < cm.base.vertex_count(); ++v) {
    const auto& lc = lca.vertices[v];
    for (std::size_t s = 0; s < t; ++s) {
      std::vector<std::pair<Corner, std::size_t>> entries;
      for (std::size_t k = 0; k < lc.corners.size(); ++k) {
        const auto [f, c] = lc.corners[k];
        const auto start = prefix[f][c].inverse()(s);
        entries.push_back({{f * t + start, c}, lc.coord[k]});
      }
      std::sort(entries.begin(), entries.end());
      auto& dst = out.vertices[v * t + s];
      for (const auto& [corner, coord] : entries) {
        dst.corners.push_back(corner);
        dst.coord.push_back(coord);
      }
      dst.checks = lc.checks;
    }
  }
  return out;
}

// Checks ordered by (base vertex, local row, sheet); qubits by (face, sheet).
inline CssCode lift_code(const CssCode& base, const CoveringMap& cm, const LocalCodeAssignment& lca) {
  if (base.n != cm.base.face_count()) throw Error("lift_code: base code does not match the cover");
  const auto t = cm.index();
  const auto lifted = lift_local_codes(cm, lca);
  auto side_checks = [&](Side side) {
    BitMatrix h(0, cm.total.face_count());
    for (std::size_t v = 0; v < cm.base.vertex_count(); ++v) {
      if (cm.base.side(v) != side) continue;
      for (std::size_t r = 0; r < lca.vertices[v].checks.rows(); ++r)
        for (std::size_t s = 0; s < t; ++s) {
          const auto& lc = lifted.vertices[v * t + s];
          std::vector<std::size_t> face_at(lc.corners.size());
          for (std::size_t k = 0; k < lc.corners.size(); ++k) face_at[lc.coord[k]] = lc.corners[k].face;
          BitVector row(cm.total.face_count());
          for (auto c : lc.checks.row(r).support()) row.flip(face_at[c]);
          h.push_row(std::move(row));
        }
    }
    return h;
  };
  auto c = make_css(side_checks(Side::X), side_checks(Side::Z));
  c.family = base.family;
  c.lift.index = t;
  if (cm.deck_group) c.lift.deck_group = cm.deck_group->name();
  return c;
}

struct WeightProfile {
  std::map<std::size_t, std::size_t> x_rows, x_cols, z_rows, z_cols;
  std::size_t w_x = 0, q_x = 0, w_z = 0, q_z = 0;
  std::size_t max_weight() const { return std::max({w_x, q_x, w_z, q_z}); }
};

inline WeightProfile weight_profile(const CssCode& c) {
  WeightProfile p;
  auto hist = [](const BitMatrix& m, std::map<std::size_t, std::size_t>& rows,
                 std::map<std::size_t, std::size_t>& cols, std::size_t& w, std::size_t& q) {
    std::vector<std::size_t> colw(m.cols(), 0);
    for (std::size_t i = 0; i < m.rows(); ++i) {
      const auto wt = m.row(i).weight();
      ++rows[wt];
      w = std::max(w, wt);
      for (auto j : m.row(i).support()) ++colw[j];
    }
    for (auto x : colw) {
      ++cols[x];
      q = std::max(q, x);
    }
  };
  hist(c.hx, p.x_rows, p.x_cols, p.w_x, p.q_x);
  hist(c.hz, p.z_rows, p.z_cols, p.w_z, p.q_z);
  return p;
}

// Each histogram count of `lifted` is t times that of `base`.
inline bool profile_scaled(const WeightProfile& base, const WeightProfile& lifted, std::size_t t) {
  auto scaled = [t](const std::map<std::size_t, std::size_t>& a, const std::map<std::size_t, std::size_t>& b) {
    if (a.size() != b.size()) return false;
    for (const auto& [w, n] : a) {
      auto it = b.find(w);
      if (it == b.end() || it->second != n * t) return false;
    }
    return true;
  };
  return scaled(base.x_rows, lifted.x_rows) && scaled(base.x_cols, lifted.x_cols) &&
         scaled(base.z_rows, lifted.z_rows) && scaled(base.z_cols, lifted.z_cols);
}

// Row spaces are preserved by the qubit permutation `image` (qubit q moves
// to image[q]). A permutation keeps the rank, so containment suffices.
inline bool preserves_code(const CssCode& c, const std::vector<std::size_t>& image) {
  if (image.size() != c.n) throw Error("qubit permutation has the wrong size");
  auto stable = [&](const BitMatrix& h) {
    const Echelon span(h);
    for (std::size_t i = 0; i < h.rows(); ++i) {
      BitVector moved(h.cols());
      for (auto q : h.row(i).support()) moved.set(image[q]);
      if (!span.contains(moved)) return false;
    }
    return true;
  };
  return stable(c.hx) && stable(c.hz);
}

inline bool verify_deck_automorphism(const CssCode& c, const CoveringMap& cm, std::size_t gamma) {
  if (c.n != cm.total.face_count() || c.lift.index != cm.index())
    throw Error("verify_deck_automorphism: code was not lifted along this cover");
  return preserves_code(c, deck_action(cm, gamma).faces);
}

}  // namespace qtanner
