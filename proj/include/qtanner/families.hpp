#pragma once

// The two one-relator families: square subdivisions of the presentation
// complexes of <a,b | a^l b^-l> and <a,b | a b^l a^-1 b^-l>, with local
// codes built from a cyclic or double-circulant code tensored with rep(2).

#include <algorithm>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "complex.hpp"
#include "covering.hpp"
#include "gf2.hpp"
#include "poly.hpp"

namespace qtanner {

// Local code of one vertex: corner k of its neighborhood sits at local
// coordinate coord[k]; checks act on local coordinates.
struct LocalCode {
  std::vector<Corner> corners;
  std::vector<std::size_t> coord;
  BitMatrix checks;
};

struct LocalCodeAssignment {
  std::vector<LocalCode> vertices;
};

inline std::vector<std::string> local_code_violations(const SquareComplex& s,
                                                      const LocalCodeAssignment& lca) {
  std::vector<std::string> out;
  if (lca.vertices.size() != s.vertex_count()) {
    out.push_back("local code count differs from vertex count");
    return out;
  }
  const auto hoods = s.all_face_neighborhoods();
  for (std::size_t v = 0; v < s.vertex_count(); ++v) {
    const auto& lc = lca.vertices[v];
    const auto tag = "vertex " + std::to_string(v) + ": ";
    auto sorted = lc.corners;
    std::sort(sorted.begin(), sorted.end());
    if (sorted != hoods[v]) out.push_back(tag + "corners differ from the face neighborhood");
    if (lc.coord.size() != lc.corners.size()) {
      out.push_back(tag + "corner and coordinate lists differ in length");
      continue;
    }
    if (lc.checks.cols() != lc.corners.size())
      out.push_back(tag + "check length differs from neighborhood size");
    std::vector<char> hit(lc.corners.size(), 0);
    for (auto c : lc.coord) {
      if (c >= hit.size() || hit[c]) {
        out.push_back(tag + "corner map is not a bijection");
        break;
      }
      hit[c] = 1;
    }
  }
  return out;
}

enum class Family { L, BS };
inline const char* family_name(Family f) { return f == Family::L ? "L" : "BS"; }
inline Family parse_family(const std::string& s) {
  if (s == "L") return Family::L;
  if (s == "BS") return Family::BS;
  throw Error("unknown family '" + s + "' (expected L or BS)");
}

struct FamilySpec {
  Family family = Family::L;
  std::size_t ell = 0;
  Poly poly;
  // L only: use a minimum-weight basis of C(g) and of its dual.
  bool reduced_generators = false;
};

struct FamilyBuild {
  FamilySpec spec;
  SquareComplex complex;
  LocalCodeAssignment local;
  PresentationData presentation;
};

namespace detail {
// Fills a local code from face id -> coordinate for a base complex where
// every vertex meets each of its faces once.
inline LocalCode local_code_from_faces(const SquareComplex& s, std::size_t v,
                                       const std::vector<std::size_t>& coord_of_face,
                                       BitMatrix checks) {
  LocalCode lc;
  lc.corners = s.face_neighborhood(v);
  for (const auto& c : lc.corners) lc.coord.push_back(coord_of_face[c.face]);
  lc.checks = std::move(checks);
  return lc;
}

inline BitMatrix rep2_kron(const BitMatrix& g) { return kron(BitMatrix::parse({"11"}), g); }
}  // namespace detail

// Vertices x0, x1 (side X), z0, z1 (side Z); faces (i, j) in [2] x [l] with
// id i*l + j; local coordinate (a, b) in [2] x [l] is a*l + b.
inline FamilyBuild build_L(std::size_t ell, const Poly& g, bool reduced_generators = false) {
  if (ell < 2) throw Error("build_L: l must be at least 2");
  if (g.ell() != ell) throw Error("build_L: polynomial ring length differs from l");
  const auto h = check_polynomial(g);
  if (!h)
    throw Error(g.to_string() + " does not divide X^" + std::to_string(ell) + "-1");
  enum : std::size_t { x0 = 0, x1 = 1, z0 = 2, z1 = 3 };
  SquareComplex s(4);
  const long l = static_cast<long>(ell);
  std::vector<GroupWord> words;
  s.add_edge(x0, z1), words.push_back({1});
  s.add_edge(z1, x0), words.push_back({});
  s.add_edge(z0, x1), words.push_back({2});
  s.add_edge(x1, z0), words.push_back({});
  for (long k = 0; k < 2 * l; ++k) {
    if (k % 2 == 0)
      s.add_edge(x0, z0);
    else
      s.add_edge(z1, x1);
    const long m = (k + 1) / 2;  // edges 2m-1 and 2m carry a^-m b^m
    words.push_back(word_concat(word_power(1, -m), word_power(2, m)));
  }
  auto vert = [](long k) { return static_cast<std::size_t>(4 + k); };
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < ell; ++j) {
      const long k = static_cast<long>(2 * j + i);
      const std::size_t top = i == 0 ? 0 : 1, bottom = i == 0 ? 2 : 3;
      s.add_canonical_face({make_dart(top, false), make_dart(vert((k + 1) % (2 * l)), false),
                            make_dart(bottom, true), make_dart(vert(k), true)});
    }
  s.set_bipartition({Side::X, Side::X, Side::Z, Side::Z});
  s.set_edge_words(std::move(words), x0);

  BitMatrix gx = circulant(g), gz = circulant(*dual_generator(g));
  if (reduced_generators) {
    gx = reduced_generator(gx);
    gz = reduced_generator(gz);
  }
  std::vector<std::size_t> twisted(2 * ell), straight(2 * ell);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < ell; ++j) {
      twisted[i * ell + j] = i * ell + (i + j) % ell;
      straight[i * ell + j] = i * ell + j;
    }
  LocalCodeAssignment lca;
  lca.vertices.resize(4);
  lca.vertices[x0] = detail::local_code_from_faces(s, x0, twisted, detail::rep2_kron(gx));
  lca.vertices[x1] = detail::local_code_from_faces(s, x1, straight, detail::rep2_kron(gx));
  lca.vertices[z0] = detail::local_code_from_faces(s, z0, twisted, detail::rep2_kron(gz));
  lca.vertices[z1] = detail::local_code_from_faces(s, z1, straight, detail::rep2_kron(gz));
  return {{Family::L, ell, g, reduced_generators}, std::move(s), std::move(lca), presentation_L(ell)};
}

// H_X = [G(Xg) G(g); G(g) G(g)], H_Z = [G(hbar) G(hbar); G(X hbar) G(hbar)].
inline std::pair<BitMatrix, BitMatrix> build_L_blockmatrix(std::size_t ell, const Poly& g) {
  const auto h = check_polynomial(g);
  if (!h) throw Error(g.to_string() + " does not divide X^" + std::to_string(ell) + "-1");
  const auto hb = *dual_generator(g);
  const auto X = Poly::monomial(ell, 1);
  const auto G = circulant(g), Gx = circulant(X * g), H = circulant(hb), Hx = circulant(X * hb);
  return {vstack(hstack(Gx, G), hstack(G, G)), vstack(hstack(H, H), hstack(Hx, H))};
}

// The b-loop is cut into four edges through x0, z0, x1, z1; the a-edge into
// two halves through a middle vertex, giving a strip of 4l columns and two
// rows. Face (i, j, k) with column p = 4j + i and row k (0 upper, 1 lower)
// has id (i*l + j)*2 + k. X vertices: x0, x1, then the middle vertices at
// odd columns; Z vertices: z0, z1, then the middle vertices at even columns.
inline FamilyBuild build_BS(std::size_t ell, const Poly& f) {
  if (ell < 2) throw Error("build_BS: l must be at least 2");
  if (f.ell() != ell) throw Error("build_BS: polynomial ring length differs from l");
  const std::size_t cols = 4 * ell;
  const std::size_t x0 = 0, x1 = 1, z0 = 2 * ell + 2, z1 = 2 * ell + 3;
  const std::size_t point[4] = {x0, z0, x1, z1};
  auto mid = [&](std::size_t p) { return p % 2 ? 2 + (p - 1) / 2 : 2 * ell + 4 + p / 2; };
  SquareComplex s(4 * ell + 4);
  std::vector<GroupWord> words;
  for (std::size_t i = 0; i < 4; ++i) {
    s.add_edge(point[i], point[(i + 1) % 4]);
    words.push_back(i == 0 ? GroupWord{2} : GroupWord{});
  }
  const long l = static_cast<long>(ell);
  auto crossings = [](std::size_t p) { return p == 0 ? 0L : static_cast<long>((p - 1) / 4 + 1); };
  for (std::size_t p = 0; p < cols; ++p) {
    s.add_edge(mid(p), mid((p + 1) % cols));
    words.push_back(p + 1 == cols ? word_power(2, l) : GroupWord{});
  }
  for (std::size_t p = 0; p < cols; ++p) {
    s.add_edge(point[p % 4], mid(p));
    words.push_back(word_concat(word_power(2, -crossings(p)), word_power(1, -1)));
  }
  for (std::size_t p = 0; p < cols; ++p) {
    s.add_edge(mid(p), point[p % 4]);
    words.push_back(word_power(2, crossings(p)));
  }
  auto b_edge = [](std::size_t i) { return i; };
  auto h_edge = [](std::size_t p) { return 4 + p; };
  auto u_edge = [&](std::size_t p) { return 4 + cols + p % cols; };
  auto d_edge = [&](std::size_t p) { return 4 + 2 * cols + p % cols; };
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < ell; ++j)
      for (std::size_t k = 0; k < 2; ++k) {
        const auto p = 4 * j + i;
        if (k == 0)
          s.add_canonical_face({make_dart(b_edge(i), false), make_dart(u_edge(p + 1), false),
                                make_dart(h_edge(p), true), make_dart(u_edge(p), true)});
        else
          s.add_canonical_face({make_dart(h_edge(p), false), make_dart(d_edge(p + 1), false),
                                make_dart(b_edge(i), true), make_dart(d_edge(p), true)});
      }
  std::vector<Side> sides(s.vertex_count(), Side::Z);
  for (std::size_t v = 0; v < 2 * ell + 2; ++v) sides[v] = Side::X;
  s.set_bipartition(std::move(sides));
  s.set_edge_words(std::move(words), x0);

  const DoubleCirculantCode dc(f);
  const auto gx = detail::rep2_kron(dc.generator_matrix());
  const auto gz = detail::rep2_kron(double_circulant_dual(dc));
  const auto nf = s.face_count();
  std::vector<std::size_t> at_x0(nf, 0), plain(nf, 0);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < ell; ++j)
      for (std::size_t k = 0; k < 2; ++k) {
        const auto id = (i * ell + j) * 2 + k;
        plain[id] = (i % 2) * 2 * ell + k * ell + j;
        if (i == 0) at_x0[id] = k * ell + j;
        if (i == 3) at_x0[id] = 2 * ell + k * ell + (j + 1) % ell;
      }
  LocalCodeAssignment lca;
  lca.vertices.resize(s.vertex_count());
  lca.vertices[x0] = detail::local_code_from_faces(s, x0, at_x0, gx);
  lca.vertices[x1] = detail::local_code_from_faces(s, x1, plain, gx);
  lca.vertices[z0] = detail::local_code_from_faces(s, z0, plain, gz);
  lca.vertices[z1] = detail::local_code_from_faces(s, z1, plain, gz);
  for (std::size_t p = 0; p < cols; ++p) {
    auto& lc = lca.vertices[mid(p)];
    lc.corners = s.face_neighborhood(mid(p));
    for (std::size_t k = 0; k < lc.corners.size(); ++k) lc.coord.push_back(k);
    lc.checks = BitMatrix::parse({std::string(lc.corners.size(), '1')});
  }
  return {{Family::BS, ell, f, false}, std::move(s), std::move(lca), presentation_BS(ell)};
}

inline FamilyBuild build_family(const FamilySpec& spec) {
  return spec.family == Family::L ? build_L(spec.ell, spec.poly, spec.reduced_generators)
                                  : build_BS(spec.ell, spec.poly);
}

}  // namespace qtanner
