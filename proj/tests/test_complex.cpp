#include <gtest/gtest.h>

#include <map>
#include <set>
#include <sstream>

#include "qtanner/complex.hpp"
#include "qtanner/families.hpp"

using namespace qtanner;

namespace {

// One square on vertices 0..3 with alternating sides.
SquareComplex single_square() {
  SquareComplex s(4);
  for (std::size_t i = 0; i < 4; ++i) s.add_edge(i, (i + 1) % 4);
  s.add_face({make_dart(0, false), make_dart(1, false), make_dart(2, false), make_dart(3, false)});
  s.set_bipartition({Side::X, Side::Z, Side::X, Side::Z});
  return s;
}

std::vector<SquareComplex> family_complexes() {
  std::vector<SquareComplex> out;
  for (std::size_t ell : {3u, 4u, 10u, 14u}) out.push_back(build_L(ell, Poly::one(ell)).complex);
  for (std::size_t ell : {2u, 3u, 4u, 6u}) out.push_back(build_BS(ell, Poly::one(ell)).complex);
  return out;
}

}  // namespace

TEST(Darts, Encoding) {
  EXPECT_EQ(make_dart(3, true), 7u);
  EXPECT_EQ(dart_edge(7), 3u);
  EXPECT_TRUE(dart_reversed(7));
  EXPECT_EQ(dart_inverse(7), 6u);
}

TEST(Words, FreeReduction) {
  EXPECT_EQ(word_concat({1, 2}, {-2, -1}), GroupWord{});
  EXPECT_EQ(word_concat({1, 2}, {2}), (GroupWord{1, 2, 2}));
  EXPECT_EQ(word_inverse({1, -2}), (GroupWord{2, -1}));
  EXPECT_EQ(word_power(2, -3), (GroupWord{-2, -2, -2}));
}

TEST(SquareComplex, SingleSquare) {
  const auto s = single_square();
  EXPECT_TRUE(s.valid());
  for (std::size_t v = 0; v < 4; ++v) {
    EXPECT_EQ(s.degree(v), 2u);
    const auto hood = s.face_neighborhood(v);
    ASSERT_EQ(hood.size(), 1u);
    EXPECT_EQ(s.corner_vertex(hood[0]), v);
  }
  const auto [gx, gz] = diagonal_graphs(s);
  ASSERT_EQ(gx.edges.size(), 1u);
  EXPECT_EQ(gx.edges[0], (std::pair<std::size_t, std::size_t>{0, 2}));
  EXPECT_EQ(gz.edges[0], (std::pair<std::size_t, std::size_t>{1, 3}));
}

TEST(SquareComplex, DetectsBrokenBoundary) {
  SquareComplex s(4);
  for (std::size_t i = 0; i < 4; ++i) s.add_edge(i, (i + 1) % 4);
  s.add_face({make_dart(0, false), make_dart(2, false), make_dart(1, false), make_dart(3, false)});
  EXPECT_FALSE(s.valid());
  ASSERT_EQ(s.violations().size(), 1u);
  EXPECT_EQ(s.violations()[0].rfind("face 0:", 0), 0u);
}

TEST(SquareComplex, DetectsBadBipartition) {
  auto s = single_square();
  s.set_bipartition({Side::X, Side::X, Side::Z, Side::Z});
  EXPECT_FALSE(s.valid());
  EXPECT_THROW(diagonal_graphs(s), Error);
}

TEST(SquareComplex, DetectsSelfLoop) {
  auto s = single_square();
  s.add_edge(2, 2);
  EXPECT_FALSE(s.valid());
}

TEST(CanonicalFace, ReadingsAgree) {
  const FacePath p{make_dart(0, false), make_dart(1, false), make_dart(2, false), make_dart(3, false)};
  const auto c = canonical_face(p);
  for (std::size_t r = 0; r < 4; ++r) {
    FacePath rot, rev;
    for (std::size_t i = 0; i < 4; ++i) {
      rot[i] = p[(r + i) % 4];
      rev[i] = dart_inverse(p[(r + 3 - i) % 4]);
    }
    EXPECT_EQ(canonical_face(rot), c);
    EXPECT_EQ(canonical_face(rev), c);
  }
}

TEST(Families, LThreeShape) {
  const auto s = build_L(3, Poly::one(3)).complex;
  EXPECT_EQ(s.vertex_count(), 4u);
  EXPECT_EQ(s.edge_count(), 10u);
  EXPECT_EQ(s.face_count(), 6u);
  EXPECT_TRUE(s.valid());
  const auto [gx, gz] = diagonal_graphs(s);
  EXPECT_EQ(gx.vertices.size(), 2u);
  EXPECT_EQ(gx.edges.size(), 6u);
  for (const auto& [a, b] : gx.edges) EXPECT_NE(a, b);
  EXPECT_EQ(gz.edges.size(), 6u);
}

TEST(Families, BSThreeShape) {
  const auto s = build_BS(3, Poly::one(3)).complex;
  EXPECT_EQ(s.vertex_count(), 16u);
  EXPECT_EQ(s.edge_count(), 40u);
  EXPECT_EQ(s.face_count(), 24u);
  EXPECT_TRUE(s.valid());
  const auto [gx, gz] = diagonal_graphs(s);
  std::multiset<std::size_t> degrees;
  for (auto v : gx.vertices) degrees.insert(gx.degree(v));
  EXPECT_EQ(degrees.count(12), 2u);
  EXPECT_EQ(degrees.count(4), 6u);
  EXPECT_EQ(degrees.size(), 8u);
}

TEST(Families, NeighborhoodInvariants) {
  for (const auto& s : family_complexes()) {
    ASSERT_TRUE(s.valid());
    std::size_t total = 0;
    std::set<std::pair<std::size_t, std::size_t>> seen;
    const auto [gx, gz] = diagonal_graphs(s);
    for (std::size_t v = 0; v < s.vertex_count(); ++v) {
      const auto hood = s.face_neighborhood(v);
      total += hood.size();
      for (const auto& c : hood) {
        EXPECT_EQ(s.corner_vertex(c), v);
        EXPECT_TRUE(seen.insert({c.face, c.position}).second);
      }
      // Every corner of v is met by one dart leaving v of the face.
      EXPECT_EQ(hood.size(), (s.side(v) == Side::X ? gx : gz).degree(v));
    }
    EXPECT_EQ(total, 4 * s.face_count());
  }
}

TEST(Families, BoundaryDegreeCounts) {
  // Edge-face incidence: each face has 4 edges; each vertex degree sums to 2E.
  for (const auto& s : family_complexes()) {
    std::size_t deg = 0;
    for (std::size_t v = 0; v < s.vertex_count(); ++v) deg += s.degree(v);
    EXPECT_EQ(deg, 2 * s.edge_count());
    std::map<std::size_t, std::size_t> edge_faces;
    for (const auto& p : s.faces())
      for (auto d : p) ++edge_faces[dart_edge(d)];
    std::size_t sum = 0;
    for (const auto& [e, c] : edge_faces) sum += c;
    EXPECT_EQ(sum, 4 * s.face_count());
  }
}

TEST(ComplexFile, RoundTrip) {
  for (const auto& s : family_complexes()) {
    std::stringstream ss;
    write_complex(ss, s);
    auto back = read_complex(ss);
    EXPECT_EQ(back.vertex_count(), s.vertex_count());
    EXPECT_EQ(back.edges(), s.edges());
    EXPECT_EQ(back.faces(), s.faces());
    EXPECT_EQ(back.bipartition(), s.bipartition());
    std::stringstream again;
    write_complex(again, back);
    std::stringstream first;
    write_complex(first, s);
    EXPECT_EQ(first.str(), again.str());
  }
}

TEST(ComplexFile, RejectsGarbage) {
  std::stringstream ss("4 1 1\n1 2\n1 2 3 4\n");
  EXPECT_THROW(read_complex(ss), Error);
}
