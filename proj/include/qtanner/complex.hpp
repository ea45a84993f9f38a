#pragma once

// Square complexes: a multigraph plus faces given as closed 4-paths of
// directed edges.

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "gf2.hpp"

namespace qtanner {

// Directed edge ("dart"): 2*edge + reversed.
using Dart = std::size_t;
inline Dart make_dart(std::size_t edge, bool reversed) { return 2 * edge + (reversed ? 1 : 0); }
inline std::size_t dart_edge(Dart d) { return d / 2; }
inline bool dart_reversed(Dart d) { return d & 1U; }
inline Dart dart_inverse(Dart d) { return d ^ 1U; }

using FacePath = std::array<Dart, 4>;

enum class Side : std::uint8_t { X = 0, Z = 1 };
inline const char* side_name(Side s) { return s == Side::X ? "X" : "Z"; }

// One occurrence of a vertex on a face: the tail of the dart at `position`.
struct Corner {
  std::size_t face;
  std::size_t position;
  friend bool operator==(const Corner&, const Corner&) = default;
  friend auto operator<=>(const Corner&, const Corner&) = default;
};

// Free-group word over {a, b}: letters +1 = a, -1 = a^-1, +2 = b, -2 = b^-1.
using GroupWord = std::vector<int>;

inline GroupWord word_inverse(const GroupWord& w) {
  GroupWord out(w.rbegin(), w.rend());
  for (auto& x : out) x = -x;
  return out;
}

inline GroupWord word_concat(GroupWord a, const GroupWord& b) {
  for (auto x : b) {
    if (!a.empty() && a.back() == -x)
      a.pop_back();
    else
      a.push_back(x);
  }
  return a;
}

inline GroupWord word_power(int letter, long n) {
  GroupWord out;
  for (long i = 0; i < (n < 0 ? -n : n); ++i) out.push_back(n < 0 ? -letter : letter);
  return out;
}

// The 8 ways to read a closed 4-path; the one with the lowest first dart,
// then lowest second dart, is canonical.
inline FacePath canonical_face(const FacePath& p) {
  std::array<FacePath, 8> cands;
  for (std::size_t r = 0; r < 4; ++r) {
    for (std::size_t i = 0; i < 4; ++i) cands[r][i] = p[(r + i) % 4];
    // reversed traversal: inverse darts in reverse order
    for (std::size_t i = 0; i < 4; ++i) cands[4 + r][i] = dart_inverse(p[(r + 4 - i - 1) % 4]);
  }
  return *std::min_element(cands.begin(), cands.end());
}

class SquareComplex {
 public:
  SquareComplex() = default;
  explicit SquareComplex(std::size_t vertex_count) : vertex_count_(vertex_count) {}

  std::size_t add_edge(std::size_t u, std::size_t v) {
    edges_.emplace_back(u, v);
    return edges_.size() - 1;
  }
  // Stored exactly as given; see add_canonical_face.
  std::size_t add_face(const FacePath& path) {
    faces_.push_back(path);
    return faces_.size() - 1;
  }
  std::size_t add_canonical_face(const FacePath& path) { return add_face(canonical_face(path)); }

  void set_bipartition(std::vector<Side> sides) { bipartition_ = std::move(sides); }
  void clear_bipartition() { bipartition_.reset(); }

  void set_edge_words(std::vector<GroupWord> words, std::size_t basepoint) {
    edge_words_ = std::move(words);
    basepoint_ = basepoint;
  }

  std::size_t vertex_count() const { return vertex_count_; }
  std::size_t edge_count() const { return edges_.size(); }
  std::size_t face_count() const { return faces_.size(); }
  const std::pair<std::size_t, std::size_t>& edge(std::size_t e) const { return edges_[e]; }
  const std::vector<std::pair<std::size_t, std::size_t>>& edges() const { return edges_; }
  const FacePath& face(std::size_t f) const { return faces_[f]; }
  const std::vector<FacePath>& faces() const { return faces_; }
  const std::optional<std::vector<Side>>& bipartition() const { return bipartition_; }
  bool is_bipartite() const { return bipartition_.has_value(); }
  Side side(std::size_t v) const {
    if (!bipartition_) throw Error("complex has no bipartition");
    return (*bipartition_)[v];
  }
  bool has_edge_words() const { return !edge_words_.empty(); }
  const std::vector<GroupWord>& edge_words() const { return edge_words_; }
  std::size_t basepoint() const { return basepoint_; }

  std::size_t tail(Dart d) const {
    const auto& [u, v] = edges_[dart_edge(d)];
    return dart_reversed(d) ? v : u;
  }
  std::size_t head(Dart d) const { return tail(dart_inverse(d)); }
  std::size_t corner_vertex(const Corner& c) const { return tail(faces_[c.face][c.position]); }

  std::size_t degree(std::size_t v) const {
    std::size_t d = 0;
    for (const auto& [a, b] : edges_) d += (a == v) + (b == v);
    return d;
  }

  // Human-readable list of every structural problem; empty means valid.
  std::vector<std::string> violations() const {
    std::vector<std::string> out;
    if (bipartition_ && bipartition_->size() != vertex_count_)
      out.push_back("bipartition has " + std::to_string(bipartition_->size()) + " labels for " +
                    std::to_string(vertex_count_) + " vertices");
    for (std::size_t e = 0; e < edges_.size(); ++e) {
      const auto& [u, v] = edges_[e];
      if (u >= vertex_count_ || v >= vertex_count_) {
        out.push_back("edge " + std::to_string(e) + ": endpoint out of range");
        continue;
      }
      if (u == v) out.push_back("edge " + std::to_string(e) + ": self-loop");
      if (bipartition_ && bipartition_->size() == vertex_count_ &&
          (*bipartition_)[u] == (*bipartition_)[v])
        out.push_back("edge " + std::to_string(e) + ": joins two vertices of the same side");
    }
    for (std::size_t f = 0; f < faces_.size(); ++f) {
      const auto& p = faces_[f];
      bool ids_ok = true;
      for (auto d : p)
        if (dart_edge(d) >= edges_.size()) ids_ok = false;
      if (!ids_ok) {
        out.push_back("face " + std::to_string(f) + ": invalid edge id");
        continue;
      }
      for (std::size_t i = 0; i < 4; ++i)
        if (head(p[i]) != tail(p[(i + 1) % 4])) {
          out.push_back("face " + std::to_string(f) + ": path breaks after position " +
                        std::to_string(i));
          break;
        }
    }
    return out;
  }
  bool valid() const { return violations().empty(); }

  // Corner occurrences of v, ordered by (face, position).
  std::vector<Corner> face_neighborhood(std::size_t v) const {
    if (v >= vertex_count_) throw Error("face_neighborhood: bad vertex id " + std::to_string(v));
    std::vector<Corner> out;
    for (std::size_t f = 0; f < faces_.size(); ++f)
      for (std::size_t i = 0; i < 4; ++i)
        if (tail(faces_[f][i]) == v) out.push_back({f, i});
    return out;
  }

  // All neighborhoods at once, indexed by vertex.
  std::vector<std::vector<Corner>> all_face_neighborhoods() const {
    std::vector<std::vector<Corner>> out(vertex_count_);
    for (std::size_t f = 0; f < faces_.size(); ++f)
      for (std::size_t i = 0; i < 4; ++i) out[tail(faces_[f][i])].push_back({f, i});
    return out;
  }

  std::vector<std::size_t> vertices_of_side(Side s) const {
    std::vector<std::size_t> out;
    for (std::size_t v = 0; v < vertex_count_; ++v)
      if (side(v) == s) out.push_back(v);
    return out;
  }

  friend bool operator==(const SquareComplex& a, const SquareComplex& b) {
    return a.vertex_count_ == b.vertex_count_ && a.edges_ == b.edges_ && a.faces_ == b.faces_ &&
           a.bipartition_ == b.bipartition_;
  }

 private:
  std::size_t vertex_count_ = 0;
  std::vector<std::pair<std::size_t, std::size_t>> edges_;
  std::vector<FacePath> faces_;
  std::optional<std::vector<Side>> bipartition_;
  std::vector<GroupWord> edge_words_;
  std::size_t basepoint_ = 0;
};

struct DiagonalGraph {
  Side side;
  std::vector<std::size_t> vertices;
  // One edge per face, joining its two corners on `side`.
  std::vector<std::pair<std::size_t, std::size_t>> edges;

  std::size_t degree(std::size_t v) const {
    std::size_t d = 0;
    for (const auto& [a, b] : edges) d += (a == v) + (b == v);
    return d;
  }
};

inline std::pair<DiagonalGraph, DiagonalGraph> diagonal_graphs(const SquareComplex& s) {
  if (!s.is_bipartite()) throw Error("diagonal_graphs: complex is not bipartite");
  if (auto v = s.violations(); !v.empty()) throw Error("diagonal_graphs: invalid complex: " + v[0]);
  DiagonalGraph gx{Side::X, s.vertices_of_side(Side::X), {}};
  DiagonalGraph gz{Side::Z, s.vertices_of_side(Side::Z), {}};
  for (const auto& p : s.faces()) {
    const auto c0 = s.tail(p[0]), c1 = s.tail(p[1]), c2 = s.tail(p[2]), c3 = s.tail(p[3]);
    if (s.side(c0) == Side::X) {
      gx.edges.emplace_back(c0, c2);
      gz.edges.emplace_back(c1, c3);
    } else {
      gx.edges.emplace_back(c1, c3);
      gz.edges.emplace_back(c0, c2);
    }
  }
  return {gx, gz};
}

// Text form: "V E F", E lines "u v", F lines of four signed 1-based edge ids
// (negative = traversed backwards), then optionally "bipartition s0 s1 ...".
inline void write_complex(std::ostream& os, const SquareComplex& s) {
  os << s.vertex_count() << ' ' << s.edge_count() << ' ' << s.face_count() << '\n';
  for (const auto& [u, v] : s.edges()) os << u << ' ' << v << '\n';
  for (const auto& p : s.faces()) {
    for (std::size_t i = 0; i < 4; ++i) {
      const long id = static_cast<long>(dart_edge(p[i])) + 1;
      os << (i ? " " : "") << (dart_reversed(p[i]) ? -id : id);
    }
    os << '\n';
  }
  if (s.bipartition()) {
    os << "bipartition";
    for (auto side : *s.bipartition()) os << ' ' << static_cast<int>(side);
    os << '\n';
  }
}

inline SquareComplex read_complex(std::istream& is) {
  std::size_t nv = 0, ne = 0, nf = 0;
  if (!(is >> nv >> ne >> nf)) throw Error("complex: bad header");
  SquareComplex s(nv);
  for (std::size_t e = 0; e < ne; ++e) {
    std::size_t u = 0, v = 0;
    if (!(is >> u >> v)) throw Error("complex: truncated edge list");
    s.add_edge(u, v);
  }
  for (std::size_t f = 0; f < nf; ++f) {
    FacePath p{};
    for (auto& d : p) {
      long id = 0;
      if (!(is >> id) || id == 0) throw Error("complex: bad face entry");
      const auto e = static_cast<std::size_t>((id < 0 ? -id : id) - 1);
      if (e >= ne) throw Error("complex: face references unknown edge");
      d = make_dart(e, id < 0);
    }
    s.add_face(p);
  }
  std::string word;
  if (is >> word) {
    if (word != "bipartition") throw Error("complex: unexpected trailing token '" + word + "'");
    std::vector<Side> sides(nv);
    for (auto& side : sides) {
      int x = 0;
      if (!(is >> x) || (x != 0 && x != 1)) throw Error("complex: bad bipartition label");
      side = x ? Side::Z : Side::X;
    }
    s.set_bipartition(std::move(sides));
  }
  return s;
}

}  // namespace qtanner
