#pragma once

// Permutation voltage assignments and the covers they define.

#include <algorithm>
#include <cstddef>
#include <deque>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "complex.hpp"
#include "gf2.hpp"
#include "group.hpp"

namespace qtanner {

class Permutation {
 public:
  Permutation() = default;
  explicit Permutation(std::size_t degree) : image_(degree) {
    for (std::size_t i = 0; i < degree; ++i) image_[i] = i;
  }
  explicit Permutation(std::vector<std::size_t> image) : image_(std::move(image)) {
    std::vector<char> hit(image_.size(), 0);
    for (auto x : image_) {
      if (x >= image_.size() || hit[x]) throw Error("image list is not a permutation");
      hit[x] = 1;
    }
  }

  std::size_t degree() const { return image_.size(); }
  std::size_t operator()(std::size_t i) const { return image_[i]; }
  const std::vector<std::size_t>& image() const { return image_; }
  bool is_identity() const {
    for (std::size_t i = 0; i < image_.size(); ++i)
      if (image_[i] != i) return false;
    return true;
  }
  Permutation inverse() const {
    std::vector<std::size_t> inv(image_.size());
    for (std::size_t i = 0; i < image_.size(); ++i) inv[image_[i]] = i;
    return Permutation(std::move(inv));
  }
  // (this * other)(i) = this(other(i)): other first.
  Permutation after(const Permutation& other) const {
    std::vector<std::size_t> out(image_.size());
    for (std::size_t i = 0; i < image_.size(); ++i) out[i] = image_[other(i)];
    return Permutation(std::move(out));
  }
  friend bool operator==(const Permutation&, const Permutation&) = default;

 private:
  std::vector<std::size_t> image_;
};

// One permutation per dart; walking along dart d from sheet s reaches sheet
// perm(d)(s).
struct VoltageAssignment {
  std::size_t index = 1;
  std::vector<Permutation> perms;

  static VoltageAssignment identity(const SquareComplex& s, std::size_t t) {
    return {t, std::vector<Permutation>(2 * s.edge_count(), Permutation(t))};
  }
  // Sets both darts of edge e from the forward permutation.
  void set_edge(std::size_t e, const Permutation& forward) {
    perms[make_dart(e, false)] = forward;
    perms[make_dart(e, true)] = forward.inverse();
  }
  const Permutation& operator[](Dart d) const { return perms[d]; }
};

inline std::vector<std::string> voltage_violations(const SquareComplex& s,
                                                   const VoltageAssignment& va) {
  std::vector<std::string> out;
  if (va.perms.size() != 2 * s.edge_count()) {
    out.push_back("voltage has " + std::to_string(va.perms.size()) + " entries, expected " +
                  std::to_string(2 * s.edge_count()));
    return out;
  }
  for (const auto& p : va.perms)
    if (p.degree() != va.index) {
      out.push_back("permutation degree differs from index " + std::to_string(va.index));
      return out;
    }
  for (std::size_t e = 0; e < s.edge_count(); ++e)
    if (!(va[make_dart(e, true)] == va[make_dart(e, false)].inverse()))
      out.push_back("edge " + std::to_string(e) + ": reverse permutation is not the inverse");
  for (std::size_t f = 0; f < s.face_count(); ++f) {
    const auto& p = s.face(f);
    const auto around = va[p[3]].after(va[p[2]]).after(va[p[1]]).after(va[p[0]]);
    if (!around.is_identity()) out.push_back("face " + std::to_string(f) + ": holonomy is not trivial");
  }
  return out;
}

inline bool validate_voltage(const SquareComplex& s, const VoltageAssignment& va) {
  return voltage_violations(s, va).empty();
}

struct CoveringMap {
  SquareComplex base;
  SquareComplex total;
  VoltageAssignment voltage;
  // Sheets are labelled by group elements when the cover comes from a group.
  std::optional<GroupTable> deck_group;

  std::size_t index() const { return voltage.index; }
  // Cell (c, s) has id c * t + s in the total complex, for every dimension.
  std::size_t project(std::size_t lifted) const { return lifted / index(); }
  std::size_t sheet(std::size_t lifted) const { return lifted % index(); }
  std::size_t lifted_id(std::size_t cell, std::size_t s) const { return cell * index() + s; }
};

inline CoveringMap lift_complex(const SquareComplex& s, const VoltageAssignment& va) {
  if (auto v = voltage_violations(s, va); !v.empty()) throw Error("lift_complex: " + v[0]);
  const auto t = va.index;
  SquareComplex total(s.vertex_count() * t);
  for (std::size_t e = 0; e < s.edge_count(); ++e) {
    const auto& [u, v] = s.edge(e);
    const auto& pi = va[make_dart(e, false)];
    for (std::size_t i = 0; i < t; ++i) total.add_edge(u * t + i, v * t + pi(i));
  }
  for (std::size_t f = 0; f < s.face_count(); ++f) {
    const auto& p = s.face(f);
    for (std::size_t i = 0; i < t; ++i) {
      FacePath q{};
      std::size_t sheet = i;
      for (std::size_t k = 0; k < 4; ++k) {
        const auto d = p[k];
        const auto next = va[d](sheet);
        // A backwards dart at sheet s runs along lifted edge (e, perm(d)(s)).
        const auto lifted_edge = dart_edge(d) * t + (dart_reversed(d) ? next : sheet);
        q[k] = make_dart(lifted_edge, dart_reversed(d));
        sheet = next;
      }
      total.add_face(q);
    }
  }
  if (s.bipartition()) {
    std::vector<Side> sides;
    sides.reserve(total.vertex_count());
    for (auto side : *s.bipartition())
      for (std::size_t i = 0; i < t; ++i) sides.push_back(side);
    total.set_bipartition(std::move(sides));
  }
  return {s, std::move(total), va, std::nullopt};
}

// Relator of a two-generator one-relator presentation.
struct PresentationData {
  std::string name;
  GroupWord relator;
};

inline PresentationData presentation_L(std::size_t ell) {
  const auto l = static_cast<long>(ell);
  return {"L(" + std::to_string(ell) + ")", word_concat(word_power(1, l), word_power(2, -l))};
}

inline PresentationData presentation_BS(std::size_t ell) {
  const auto l = static_cast<long>(ell);
  GroupWord w = word_power(1, 1);
  w = word_concat(w, word_power(2, l));
  w = word_concat(w, word_power(1, -1));
  w = word_concat(w, word_power(2, -l));
  return {"BS(" + std::to_string(ell) + "," + std::to_string(ell) + ")", w};
}

// Right multiplication s -> s g on sheets labelled by group elements.
inline Permutation right_regular(const GroupTable& g, std::size_t elem) {
  std::vector<std::size_t> img(g.order());
  for (std::size_t s = 0; s < g.order(); ++s) img[s] = g.mul(s, elem);
  return Permutation(std::move(img));
}

inline Permutation left_regular(const GroupTable& g, std::size_t elem) {
  std::vector<std::size_t> img(g.order());
  for (std::size_t s = 0; s < g.order(); ++s) img[s] = g.mul(elem, s);
  return Permutation(std::move(img));
}

// Voltage of the Galois cover for a -> x, b -> y. Tree edges of the BFS tree
// from the basepoint (lowest edge id first) carry the identity.
inline VoltageAssignment spanning_tree_voltage(const SquareComplex& s, const PresentationData& pres,
                                               std::size_t x, std::size_t y, const GroupTable& g,
                                               bool require_connected = true) {
  if (!s.has_edge_words()) throw Error("spanning_tree_voltage: complex carries no edge words");
  if (g.evaluate(pres.relator, x, y) != g.identity())
    throw Error("spanning_tree_voltage: homomorphism does not kill the relator");
  if (require_connected && !g.generates({x, y}))
    throw Error("spanning_tree_voltage: image does not generate " + g.name());

  std::vector<std::size_t> label(s.edge_count());
  for (std::size_t e = 0; e < s.edge_count(); ++e) label[e] = g.evaluate(s.edge_words()[e], x, y);

  std::vector<std::vector<std::size_t>> incident(s.vertex_count());
  for (std::size_t e = 0; e < s.edge_count(); ++e) {
    incident[s.edge(e).first].push_back(e);
    if (s.edge(e).second != s.edge(e).first) incident[s.edge(e).second].push_back(e);
  }
  // path[v]: image of the tree path word from the basepoint to v.
  std::vector<std::optional<std::size_t>> path(s.vertex_count());
  std::deque<std::size_t> queue{s.basepoint()};
  path[s.basepoint()] = g.identity();
  while (!queue.empty()) {
    const auto u = queue.front();
    queue.pop_front();
    for (auto e : incident[u]) {
      const auto& [a, b] = s.edge(e);
      const bool forward = a == u;
      const auto w = forward ? b : a;
      if (path[w]) continue;
      path[w] = g.mul(*path[u], forward ? label[e] : g.inv(label[e]));
      queue.push_back(w);
    }
  }
  for (std::size_t v = 0; v < s.vertex_count(); ++v)
    if (!path[v]) throw Error("spanning_tree_voltage: complex is not connected");

  VoltageAssignment va = VoltageAssignment::identity(s, g.order());
  for (std::size_t e = 0; e < s.edge_count(); ++e) {
    const auto& [u, v] = s.edge(e);
    const auto nu = g.mul(g.mul(*path[u], label[e]), g.inv(*path[v]));
    va.set_edge(e, right_regular(g, nu));
  }
  return va;
}

// True iff (x1, y1) and (x2, y2) have the same kernel, i.e. w -> w' on the
// Cayley graphs is a well-defined bijection fixing the identity.
inline bool same_kernel(const GroupTable& g, std::size_t x1, std::size_t y1, std::size_t x2,
                        std::size_t y2) {
  const auto n = g.order();
  std::vector<std::size_t> alpha(n, n);
  std::vector<char> used(n, 0);
  alpha[0] = 0;
  used[0] = 1;
  std::deque<std::size_t> queue{0};
  const std::pair<std::size_t, std::size_t> gens[2] = {{x1, x2}, {y1, y2}};
  while (!queue.empty()) {
    const auto a = queue.front();
    queue.pop_front();
    for (const auto& [s1, s2] : gens) {
      const auto from = g.mul(a, s1), to = g.mul(alpha[a], s2);
      if (alpha[from] == n) {
        if (used[to]) return false;
        alpha[from] = to;
        used[to] = 1;
        queue.push_back(from);
      } else if (alpha[from] != to) {
        return false;
      }
    }
  }
  return std::all_of(alpha.begin(), alpha.end(), [n](std::size_t v) { return v != n; });
}

struct GaloisCover {
  std::size_t hom_a = 0, hom_b = 0;
  std::size_t kernel_id = 0;
  // Number of surjections sharing this kernel.
  std::size_t multiplicity = 1;
  CoveringMap covering;
};

// Surjections onto g, in lexicographic order of (a, b), one per kernel.
inline std::vector<GaloisCover> enumerate_galois_covers(const SquareComplex& s,
                                                        const PresentationData& pres,
                                                        const GroupTable& g,
                                                        std::size_t max_order = 30) {
  std::vector<GaloisCover> out;
  if (g.order() > max_order) return out;
  for (std::size_t x = 0; x < g.order(); ++x)
    for (std::size_t y = 0; y < g.order(); ++y) {
      if (g.evaluate(pres.relator, x, y) != g.identity() || !g.generates({x, y})) continue;
      auto it = std::find_if(out.begin(), out.end(), [&](const GaloisCover& c) {
        return same_kernel(g, c.hom_a, c.hom_b, x, y);
      });
      if (it != out.end()) {
        ++it->multiplicity;
        continue;
      }
      GaloisCover c;
      c.hom_a = x;
      c.hom_b = y;
      c.kernel_id = out.size();
      c.covering = lift_complex(s, spanning_tree_voltage(s, pres, x, y, g));
      c.covering.deck_group = g;
      out.push_back(std::move(c));
    }
  return out;
}

// Permutation of the cells of one dimension: image[c].
struct CellPermutation {
  std::vector<std::size_t> vertices, edges, faces;
};

// Left relabelling s -> gamma s of every fiber.
inline CellPermutation deck_action(const CoveringMap& cm, std::size_t gamma) {
  if (!cm.deck_group) throw Error("deck_action: cover is not Galois over a known group");
  const auto& g = *cm.deck_group;
  if (gamma >= g.order()) throw Error("deck_action: element out of range");
  const auto t = cm.index();
  auto act = [&](std::size_t count) {
    std::vector<std::size_t> img(count);
    for (std::size_t c = 0; c < count; ++c) img[c] = (c / t) * t + g.mul(gamma, c % t);
    return img;
  };
  return {act(cm.total.vertex_count()), act(cm.total.edge_count()), act(cm.total.face_count())};
}

// Voltage file: one line per dart, "edge_id +|- image_0 ... image_{t-1}".
inline void write_voltage(std::ostream& os, const VoltageAssignment& va) {
  for (std::size_t d = 0; d < va.perms.size(); ++d) {
    os << dart_edge(d) << ' ' << (dart_reversed(d) ? '-' : '+');
    for (auto x : va.perms[d].image()) os << ' ' << x;
    os << '\n';
  }
}

inline VoltageAssignment read_voltage(std::istream& is, std::size_t edge_count) {
  VoltageAssignment va;
  va.perms.assign(2 * edge_count, Permutation());
  std::vector<char> seen(2 * edge_count, 0);
  std::string line;
  std::optional<std::size_t> t;
  while (std::getline(is, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream ss(line);
    std::size_t e = 0;
    char dir = 0;
    if (!(ss >> e >> dir) || e >= edge_count || (dir != '+' && dir != '-'))
      throw Error("voltage file: bad line '" + line + "'");
    std::vector<std::size_t> img;
    for (std::size_t x; ss >> x;) img.push_back(x);
    if (t && *t != img.size()) throw Error("voltage file: inconsistent permutation degree");
    t = img.size();
    const auto d = make_dart(e, dir == '-');
    if (seen[d]) throw Error("voltage file: duplicate dart");
    seen[d] = 1;
    va.perms[d] = Permutation(std::move(img));
  }
  if (std::find(seen.begin(), seen.end(), 0) != seen.end()) throw Error("voltage file: missing darts");
  va.index = t.value_or(1);
  return va;
}

}  // namespace qtanner
