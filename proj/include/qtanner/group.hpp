#pragma once

// Finite groups as multiplication tables.

#include <cstddef>
#include <deque>
#include <istream>
#include <numeric>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "complex.hpp"
#include "gf2.hpp"

namespace qtanner {

class GroupTable {
 public:
  GroupTable() : GroupTable("1", {{0}}) {}

  // Throws unless the table is a group with identity 0.
  GroupTable(std::string name, std::vector<std::vector<std::size_t>> table)
      : name_(std::move(name)), table_(std::move(table)) {
    const auto n = table_.size();
    if (n == 0) throw Error("group " + name_ + ": empty table");
    for (const auto& row : table_) {
      if (row.size() != n) throw Error("group " + name_ + ": table is not square");
      for (auto x : row)
        if (x >= n) throw Error("group " + name_ + ": entry out of range");
    }
    for (std::size_t i = 0; i < n; ++i)
      if (table_[0][i] != i || table_[i][0] != i)
        throw Error("group " + name_ + ": index 0 is not the identity");
    inverse_.assign(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (table_[i][j] == 0) {
          if (table_[j][i] != 0) throw Error("group " + name_ + ": one-sided inverse");
          inverse_[i] = j;
        }
    for (std::size_t i = 0; i < n; ++i)
      if (inverse_[i] == n) throw Error("group " + name_ + ": element without inverse");
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        for (std::size_t c = 0; c < n; ++c)
          if (table_[table_[a][b]][c] != table_[a][table_[b][c]])
            throw Error("group " + name_ + ": not associative");
  }

  const std::string& name() const { return name_; }
  std::size_t order() const { return table_.size(); }
  std::size_t identity() const { return 0; }
  std::size_t mul(std::size_t a, std::size_t b) const { return table_[a][b]; }
  std::size_t inv(std::size_t a) const { return inverse_[a]; }
  const std::vector<std::vector<std::size_t>>& table() const { return table_; }
  void rename(std::string name) { name_ = std::move(name); }

  std::size_t element_order(std::size_t a) const {
    std::size_t k = 1;
    for (auto x = a; x != 0; x = mul(x, a)) ++k;
    return k;
  }

  bool is_abelian() const {
    for (std::size_t a = 0; a < order(); ++a)
      for (std::size_t b = 0; b < order(); ++b)
        if (mul(a, b) != mul(b, a)) return false;
    return true;
  }

  // Size of the subgroup generated by the given elements.
  std::size_t generated_order(const std::vector<std::size_t>& gens) const {
    std::vector<char> seen(order(), 0);
    std::deque<std::size_t> queue{0};
    seen[0] = 1;
    std::size_t count = 1;
    while (!queue.empty()) {
      const auto g = queue.front();
      queue.pop_front();
      for (auto s : gens) {
        const auto h = mul(g, s);
        if (!seen[h]) {
          seen[h] = 1;
          ++count;
          queue.push_back(h);
        }
      }
    }
    return count;
  }
  bool generates(const std::vector<std::size_t>& gens) const { return generated_order(gens) == order(); }

  // Image of a word under a -> x, b -> y.
  std::size_t evaluate(const GroupWord& w, std::size_t x, std::size_t y) const {
    std::size_t acc = 0;
    for (int letter : w) {
      std::size_t g;
      switch (letter) {
        case 1: g = x; break;
        case -1: g = inv(x); break;
        case 2: g = y; break;
        case -2: g = inv(y); break;
        default: throw Error("bad letter in group word");
      }
      acc = mul(acc, g);
    }
    return acc;
  }

 private:
  std::string name_;
  std::vector<std::vector<std::size_t>> table_;
  std::vector<std::size_t> inverse_;
};

inline GroupTable cyclic_group(std::size_t n) {
  if (n == 0) throw Error("cyclic group of order 0");
  std::vector<std::vector<std::size_t>> t(n, std::vector<std::size_t>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) t[i][j] = (i + j) % n;
  return GroupTable("Z" + std::to_string(n), std::move(t));
}

// Dihedral group of order n (n even): r^i s^e stored as i + (n/2) e.
inline GroupTable dihedral_group(std::size_t n) {
  if (n < 2 || n % 2) throw Error("dihedral group order must be even and >= 2");
  const auto m = n / 2;
  std::vector<std::vector<std::size_t>> t(n, std::vector<std::size_t>(n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      const auto i = a % m, e = a / m, j = b % m, f = b / m;
      const auto k = (e ? i + m - j : i + j) % m;
      t[a][b] = k + m * (e ^ f);
    }
  return GroupTable("D" + std::to_string(n), std::move(t));
}

// Dicyclic group of order n (n divisible by 4): x^i y^e, x^(n/2) = 1,
// y^2 = x^(n/4), y x y^-1 = x^-1.
inline GroupTable dicyclic_group(std::size_t n) {
  if (n < 4 || n % 4) throw Error("dicyclic group order must be a multiple of 4");
  const auto m = n / 2;
  std::vector<std::vector<std::size_t>> t(n, std::vector<std::size_t>(n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      const auto i = a % m, e = a / m, j = b % m, f = b / m;
      auto k = (e ? i + m - j : i + j) % m;
      if (e && f) k = (k + m / 2) % m;
      t[a][b] = k + m * (e ^ f);
    }
  return GroupTable("Q" + std::to_string(n), std::move(t));
}

inline GroupTable direct_product(const GroupTable& g, const GroupTable& h) {
  const auto ng = g.order(), nh = h.order(), n = ng * nh;
  std::vector<std::vector<std::size_t>> t(n, std::vector<std::size_t>(n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      t[a][b] = g.mul(a / nh, b / nh) * nh + h.mul(a % nh, b % nh);
  return GroupTable(g.name() + "x" + h.name(), std::move(t));
}

// Z_m x| Z_n where the generator of Z_n acts by multiplication by r:
// (a, b)(c, d) = (a + r^b c, b + d), stored as a * n + b.
inline GroupTable semidirect_cyclic(std::size_t m, std::size_t n, std::size_t r) {
  std::size_t rn = 1;
  for (std::size_t i = 0; i < n; ++i) rn = rn * r % m;
  if (std::gcd(r, m) != 1 || rn != 1 % m)
    throw Error("semidirect product: r must be a unit of order dividing n");
  std::vector<std::size_t> rpow(n, 1 % m);
  for (std::size_t i = 1; i < n; ++i) rpow[i] = rpow[i - 1] * r % m;
  const auto order = m * n;
  std::vector<std::vector<std::size_t>> t(order, std::vector<std::size_t>(order));
  for (std::size_t x = 0; x < order; ++x)
    for (std::size_t y = 0; y < order; ++y) {
      const auto a = x / n, b = x % n, c = y / n, d = y % n;
      t[x][y] = (a + rpow[b] * c) % m * n + (b + d) % n;
    }
  return GroupTable("Z" + std::to_string(m) + ":" + std::to_string(r) + "Z" + std::to_string(n),
                    std::move(t));
}

namespace detail {
inline std::size_t parse_count(const std::string& s, const std::string& whole) {
  if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
    throw Error("bad group name '" + whole + "'");
  return std::stoul(s);
}

inline GroupTable parse_factor(const std::string& f, const std::string& whole) {
  if (f == "1") {
    GroupTable g;
    return g;
  }
  if (f == "S3") {
    auto g = dihedral_group(6);
    g.rename("S3");
    return g;
  }
  if (auto colon = f.find(':'); colon != std::string::npos) {
    // Z<m>:<r>Z<n>
    const auto left = f.substr(0, colon), right = f.substr(colon + 1);
    const auto z = right.find('Z');
    if (left.size() < 2 || left[0] != 'Z' || z == std::string::npos)
      throw Error("bad group name '" + whole + "'");
    const auto m = parse_count(left.substr(1), whole);
    const auto n = parse_count(right.substr(z + 1), whole);
    const auto r = parse_count(right.substr(0, z), whole);
    return semidirect_cyclic(m, n, r);
  }
  if (f.size() >= 2) {
    const auto n = parse_count(f.substr(1), whole);
    switch (f[0]) {
      case 'Z': return cyclic_group(n);
      case 'D': return dihedral_group(n);
      case 'Q': return dicyclic_group(n);
      default: break;
    }
  }
  throw Error("bad group name '" + whole + "'");
}
}  // namespace detail

// Names: 1, Z<n>, D<n> (order n), Q<n> (dicyclic, order n), S3,
// Z<m>:<r>Z<n> (semidirect), and direct products joined by 'x'.
inline GroupTable group_from_name(const std::string& name) {
  std::vector<std::string> factors;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= name.size(); ++i)
    if (i == name.size() || name[i] == 'x') {
      factors.push_back(name.substr(start, i - start));
      start = i + 1;
    }
  GroupTable g = detail::parse_factor(factors[0], name);
  for (std::size_t i = 1; i < factors.size(); ++i) g = direct_product(g, detail::parse_factor(factors[i], name));
  g.rename(name);
  return g;
}

// Group tables used by the shipped lift searches.
inline std::vector<std::string> catalog_group_names() {
  return {"Z2",   "Z3",   "Z4",    "Z5",      "Z6",      "Z7",      "Z2xZ2",    "Z12",
          "D12",  "Z3:2Z4", "Z20", "D20",     "Z5:2Z4",  "Z5:4Z4",  "Z4:3Z4",   "Z8:5Z2",
          "Q16",  "Z24",  "Z2xZ3:2Z4", "Z3:2Z8", "Z4xS3", "Z28"};
}

inline void write_group(std::ostream& os, const GroupTable& g) {
  os << g.order() << '\n';
  for (const auto& row : g.table()) {
    for (std::size_t j = 0; j < row.size(); ++j) os << (j ? " " : "") << row[j];
    os << '\n';
  }
}

inline GroupTable read_group(std::istream& is, std::string name) {
  std::size_t n = 0;
  if (!(is >> n) || n == 0) throw Error("group file: bad order line");
  std::vector<std::vector<std::size_t>> t(n, std::vector<std::size_t>(n));
  for (auto& row : t)
    for (auto& x : row)
      if (!(is >> x)) throw Error("group file: truncated table");
  return GroupTable(std::move(name), std::move(t));
}

}  // namespace qtanner
