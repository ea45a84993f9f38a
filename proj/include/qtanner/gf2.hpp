#pragma once

// Dense bit-packed linear algebra over GF(2).

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qtanner {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using Word = std::uint64_t;
inline constexpr std::size_t kWordBits = 64;

inline std::size_t words_for(std::size_t bits) { return (bits + kWordBits - 1) / kWordBits; }

class BitVector {
 public:
  BitVector() = default;
  explicit BitVector(std::size_t length) : length_(length), words_(words_for(length), 0) {}

  static BitVector from_indices(std::size_t length, const std::vector<std::size_t>& ones) {
    BitVector v(length);
    for (auto i : ones) v.flip(i);
    return v;
  }

  std::size_t size() const { return length_; }
  std::size_t word_count() const { return words_.size(); }
  const Word* data() const { return words_.data(); }
  Word* data() { return words_.data(); }

  bool get(std::size_t i) const { return (words_[i / kWordBits] >> (i % kWordBits)) & 1U; }
  void set(std::size_t i, bool value = true) {
    const Word mask = Word{1} << (i % kWordBits);
    if (value)
      words_[i / kWordBits] |= mask;
    else
      words_[i / kWordBits] &= ~mask;
  }
  void flip(std::size_t i) { words_[i / kWordBits] ^= Word{1} << (i % kWordBits); }

  BitVector& operator^=(const BitVector& other) {
    check_same(other);
    for (std::size_t w = 0; w < words_.size(); ++w) words_[w] ^= other.words_[w];
    return *this;
  }
  friend BitVector operator^(BitVector a, const BitVector& b) { return a ^= b; }

  std::size_t weight() const {
    std::size_t total = 0;
    for (auto w : words_) total += static_cast<std::size_t>(std::popcount(w));
    return total;
  }
  bool is_zero() const {
    return std::all_of(words_.begin(), words_.end(), [](Word w) { return w == 0; });
  }
  // Parity of the overlap.
  bool dot(const BitVector& other) const {
    check_same(other);
    Word acc = 0;
    for (std::size_t w = 0; w < words_.size(); ++w) acc ^= words_[w] & other.words_[w];
    return std::popcount(acc) & 1;
  }
  std::size_t overlap(const BitVector& other) const {
    check_same(other);
    std::size_t total = 0;
    for (std::size_t w = 0; w < words_.size(); ++w)
      total += static_cast<std::size_t>(std::popcount(words_[w] & other.words_[w]));
    return total;
  }

  std::vector<std::size_t> support() const {
    std::vector<std::size_t> out;
    for (std::size_t w = 0; w < words_.size(); ++w) {
      Word bits = words_[w];
      while (bits) {
        out.push_back(w * kWordBits + static_cast<std::size_t>(std::countr_zero(bits)));
        bits &= bits - 1;
      }
    }
    return out;
  }

  // Lowest set index, if any.
  std::optional<std::size_t> first_one() const {
    for (std::size_t w = 0; w < words_.size(); ++w)
      if (words_[w]) return w * kWordBits + static_cast<std::size_t>(std::countr_zero(words_[w]));
    return std::nullopt;
  }

  // Bits read left to right in groups of four; bit 4q is the high bit of nibble q.
  std::string to_hex() const {
    static constexpr char kDigits[] = "0123456789abcdef";
    std::string out((length_ + 3) / 4, '0');
    for (std::size_t i = 0; i < length_; ++i)
      if (get(i)) {
        auto& c = out[i / 4];
        const int nibble = static_cast<int>(c >= 'a' ? c - 'a' + 10 : c - '0') | (8 >> (i % 4));
        c = kDigits[nibble];
      }
    return out;
  }
  static BitVector from_hex(std::size_t length, const std::string& hex) {
    if (hex.size() != (length + 3) / 4) throw Error("hex length does not match bit length");
    BitVector v(length);
    for (std::size_t q = 0; q < hex.size(); ++q) {
      const char c = hex[q];
      int nibble;
      if (c >= '0' && c <= '9')
        nibble = c - '0';
      else if (c >= 'a' && c <= 'f')
        nibble = c - 'a' + 10;
      else if (c >= 'A' && c <= 'F')
        nibble = c - 'A' + 10;
      else
        throw Error("invalid hex digit");
      for (int b = 0; b < 4; ++b)
        if (nibble & (8 >> b)) {
          const std::size_t i = q * 4 + static_cast<std::size_t>(b);
          if (i >= length) throw Error("hex sets bits beyond length");
          v.set(i);
        }
    }
    return v;
  }

  std::string to_string() const {
    std::string s(length_, '0');
    for (std::size_t i = 0; i < length_; ++i)
      if (get(i)) s[i] = '1';
    return s;
  }

  friend bool operator==(const BitVector& a, const BitVector& b) {
    return a.length_ == b.length_ && a.words_ == b.words_;
  }
  friend bool operator<(const BitVector& a, const BitVector& b) {
    if (a.length_ != b.length_) return a.length_ < b.length_;
    return a.words_ < b.words_;
  }

 private:
  void check_same(const BitVector& other) const {
    if (other.length_ != length_) throw Error("bit vector length mismatch");
  }

  std::size_t length_ = 0;
  std::vector<Word> words_;
};

class BitMatrix {
 public:
  BitMatrix() = default;
  BitMatrix(std::size_t rows, std::size_t cols) : cols_(cols), rows_(rows, BitVector(cols)) {}

  static BitMatrix identity(std::size_t n) {
    BitMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i);
    return m;
  }
  static BitMatrix from_rows(std::size_t cols, std::vector<BitVector> rows) {
    BitMatrix m;
    m.cols_ = cols;
    for (const auto& r : rows)
      if (r.size() != cols) throw Error("row length does not match column count");
    m.rows_ = std::move(rows);
    return m;
  }
  // Rows given as strings of '0'/'1'.
  static BitMatrix parse(const std::vector<std::string>& rows) {
    const std::size_t cols = rows.empty() ? 0 : rows.front().size();
    BitMatrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != cols) throw Error("ragged matrix literal");
      for (std::size_t j = 0; j < cols; ++j)
        if (rows[i][j] == '1') m.set(i, j);
    }
    return m;
  }

  std::size_t rows() const { return rows_.size(); }
  std::size_t cols() const { return cols_; }
  const BitVector& row(std::size_t i) const { return rows_[i]; }
  BitVector& row(std::size_t i) { return rows_[i]; }
  const std::vector<BitVector>& row_data() const { return rows_; }

  bool get(std::size_t i, std::size_t j) const { return rows_[i].get(j); }
  void set(std::size_t i, std::size_t j, bool value = true) { rows_[i].set(j, value); }
  void flip(std::size_t i, std::size_t j) { rows_[i].flip(j); }

  void push_row(BitVector r) {
    if (r.size() != cols_) throw Error("row length does not match column count");
    rows_.push_back(std::move(r));
  }

  bool is_zero() const {
    return std::all_of(rows_.begin(), rows_.end(), [](const BitVector& r) { return r.is_zero(); });
  }
  std::size_t nonzeros() const {
    std::size_t total = 0;
    for (const auto& r : rows_) total += r.weight();
    return total;
  }

  BitMatrix transpose() const {
    BitMatrix t(cols_, rows_.size());
    for (std::size_t i = 0; i < rows_.size(); ++i)
      for (auto j : rows_[i].support()) t.set(j, i);
    return t;
  }

  BitVector column(std::size_t j) const {
    BitVector c(rows_.size());
    for (std::size_t i = 0; i < rows_.size(); ++i)
      if (rows_[i].get(j)) c.set(i);
    return c;
  }

  // Column j of the result is column perm[j] of this matrix.
  BitMatrix permute_columns(const std::vector<std::size_t>& perm) const {
    if (perm.size() != cols_) throw Error("permutation size does not match column count");
    BitMatrix out(rows_.size(), cols_);
    for (std::size_t j = 0; j < cols_; ++j)
      for (std::size_t i = 0; i < rows_.size(); ++i)
        if (rows_[i].get(perm[j])) out.set(i, j);
    return out;
  }

  friend bool operator==(const BitMatrix& a, const BitMatrix& b) {
    return a.cols_ == b.cols_ && a.rows_ == b.rows_;
  }

 private:
  std::size_t cols_ = 0;
  std::vector<BitVector> rows_;
};

inline BitMatrix vstack(const BitMatrix& top, const BitMatrix& bottom) {
  if (top.cols() != bottom.cols()) throw Error("vstack: column count mismatch");
  auto rows = top.row_data();
  rows.insert(rows.end(), bottom.row_data().begin(), bottom.row_data().end());
  return BitMatrix::from_rows(top.cols(), std::move(rows));
}

inline BitMatrix hstack(const BitMatrix& left, const BitMatrix& right) {
  if (left.rows() != right.rows()) throw Error("hstack: row count mismatch");
  BitMatrix out(left.rows(), left.cols() + right.cols());
  for (std::size_t i = 0; i < left.rows(); ++i) {
    for (auto j : left.row(i).support()) out.set(i, j);
    for (auto j : right.row(i).support()) out.set(i, left.cols() + j);
  }
  return out;
}

inline BitMatrix kron(const BitMatrix& a, const BitMatrix& b) {
  BitMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (auto j : a.row(i).support())
      for (std::size_t r = 0; r < b.rows(); ++r)
        for (auto c : b.row(r).support()) out.set(i * b.rows() + r, j * b.cols() + c);
  return out;
}

inline BitMatrix mul(const BitMatrix& a, const BitMatrix& b) {
  if (a.cols() != b.rows()) throw Error("mul: dimension mismatch");
  BitMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (auto j : a.row(i).support()) out.row(i) ^= b.row(j);
  return out;
}

inline BitVector mul(const BitMatrix& a, const BitVector& x) {
  if (a.cols() != x.size()) throw Error("mul: dimension mismatch");
  BitVector out(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    if (a.row(i).dot(x)) out.set(i);
  return out;
}

inline BitMatrix add(const BitMatrix& a, const BitMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw Error("add: dimension mismatch");
  BitMatrix out = a;
  for (std::size_t i = 0; i < a.rows(); ++i) out.row(i) ^= b.row(i);
  return out;
}

// Reduced row echelon form of a row space. Pivots are taken at the leftmost
// nonzero column, using the first available row.
class Echelon {
 public:
  Echelon() = default;
  explicit Echelon(std::size_t cols) : cols_(cols) {}
  explicit Echelon(const BitMatrix& m) : cols_(m.cols()) {
    std::vector<BitVector> work = m.row_data();
    std::size_t next = 0;
    for (std::size_t c = 0; c < cols_ && next < work.size(); ++c) {
      std::size_t r = next;
      while (r < work.size() && !work[r].get(c)) ++r;
      if (r == work.size()) continue;
      std::swap(work[next], work[r]);
      for (std::size_t i = 0; i < work.size(); ++i)
        if (i != next && work[i].get(c)) work[i] ^= work[next];
      pivots_.push_back(c);
      ++next;
    }
    work.resize(next);
    rows_ = std::move(work);
  }

  std::size_t rank() const { return rows_.size(); }
  std::size_t cols() const { return cols_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }
  const std::vector<BitVector>& rows() const { return rows_; }
  BitMatrix matrix() const { return BitMatrix::from_rows(cols_, rows_); }

  // Residual of v after clearing every pivot column.
  BitVector reduce(BitVector v) const {
    if (v.size() != cols_) throw Error("reduce: length mismatch");
    for (std::size_t r = 0; r < rows_.size(); ++r)
      if (v.get(pivots_[r])) v ^= rows_[r];
    return v;
  }
  bool contains(const BitVector& v) const { return reduce(v).is_zero(); }

  // Adds v to the span; false if it was already there. Pivots of inserted
  // rows are not kept sorted.
  bool insert(const BitVector& v) {
    if (rows_.empty() && cols_ == 0) cols_ = v.size();
    BitVector r = reduce(v);
    auto p = r.first_one();
    if (!p) return false;
    for (auto& row : rows_)
      if (row.get(*p)) row ^= r;
    rows_.push_back(std::move(r));
    pivots_.push_back(*p);
    return true;
  }

  // Basis of the right kernel {x : row . x = 0 for every row}, one vector per
  // free column in increasing order.
  BitMatrix kernel() const {
    std::vector<bool> is_pivot(cols_, false);
    for (auto p : pivots_) is_pivot[p] = true;
    BitMatrix basis(0, cols_);
    for (std::size_t f = 0; f < cols_; ++f) {
      if (is_pivot[f]) continue;
      BitVector x(cols_);
      x.set(f);
      for (std::size_t r = 0; r < rows_.size(); ++r)
        if (rows_[r].get(f)) x.set(pivots_[r]);
      basis.push_row(std::move(x));
    }
    return basis;
  }

 private:
  std::size_t cols_ = 0;
  std::vector<BitVector> rows_;
  std::vector<std::size_t> pivots_;
};

inline std::size_t rank(const BitMatrix& m) { return Echelon(m).rank(); }

inline BitMatrix kernel_basis(const BitMatrix& m) { return Echelon(m).kernel(); }

inline bool in_rowspace(const BitMatrix& m, const BitVector& v) {
  if (v.size() != m.cols()) throw Error("in_rowspace: length mismatch");
  return Echelon(m).contains(v);
}

inline bool same_rowspace(const BitMatrix& a, const BitMatrix& b) {
  if (a.cols() != b.cols()) return false;
  const auto ra = rank(a);
  return ra == rank(b) && rank(vstack(a, b)) == ra;
}

// ---------------------------------------------------------------------------
// Matrix exchange formats.

inline void write_matrix_market(std::ostream& os, const BitMatrix& m) {
  os << "%%MatrixMarket matrix coordinate pattern general\n";
  os << m.rows() << ' ' << m.cols() << ' ' << m.nonzeros() << '\n';
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (auto j : m.row(i).support()) os << i + 1 << ' ' << j + 1 << '\n';
}

namespace detail {
inline bool next_data_line(std::istream& is, std::string& line) {
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '%') continue;
    return true;
  }
  return false;
}
}  // namespace detail

inline BitMatrix read_matrix_market(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line.rfind("%%MatrixMarket", 0) != 0)
    throw Error("MatrixMarket: missing banner");
  if (line.find("coordinate") == std::string::npos || line.find("pattern") == std::string::npos)
    throw Error("MatrixMarket: only coordinate pattern matrices are supported");
  if (!detail::next_data_line(is, line)) throw Error("MatrixMarket: missing size line");
  std::size_t rows = 0, cols = 0, nnz = 0;
  {
    std::istringstream ss(line);
    if (!(ss >> rows >> cols >> nnz)) throw Error("MatrixMarket: bad size line");
  }
  BitMatrix m(rows, cols);
  for (std::size_t k = 0; k < nnz; ++k) {
    if (!detail::next_data_line(is, line)) throw Error("MatrixMarket: truncated entries");
    std::istringstream ss(line);
    std::size_t i = 0, j = 0;
    if (!(ss >> i >> j) || i == 0 || j == 0 || i > rows || j > cols)
      throw Error("MatrixMarket: bad entry");
    m.flip(i - 1, j - 1);
  }
  return m;
}

// alist: "cols rows", max column/row weight, column weights, row weights,
// then per-column 1-based row lists and per-row 1-based column lists, each
// zero-padded to the maximum weight.
inline void write_alist(std::ostream& os, const BitMatrix& m) {
  const BitMatrix t = m.transpose();
  std::size_t max_col = 0, max_row = 0;
  for (std::size_t j = 0; j < t.rows(); ++j) max_col = std::max(max_col, t.row(j).weight());
  for (std::size_t i = 0; i < m.rows(); ++i) max_row = std::max(max_row, m.row(i).weight());
  os << m.cols() << ' ' << m.rows() << '\n' << max_col << ' ' << max_row << '\n';
  auto weights = [&os](const BitMatrix& a) {
    for (std::size_t i = 0; i < a.rows(); ++i) os << (i ? " " : "") << a.row(i).weight();
    os << '\n';
  };
  weights(t);
  weights(m);
  auto lists = [&os](const BitMatrix& a, std::size_t pad) {
    for (std::size_t i = 0; i < a.rows(); ++i) {
      auto s = a.row(i).support();
      for (std::size_t k = 0; k < pad; ++k) os << (k ? " " : "") << (k < s.size() ? s[k] + 1 : 0);
      os << '\n';
    }
  };
  lists(t, max_col);
  lists(m, max_row);
}

inline BitMatrix read_alist(std::istream& is) {
  std::size_t cols = 0, rows = 0, max_col = 0, max_row = 0;
  if (!(is >> cols >> rows >> max_col >> max_row)) throw Error("alist: bad header");
  std::vector<std::size_t> col_w(cols), row_w(rows);
  for (auto& w : col_w)
    if (!(is >> w)) throw Error("alist: bad column weights");
  for (auto& w : row_w)
    if (!(is >> w)) throw Error("alist: bad row weights");
  BitMatrix from_cols(rows, cols);
  for (std::size_t j = 0; j < cols; ++j)
    for (std::size_t k = 0; k < max_col; ++k) {
      std::size_t i = 0;
      if (!(is >> i)) throw Error("alist: truncated column lists");
      if (i == 0) continue;
      if (i > rows || k >= col_w[j]) throw Error("alist: bad column entry");
      from_cols.set(i - 1, j);
    }
  BitMatrix from_rows(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t k = 0; k < max_row; ++k) {
      std::size_t j = 0;
      if (!(is >> j)) throw Error("alist: truncated row lists");
      if (j == 0) continue;
      if (j > cols || k >= row_w[i]) throw Error("alist: bad row entry");
      from_rows.set(i, j - 1);
    }
  if (!(from_cols == from_rows)) throw Error("alist: row and column lists disagree");
  return from_rows;
}

}  // namespace qtanner
