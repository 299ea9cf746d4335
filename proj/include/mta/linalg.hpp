#pragma once

// Exact linear algebra over Q. Everything is kept in reduced row echelon form
// with the lowest available column as pivot, so bases and quotient
// coordinates are canonical.

#include "mta/rational.hpp"

#include <algorithm>
#include <cstddef>
#include <optional>
#include <utility>
#include <stdexcept>
#include <vector>

namespace mta {

using Vec = std::vector<Rational>;
using Mat = std::vector<Vec>;  // row-major, rows of equal length

inline Vec zero_vec(std::size_t n) { return Vec(n); }

inline Vec unit_vec(std::size_t n, std::size_t k) {
  Vec v = zero_vec(n);
  v.at(k) = 1;
  return v;
}

inline bool is_zero(const Vec& v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& x) { return is_zero(x); });
}

/// v += s * w
inline void axpy(Vec& v, const Rational& s, const Vec& w) {
  if (is_zero(s)) return;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (!is_zero(w[i])) v[i] += s * w[i];
}

/// Row space of a set of vectors in Q^n, held in reduced row echelon form.
/// Rows are stored sparsely; basis() materialises them densely on demand.
class Subspace {
 public:
  using SparseRow = std::vector<std::pair<std::size_t, Rational>>;  // sorted by column

  explicit Subspace(std::size_t ambient = 0) : n_(ambient), row_of_(ambient, kNone) {}

  static Subspace span(std::size_t ambient, const std::vector<Vec>& vectors) {
    Subspace s(ambient);
    for (const auto& v : vectors) s.insert(v);
    return s;
  }

  static Subspace whole(std::size_t ambient) {
    Subspace s(ambient);
    for (std::size_t k = 0; k < ambient; ++k) s.insert(unit_vec(ambient, k));
    return s;
  }

  std::size_t ambient_dim() const noexcept { return n_; }
  std::size_t dim() const noexcept { return rows_.size(); }
  const std::vector<std::size_t>& pivots() const noexcept { return pivots_; }
  const std::vector<SparseRow>& sparse_basis() const noexcept { return rows_; }

  const std::vector<Vec>& basis() const {
    if (!dense_valid_) {
      dense_.clear();
      for (const auto& row : rows_) {
        Vec v = zero_vec(n_);
        for (const auto& [c, x] : row) v[c] = x;
        dense_.push_back(std::move(v));
      }
      dense_valid_ = true;
    }
    return dense_;
  }

  /// v minus its component along the echelon rows; zero iff v is in the span.
  Vec reduce(Vec v) const {
    check(v);
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      const Rational f = v[pivots_[r]];
      if (is_zero(f)) continue;
      for (const auto& [c, x] : rows_[r]) v[c] -= f * x;
    }
    return v;
  }

  bool contains(const Vec& v) const { return is_zero(reduce(v)); }

  /// Sparse form of reduce; v must be sorted by column without zero entries.
  SparseRow reduce(const SparseRow& v) const {
    SparseRow w = v;
    for (const auto& [c, x] : v) {
      if (c >= n_) throw std::invalid_argument("Subspace: dimension mismatch");
      const auto r = row_of_[c];
      if (r != kNone) w = axpy_sparse(w, -x, rows_[r]);
    }
    return w;
  }

  /// Adds v to the spanning set; returns whether the dimension grew.
  bool insert(const Vec& v) {
    check(v);
    SparseRow s;
    for (std::size_t c = 0; c < n_; ++c)
      if (!is_zero(v[c])) s.emplace_back(c, v[c]);
    return insert(s);
  }

  bool insert(const SparseRow& v) {
    SparseRow row = reduce(v);
    if (row.empty()) return false;
    const std::size_t p = row.front().first;
    const Rational inv = 1 / row.front().second;
    for (auto& e : row) e.second *= inv;
    for (auto& other : rows_) {
      auto pos = std::lower_bound(other.begin(), other.end(), p, [](const auto& e, std::size_t c) { return e.first < c; });
      if (pos == other.end() || pos->first != p) continue;
      const Rational f = pos->second;
      other = axpy_sparse(other, -f, row);
    }
    auto pos = std::lower_bound(pivots_.begin(), pivots_.end(), p);
    const auto idx = pos - pivots_.begin();
    pivots_.insert(pos, p);
    rows_.insert(rows_.begin() + idx, std::move(row));
    for (std::size_t r = static_cast<std::size_t>(idx); r < pivots_.size(); ++r) row_of_[pivots_[r]] = r;
    dense_valid_ = false;
    return true;
  }

  /// Index of the echelon row with pivot c, if any.
  std::optional<std::size_t> pivot_row(std::size_t c) const {
    if (row_of_.at(c) == kNone) return std::nullopt;
    return row_of_[c];
  }

  /// Coordinates of v (assumed in the span) in the echelon basis.
  Vec coordinates(const Vec& v) const {
    check(v);
    if (!contains(v)) throw std::invalid_argument("Subspace::coordinates: vector outside subspace");
    Vec c;
    c.reserve(rows_.size());
    for (std::size_t p : pivots_) c.push_back(v[p]);
    return c;
  }

  bool contains(const Subspace& other) const {
    const auto& b = other.basis();
    return std::all_of(b.begin(), b.end(), [&](const Vec& v) { return contains(v); });
  }

  friend bool operator==(const Subspace& a, const Subspace& b) { return a.n_ == b.n_ && a.rows_ == b.rows_; }

 private:
  static SparseRow axpy_sparse(const SparseRow& a, const Rational& s, const SparseRow& b) {
    SparseRow out;
    out.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
      if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
        out.push_back(a[i++]);
      } else if (i == a.size() || b[j].first < a[i].first) {
        out.emplace_back(b[j].first, s * b[j].second);
        ++j;
      } else {
        Rational x = a[i].second + s * b[j].second;
        if (!is_zero(x)) out.emplace_back(a[i].first, std::move(x));
        ++i;
        ++j;
      }
    }
    return out;
  }

  void check(const Vec& v) const {
    if (v.size() != n_) throw std::invalid_argument("Subspace: dimension mismatch");
  }

  static constexpr std::size_t kNone = static_cast<std::size_t>(-1);

  std::size_t n_;
  std::vector<std::size_t> row_of_;
  std::vector<SparseRow> rows_;
  std::vector<std::size_t> pivots_;
  mutable std::vector<Vec> dense_;
  mutable bool dense_valid_ = true;
};

/// Q^n / R. The classes of the standard vectors at the non-pivot columns of R
/// form the quotient basis; projection reduces modulo R and reads them off.
class Quotient {
 public:
  explicit Quotient(Subspace relations) : rel_(std::move(relations)), index_(rel_.ambient_dim(), 0) {
    for (std::size_t c = 0; c < rel_.ambient_dim(); ++c)
      if (!rel_.pivot_row(c)) {
        index_[c] = free_.size();
        free_.push_back(c);
      }
  }

  std::size_t ambient_dim() const noexcept { return rel_.ambient_dim(); }
  std::size_t dim() const noexcept { return free_.size(); }
  const Subspace& relations() const noexcept { return rel_; }
  /// ambient index represented by quotient basis element k
  std::size_t representative(std::size_t k) const { return free_.at(k); }
  const std::vector<std::size_t>& representatives() const noexcept { return free_; }

  Vec project(const Vec& v) const {
    if (v.size() != ambient_dim()) throw std::invalid_argument("Quotient::project: dimension mismatch");
    Vec out = zero_vec(free_.size());
    for (std::size_t c = 0; c < v.size(); ++c)
      if (!is_zero(v[c])) add_unit(out, c, v[c]);
    return out;
  }

  /// out += s · [e_c]
  void add_unit(Vec& out, std::size_t c, const Rational& s) const {
    if (const auto r = rel_.pivot_row(c)) {
      // e_c ≡ e_c − row, whose support lies in the free columns
      for (const auto& [col, x] : rel_.sparse_basis()[*r])
        if (col != c) out[index_[col]] -= s * x;
    } else {
      out[index_[c]] += s;
    }
  }

  Vec lift(const Vec& q) const {
    if (q.size() != free_.size()) throw std::invalid_argument("Quotient::lift: dimension mismatch");
    Vec v = zero_vec(rel_.ambient_dim());
    for (std::size_t k = 0; k < free_.size(); ++k) v[free_[k]] = q[k];
    return v;
  }

 private:
  Subspace rel_;
  std::vector<std::size_t> index_;
  std::vector<std::size_t> free_;
};

inline std::size_t rank_of(std::size_t cols, const std::vector<Vec>& rows) {
  return Subspace::span(cols, rows).dim();
}

/// Particular solution of A x = b (free variables set to zero), or nullopt.
inline std::optional<Vec> solve(const Mat& A, const Vec& b, std::size_t unknowns) {
  if (A.size() != b.size()) throw std::invalid_argument("solve: row count mismatch");
  Subspace aug(unknowns + 1);
  for (std::size_t r = 0; r < A.size(); ++r) {
    if (A[r].size() != unknowns) throw std::invalid_argument("solve: column count mismatch");
    Vec row = A[r];
    row.push_back(b[r]);
    aug.insert(row);
  }
  Vec x = zero_vec(unknowns);
  for (std::size_t r = 0; r < aug.dim(); ++r) {
    const std::size_t p = aug.pivots()[r];
    if (p == unknowns) return std::nullopt;  // 0 = 1
    x[p] = aug.basis()[r][unknowns];
  }
  return x;
}

/// Image of the linear map with the given column images.
inline Subspace image_of(std::size_t target_dim, const std::vector<Vec>& column_images) {
  return Subspace::span(target_dim, column_images);
}

}  // namespace mta
