#pragma once

// Even positive-definite lattices: dual cosets, conformal weights, norm
// layers and graded dimensions of the simple lattice-VOA modules V_{λ+L}.
// Vectors are coordinates in the lattice basis, Q(x) = ½ xᵀ G x.

#include "mta/json.hpp"
#include "mta/partitions.hpp"
#include "mta/rational.hpp"

#include <algorithm>
#include <cstddef>
#include <functional>
#include <istream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace mta::lattice {

using IntMat = std::vector<std::vector<Integer>>;
using RatVec = std::vector<Rational>;

class EvenLattice {
 public:
  explicit EvenLattice(IntMat gram) : gram_(std::move(gram)) {
    const std::size_t d = gram_.size();
    if (d == 0) throw std::invalid_argument("lattice rank must be positive");
    for (const auto& row : gram_)
      if (row.size() != d) throw std::invalid_argument("gram matrix must be square");
    for (std::size_t i = 0; i < d; ++i) {
      if (gram_[i][i] % 2 != 0) throw std::invalid_argument("gram diagonal must be even");
      for (std::size_t j = 0; j < i; ++j)
        if (gram_[i][j] != gram_[j][i]) throw std::invalid_argument("gram matrix must be symmetric");
    }
    decompose();
  }

  static EvenLattice from_rows(const std::vector<std::vector<long long>>& rows) {
    IntMat G;
    for (const auto& r : rows) G.emplace_back(r.begin(), r.end());
    return EvenLattice(std::move(G));
  }

  std::size_t rank() const noexcept { return gram_.size(); }
  const IntMat& gram() const noexcept { return gram_; }

  /// det G = |L′/L|
  Integer determinant() const {
    Rational det = 1;
    for (const auto& dv : diag_) det *= 2 * dv;
    return numerator_of(det);
  }

  /// q(x, y) = xᵀ G y
  Rational bilinear(const RatVec& x, const RatVec& y) const {
    check(x);
    check(y);
    Rational s = 0;
    for (std::size_t i = 0; i < rank(); ++i)
      for (std::size_t j = 0; j < rank(); ++j) s += x[i] * Rational(gram_[i][j]) * y[j];
    return s;
  }

  Rational norm(const RatVec& x) const { return bilinear(x, x) / 2; }

  /// λ ∈ L′ ⟺ Gλ ∈ ℤ^d
  bool in_dual(const RatVec& lambda) const {
    check(lambda);
    for (std::size_t i = 0; i < rank(); ++i) {
      Rational s = 0;
      for (std::size_t j = 0; j < rank(); ++j) s += Rational(gram_[i][j]) * lambda[j];
      if (!is_integer(s)) return false;
    }
    return true;
  }

  /// Q(x) = Σ_i diag[i] (x_i + Σ_{j>i} mu[i][j] x_j)²
  const RatVec& ldl_diagonal() const noexcept { return diag_; }
  const std::vector<RatVec>& ldl_upper() const noexcept { return mu_; }

  void check(const RatVec& x) const {
    if (x.size() != rank()) throw std::invalid_argument("vector length does not match lattice rank");
  }

 private:
  void decompose() {
    const std::size_t d = rank();
    std::vector<RatVec> q(d, RatVec(d));
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) q[i][j] = Rational(gram_[i][j]) / 2;
    for (std::size_t i = 0; i < d; ++i) {
      if (q[i][i] <= 0) throw std::invalid_argument("gram matrix is not positive definite");
      for (std::size_t j = i + 1; j < d; ++j) {
        q[j][i] = q[i][j];
        q[i][j] /= q[i][i];
      }
      for (std::size_t k = i + 1; k < d; ++k)
        for (std::size_t l = k; l < d; ++l) q[k][l] -= q[k][i] * q[i][l];
    }
    diag_.resize(d);
    mu_.assign(d, RatVec(d, Rational(0)));
    for (std::size_t i = 0; i < d; ++i) {
      diag_[i] = q[i][i];
      for (std::size_t j = i + 1; j < d; ++j) mu_[i][j] = q[i][j];
    }
  }

  IntMat gram_;
  RatVec diag_;
  std::vector<RatVec> mu_;
};

namespace detail {

inline Integer isqrt(const Integer& n) {
  if (n < 0) throw std::domain_error("isqrt of negative");
  return boost::multiprecision::sqrt(n);
}

inline Rational frac(const Rational& x) { return x - Rational(floor_of(x)); }

// Diagonal form D = U G V by unimodular row/column operations; returns V and diag(D).
inline std::pair<IntMat, std::vector<Integer>> diagonalize(const IntMat& G) {
  const std::size_t d = G.size();
  IntMat A = G;
  IntMat V(d, std::vector<Integer>(d, Integer(0)));
  for (std::size_t i = 0; i < d; ++i) V[i][i] = 1;
  auto col_op = [&](std::size_t dst, std::size_t src, const Integer& q) {  // col_dst -= q col_src
    for (std::size_t r = 0; r < d; ++r) {
      A[r][dst] -= q * A[r][src];
      V[r][dst] -= q * V[r][src];
    }
  };
  auto col_swap = [&](std::size_t a, std::size_t b) {
    for (std::size_t r = 0; r < d; ++r) {
      std::swap(A[r][a], A[r][b]);
      std::swap(V[r][a], V[r][b]);
    }
  };
  for (std::size_t t = 0; t < d; ++t) {
    for (;;) {
      // smallest nonzero entry of the trailing block to (t, t)
      std::size_t pr = d, pc = d;
      for (std::size_t r = t; r < d; ++r)
        for (std::size_t c = t; c < d; ++c)
          if (A[r][c] != 0 && (pr == d || abs(A[r][c]) < abs(A[pr][pc]))) {
            pr = r;
            pc = c;
          }
      if (pr == d) throw std::invalid_argument("degenerate gram matrix");
      std::swap(A[t], A[pr]);
      col_swap(t, pc);
      bool clean = true;
      for (std::size_t r = t + 1; r < d; ++r) {
        const Integer q = A[r][t] / A[t][t];
        for (std::size_t c = t; c < d; ++c) A[r][c] -= q * A[t][c];
        if (A[r][t] != 0) clean = false;
      }
      for (std::size_t c = t + 1; c < d; ++c) {
        col_op(c, t, A[t][c] / A[t][t]);
        if (A[t][c] != 0) clean = false;
      }
      if (clean) break;
    }
  }
  std::vector<Integer> s;
  for (std::size_t t = 0; t < d; ++t) s.push_back(abs(A[t][t]));
  return {V, s};
}

}  // namespace detail

/// Reduces λ to fractional coordinates in [0, 1).
inline RatVec reduce_coset(const RatVec& lambda) {
  RatVec out;
  for (const auto& x : lambda) out.push_back(detail::frac(x));
  return out;
}

/// Representatives of L′/L, one per class: λ = V D^{-1} k for the diagonal
/// form D = U G V, reduced to [0,1)^d and sorted lexicographically (0 first).
inline std::vector<RatVec> dual_cosets(const EvenLattice& L) {
  const std::size_t d = L.rank();
  const auto [V, s] = detail::diagonalize(L.gram());
  std::vector<RatVec> out;
  std::vector<Integer> k(d, Integer(0));
  for (;;) {
    RatVec lambda(d, Rational(0));
    for (std::size_t c = 0; c < d; ++c)
      for (std::size_t r = 0; r < d; ++r) lambda[r] += Rational(V[r][c]) * Rational(k[c], s[c]);
    out.push_back(reduce_coset(lambda));
    std::size_t pos = 0;
    while (pos < d && ++k[pos] == s[pos]) k[pos++] = 0;
    if (pos == d) break;
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  if (Integer(out.size()) != L.determinant()) throw std::logic_error("dual_cosets: class count differs from det G");
  return out;
}

/// Calls visit(e) for every e ∈ ℤ^d with Q(λ + e) ≤ bound.
inline void enumerate_shifted(const EvenLattice& L, const RatVec& lambda, const Rational bound,
                              const std::function<void(const std::vector<Integer>&, const Rational&)>& visit) {
  L.check(lambda);
  if (bound < 0) return;
  const std::size_t d = L.rank();
  const auto& D = L.ldl_diagonal();
  const auto& mu = L.ldl_upper();
  std::vector<Integer> e(d, Integer(0));
  RatVec x(d, Rational(0));  // x = λ + e on the assigned coordinates
  std::function<void(std::size_t, const Rational&)> rec = [&](std::size_t level, const Rational& budget) {
    const std::size_t i = level - 1;
    Rational t = lambda[i];
    for (std::size_t j = i + 1; j < d; ++j) t += mu[i][j] * x[j];
    const Rational r2 = budget / D[i];
    const Integer s = detail::isqrt(floor_of(r2)) + 1;
    const Integer lo = ceil_of(-t - Rational(s)), hi = floor_of(-t + Rational(s));
    for (Integer v = lo; v <= hi; ++v) {
      const Rational y = Rational(v) + t;
      const Rational used = D[i] * y * y;
      if (used > budget) continue;
      e[i] = v;
      x[i] = lambda[i] + Rational(v);
      if (i == 0) visit(e, bound - (budget - used));
      else rec(i, budget - used);
    }
  };
  rec(d, bound);
}

/// a_λ = min_{e ∈ L} Q(λ + e)
inline Rational conformal_weight(const EvenLattice& L, const RatVec& lambda) {
  if (!L.in_dual(lambda)) throw std::invalid_argument("conformal_weight: vector is not in the dual lattice");
  const RatVec start = reduce_coset(lambda);
  Rational best = L.norm(start);
  enumerate_shifted(L, start, best, [&](const std::vector<Integer>&, const Rational& q) {
    if (q < best) best = q;
  });
  return best;
}

/// |L^λ_j| = #{α ∈ L : Q(α + λ) = j}
inline Integer count_norm_layer(const EvenLattice& L, const RatVec& lambda, const Rational& j) {
  Integer count = 0;
  enumerate_shifted(L, lambda, j, [&](const std::vector<Integer>&, const Rational& q) {
    if (q == j) ++count;
  });
  return count;
}

/// dim V^λ_0 .. V^λ_N from (Σ_j |L^λ_j| q^j)(Σ_m p^d_m q^m) shifted by q^{-a_λ}.
inline std::vector<Integer> graded_dims(const EvenLattice& L, const RatVec& lambda, int max_n) {
  if (max_n < 0) return {};
  const Rational a = conformal_weight(L, lambda);
  std::map<Rational, Integer> theta;
  enumerate_shifted(L, lambda, a + max_n, [&](const std::vector<Integer>&, const Rational& q) { ++theta[q]; });
  const auto osc = labeled_partition_counts(static_cast<int>(L.rank()), max_n);
  std::map<Rational, Integer> series;
  for (const auto& [q, c] : theta)
    for (int m = 0; m <= max_n; ++m) {
      const Rational exp = q + m - a;
      if (exp <= max_n) series[exp] += c * osc[static_cast<std::size_t>(m)];
    }
  std::vector<Integer> dims(static_cast<std::size_t>(max_n) + 1, Integer(0));
  for (const auto& [exp, c] : series) {
    if (!is_integer(exp)) throw std::logic_error("graded_dims: exponent outside a_λ + ℤ");
    dims[static_cast<std::size_t>(numerator_of(exp).convert_to<long>())] += c;
  }
  return dims;
}

// ---- I/O ----

/// First line the rank d, then d rows of d integers. '#' starts a comment.
inline EvenLattice parse_gram(std::istream& in) {
  std::vector<Integer> tokens;
  std::string line;
  while (std::getline(in, line)) {
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    std::istringstream ls(line);
    std::string tok;
    while (ls >> tok) {
      try {
        tokens.emplace_back(tok);
      } catch (const std::runtime_error&) {
        throw std::invalid_argument("gram file: not an integer: " + tok);
      }
    }
  }
  if (tokens.empty()) throw std::invalid_argument("gram file: empty");
  if (tokens[0] < 1) throw std::invalid_argument("gram file: rank must be positive");
  const auto d = tokens[0].convert_to<std::size_t>();
  if (tokens.size() != 1 + d * d)
    throw std::invalid_argument("gram file: expected " + std::to_string(d * d) + " entries after the rank");
  IntMat G(d, std::vector<Integer>(d));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) G[i][j] = tokens[1 + i * d + j];
  return EvenLattice(std::move(G));
}

inline Json coset_to_json(const RatVec& lambda) {
  auto a = Json::array();
  for (const auto& x : lambda) a.push_back(to_string(x));
  return a;
}

inline Json module_json(const EvenLattice& L, const RatVec& lambda, int max_n) {
  Json j;
  j["coset"] = coset_to_json(lambda);
  j["conformal_weight"] = to_string(conformal_weight(L, lambda));
  auto dims = Json::array();
  for (const auto& v : graded_dims(L, lambda, max_n)) dims.push_back(v.convert_to<long long>());
  j["dims"] = std::move(dims);
  return j;
}

}  // namespace mta::lattice
