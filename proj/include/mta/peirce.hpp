#pragma once

// Finite-dimensional Peirce algebras over Q.
//
// A Peirce algebra is bigraded as ⊕ 𝔄_{i,-j} with 𝔄_{i,-j} ⋆ 𝔄_{k,-l} ⊆ δ_{jk} 𝔄_{i,-l}.
// Structure constants are stored per composable triple (i, j, k), so the
// grading rule holds by construction. Degrees run over 0..max_degree.

#include "mta/heisenberg.hpp"
#include "mta/json.hpp"
#include "mta/linalg.hpp"
#include "mta/partitions.hpp"
#include "mta/rational.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace mta::peirce {

using SparseVec = std::vector<std::pair<std::size_t, Rational>>;

/// A required hypothesis of a construction does not hold.
class PreconditionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline void sparse_set(SparseVec& v, std::size_t idx, const Rational& c) {
  for (auto it = v.begin(); it != v.end(); ++it) {
    if (it->first == idx) {
      if (is_zero(c)) v.erase(it);
      else it->second = c;
      return;
    }
  }
  if (!is_zero(c)) v.emplace_back(idx, c);
}

inline Rational sparse_get(const SparseVec& v, std::size_t idx) {
  for (const auto& [k, c] : v)
    if (k == idx) return c;
  return Rational(0);
}

}  // namespace detail

/// Bilinear multiplication table U × V → W between finite-dimensional spaces.
class ProductTable {
 public:
  ProductTable() = default;
  ProductTable(std::size_t left, std::size_t right, std::size_t target)
      : left_(left), right_(right), target_(target), table_(left * right) {}

  std::size_t left_dim() const noexcept { return left_; }
  std::size_t right_dim() const noexcept { return right_; }
  std::size_t target_dim() const noexcept { return target_; }

  const SparseVec& at(std::size_t a, std::size_t b) const { return table_.at(a * right_ + b); }

  Rational get(std::size_t a, std::size_t b, std::size_t c) const { return detail::sparse_get(at(a, b), c); }

  void set(std::size_t a, std::size_t b, std::size_t c, const Rational& coeff) {
    if (a >= left_ || b >= right_ || c >= target_) throw std::out_of_range("ProductTable::set index");
    detail::sparse_set(table_[a * right_ + b], c, coeff);
  }

  Vec basis_product(std::size_t a, std::size_t b) const {
    Vec out = zero_vec(target_);
    for (const auto& [c, v] : at(a, b)) out[c] += v;
    return out;
  }

  Vec apply(const Vec& x, const Vec& y) const {
    if (x.size() != left_ || y.size() != right_) throw std::invalid_argument("ProductTable::apply: dimension mismatch");
    Vec out = zero_vec(target_);
    for (std::size_t a = 0; a < left_; ++a) {
      if (is_zero(x[a])) continue;
      for (std::size_t b = 0; b < right_; ++b) {
        if (is_zero(y[b])) continue;
        const Rational s = x[a] * y[b];
        for (const auto& [c, v] : at(a, b)) out[c] += s * v;
      }
    }
    return out;
  }

 private:
  std::size_t left_ = 0, right_ = 0, target_ = 0;
  std::vector<SparseVec> table_;
};

class PeirceAlgebra {
 public:
  PeirceAlgebra() : PeirceAlgebra(0, {{0}}, {}) {}

  /// dims[i][j] = dim 𝔄_{i,-j}; unit0 = coordinates of 1_A in 𝔄_{0,0}.
  PeirceAlgebra(int max_degree, std::vector<std::vector<std::size_t>> dims, Vec unit0)
      : D_(max_degree), dims_(std::move(dims)), unit0_(std::move(unit0)) {
    if (max_degree < 0) throw std::invalid_argument("PeirceAlgebra: negative max_degree");
    const auto size = static_cast<std::size_t>(D_ + 1);
    if (dims_.size() != size) throw std::invalid_argument("PeirceAlgebra: dims must be (max_degree+1) square");
    for (const auto& row : dims_)
      if (row.size() != size) throw std::invalid_argument("PeirceAlgebra: dims must be (max_degree+1) square");
    if (unit0_.size() != dims_[0][0]) throw std::invalid_argument("PeirceAlgebra: unit0 length must equal dim A");
    tables_.resize(size * size * size);
    for (int i = 0; i <= D_; ++i)
      for (int j = 0; j <= D_; ++j)
        for (int k = 0; k <= D_; ++k) tables_[index(i, j, k)] = ProductTable(dim(i, j), dim(j, k), dim(i, k));
  }

  int max_degree() const noexcept { return D_; }
  std::size_t dim(int i, int j) const { return dims_.at(static_cast<std::size_t>(i)).at(static_cast<std::size_t>(j)); }
  const std::vector<std::vector<std::size_t>>& dims() const noexcept { return dims_; }
  const Vec& unit0() const noexcept { return unit0_; }

  /// 𝔄_{i,-j} × 𝔄_{j,-k} → 𝔄_{i,-k}
  const ProductTable& table(int i, int j, int k) const { return tables_.at(index(i, j, k)); }

  Rational structure_constant(int i, int j, int k, std::size_t a, std::size_t b, std::size_t c) const {
    return table(i, j, k).get(a, b, c);
  }

  void set_structure_constant(int i, int j, int k, std::size_t a, std::size_t b, std::size_t c, const Rational& v) {
    tables_.at(index(i, j, k)).set(a, b, c, v);
  }

  Vec multiply(int i, int j, int k, const Vec& x, const Vec& y) const { return table(i, j, k).apply(x, y); }

 private:
  std::size_t index(int i, int j, int k) const {
    if (i < 0 || j < 0 || k < 0 || i > D_ || j > D_ || k > D_) throw std::out_of_range("PeirceAlgebra: degree out of range");
    const auto s = static_cast<std::size_t>(D_ + 1);
    return (static_cast<std::size_t>(i) * s + static_cast<std::size_t>(j)) * s + static_cast<std::size_t>(k);
  }

  int D_;
  std::vector<std::vector<std::size_t>> dims_;
  Vec unit0_;
  std::vector<ProductTable> tables_;
};

/// Finite-dimensional associative algebra given by a basis and a product table.
struct Algebra {
  std::string label;
  ProductTable product;
  std::optional<Vec> unit;

  std::size_t dim() const noexcept { return product.left_dim(); }
  Vec mul(const Vec& x, const Vec& y) const { return product.apply(x, y); }
};

enum class Side { Left, Right };

/// Finite-dimensional module: action[a][m] is the image of basis vector m
/// under algebra basis element a (a·m for left modules, m·a for right).
struct ModuleRep {
  std::string algebra_label;
  std::size_t dim = 0;
  Side side = Side::Left;
  std::vector<std::vector<Vec>> action;

  Vec act(std::size_t a, const Vec& m) const {
    Vec out = zero_vec(dim);
    for (std::size_t k = 0; k < dim; ++k)
      if (!is_zero(m[k])) axpy(out, m[k], action.at(a).at(k));
    return out;
  }

  /// Action of an arbitrary algebra element x (coordinates in the algebra basis).
  Vec act(const Vec& x, const Vec& m) const {
    Vec out = zero_vec(dim);
    for (std::size_t a = 0; a < x.size(); ++a)
      if (!is_zero(x[a])) axpy(out, x[a], act(a, m));
    return out;
  }
};

inline ModuleRep zero_module(const Algebra& B, Side side = Side::Left) {
  return ModuleRep{B.label, 0, side, std::vector<std::vector<Vec>>(B.dim())};
}

inline ModuleRep regular_module(const Algebra& B, Side side = Side::Left) {
  ModuleRep m{B.label, B.dim(), side, {}};
  m.action.resize(B.dim());
  for (std::size_t a = 0; a < B.dim(); ++a)
    for (std::size_t x = 0; x < B.dim(); ++x)
      m.action[a].push_back(side == Side::Left ? B.product.basis_product(a, x) : B.product.basis_product(x, a));
  return m;
}

/// (ab)·m = a·(b·m) for left modules, m·(ab) = (m·a)·b for right modules.
inline bool is_representation(const Algebra& B, const ModuleRep& M) {
  if (M.action.size() != B.dim()) return false;
  // sparse columns: S[a][m] = action of basis element a on basis vector m
  std::vector<std::vector<SparseVec>> S(B.dim(), std::vector<SparseVec>(M.dim));
  for (std::size_t a = 0; a < B.dim(); ++a) {
    if (M.action[a].size() != M.dim) return false;
    for (std::size_t m = 0; m < M.dim; ++m)
      for (std::size_t k = 0; k < M.dim; ++k)
        if (!is_zero(M.action[a][m][k])) S[a][m].emplace_back(k, M.action[a][m][k]);
  }
  Vec diff = zero_vec(M.dim);
  std::vector<std::size_t> touched;
  for (std::size_t a = 0; a < B.dim(); ++a)
    for (std::size_t b = 0; b < B.dim(); ++b) {
      const auto& ab = B.product.at(a, b);
      const auto& first = M.side == Side::Left ? S[b] : S[a];
      const auto& second = M.side == Side::Left ? S[a] : S[b];
      for (std::size_t m = 0; m < M.dim; ++m) {
        touched.clear();
        for (const auto& [c, cv] : ab)
          for (const auto& [k, x] : S[c][m]) {
            diff[k] += cv * x;
            touched.push_back(k);
          }
        for (const auto& [k, x] : first[m])
          for (const auto& [l, y] : second[k]) {
            diff[l] -= x * y;
            touched.push_back(l);
          }
        bool ok = true;
        for (std::size_t k : touched) {
          if (!is_zero(diff[k])) ok = false;
          diff[k] = 0;
        }
        if (!ok) return false;
      }
    }
  return true;
}

inline bool acts_unitally(const Algebra& B, const ModuleRep& M) {
  if (!B.unit) return false;
  for (std::size_t m = 0; m < M.dim; ++m)
    if (M.act(*B.unit, unit_vec(M.dim, m)) != unit_vec(M.dim, m)) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Corners and graded pieces as algebras / modules

/// 𝔄_d with the ⋆ product; A = 𝔄_0 carries unit0.
inline Algebra corner_algebra(const PeirceAlgebra& P, int d) {
  Algebra B{d == 0 ? "A" : "A_" + std::to_string(d), P.table(d, d, d), std::nullopt};
  if (d == 0) B.unit = P.unit0();
  return B;
}

/// 𝔄_{i,-j} as a left 𝔄_i-module.
inline ModuleRep left_piece(const PeirceAlgebra& P, int i, int j) {
  ModuleRep m{i == 0 ? "A" : "A_" + std::to_string(i), P.dim(i, j), Side::Left, {}};
  const auto& t = P.table(i, i, j);
  m.action.resize(P.dim(i, i));
  for (std::size_t a = 0; a < P.dim(i, i); ++a)
    for (std::size_t x = 0; x < P.dim(i, j); ++x) m.action[a].push_back(t.basis_product(a, x));
  return m;
}

/// 𝔄_{i,-j} as a right 𝔄_j-module.
inline ModuleRep right_piece(const PeirceAlgebra& P, int i, int j) {
  ModuleRep m{j == 0 ? "A" : "A_" + std::to_string(j), P.dim(i, j), Side::Right, {}};
  const auto& t = P.table(i, j, j);
  m.action.resize(P.dim(j, j));
  for (std::size_t a = 0; a < P.dim(j, j); ++a)
    for (std::size_t x = 0; x < P.dim(i, j); ++x) m.action[a].push_back(t.basis_product(x, a));
  return m;
}

// ---------------------------------------------------------------------------
// Balanced tensor product

/// M ⊗_B N as a quotient of M ⊗ N; the pure tensor e_m ⊗ e_n has ambient
/// index m * dim N + n.
struct BalancedTensor {
  std::size_t left_dim = 0;
  std::size_t right_dim = 0;
  Quotient space{Subspace(0)};

  std::size_t dim() const noexcept { return space.dim(); }
  std::size_t pure_index(std::size_t m, std::size_t n) const { return m * right_dim + n; }
  std::pair<std::size_t, std::size_t> pure_factors(std::size_t ambient) const {
    return {ambient / right_dim, ambient % right_dim};
  }
  /// Quotient basis element k is the class of a pure tensor.
  std::pair<std::size_t, std::size_t> basis_factors(std::size_t k) const {
    return pure_factors(space.representative(k));
  }
  Vec project(const Vec& ambient) const { return space.project(ambient); }
  /// class of (x ⊗ y) for arbitrary vectors
  Vec project_tensor(const Vec& x, const Vec& y) const {
    Vec out = zero_vec(dim());
    for (std::size_t m = 0; m < left_dim; ++m) {
      if (is_zero(x[m])) continue;
      for (std::size_t n = 0; n < right_dim; ++n)
        if (!is_zero(y[n])) space.add_unit(out, pure_index(m, n), x[m] * y[n]);
    }
    return out;
  }
};

/// Quotient of M ⊗ N by the span of (m·b) ⊗ n − m ⊗ (b·n) over basis triples.
inline BalancedTensor balanced_tensor(const ModuleRep& M, const ModuleRep& N) {
  if (M.side != Side::Right || N.side != Side::Left)
    throw std::invalid_argument("balanced_tensor: need a right module and a left module");
  if (M.action.size() != N.action.size())
    throw std::invalid_argument("balanced_tensor: modules are over algebras of different dimension");
  BalancedTensor T;
  T.left_dim = M.dim;
  T.right_dim = N.dim;
  Subspace rel(M.dim * N.dim);
  for (std::size_t b = 0; b < M.action.size(); ++b)
    for (std::size_t m = 0; m < M.dim; ++m) {
      const Vec& mb = M.action[b][m];
      for (std::size_t n = 0; n < N.dim; ++n) {
        const Vec& bn = N.action[b][n];
        std::map<std::size_t, Rational> acc;
        for (std::size_t x = 0; x < M.dim; ++x)
          if (!is_zero(mb[x])) acc[T.pure_index(x, n)] += mb[x];
        for (std::size_t y = 0; y < N.dim; ++y)
          if (!is_zero(bn[y])) acc[T.pure_index(m, y)] -= bn[y];
        Subspace::SparseRow r;
        for (auto& [c, x] : acc)
          if (!is_zero(x)) r.emplace_back(c, std::move(x));
        if (!r.empty()) rel.insert(r);
      }
    }
  T.space = Quotient(std::move(rel));
  return T;
}

// ---------------------------------------------------------------------------
// Validation

struct AxiomCheck {
  std::string axiom;
  bool passed = true;
  std::string detail;
};

struct ValidationReport {
  std::vector<AxiomCheck> checks;
  bool passed() const {
    for (const auto& c : checks)
      if (!c.passed) return false;
    return true;
  }
  /// name of the first violated axiom, empty if none
  std::string first_failure() const {
    for (const auto& c : checks)
      if (!c.passed) return c.axiom;
    return {};
  }
};

namespace detail {

inline std::string deg_label(int i, int j) { return "A(" + std::to_string(i) + ",-" + std::to_string(j) + ")"; }

inline AxiomCheck check_unital_A(const PeirceAlgebra& P) {
  AxiomCheck c{"unital_A", true, ""};
  const auto& t = P.table(0, 0, 0);
  const std::size_t n = P.dim(0, 0);
  for (std::size_t a = 0; a < n && c.passed; ++a) {
    const Vec ea = unit_vec(n, a);
    if (t.apply(P.unit0(), ea) != ea || t.apply(ea, P.unit0()) != ea) {
      c.passed = false;
      c.detail = "unit0 is not a two-sided identity on basis element " + std::to_string(a) + " of A";
    }
  }
  return c;
}

inline AxiomCheck check_unital_corner_modules(const PeirceAlgebra& P) {
  AxiomCheck c{"unital_corner_modules", true, ""};
  for (int i = 0; i <= P.max_degree() && c.passed; ++i) {
    const std::size_t n = P.dim(i, 0);
    for (std::size_t x = 0; x < n; ++x)
      if (P.multiply(i, 0, 0, unit_vec(n, x), P.unit0()) != unit_vec(n, x)) {
        c.passed = false;
        c.detail = deg_label(i, 0) + " is not a unital right A-module";
        break;
      }
  }
  for (int j = 0; j <= P.max_degree() && c.passed; ++j) {
    const std::size_t n = P.dim(0, j);
    for (std::size_t x = 0; x < n; ++x)
      if (P.multiply(0, 0, j, P.unit0(), unit_vec(n, x)) != unit_vec(n, x)) {
        c.passed = false;
        c.detail = deg_label(0, j) + " is not a unital left A-module";
        break;
      }
  }
  return c;
}

inline AxiomCheck check_associativity(const PeirceAlgebra& P) {
  AxiomCheck c{"associativity", true, ""};
  const int D = P.max_degree();
  for (int i = 0; i <= D; ++i)
    for (int j = 0; j <= D; ++j)
      for (int k = 0; k <= D; ++k)
        for (int l = 0; l <= D; ++l) {
          const auto& ijk = P.table(i, j, k);
          const auto& ikl = P.table(i, k, l);
          const auto& jkl = P.table(j, k, l);
          const auto& ijl = P.table(i, j, l);
          Vec diff = zero_vec(P.dim(i, l));
          std::vector<std::size_t> touched;
          for (std::size_t a = 0; a < P.dim(i, j); ++a)
            for (std::size_t b = 0; b < P.dim(j, k); ++b)
              for (std::size_t e = 0; e < P.dim(k, l); ++e) {
                touched.clear();
                for (const auto& [m, s] : ijk.at(a, b))
                  for (const auto& [o, v] : ikl.at(m, e)) {
                    diff[o] += s * v;
                    touched.push_back(o);
                  }
                for (const auto& [m, s] : jkl.at(b, e))
                  for (const auto& [o, v] : ijl.at(a, m)) {
                    diff[o] -= s * v;
                    touched.push_back(o);
                  }
                bool equal = true;
                for (std::size_t o : touched) {
                  if (!is_zero(diff[o])) equal = false;
                  diff[o] = 0;
                }
                if (!equal) {
                  c.passed = false;
                  c.detail = "(xy)z != x(yz) for x in " + deg_label(i, j) + ", y in " + deg_label(j, k) +
                             ", z in " + deg_label(k, l) + " (basis " + std::to_string(a) + "," +
                             std::to_string(b) + "," + std::to_string(e) + ")";
                  return c;
                }
              }
        }
  return c;
}

}  // namespace detail

/// Rank data of the contraction map 𝔄_{d,0} ⊗_A 𝔄_{0,-d} → 𝔄_{d,-d}.
struct ContractionData {
  std::size_t tensor_dim = 0;
  std::size_t target_dim = 0;
  std::size_t image_rank = 0;
  bool well_defined = true;
  bool bijective() const { return well_defined && tensor_dim == target_dim && image_rank == target_dim; }
};

inline ContractionData contraction_data(const PeirceAlgebra& P, int d) {
  const auto T = balanced_tensor(right_piece(P, d, 0), left_piece(P, 0, d));
  ContractionData cd;
  cd.tensor_dim = T.dim();
  cd.target_dim = P.dim(d, d);
  const auto& t = P.table(d, 0, d);
  auto image = [&](const Vec& amb) {
    Vec out = zero_vec(cd.target_dim);
    for (std::size_t idx = 0; idx < amb.size(); ++idx) {
      if (is_zero(amb[idx])) continue;
      auto [b, a] = T.pure_factors(idx);
      for (const auto& [c, v] : t.at(b, a)) out[c] += amb[idx] * v;
    }
    return out;
  };
  for (const auto& r : T.space.relations().basis())
    if (!is_zero(image(r))) cd.well_defined = false;
  std::vector<Vec> cols;
  for (std::size_t k = 0; k < T.dim(); ++k) cols.push_back(image(unit_vec(T.left_dim * T.right_dim, T.space.representative(k))));
  cd.image_rank = rank_of(cd.target_dim, cols);
  return cd;
}

/// Checks grading, unitality of A and of the corner modules, associativity on
/// all composable basis triples and bijectivity of 𝔄_{d,0} ⊗_A 𝔄_{0,-d} → 𝔄_{d,-d}.
inline ValidationReport validate_peirce(const PeirceAlgebra& P) {
  ValidationReport rep;
  rep.checks.push_back({"grading", true, "products are stored per composable triple (i,j,k)"});
  rep.checks.push_back(detail::check_unital_A(P));
  rep.checks.push_back(detail::check_unital_corner_modules(P));
  rep.checks.push_back(detail::check_associativity(P));
  AxiomCheck contraction{"contraction", true, ""};
  for (int d = 0; d <= P.max_degree() && contraction.passed; ++d) {
    const auto cd = contraction_data(P, d);
    if (!cd.bijective()) {
      contraction.passed = false;
      contraction.detail = "degree " + std::to_string(d) + ": tensor dim " + std::to_string(cd.tensor_dim) +
                           ", target dim " + std::to_string(cd.target_dim) + ", image rank " +
                           std::to_string(cd.image_rank) + (cd.well_defined ? "" : ", not balanced");
    }
  }
  rep.checks.push_back(contraction);
  return rep;
}

// ---------------------------------------------------------------------------
// Zig-zag algebra 𝒵_d = 𝔄_{0,-d} ⊗_{𝔄_d} 𝔄_{d,0}

struct ZigZag {
  int degree = 0;
  std::size_t dim_A = 0;
  BalancedTensor space;
  std::vector<Vec> circ_table;  // circ_table[p * dim + q] = e_p ∘ e_q
  std::vector<Vec> star;        // star[p] = ⋆(e_p) ∈ A
  std::vector<Vec> left_A;      // left_A[α * dim + p] = e_α ⋆□ e_p
  std::vector<Vec> right_A;     // right_A[p * dim_A + α] = e_p ⋆□ e_α
  bool well_defined = true;

  std::size_t dim() const noexcept { return space.dim(); }

  Vec circ(const Vec& x, const Vec& y) const {
    Vec out = zero_vec(dim());
    for (std::size_t p = 0; p < dim(); ++p) {
      if (is_zero(x[p])) continue;
      for (std::size_t q = 0; q < dim(); ++q)
        if (!is_zero(y[q])) axpy(out, x[p] * y[q], circ_table[p * dim() + q]);
    }
    return out;
  }

  Vec star_of(const Vec& x) const {
    Vec out = zero_vec(dim_A);
    for (std::size_t p = 0; p < dim(); ++p)
      if (!is_zero(x[p])) axpy(out, x[p], star[p]);
    return out;
  }

  Vec act_left(const Vec& alpha, const Vec& z) const {
    Vec out = zero_vec(dim());
    for (std::size_t a = 0; a < dim_A; ++a) {
      if (is_zero(alpha[a])) continue;
      for (std::size_t p = 0; p < dim(); ++p)
        if (!is_zero(z[p])) axpy(out, alpha[a] * z[p], left_A[a * dim() + p]);
    }
    return out;
  }

  Vec act_right(const Vec& z, const Vec& alpha) const {
    Vec out = zero_vec(dim());
    for (std::size_t p = 0; p < dim(); ++p) {
      if (is_zero(z[p])) continue;
      for (std::size_t a = 0; a < dim_A; ++a)
        if (!is_zero(alpha[a])) axpy(out, z[p] * alpha[a], right_A[p * dim_A + a]);
    }
    return out;
  }

  /// The ideal Z_d = ⋆(𝒵_d) ⊴ A.
  Subspace ideal() const { return Subspace::span(dim_A, star); }
};

/// Builds 𝒵_d with (a1⊗a2)∘(b1⊗b2) = a1 ⊗ (a2⋆b1⋆b2) and ⋆(a1⊗a2) = a1⋆a2,
/// and checks that both descend to the balanced quotient.
inline ZigZag zigzag(const PeirceAlgebra& P, int d) {
  if (d < 0 || d > P.max_degree()) throw std::out_of_range("zigzag: degree out of range");
  ZigZag Z;
  Z.degree = d;
  Z.dim_A = P.dim(0, 0);
  Z.space = balanced_tensor(right_piece(P, 0, d), left_piece(P, d, 0));
  const auto& T = Z.space;
  const std::size_t ambient = T.left_dim * T.right_dim;
  const auto& t_d0d = P.table(d, 0, d);  // a2 ⋆ b1
  const auto& t_dd0 = P.table(d, d, 0);  // (a2⋆b1) ⋆ b2
  const auto& t_0d0 = P.table(0, d, 0);  // a1 ⋆ a2
  const auto& t_00d = P.table(0, 0, d);  // α ⋆ a1
  const auto& t_d00 = P.table(d, 0, 0);  // a2 ⋆ α

  // circ on pure tensors, projected to the quotient and accumulated into out
  auto circ_pure_into = [&](Vec& out, std::size_t x, std::size_t y, const Rational& s) {
    auto [a1, a2] = T.pure_factors(x);
    auto [b1, b2] = T.pure_factors(y);
    for (const auto& [m, mv] : t_d0d.at(a2, b1))
      for (const auto& [c, cv] : t_dd0.at(m, b2)) T.space.add_unit(out, T.pure_index(a1, c), s * mv * cv);
  };
  auto circ_pure = [&](std::size_t x, std::size_t y) {
    Vec out = zero_vec(T.dim());
    circ_pure_into(out, x, y, Rational(1));
    return out;
  };
  auto star_ambient = [&](const Vec& x) {
    Vec out = zero_vec(Z.dim_A);
    for (std::size_t i = 0; i < ambient; ++i) {
      if (is_zero(x[i])) continue;
      auto [a1, a2] = T.pure_factors(i);
      for (const auto& [c, v] : t_0d0.at(a1, a2)) out[c] += x[i] * v;
    }
    return out;
  };

  const std::size_t n = T.dim();
  std::vector<Vec> reps;
  for (std::size_t p = 0; p < n; ++p) reps.push_back(unit_vec(ambient, T.space.representative(p)));

  for (const auto& r : T.space.relations().sparse_basis()) {
    Vec star_r = zero_vec(Z.dim_A);
    for (const auto& [i, x] : r) {
      auto [a1, a2] = T.pure_factors(i);
      for (const auto& [c, v] : t_0d0.at(a1, a2)) star_r[c] += x * v;
    }
    if (!is_zero(star_r)) Z.well_defined = false;
    for (std::size_t q : T.space.representatives()) {
      Vec left = zero_vec(n), right = zero_vec(n);
      for (const auto& [i, x] : r) {
        circ_pure_into(left, i, q, x);
        circ_pure_into(right, q, i, x);
      }
      if (!is_zero(left) || !is_zero(right)) Z.well_defined = false;
    }
    if (!Z.well_defined) break;
  }

  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t q = 0; q < n; ++q)
      Z.circ_table.push_back(circ_pure(T.space.representative(p), T.space.representative(q)));
  for (std::size_t p = 0; p < n; ++p) Z.star.push_back(star_ambient(reps[p]));

  for (std::size_t a = 0; a < Z.dim_A; ++a)
    for (std::size_t p = 0; p < n; ++p) {
      auto [a1, a2] = T.basis_factors(p);
      Vec out = zero_vec(n);
      for (const auto& [c, v] : t_00d.at(a, a1)) T.space.add_unit(out, T.pure_index(c, a2), v);
      Z.left_A.push_back(std::move(out));
    }
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t a = 0; a < Z.dim_A; ++a) {
      auto [a1, a2] = T.basis_factors(p);
      Vec out = zero_vec(n);
      for (const auto& [c, v] : t_d00.at(a2, a)) T.space.add_unit(out, T.pure_index(a1, c), v);
      Z.right_A.push_back(std::move(out));
    }
  return Z;
}

/// 𝔞 ⋆□ ⋆(𝔟) = 𝔞 ∘ 𝔟 = ⋆(𝔞) ⋆□ 𝔟 on all basis pairs.
inline AxiomCheck action_through_A_check(const ZigZag& Z) {
  AxiomCheck c{"action_through_A", true, ""};
  const std::size_t n = Z.dim();
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t q = 0; q < n; ++q) {
      const Vec ep = unit_vec(n, p), eq = unit_vec(n, q);
      const Vec prod = Z.circ(ep, eq);
      if (Z.act_right(ep, Z.star_of(eq)) != prod || Z.act_left(Z.star_of(ep), eq) != prod) {
        c.passed = false;
        c.detail = "factoring identity fails on basis pair (" + std::to_string(p) + "," + std::to_string(q) + ")";
        return c;
      }
    }
  return c;
}

/// Associativity of ∘, ⋆ multiplicative, factoring through A, 𝒵∘𝒵 = 𝒵 and Z_d² = Z_d.
inline ValidationReport zigzag_laws(const PeirceAlgebra& P, const ZigZag& Z) {
  ValidationReport rep;
  const std::size_t n = Z.dim();
  const Algebra A = corner_algebra(P, 0);
  rep.checks.push_back({"well_defined", Z.well_defined, Z.well_defined ? "" : "∘ or ⋆ does not descend to the quotient"});

  AxiomCheck assoc{"circ_associativity", true, ""};
  std::vector<SparseVec> table(n * n);
  for (std::size_t pq = 0; pq < n * n; ++pq)
    for (std::size_t s = 0; s < n; ++s)
      if (!is_zero(Z.circ_table[pq][s])) table[pq].emplace_back(s, Z.circ_table[pq][s]);
  Vec diff = zero_vec(n);
  std::vector<std::size_t> touched;
  for (std::size_t p = 0; p < n && assoc.passed; ++p)
    for (std::size_t q = 0; q < n && assoc.passed; ++q)
      for (std::size_t r = 0; r < n; ++r) {
        touched.clear();
        for (const auto& [s, x] : table[p * n + q])
          for (const auto& [t, y] : table[s * n + r]) {
            diff[t] += x * y;
            touched.push_back(t);
          }
        for (const auto& [s, x] : table[q * n + r])
          for (const auto& [t, y] : table[p * n + s]) {
            diff[t] -= x * y;
            touched.push_back(t);
          }
        bool equal = true;
        for (std::size_t t : touched) {
          if (!is_zero(diff[t])) equal = false;
          diff[t] = 0;
        }
        if (!equal) {
          assoc.passed = false;
          assoc.detail = "basis triple (" + std::to_string(p) + "," + std::to_string(q) + "," + std::to_string(r) + ")";
          break;
        }
      }
  rep.checks.push_back(assoc);

  AxiomCheck hom{"star_homomorphism", true, ""};
  for (std::size_t p = 0; p < n && hom.passed; ++p)
    for (std::size_t q = 0; q < n; ++q) {
      const Vec ep = unit_vec(n, p), eq = unit_vec(n, q);
      if (Z.star_of(Z.circ(ep, eq)) != A.mul(Z.star_of(ep), Z.star_of(eq))) {
        hom.passed = false;
        hom.detail = "basis pair (" + std::to_string(p) + "," + std::to_string(q) + ")";
        break;
      }
    }
  rep.checks.push_back(hom);

  rep.checks.push_back(action_through_A_check(Z));

  std::vector<Vec> products;
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t q = 0; q < n; ++q) products.push_back(Z.circ_table[p * n + q]);
  const bool zz_square = Subspace::span(n, products).dim() == n;
  rep.checks.push_back({"zigzag_square", zz_square, zz_square ? "" : "Z∘Z is a proper subspace of Z"});

  const Subspace ideal = Z.ideal();
  std::vector<Vec> ideal_products;
  for (const auto& x : ideal.basis())
    for (const auto& y : ideal.basis()) ideal_products.push_back(A.mul(x, y));
  const bool idempotent = Subspace::span(Z.dim_A, ideal_products) == ideal;
  rep.checks.push_back({"ideal_idempotent", idempotent, idempotent ? "" : "Z_d^2 != Z_d"});
  return rep;
}

// ---------------------------------------------------------------------------
// Strong identities

struct StrongIdentityResult {
  std::optional<Vec> element;     // coordinates in 𝔄_{d,-d}
  bool unital_corner = false;     // unit0 + 1_d is the identity of 𝔄_{{0,d}}
  std::string detail;
};

/// Solves a ⋆ 1_d = a for a ∈ 𝔄_{0,-d} and 1_d ⋆ b = b for b ∈ 𝔄_{d,0}.
inline StrongIdentityResult find_strong_identity(const PeirceAlgebra& P, int d) {
  if (d < 0 || d > P.max_degree()) throw std::out_of_range("find_strong_identity: degree out of range");
  const std::size_t N = P.dim(d, d), L = P.dim(0, d), R = P.dim(d, 0);
  const auto& t_0dd = P.table(0, d, d);
  const auto& t_dd0 = P.table(d, d, 0);
  Mat A;
  Vec rhs;
  for (std::size_t a = 0; a < L; ++a)
    for (std::size_t c = 0; c < L; ++c) {
      Vec row = zero_vec(N);
      for (std::size_t k = 0; k < N; ++k) row[k] = t_0dd.get(a, k, c);
      A.push_back(std::move(row));
      rhs.push_back(Rational(a == c ? 1 : 0));
    }
  for (std::size_t b = 0; b < R; ++b)
    for (std::size_t c = 0; c < R; ++c) {
      Vec row = zero_vec(N);
      for (std::size_t k = 0; k < N; ++k) row[k] = t_dd0.get(k, b, c);
      A.push_back(std::move(row));
      rhs.push_back(Rational(b == c ? 1 : 0));
    }
  StrongIdentityResult res;
  res.element = solve(A, rhs, N);
  if (!res.element) {
    res.detail = "no element of A_" + std::to_string(d) + " acts as identity on A(0,-d) and A(d,0)";
    return res;
  }
  // identity of the corner subalgebra A_0 ⊕ A_{0,-d} ⊕ A_{d,0} ⊕ A_d
  const Vec& x = *res.element;
  const Vec& u = P.unit0();
  bool ok = true;
  for (std::size_t k = 0; k < N && ok; ++k) {
    const Vec e = unit_vec(N, k);
    ok = P.multiply(d, d, d, x, e) == e && P.multiply(d, d, d, e, x) == e;
  }
  for (std::size_t a = 0; a < L && ok; ++a) {
    const Vec e = unit_vec(L, a);
    ok = P.multiply(0, 0, d, u, e) == e && P.multiply(0, d, d, e, x) == e;
  }
  for (std::size_t b = 0; b < R && ok; ++b) {
    const Vec e = unit_vec(R, b);
    ok = P.multiply(d, d, 0, x, e) == e && P.multiply(d, 0, 0, e, u) == e;
  }
  for (std::size_t a = 0; a < P.dim(0, 0) && ok; ++a) {
    const Vec e = unit_vec(P.dim(0, 0), a);
    ok = P.multiply(0, 0, 0, u, e) == e && P.multiply(0, 0, 0, e, u) == e;
  }
  res.unital_corner = ok;
  if (!ok) res.detail = "solution is not a two-sided identity of the corner subalgebra";
  return res;
}

// ---------------------------------------------------------------------------
// Ideals of A and central idempotents

struct IdealSplit {
  Vec epsilon;            // identity of I, coordinates in A
  Subspace ideal;         // I
  Subspace complement;    // I' = A(1 - ε)
  bool idempotent = false;
  bool central = false;
  bool block_diagonal = false;
};

struct IdealUnitReport {
  bool idempotent_ideal = false;  // I^2 = I
  std::optional<IdealSplit> split;
};

/// Identity of the ideal I ⊴ A, if any, and the splitting A = I × I'.
inline IdealUnitReport ideal_unit_and_split(const PeirceAlgebra& P, const Subspace& I) {
  const Algebra A = corner_algebra(P, 0);
  const std::size_t n = A.dim();
  if (I.ambient_dim() != n) throw std::invalid_argument("ideal_unit_and_split: subspace is not in A");
  for (const auto& z : I.basis())
    for (std::size_t a = 0; a < n; ++a) {
      const Vec ea = unit_vec(n, a);
      if (!I.contains(A.mul(ea, z)) || !I.contains(A.mul(z, ea)))
        throw std::invalid_argument("ideal_unit_and_split: subspace is not a two-sided ideal");
    }
  IdealUnitReport rep;
  std::vector<Vec> sq;
  for (const auto& x : I.basis())
    for (const auto& y : I.basis()) sq.push_back(A.mul(x, y));
  rep.idempotent_ideal = Subspace::span(n, sq) == I;

  const auto& basis = I.basis();
  const std::size_t r = basis.size();
  Mat M;
  Vec rhs;
  for (const auto& zj : basis) {
    std::vector<Vec> left, right;
    for (const auto& zk : basis) {
      left.push_back(A.mul(zk, zj));
      right.push_back(A.mul(zj, zk));
    }
    for (std::size_t c = 0; c < n; ++c) {
      Vec row1 = zero_vec(r), row2 = zero_vec(r);
      for (std::size_t k = 0; k < r; ++k) {
        row1[k] = left[k][c];
        row2[k] = right[k][c];
      }
      M.push_back(std::move(row1));
      rhs.push_back(zj[c]);
      M.push_back(std::move(row2));
      rhs.push_back(zj[c]);
    }
  }
  const auto x = solve(M, rhs, r);
  if (!x) return rep;

  IdealSplit s;
  s.ideal = I;
  s.epsilon = zero_vec(n);
  for (std::size_t k = 0; k < r; ++k) axpy(s.epsilon, (*x)[k], basis[k]);
  s.idempotent = A.mul(s.epsilon, s.epsilon) == s.epsilon;
  s.central = true;
  for (std::size_t a = 0; a < n && s.central; ++a) {
    const Vec ea = unit_vec(n, a);
    s.central = A.mul(s.epsilon, ea) == A.mul(ea, s.epsilon);
  }
  Vec eta = A.unit.value();
  axpy(eta, Rational(-1), s.epsilon);
  std::vector<Vec> comp;
  for (std::size_t a = 0; a < n; ++a) comp.push_back(A.mul(unit_vec(n, a), eta));
  s.complement = Subspace::span(n, comp);

  bool block = s.ideal.dim() + s.complement.dim() == n;
  for (const auto& u : s.ideal.basis())
    for (const auto& v : s.complement.basis())
      block = block && is_zero(A.mul(u, v)) && is_zero(A.mul(v, u));
  for (const auto& u : s.ideal.basis())
    for (const auto& v : s.ideal.basis()) block = block && s.ideal.contains(A.mul(u, v));
  for (const auto& u : s.complement.basis())
    for (const auto& v : s.complement.basis()) block = block && s.complement.contains(A.mul(u, v));
  s.block_diagonal = block;
  rep.split = std::move(s);
  return rep;
}

/// Z_d as an algebra on the echelon basis of the ideal, unit ε when present.
inline Algebra ideal_algebra(const PeirceAlgebra& P, const Subspace& I, const std::optional<Vec>& epsilon) {
  const Algebra A = corner_algebra(P, 0);
  const auto& basis = I.basis();
  Algebra Z{"Z", ProductTable(basis.size(), basis.size(), basis.size()), std::nullopt};
  for (std::size_t p = 0; p < basis.size(); ++p)
    for (std::size_t q = 0; q < basis.size(); ++q) {
      const Vec coords = I.coordinates(A.mul(basis[p], basis[q]));
      for (std::size_t c = 0; c < coords.size(); ++c)
        if (!is_zero(coords[c])) Z.product.set(p, q, c, coords[c]);
    }
  if (epsilon) Z.unit = I.coordinates(*epsilon);
  return Z;
}

// ---------------------------------------------------------------------------
// Morita functors between 𝔄_d-modules and Z_d-modules

/// Data shared by both functors at a fixed degree, after checking the hypotheses.
struct MoritaContext {
  int degree = 0;
  Vec strong_identity;  // in 𝔄_d
  Subspace ideal;       // Z_d ⊆ A
  Vec epsilon;          // identity of Z_d
  Algebra corner;       // 𝔄_d, unit = strong identity
  Algebra zd;           // Z_d on the echelon basis of the ideal
};

/// Reuses an already computed zig-zag algebra of P.
inline MoritaContext morita_context(const PeirceAlgebra& P, const ZigZag& Z) {
  const int d = Z.degree;
  const auto si = find_strong_identity(P, d);
  if (!si.element) throw PreconditionError("A_" + std::to_string(d) + " has no strong identity");
  const Subspace ideal = Z.ideal();
  const auto split = ideal_unit_and_split(P, ideal);
  if (!split.split) throw PreconditionError("Z_" + std::to_string(d) + " is not unital");
  MoritaContext ctx;
  ctx.degree = d;
  ctx.strong_identity = *si.element;
  ctx.ideal = ideal;
  ctx.epsilon = split.split->epsilon;
  ctx.corner = corner_algebra(P, d);
  ctx.corner.unit = ctx.strong_identity;
  ctx.zd = ideal_algebra(P, ideal, ctx.epsilon);
  ctx.zd.label = "Z_" + std::to_string(d);
  return ctx;
}

inline MoritaContext morita_context(const PeirceAlgebra& P, int d) { return morita_context(P, zigzag(P, d)); }

struct MoritaImage {
  ModuleRep module;
  BalancedTensor tensor;
};

namespace detail {

inline void require_module(const Algebra& B, const ModuleRep& W, const char* what) {
  if (W.side != Side::Left) throw std::invalid_argument(std::string(what) + ": expected a left module");
  if (W.action.size() != B.dim()) throw std::invalid_argument(std::string(what) + ": module is over an algebra of the wrong dimension");
  if (!is_representation(B, W)) throw std::invalid_argument(std::string(what) + ": action is not a representation");
  if (!acts_unitally(B, W)) throw PreconditionError(std::string(what) + ": module is not unital");
}

}  // namespace detail

/// W_d ↦ 𝔄_{0,-d} ⊗_{𝔄_d} W_d, a Z_d-module via (z ⋆ a) ⊗ w.
inline MoritaImage morita_forward(const PeirceAlgebra& P, const MoritaContext& ctx, const ModuleRep& W) {
  detail::require_module(ctx.corner, W, "morita_forward");
  const int d = ctx.degree;
  MoritaImage out;
  out.tensor = balanced_tensor(right_piece(P, 0, d), W);
  const auto& T = out.tensor;
  const auto& t_00d = P.table(0, 0, d);
  out.module = ModuleRep{ctx.zd.label, T.dim(), Side::Left, {}};
  out.module.action.resize(ctx.zd.dim());
  for (std::size_t z = 0; z < ctx.zd.dim(); ++z) {
    const Vec& zvec = ctx.ideal.basis()[z];
    for (std::size_t q = 0; q < T.dim(); ++q) {
      auto [a, w] = T.basis_factors(q);
      const Vec za = t_00d.apply(zvec, unit_vec(P.dim(0, d), a));
      out.module.action[z].push_back(T.project_tensor(za, unit_vec(W.dim, w)));
    }
  }
  return out;
}

inline MoritaImage morita_forward(const PeirceAlgebra& P, int d, const ModuleRep& W) {
  return morita_forward(P, morita_context(P, d), W);
}

/// W_0 ↦ 𝔄_{d,0} ⊗_A W_0, A acting on W_0 through a ↦ aε ∈ Z_d; an 𝔄_d-module via x ⋆ b.
inline MoritaImage morita_backward(const PeirceAlgebra& P, const MoritaContext& ctx, const ModuleRep& W0) {
  detail::require_module(ctx.zd, W0, "morita_backward");
  const int d = ctx.degree;
  const Algebra A = corner_algebra(P, 0);
  ModuleRep W0_A{"A", W0.dim, Side::Left, {}};
  W0_A.action.resize(A.dim());
  for (std::size_t a = 0; a < A.dim(); ++a) {
    const Vec zc = ctx.ideal.coordinates(A.mul(unit_vec(A.dim(), a), ctx.epsilon));
    for (std::size_t w = 0; w < W0.dim; ++w) W0_A.action[a].push_back(W0.act(zc, unit_vec(W0.dim, w)));
  }
  MoritaImage out;
  out.tensor = balanced_tensor(right_piece(P, d, 0), W0_A);
  const auto& T = out.tensor;
  const auto& t_dd0 = P.table(d, d, 0);
  out.module = ModuleRep{ctx.corner.label, T.dim(), Side::Left, {}};
  out.module.action.resize(P.dim(d, d));
  for (std::size_t x = 0; x < P.dim(d, d); ++x)
    for (std::size_t q = 0; q < T.dim(); ++q) {
      auto [b, w] = T.basis_factors(q);
      const Vec xb = t_dd0.apply(unit_vec(P.dim(d, d), x), unit_vec(P.dim(d, 0), b));
      out.module.action[x].push_back(T.project_tensor(xb, unit_vec(W0.dim, w)));
    }
  return out;
}

inline MoritaImage morita_backward(const PeirceAlgebra& P, int d, const ModuleRep& W0) {
  return morita_backward(P, morita_context(P, d), W0);
}

struct RoundtripReport {
  std::size_t original_dim = 0;
  std::size_t intermediate_dim = 0;
  std::size_t roundtrip_dim = 0;
  std::size_t evaluation_rank = 0;
  bool intermediate_is_module = false;
  bool roundtrip_is_module = false;
  bool equivariant = false;
  bool passed() const {
    return intermediate_is_module && roundtrip_is_module && equivariant && original_dim == roundtrip_dim &&
           evaluation_rank == original_dim;
  }
};

/// W ↦ 𝔄_{d,0} ⊗_A (𝔄_{0,-d} ⊗_{𝔄_d} W) → W, b ⊗ a ⊗ w ↦ (b ⋆ a)·w, checked
/// to be an 𝔄_d-equivariant bijection.
inline RoundtripReport verify_roundtrip(const PeirceAlgebra& P, const MoritaContext& ctx, const ModuleRep& W) {
  const int d = ctx.degree;
  RoundtripReport rep;
  const auto fwd = morita_forward(P, ctx, W);
  rep.original_dim = W.dim;
  rep.intermediate_dim = fwd.module.dim;
  rep.intermediate_is_module = is_representation(ctx.zd, fwd.module) && acts_unitally(ctx.zd, fwd.module);
  const auto back = morita_backward(P, ctx, fwd.module);
  rep.roundtrip_dim = back.module.dim;
  rep.roundtrip_is_module = is_representation(ctx.corner, back.module) && acts_unitally(ctx.corner, back.module);

  const auto& t_d0d = P.table(d, 0, d);
  std::vector<Vec> eval;  // eval[q] ∈ W
  for (std::size_t q = 0; q < back.module.dim; ++q) {
    auto [b, k] = back.tensor.basis_factors(q);
    auto [a, w] = fwd.tensor.basis_factors(k);
    eval.push_back(W.act(t_d0d.basis_product(b, a), unit_vec(W.dim, w)));
  }
  rep.evaluation_rank = rank_of(W.dim, eval);
  auto apply_eval = [&](const Vec& v) {
    Vec out = zero_vec(W.dim);
    for (std::size_t q = 0; q < v.size(); ++q)
      if (!is_zero(v[q])) axpy(out, v[q], eval[q]);
    return out;
  };
  rep.equivariant = true;
  for (std::size_t x = 0; x < ctx.corner.dim() && rep.equivariant; ++x)
    for (std::size_t q = 0; q < back.module.dim; ++q)
      if (apply_eval(back.module.action[x][q]) != W.act(x, eval[q])) {
        rep.equivariant = false;
        break;
      }
  return rep;
}

inline RoundtripReport verify_roundtrip(const PeirceAlgebra& P, int d, const ModuleRep& W) {
  return verify_roundtrip(P, morita_context(P, d), W);
}

/// W0 ↦ 𝔄_{0,-d} ⊗_{𝔄_d} (𝔄_{d,0} ⊗_A W0) → W0, a ⊗ b ⊗ w ↦ (a ⋆ b)·w.
inline RoundtripReport verify_roundtrip_zd(const PeirceAlgebra& P, const MoritaContext& ctx, const ModuleRep& W0) {
  const int d = ctx.degree;
  RoundtripReport rep;
  const auto back = morita_backward(P, ctx, W0);
  rep.original_dim = W0.dim;
  rep.intermediate_dim = back.module.dim;
  rep.intermediate_is_module = is_representation(ctx.corner, back.module) && acts_unitally(ctx.corner, back.module);
  const auto fwd = morita_forward(P, ctx, back.module);
  rep.roundtrip_dim = fwd.module.dim;
  rep.roundtrip_is_module = is_representation(ctx.zd, fwd.module) && acts_unitally(ctx.zd, fwd.module);

  const auto& t_0d0 = P.table(0, d, 0);
  std::vector<Vec> eval;
  for (std::size_t q = 0; q < fwd.module.dim; ++q) {
    auto [a, k] = fwd.tensor.basis_factors(q);
    auto [b, w] = back.tensor.basis_factors(k);
    const Vec ab = ctx.ideal.coordinates(t_0d0.basis_product(a, b));
    eval.push_back(W0.act(ab, unit_vec(W0.dim, w)));
  }
  rep.evaluation_rank = rank_of(W0.dim, eval);
  auto apply_eval = [&](const Vec& v) {
    Vec out = zero_vec(W0.dim);
    for (std::size_t q = 0; q < v.size(); ++q)
      if (!is_zero(v[q])) axpy(out, v[q], eval[q]);
    return out;
  };
  rep.equivariant = true;
  for (std::size_t z = 0; z < ctx.zd.dim() && rep.equivariant; ++z)
    for (std::size_t q = 0; q < fwd.module.dim; ++q)
      if (apply_eval(fwd.module.action[z][q]) != W0.act(z, eval[q])) {
        rep.equivariant = false;
        break;
      }
  return rep;
}

// ---------------------------------------------------------------------------
// Fixtures

/// Block-graded dimension vectors D^b_0..D^b_D, one per block.
using BlockSizes = std::vector<std::vector<std::size_t>>;

namespace detail {

inline int check_blocks(const BlockSizes& sizes) {
  if (sizes.empty()) return 0;
  const std::size_t len = sizes.front().size();
  if (len == 0) throw std::invalid_argument("matrix_model: empty dimension vector");
  for (const auto& b : sizes) {
    if (b.size() != len) throw std::invalid_argument("matrix_model: blocks must have equal length");
    bool any = false;
    for (std::size_t v : b) any = any || v != 0;
    if (any && b[0] == 0) throw std::invalid_argument("matrix_model: a nonzero block needs a nonzero degree-0 piece");
  }
  return static_cast<int>(len) - 1;
}

inline std::size_t block_offset(const BlockSizes& sizes, std::size_t block, int i, int j) {
  std::size_t off = 0;
  for (std::size_t b = 0; b < block; ++b)
    off += sizes[b][static_cast<std::size_t>(i)] * sizes[b][static_cast<std::size_t>(j)];
  return off;
}

}  // namespace detail

/// ⊕_b Hom between graded pieces: 𝔄_{i,-j} = ⊕_b Mat(D^b_i × D^b_j), product
/// by matrix composition, basis ordered by block then row-major.
inline PeirceAlgebra matrix_model(const BlockSizes& sizes) {
  const int D = detail::check_blocks(sizes);
  const auto S = static_cast<std::size_t>(D + 1);
  std::vector<std::vector<std::size_t>> dims(S, std::vector<std::size_t>(S, 0));
  for (std::size_t i = 0; i < S; ++i)
    for (std::size_t j = 0; j < S; ++j)
      for (const auto& b : sizes) dims[i][j] += b[i] * b[j];
  Vec unit = zero_vec(dims[0][0]);
  for (std::size_t b = 0; b < sizes.size(); ++b) {
    const std::size_t off = detail::block_offset(sizes, b, 0, 0);
    for (std::size_t r = 0; r < sizes[b][0]; ++r) unit[off + r * sizes[b][0] + r] = 1;
  }
  PeirceAlgebra P(D, dims, unit);
  for (int i = 0; i <= D; ++i)
    for (int j = 0; j <= D; ++j)
      for (int k = 0; k <= D; ++k)
        for (std::size_t b = 0; b < sizes.size(); ++b) {
          const std::size_t di = sizes[b][static_cast<std::size_t>(i)];
          const std::size_t dj = sizes[b][static_cast<std::size_t>(j)];
          const std::size_t dk = sizes[b][static_cast<std::size_t>(k)];
          const std::size_t oij = detail::block_offset(sizes, b, i, j);
          const std::size_t ojk = detail::block_offset(sizes, b, j, k);
          const std::size_t oik = detail::block_offset(sizes, b, i, k);
          for (std::size_t r = 0; r < di; ++r)
            for (std::size_t c = 0; c < dj; ++c)
              for (std::size_t s = 0; s < dk; ++s)
                P.set_structure_constant(i, j, k, oij + r * dj + c, ojk + c * dk + s, oik + r * dk + s, Rational(1));
        }
  return P;
}

/// Column vectors of block b acted on by 𝔄_d = ⊕ Mat(D^b_d); other blocks act by zero.
inline ModuleRep column_module(const BlockSizes& sizes, int d, std::size_t block) {
  detail::check_blocks(sizes);
  const auto di = static_cast<std::size_t>(d);
  const std::size_t n = sizes.at(block).at(di);
  std::size_t total = 0;
  for (const auto& b : sizes) total += b[di] * b[di];
  ModuleRep m{d == 0 ? "A" : "A_" + std::to_string(d), n, Side::Left, {}};
  m.action.assign(total, std::vector<Vec>(n, zero_vec(n)));
  const std::size_t off = detail::block_offset(sizes, block, d, d);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) m.action[off + r * n + c][c][r] = 1;
  return m;
}

/// Restriction of an A-module to the ideal Z (echelon basis of `ideal`).
inline ModuleRep restrict_to_ideal(const ModuleRep& M, const Subspace& ideal, std::string label) {
  ModuleRep out{std::move(label), M.dim, M.side, {}};
  for (const auto& z : ideal.basis()) {
    std::vector<Vec> col;
    for (std::size_t m = 0; m < M.dim; ++m) col.push_back(M.act(z, unit_vec(M.dim, m)));
    out.action.push_back(std::move(col));
  }
  return out;
}

/// Mode transition algebra of the rank-n Heisenberg VOA truncated at degree D
/// and specialised along h_i ↦ c_i. 𝔄_{i,-j} has basis u_σ ⊗ ū_τ over
/// P^n_i × P^n_j (index σ * |P^n_j| + τ) and
/// (u_σ ⊗ ū_τ) ⋆ (u_σ' ⊗ ū_τ') = ⋆(ū_τ · u_σ')(c) u_σ ⊗ ū_τ'.
inline PeirceAlgebra heisenberg_truncation(int n, int D, const std::vector<Rational>& point) {
  if (n < 1) throw std::invalid_argument("heisenberg_truncation: rank must be positive");
  if (D < 0) throw std::invalid_argument("heisenberg_truncation: negative degree bound");
  if (point.size() != static_cast<std::size_t>(n)) throw std::invalid_argument("heisenberg_truncation: evaluation point has wrong length");
  std::vector<std::size_t> counts;
  std::vector<std::vector<Rational>> pairings;  // per level, |P|×|P| flattened
  for (int j = 0; j <= D; ++j) {
    const auto pm = heisenberg::pairing_matrix(n, j);
    counts.push_back(pm.basis.size());
    std::vector<Rational> flat;
    for (const auto& row : pm.entries)
      for (const auto& e : row) flat.push_back(e.evaluate(point));
    pairings.push_back(std::move(flat));
  }
  const auto S = static_cast<std::size_t>(D + 1);
  std::vector<std::vector<std::size_t>> dims(S, std::vector<std::size_t>(S));
  for (std::size_t i = 0; i < S; ++i)
    for (std::size_t j = 0; j < S; ++j) dims[i][j] = counts[i] * counts[j];
  PeirceAlgebra P(D, dims, Vec{Rational(1)});
  for (int i = 0; i <= D; ++i)
    for (int j = 0; j <= D; ++j)
      for (int k = 0; k <= D; ++k) {
        const std::size_t pi = counts[static_cast<std::size_t>(i)];
        const std::size_t pj = counts[static_cast<std::size_t>(j)];
        const std::size_t pk = counts[static_cast<std::size_t>(k)];
        const auto& pair = pairings[static_cast<std::size_t>(j)];
        for (std::size_t s = 0; s < pi; ++s)
          for (std::size_t t = 0; t < pj; ++t)
            for (std::size_t s2 = 0; s2 < pj; ++s2) {
              const Rational& v = pair[t * pj + s2];
              if (is_zero(v)) continue;
              for (std::size_t t2 = 0; t2 < pk; ++t2)
                P.set_structure_constant(i, j, k, s * pj + t, s2 * pk + t2, s * pk + t2, v);
            }
      }
  return P;
}

/// Σ ‖σ⃗‖^{-1} u_σ⃗ ⊗ ū_σ⃗ in the basis of 𝔄_{d,-d} used by heisenberg_truncation.
inline Vec truncated_strong_identity(int n, int d) {
  const auto terms = heisenberg::strong_identity(n, d);
  const std::size_t p = terms.size();
  Vec v = zero_vec(p * p);
  for (std::size_t s = 0; s < p; ++s) v[s * p + s] = terms[s].coeff;
  return v;
}

// ---------------------------------------------------------------------------
// JSON

inline Json to_json(const PeirceAlgebra& P) {
  Json j;
  j["max_degree"] = P.max_degree();
  j["dims"] = P.dims();
  auto products = Json::array();
  for (int i = 0; i <= P.max_degree(); ++i)
    for (int jj = 0; jj <= P.max_degree(); ++jj)
      for (int k = 0; k <= P.max_degree(); ++k) {
        const auto& t = P.table(i, jj, k);
        for (std::size_t a = 0; a < t.left_dim(); ++a)
          for (std::size_t b = 0; b < t.right_dim(); ++b) {
            auto entries = t.at(a, b);
            std::sort(entries.begin(), entries.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
            for (const auto& [c, v] : entries) {
              Json e;
              e["i"] = i;
              e["j"] = jj;
              e["k"] = k;
              e["a"] = a;
              e["b"] = b;
              e["c"] = c;
              e["coeff"] = to_string(v);
              products.push_back(std::move(e));
            }
          }
      }
  j["products"] = std::move(products);
  auto unit = Json::array();
  for (const auto& u : P.unit0()) unit.push_back(to_string(u));
  j["unit0"] = std::move(unit);
  return j;
}

namespace detail {

inline Rational rational_from_json(const Json& v) {
  if (v.is_string()) return parse_rational(v.get<std::string>());
  if (v.is_number_integer()) return Rational(v.get<long long>());
  throw std::invalid_argument("expected an integer or a \"p/q\" string");
}

}  // namespace detail

inline PeirceAlgebra peirce_from_json(const Json& j) {
  try {
    const int D = j.at("max_degree").get<int>();
    auto dims = j.at("dims").get<std::vector<std::vector<std::size_t>>>();
    Vec unit;
    for (const auto& u : j.at("unit0")) unit.push_back(detail::rational_from_json(u));
    PeirceAlgebra P(D, std::move(dims), std::move(unit));
    for (const auto& e : j.at("products")) {
      const int i = e.at("i").get<int>(), jj = e.at("j").get<int>(), k = e.at("k").get<int>();
      P.set_structure_constant(i, jj, k, e.at("a").get<std::size_t>(), e.at("b").get<std::size_t>(),
                               e.at("c").get<std::size_t>(), detail::rational_from_json(e.at("coeff")));
    }
    return P;
  } catch (const Json::exception& ex) {
    throw std::invalid_argument(std::string("malformed Peirce algebra JSON: ") + ex.what());
  } catch (const std::out_of_range& ex) {
    throw std::invalid_argument(std::string("malformed Peirce algebra JSON: ") + ex.what());
  }
}

inline Json to_json(const ValidationReport& rep) {
  Json j;
  j["passed"] = rep.passed();
  j["first_failure"] = rep.first_failure().empty() ? Json(nullptr) : Json(rep.first_failure());
  auto checks = Json::array();
  for (const auto& c : rep.checks) {
    Json e;
    e["axiom"] = c.axiom;
    e["passed"] = c.passed;
    e["detail"] = c.detail;
    checks.push_back(std::move(e));
  }
  j["checks"] = std::move(checks);
  return j;
}

inline Json vec_to_json(const Vec& v) {
  auto a = Json::array();
  for (const auto& x : v) a.push_back(to_string(x));
  return a;
}

}  // namespace mta::peirce
