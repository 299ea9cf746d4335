#pragma once

// Symbolic calculus in the degree-graded enveloping algebra of the rank-n
// Heisenberg Lie algebra at central charge k = 1: PBW normal ordering, the
// reduction U_0 -> A = Q[h_1..h_n], and the strong identity of the d-th mode
// transition algebra.

#include "mta/parallel.hpp"
#include "mta/partitions.hpp"
#include "mta/poly.hpp"
#include "mta/rational.hpp"

#include "mta/json.hpp"

#include <compare>
#include <map>
#include <optional>
#include <stdexcept>
#include <tuple>
#include <vector>

namespace mta::heisenberg {

/// H_i t^a. Generators are 1-based.
struct Mode {
  int generator = 1;
  int exponent = 0;

  int degree() const noexcept { return -exponent; }
  bool is_creator() const noexcept { return exponent < 0; }
  bool is_zero_mode() const noexcept { return exponent == 0; }
  bool is_annihilator() const noexcept { return exponent > 0; }

  friend bool operator==(const Mode&, const Mode&) = default;
  friend auto operator<=>(const Mode&, const Mode&) = default;
};

/// Position of a mode in PBW normal order: creators, then zero modes, then
/// annihilators; by generator inside each block, larger |exponent| first.
inline std::tuple<int, int, int> normal_order_key(const Mode& m) noexcept {
  if (m.is_creator()) return {0, m.generator, m.exponent};
  if (m.is_zero_mode()) return {1, m.generator, 0};
  return {2, m.generator, -m.exponent};
}

inline bool normal_order_less(const Mode& a, const Mode& b) noexcept {
  return normal_order_key(a) < normal_order_key(b);
}

/// [H_i t^a, H_j t^b] = a δ_{ij} δ_{a+b,0} k, with k = 1.
inline Rational commutator(int rank, const Mode& x, const Mode& y) {
  for (const Mode* m : {&x, &y})
    if (m->generator < 1 || m->generator > rank)
      throw std::invalid_argument("commutator: generator outside rank");
  if (x.generator != y.generator || x.exponent + y.exponent != 0) return Rational(0);
  return Rational(x.exponent);
}

/// A PBW-ordered monomial. Modes inside each block commute, so the canonical
/// sort is the only representative and equality is structural.
class NormalWord {
 public:
  NormalWord() = default;
  explicit NormalWord(std::vector<Mode> modes) : modes_(std::move(modes)) {
    std::stable_sort(modes_.begin(), modes_.end(), normal_order_less);
  }

  const std::vector<Mode>& modes() const noexcept { return modes_; }
  bool empty() const noexcept { return modes_.empty(); }

  int degree() const noexcept {
    int d = 0;
    for (const auto& m : modes_) d += m.degree();
    return d;
  }

  std::vector<Mode> creators() const { return filter([](const Mode& m) { return m.is_creator(); }); }
  std::vector<Mode> annihilators() const { return filter([](const Mode& m) { return m.is_annihilator(); }); }
  std::vector<int> zero_modes() const {
    std::vector<int> out;
    for (const auto& m : modes_)
      if (m.is_zero_mode()) out.push_back(m.generator);
    return out;
  }
  bool has_annihilator() const noexcept {
    return !modes_.empty() && modes_.back().is_annihilator();
  }

  friend bool operator==(const NormalWord&, const NormalWord&) = default;
  friend auto operator<=>(const NormalWord& a, const NormalWord& b) { return a.modes_ <=> b.modes_; }

 private:
  template <class Pred>
  std::vector<Mode> filter(Pred p) const {
    std::vector<Mode> out;
    for (const auto& m : modes_)
      if (p(m)) out.push_back(m);
    return out;
  }

  std::vector<Mode> modes_;
};

/// Finite formal sum of normal words with rational coefficients. Elements of
/// the completed enveloping algebra that occur here all have finite support.
class UElement {
 public:
  explicit UElement(int rank = 1) : rank_(rank) {
    if (rank < 1) throw std::invalid_argument("UElement: rank must be positive");
  }

  static UElement unit(int rank) { return word(rank, NormalWord{}); }

  static UElement word(int rank, const NormalWord& w, const Rational& c = Rational(1)) {
    UElement u(rank);
    u.add(w, c);
    return u;
  }

  /// Single mode H_i t^a.
  static UElement mode(int rank, Mode m) { return word(rank, NormalWord({m})); }

  int rank() const noexcept { return rank_; }
  const std::map<NormalWord, Rational>& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }

  Rational coefficient(const NormalWord& w) const {
    auto it = terms_.find(w);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  void add(const NormalWord& w, const Rational& c) {
    for (const auto& m : w.modes())
      if (m.generator < 1 || m.generator > rank_) throw std::invalid_argument("UElement: generator outside rank");
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(w, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  /// Common degree of all terms, nullopt for mixed degrees. The zero element
  /// counts as homogeneous of degree 0.
  std::optional<int> degree() const {
    std::optional<int> d;
    for (const auto& [w, c] : terms_) {
      if (!d) d = w.degree();
      else if (*d != w.degree()) return std::nullopt;
    }
    return d.value_or(0);
  }

  UElement& operator+=(const UElement& o) {
    check(o);
    for (const auto& [w, c] : o.terms_) add(w, c);
    return *this;
  }
  friend UElement operator+(UElement a, const UElement& b) { return a += b; }

  friend UElement operator*(const Rational& s, const UElement& u) {
    UElement out(u.rank_);
    for (const auto& [w, c] : u.terms_) out.add(w, s * c);
    return out;
  }

  friend bool operator==(const UElement& a, const UElement& b) {
    return a.rank_ == b.rank_ && a.terms_ == b.terms_;
  }

  void check(const UElement& o) const {
    if (o.rank_ != rank_) throw std::invalid_argument("UElement: rank mismatch");
  }

 private:
  int rank_;
  std::map<NormalWord, Rational> terms_;
};

namespace detail {

struct LongerFirst {
  bool operator()(const std::vector<Mode>& a, const std::vector<Mode>& b) const {
    if (a.size() != b.size()) return a.size() > b.size();
    return a < b;
  }
};

}  // namespace detail

/// Rewrites c * (m_1 m_2 ... m_r) into normal order and accumulates into out.
/// Each step swaps the first adjacent out-of-order pair, x y = y x + [x, y];
/// the inversion count or the length strictly drops, so the loop terminates.
inline void normal_order_into(int rank, const std::vector<Mode>& sequence, const Rational& coeff, UElement& out) {
  std::map<std::vector<Mode>, Rational, detail::LongerFirst> pending;
  pending.emplace(sequence, coeff);
  auto push = [&](std::vector<Mode> s, const Rational& c) {
    if (c == 0) return;
    auto [it, inserted] = pending.try_emplace(std::move(s), c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) pending.erase(it);
    }
  };
  while (!pending.empty()) {
    auto node = pending.extract(pending.begin());
    std::vector<Mode>& s = node.key();
    const Rational c = node.mapped();
    std::size_t i = 0;
    while (i + 1 < s.size() && !normal_order_less(s[i + 1], s[i])) ++i;
    if (i + 1 >= s.size()) {
      out.add(NormalWord(s), c);
      continue;
    }
    const Rational bracket = commutator(rank, s[i], s[i + 1]);
    if (bracket != 0) {
      std::vector<Mode> contracted;
      contracted.reserve(s.size() - 2);
      for (std::size_t k = 0; k < s.size(); ++k)
        if (k != i && k != i + 1) contracted.push_back(s[k]);
      push(std::move(contracted), c * bracket);
    }
    std::swap(s[i], s[i + 1]);
    push(std::move(s), c);
  }
}

/// PBW-normal-ordered product.
inline UElement multiply(const UElement& u, const UElement& v) {
  u.check(v);
  UElement out(u.rank());
  for (const auto& [wu, cu] : u.terms()) {
    for (const auto& [wv, cv] : v.terms()) {
      std::vector<Mode> seq = wu.modes();
      seq.insert(seq.end(), wv.modes().begin(), wv.modes().end());
      normal_order_into(u.rank(), seq, cu * cv, out);
    }
  }
  return out;
}

inline UElement operator*(const UElement& u, const UElement& v) { return multiply(u, v); }

namespace detail {

inline UElement partition_word(const LabeledPartition& sigma, int sign) {
  std::vector<Mode> modes;
  for (int i = 0; i < sigma.rank(); ++i)
    for (int part : sigma.slot(i).parts()) modes.push_back(Mode{i + 1, sign * part});
  return UElement::word(sigma.rank(), NormalWord(std::move(modes)));
}

}  // namespace detail

/// u_σ⃗ = ∏_i ∏_ℓ H_i t^{-ℓ}, degree |σ⃗|.
inline UElement u_element(const LabeledPartition& sigma) {
  if (sigma.rank() < 1) throw std::invalid_argument("u_element: rank must be positive");
  return detail::partition_word(sigma, -1);
}

/// ū_σ⃗ = ∏_i ∏_ℓ H_i t^{ℓ}, degree −|σ⃗|.
inline UElement ubar_element(const LabeledPartition& sigma) {
  if (sigma.rank() < 1) throw std::invalid_argument("ubar_element: rank must be positive");
  return detail::partition_word(sigma, +1);
}

/// Image of a degree-0 element in A = U_0 / (U·U_{≤-1})_0 ≅ Q[h_1..h_n].
/// In normal order every word with an annihilator lies in U·U_{≤-1}; the
/// remaining degree-0 words are products of zero modes H_i t^0 ↦ h_i.
inline APoly star_to_A(const UElement& u) {
  auto deg = u.degree();
  if (!deg || *deg != 0) throw std::invalid_argument("star_to_A: element is not homogeneous of degree 0");
  APoly out(u.rank());
  for (const auto& [w, c] : u.terms()) {
    if (w.has_annihilator()) continue;
    APoly::Exponents e(static_cast<std::size_t>(u.rank()), 0u);
    for (const auto& m : w.modes()) {
      if (!m.is_zero_mode()) throw std::logic_error("star_to_A: creator survived in a degree-0 word");
      ++e[static_cast<std::size_t>(m.generator - 1)];
    }
    out.add_term(e, c);
  }
  return out;
}

/// ⋆(ū_σ⃗ · u_τ⃗) ∈ A.
inline APoly pairing(const LabeledPartition& sigma, const LabeledPartition& tau) {
  if (sigma.rank() != tau.rank()) throw std::invalid_argument("pairing: rank mismatch");
  if (sigma.weight() != tau.weight()) throw std::invalid_argument("pairing: weight mismatch");
  return star_to_A(multiply(ubar_element(sigma), u_element(tau)));
}

struct StrongIdentityTerm {
  LabeledPartition partition;
  Rational coeff;
};

/// 1_d = Σ_{σ⃗ ∈ P^n_d} ‖σ⃗‖^{-1} u_σ⃗ ⊗ ū_σ⃗.
inline std::vector<StrongIdentityTerm> strong_identity(int n, int d) {
  std::vector<StrongIdentityTerm> out;
  for (auto& sigma : enumerate_labeled_partitions(n, d)) {
    Rational coeff(Integer(1), symmetry_factor(sigma));
    out.push_back({std::move(sigma), std::move(coeff)});
  }
  return out;
}

struct PairingMatrix {
  int rank = 1;
  int degree = 0;
  std::vector<LabeledPartition> basis;
  std::vector<std::vector<APoly>> entries;  // entries[σ][τ] = ⋆(ū_σ · u_τ)
};

/// Full pairing matrix over P^n_d; entries are evaluated in parallel.
inline PairingMatrix pairing_matrix(int n, int d) {
  PairingMatrix pm;
  pm.rank = n;
  pm.degree = d;
  pm.basis = enumerate_labeled_partitions(n, d);
  const std::size_t size = pm.basis.size();
  std::vector<APoly> flat(size * size, APoly(n));
  parallel_for(size * size, [&](std::size_t k) { flat[k] = pairing(pm.basis[k / size], pm.basis[k % size]); });
  pm.entries.assign(size, {});
  for (std::size_t r = 0; r < size; ++r)
    pm.entries[r].assign(flat.begin() + static_cast<std::ptrdiff_t>(r * size),
                         flat.begin() + static_cast<std::ptrdiff_t>((r + 1) * size));
  return pm;
}

struct StrongIdentityReport {
  bool success = false;
  PairingMatrix matrix;
  std::vector<Integer> expected_diagonal;  // ‖σ⃗‖ from the closed form
  std::string failure;                     // first mismatch, empty on success
};

/// Checks that the pairing matrix equals diag(‖σ⃗‖), which is equivalent to
/// 1_d acting as the identity on the spanning sets of Φ^L(A)_d and Φ^R(A)_{-d}.
inline StrongIdentityReport verify_strong_identity(int n, int d) {
  StrongIdentityReport rep;
  rep.matrix = pairing_matrix(n, d);
  const auto& basis = rep.matrix.basis;
  for (const auto& s : basis) rep.expected_diagonal.push_back(symmetry_factor(s));
  rep.success = true;
  for (std::size_t r = 0; r < basis.size() && rep.success; ++r) {
    for (std::size_t c = 0; c < basis.size(); ++c) {
      const APoly expected = r == c ? APoly::constant(n, Rational(rep.expected_diagonal[r])) : APoly(n);
      if (!(rep.matrix.entries[r][c] == expected)) {
        rep.success = false;
        rep.failure = "entry (" + std::to_string(r) + "," + std::to_string(c) + ") = " +
                      rep.matrix.entries[r][c].str() + ", expected " + expected.str();
        break;
      }
    }
  }
  return rep;
}

struct RankCertificate {
  Integer dimension;               // p^n_d
  std::vector<Integer> diagonal;   // pairing(σ⃗, σ⃗), nonzero constants
  bool nondegenerate = false;      // pairing matrix diagonal with nonzero constant entries
};

/// {u_σ⃗ ⊗ 1} is A-linearly independent in Φ^L(A)_d when its pairing against
/// {ū_τ⃗} is diagonal with invertible entries.
inline RankCertificate phiL_rank_certificate(int n, int d) {
  const auto pm = pairing_matrix(n, d);
  RankCertificate cert;
  cert.dimension = labeled_partition_count(n, d);
  cert.nondegenerate = Integer(pm.basis.size()) == cert.dimension;
  for (std::size_t r = 0; r < pm.basis.size(); ++r) {
    for (std::size_t c = 0; c < pm.basis.size(); ++c) {
      const auto& e = pm.entries[r][c];
      if (r != c && !e.is_zero()) cert.nondegenerate = false;
    }
    const auto& diag = pm.entries[r][r];
    if (!diag.is_constant() || diag.is_zero() || !is_integer(diag.constant_term())) {
      cert.nondegenerate = false;
      cert.diagonal.push_back(Integer(0));
    } else {
      cert.diagonal.push_back(numerator_of(diag.constant_term()));
    }
  }
  return cert;
}

// ---- JSON ----

inline Json to_json(const UElement& u) {
  auto out = Json::array();
  auto pairs = [](const std::vector<Mode>& ms) {
    auto a = Json::array();
    for (const auto& m : ms) a.push_back({m.generator, m.exponent});
    return a;
  };
  for (const auto& [w, c] : u.terms()) {
    Json t;
    t["coeff"] = to_string(c);
    t["creators"] = pairs(w.creators());
    t["zeros"] = w.zero_modes();
    t["annihilators"] = pairs(w.annihilators());
    out.push_back(std::move(t));
  }
  return out;
}

inline UElement uelement_from_json(int rank, const Json& j) {
  if (!j.is_array()) throw std::invalid_argument("UElement JSON must be an array");
  UElement u(rank);
  for (const auto& t : j) {
    std::vector<Mode> modes;
    for (const auto& p : t.at("creators")) modes.push_back(Mode{p.at(0).get<int>(), p.at(1).get<int>()});
    for (const auto& g : t.at("zeros")) modes.push_back(Mode{g.get<int>(), 0});
    for (const auto& p : t.at("annihilators")) modes.push_back(Mode{p.at(0).get<int>(), p.at(1).get<int>()});
    for (std::size_t k = 0; k < modes.size(); ++k) {
      bool ok = true;
      if (k < t.at("creators").size()) ok = modes[k].is_creator();
      else if (k < t.at("creators").size() + t.at("zeros").size()) ok = modes[k].is_zero_mode();
      else ok = modes[k].is_annihilator();
      if (!ok) throw std::invalid_argument("UElement JSON: mode placed in the wrong block");
    }
    u.add(NormalWord(std::move(modes)), parse_rational(t.at("coeff").get<std::string>()));
  }
  return u;
}

inline Json to_json(const std::vector<StrongIdentityTerm>& terms) {
  auto out = Json::array();
  for (const auto& t : terms) {
    Json e;
    e["partition"] = mta::to_json(t.partition);
    e["coeff"] = to_string(t.coeff);
    out.push_back(std::move(e));
  }
  return out;
}

}  // namespace mta::heisenberg
