#pragma once

#include "mta/rational.hpp"

#include <cstddef>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace mta {

/// Polynomial in h_1..h_n with rational coefficients; the Zhu algebra of the
/// rank-n Heisenberg VOA.
class APoly {
 public:
  using Exponents = std::vector<unsigned>;

  explicit APoly(int n_vars = 1) : n_(n_vars) {
    if (n_vars < 0) throw std::invalid_argument("APoly: negative variable count");
  }

  static APoly constant(int n_vars, const Rational& c) {
    APoly p(n_vars);
    p.add_term(Exponents(static_cast<std::size_t>(n_vars), 0u), c);
    return p;
  }

  /// h_i, 1-based.
  static APoly variable(int n_vars, int i) {
    if (i < 1 || i > n_vars) throw std::out_of_range("APoly::variable index");
    Exponents e(static_cast<std::size_t>(n_vars), 0u);
    e[static_cast<std::size_t>(i - 1)] = 1;
    APoly p(n_vars);
    p.add_term(e, Rational(1));
    return p;
  }

  int n_vars() const noexcept { return n_; }
  const std::map<Exponents, Rational>& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }

  void add_term(const Exponents& e, const Rational& c) {
    if (e.size() != static_cast<std::size_t>(n_)) throw std::invalid_argument("APoly: exponent arity");
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  bool is_constant() const {
    for (const auto& [e, c] : terms_)
      for (unsigned k : e)
        if (k != 0) return false;
    return true;
  }

  Rational constant_term() const {
    auto it = terms_.find(Exponents(static_cast<std::size_t>(n_), 0u));
    return it == terms_.end() ? Rational(0) : it->second;
  }

  Rational evaluate(const std::vector<Rational>& point) const {
    if (point.size() != static_cast<std::size_t>(n_)) throw std::invalid_argument("APoly::evaluate arity");
    Rational total = 0;
    for (const auto& [e, c] : terms_) {
      Rational v = c;
      for (std::size_t i = 0; i < e.size(); ++i)
        for (unsigned k = 0; k < e[i]; ++k) v *= point[i];
      total += v;
    }
    return total;
  }

  APoly& operator+=(const APoly& o) {
    check(o);
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }

  friend APoly operator+(APoly a, const APoly& b) { return a += b; }

  friend APoly operator*(const APoly& a, const APoly& b) {
    a.check(b);
    APoly out(a.n_);
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) {
        Exponents e = ea;
        for (std::size_t i = 0; i < e.size(); ++i) e[i] += eb[i];
        out.add_term(e, ca * cb);
      }
    return out;
  }

  friend APoly operator*(const Rational& s, const APoly& p) {
    APoly out(p.n_);
    for (const auto& [e, c] : p.terms_) out.add_term(e, s * c);
    return out;
  }

  friend bool operator==(const APoly& a, const APoly& b) { return a.n_ == b.n_ && a.terms_ == b.terms_; }

  std::string str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    // highest total degree first reads better
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      const auto& [e, c] = *it;
      if (!first) os << " + ";
      first = false;
      bool monomial = false;
      for (unsigned k : e) monomial = monomial || k != 0;
      bool printed = false;
      if (!monomial || c != 1) {
        os << to_string(c);
        printed = true;
      }
      for (std::size_t i = 0; i < e.size(); ++i) {
        if (e[i] == 0) continue;
        if (printed) os << "*";
        os << "h" << (i + 1);
        if (e[i] > 1) os << "^" << e[i];
        printed = true;
      }
    }
    return os.str();
  }

 private:
  void check(const APoly& o) const {
    if (o.n_ != n_) throw std::invalid_argument("APoly: variable count mismatch");
  }

  int n_;
  std::map<Exponents, Rational> terms_;
};

}  // namespace mta
