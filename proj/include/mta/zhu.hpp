#pragma once

// Isomorphism types of higher Zhu algebras A_d ≅ ∏_j ∏_i Mat_{D^i_j}(R).
// Zero-size factors are omitted.

#include "mta/json.hpp"
#include "mta/partitions.hpp"
#include "mta/rational.hpp"

#include <cstddef>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace mta::zhu {

struct SimpleModuleData {
  std::string label;
  std::vector<Integer> graded_dims;  // D_0, D_1, ..., D_N
  std::optional<Rational> conformal_weight;
};

/// Base ring of a matrix factor: the field Q, or Q[h_1..h_n].
struct Ring {
  int poly_vars = 0;  // 0 means scalars

  static Ring scalar() { return Ring{0}; }
  static Ring polynomial(int n) { return Ring{n}; }
  bool is_scalar() const noexcept { return poly_vars == 0; }

  std::string tag() const { return is_scalar() ? "scalar" : "polynomial(" + std::to_string(poly_vars) + ")"; }

  std::string name() const {
    if (is_scalar()) return "Q";
    std::string s = "Q[";
    for (int i = 1; i <= poly_vars; ++i) s += (i > 1 ? ",h" : "h") + std::to_string(i);
    return s + "]";
  }

  friend bool operator==(const Ring&, const Ring&) = default;
};

struct Factor {
  Integer size;
  Ring ring;
  std::string module;  // label of the simple module, empty when not applicable
};

struct ZhuDescriptor {
  int degree = 0;
  std::vector<std::vector<Factor>> blocks;  // blocks[j] for j = 0..degree

  /// Sizes in level order, flattened.
  std::vector<Integer> sizes() const {
    std::vector<Integer> out;
    for (const auto& level : blocks)
      for (const auto& f : level) out.push_back(f.size);
    return out;
  }

  /// Σ size² over all factors; the dimension over the base ring.
  Integer total_dimension() const {
    Integer t = 0;
    for (const auto& level : blocks)
      for (const auto& f : level) t += f.size * f.size;
    return t;
  }
};

namespace detail {

inline void check_modules(const std::vector<SimpleModuleData>& modules, int d) {
  if (d < 0) throw std::out_of_range("degree must be nonnegative");
  for (const auto& m : modules) {
    if (static_cast<std::size_t>(d) >= m.graded_dims.size())
      throw std::out_of_range("degree " + std::to_string(d) + " exceeds the graded dimensions of module '" + m.label + "'");
    for (const auto& v : m.graded_dims)
      if (v < 0) throw std::invalid_argument("negative graded dimension in module '" + m.label + "'");
  }
}

}  // namespace detail

/// A_d ≅ ∏_{j≤d} ∏_i Mat_{D^i_j}(Q) for a rational VOA with the given simple modules.
inline ZhuDescriptor rational_zhu_descriptor(const std::vector<SimpleModuleData>& modules, int d) {
  detail::check_modules(modules, d);
  ZhuDescriptor z;
  z.degree = d;
  for (int j = 0; j <= d; ++j) {
    std::vector<Factor> level;
    for (const auto& m : modules) {
      const Integer& dim = m.graded_dims[static_cast<std::size_t>(j)];
      if (dim > 0) level.push_back({dim, Ring::scalar(), m.label});
    }
    z.blocks.push_back(std::move(level));
  }
  return z;
}

/// Labels of modules with nonzero degree-d component, in input order.
inline std::vector<std::string> zd_support(const std::vector<SimpleModuleData>& modules, int d) {
  detail::check_modules(modules, d);
  std::vector<std::string> out;
  for (const auto& m : modules)
    if (m.graded_dims[static_cast<std::size_t>(d)] > 0) out.push_back(m.label);
  return out;
}

/// Rank-n Heisenberg: A_d ≅ ∏_{m≤d} Mat_{p^n_m}(Q[h_1..h_n]).
inline ZhuDescriptor heisenberg_zhu_descriptor(int n, int d) {
  if (n < 1) throw std::invalid_argument("heisenberg_zhu_descriptor: rank must be positive");
  if (d < 0) throw std::invalid_argument("heisenberg_zhu_descriptor: degree must be nonnegative");
  ZhuDescriptor z;
  z.degree = d;
  for (const auto& p : labeled_partition_counts(n, d)) z.blocks.push_back({Factor{p, Ring::polynomial(n), ""}});
  return z;
}

/// A_d ≅ ∏_{j≤d} Mat_{dim V_j}(A) with A a polynomial ring, for V whose
/// degrees up to d are all non-exceptional.
inline ZhuDescriptor cor1_descriptor(const std::vector<Integer>& graded_dims, int n_vars, int d) {
  if (d < 0) throw std::out_of_range("degree must be nonnegative");
  if (static_cast<std::size_t>(d) >= graded_dims.size()) throw std::out_of_range("degree exceeds the graded dimensions");
  if (graded_dims[0] != 1) throw std::invalid_argument("V_0 must be one-dimensional");
  ZhuDescriptor z;
  z.degree = d;
  for (int j = 0; j <= d; ++j) {
    const Integer& dim = graded_dims[static_cast<std::size_t>(j)];
    if (dim <= 0) throw std::domain_error("degree " + std::to_string(j) + " is exceptional (dim V_j = 0)");
    z.blocks.push_back({Factor{dim, Ring::polynomial(n_vars), ""}});
  }
  return z;
}

struct ExceptionalReport {
  std::set<int> degrees;  // for each, 𝔄_j = 0 and Z_j = 0
};

/// {j ≤ d_max : dim Φ^L(A)_j = 0}.
inline ExceptionalReport exceptional_degrees(const std::vector<Integer>& phiL_dims, int d_max) {
  if (d_max < 0 || static_cast<std::size_t>(d_max) >= phiL_dims.size())
    throw std::out_of_range("d_max is outside the supplied dimensions");
  if (phiL_dims[0] == 0) throw std::invalid_argument("degree 0 component must be nonzero");
  ExceptionalReport rep;
  for (int j = 0; j <= d_max; ++j)
    if (phiL_dims[static_cast<std::size_t>(j)] == 0) rep.degrees.insert(j);
  return rep;
}

// ---- rendering ----

/// "A_2 ≅ Mat_1(A) × Mat_1(A) × Mat_2(A), A = Q[h1]"
inline std::string to_text(const ZhuDescriptor& z) {
  std::ostringstream os;
  os << "A_" << z.degree << " ≅ ";
  std::optional<Ring> common;
  bool uniform = true;
  bool first = true;
  for (const auto& level : z.blocks)
    for (const auto& f : level) {
      if (!common) common = f.ring;
      else if (!(*common == f.ring)) uniform = false;
    }
  for (const auto& level : z.blocks)
    for (const auto& f : level) {
      if (!first) os << " × ";
      first = false;
      os << "Mat_" << f.size.str() << "(";
      if (f.ring.is_scalar()) os << "Q";
      else os << (uniform ? "A" : f.ring.name());
      os << ")";
    }
  if (first) os << "0";
  if (common && uniform && !common->is_scalar()) os << ", A = " << common->name();
  return os.str();
}

inline Json to_json(const ZhuDescriptor& z) {
  Json j;
  j["degree"] = z.degree;
  auto blocks = Json::array();
  for (std::size_t lvl = 0; lvl < z.blocks.size(); ++lvl) {
    Json b;
    b["level"] = lvl;
    auto factors = Json::array();
    for (const auto& f : z.blocks[lvl]) {
      Json fj;
      fj["size"] = f.size.convert_to<long long>();
      fj["ring"] = f.ring.tag();
      if (!f.module.empty()) fj["module"] = f.module;
      factors.push_back(std::move(fj));
    }
    b["factors"] = std::move(factors);
    blocks.push_back(std::move(b));
  }
  j["blocks"] = std::move(blocks);
  return j;
}

inline Ring ring_from_tag(const std::string& tag) {
  if (tag == "scalar") return Ring::scalar();
  const std::string pre = "polynomial(";
  if (tag.rfind(pre, 0) == 0 && tag.back() == ')') {
    const int n = std::stoi(tag.substr(pre.size(), tag.size() - pre.size() - 1));
    if (n < 1) throw std::invalid_argument("bad ring tag: " + tag);
    return Ring::polynomial(n);
  }
  throw std::invalid_argument("bad ring tag: " + tag);
}

inline ZhuDescriptor zhu_descriptor_from_json(const Json& j) {
  ZhuDescriptor z;
  z.degree = j.at("degree").get<int>();
  for (const auto& b : j.at("blocks")) {
    std::vector<Factor> level;
    for (const auto& f : b.at("factors"))
      level.push_back({Integer(f.at("size").get<long long>()), ring_from_tag(f.at("ring").get<std::string>()),
                       f.value("module", std::string())});
    z.blocks.push_back(std::move(level));
  }
  return z;
}

/// Modules file: [{"label": ..., "graded_dims": [...], "conformal_weight": "p/q"?}, ...]
inline std::vector<SimpleModuleData> modules_from_json(const Json& j) {
  if (!j.is_array()) throw std::invalid_argument("modules JSON must be an array");
  std::vector<SimpleModuleData> out;
  for (const auto& m : j) {
    SimpleModuleData s;
    s.label = m.at("label").get<std::string>();
    for (const auto& v : m.at("graded_dims")) s.graded_dims.emplace_back(v.get<long long>());
    if (m.contains("conformal_weight")) {
      const auto& w = m.at("conformal_weight");
      s.conformal_weight = w.is_string() ? parse_rational(w.get<std::string>()) : Rational(w.get<long long>());
    }
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace mta::zhu
