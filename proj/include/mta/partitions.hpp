#pragma once

#include "mta/rational.hpp"

#include "mta/json.hpp"

#include <algorithm>
#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace mta {

/**
 * Integer partition stored as a non-increasing list of positive parts.
 *
 * The canonical order makes structural equality coincide with equality of
 * multisets, so partitions can be used directly as map keys.
 */
class Partition {
 public:
  Partition() = default;

  /// Parts in any order; they are sorted into canonical form.
  explicit Partition(std::vector<int> parts) : parts_(std::move(parts)) {
    for (int p : parts_)
      if (p < 1) throw std::invalid_argument("partition parts must be positive");
    std::sort(parts_.begin(), parts_.end(), std::greater<>());
  }

  const std::vector<int>& parts() const noexcept { return parts_; }
  std::size_t length() const noexcept { return parts_.size(); }
  bool empty() const noexcept { return parts_.empty(); }

  int weight() const noexcept {
    int w = 0;
    for (int p : parts_) w += p;
    return w;
  }

  /// part size -> multiplicity
  std::map<int, int> multiplicities() const {
    std::map<int, int> m;
    for (int p : parts_) ++m[p];
    return m;
  }

  friend bool operator==(const Partition&, const Partition&) = default;
  friend auto operator<=>(const Partition& a, const Partition& b) { return a.parts_ <=> b.parts_; }

 private:
  std::vector<int> parts_;
};

/// A sequence of exactly `rank()` partitions (the slots may be empty).
class LabeledPartition {
 public:
  LabeledPartition() = default;
  explicit LabeledPartition(std::vector<Partition> slots) : slots_(std::move(slots)) {}

  static LabeledPartition empty_of_rank(int n) {
    return LabeledPartition(std::vector<Partition>(static_cast<std::size_t>(n)));
  }

  int rank() const noexcept { return static_cast<int>(slots_.size()); }
  const std::vector<Partition>& slots() const noexcept { return slots_; }
  const Partition& slot(int i) const { return slots_.at(static_cast<std::size_t>(i)); }

  int weight() const noexcept {
    int w = 0;
    for (const auto& s : slots_) w += s.weight();
    return w;
  }

  friend bool operator==(const LabeledPartition&, const LabeledPartition&) = default;
  friend auto operator<=>(const LabeledPartition& a, const LabeledPartition& b) {
    return a.slots_ <=> b.slots_;
  }

 private:
  std::vector<Partition> slots_;
};

namespace detail {

inline void partitions_rec(int remaining, int max_part, std::vector<int>& prefix,
                           std::vector<Partition>& out) {
  if (remaining == 0) {
    out.emplace_back(prefix);
    return;
  }
  for (int p = std::min(remaining, max_part); p >= 1; --p) {
    prefix.push_back(p);
    partitions_rec(remaining - p, p, prefix, out);
    prefix.pop_back();
  }
}

// Weight compositions (a_1, ..., a_n) of m, first slot descending.
inline void compositions_rec(int remaining, int slots_left, std::vector<int>& prefix,
                             std::vector<std::vector<int>>& out) {
  if (slots_left == 1) {
    prefix.push_back(remaining);
    out.push_back(prefix);
    prefix.pop_back();
    return;
  }
  for (int a = remaining; a >= 0; --a) {
    prefix.push_back(a);
    compositions_rec(remaining - a, slots_left - 1, prefix, out);
    prefix.pop_back();
  }
}

}  // namespace detail

/// All partitions of m, ordered lexicographically descending on the part lists
/// ({4}, {3,1}, {2,2}, {2,1,1}, {1,1,1,1} for m = 4).
inline std::vector<Partition> enumerate_partitions(int m) {
  if (m < 0) throw std::invalid_argument("enumerate_partitions: m must be nonnegative");
  std::vector<Partition> out;
  std::vector<int> prefix;
  detail::partitions_rec(m, m, prefix, out);
  return out;
}

/// All n-labeled partitions of m. Ordered by slot-weight composition (first
/// slot heaviest first), then slot by slot in enumerate_partitions order.
inline std::vector<LabeledPartition> enumerate_labeled_partitions(int n, int m) {
  if (n < 1) throw std::invalid_argument("enumerate_labeled_partitions: n must be positive");
  if (m < 0) throw std::invalid_argument("enumerate_labeled_partitions: m must be nonnegative");

  std::vector<std::vector<Partition>> by_weight;
  for (int w = 0; w <= m; ++w) by_weight.push_back(enumerate_partitions(w));

  std::vector<std::vector<int>> comps;
  std::vector<int> prefix;
  detail::compositions_rec(m, n, prefix, comps);

  std::vector<LabeledPartition> out;
  for (const auto& comp : comps) {
    std::vector<Partition> slots(static_cast<std::size_t>(n));
    std::function<void(int)> fill = [&](int i) {
      if (i == n) {
        out.emplace_back(slots);
        return;
      }
      for (const auto& p : by_weight[static_cast<std::size_t>(comp[static_cast<std::size_t>(i)])]) {
        slots[static_cast<std::size_t>(i)] = p;
        fill(i + 1);
      }
    };
    fill(0);
  }
  return out;
}

/// p_0, ..., p_max (number of partitions of each m).
inline std::vector<Integer> partition_counts(int max_m) {
  if (max_m < 0) return {};
  std::vector<Integer> p(static_cast<std::size_t>(max_m) + 1, Integer(0));
  p[0] = 1;
  for (int part = 1; part <= max_m; ++part)
    for (int m = part; m <= max_m; ++m)
      p[static_cast<std::size_t>(m)] += p[static_cast<std::size_t>(m - part)];
  return p;
}

/// p^n_0, ..., p^n_max: n-fold convolution power of the partition counts.
inline std::vector<Integer> labeled_partition_counts(int n, int max_m) {
  if (n < 1) throw std::invalid_argument("labeled_partition_counts: n must be positive");
  if (max_m < 0) return {};
  const auto p = partition_counts(max_m);
  std::vector<Integer> acc(p.size(), Integer(0));
  acc[0] = 1;
  for (int r = 0; r < n; ++r) {
    std::vector<Integer> next(p.size(), Integer(0));
    for (std::size_t a = 0; a < acc.size(); ++a) {
      if (acc[a] == 0) continue;
      for (std::size_t b = 0; a + b < p.size(); ++b) next[a + b] += acc[a] * p[b];
    }
    acc = std::move(next);
  }
  return acc;
}

inline Integer labeled_partition_count(int n, int m) {
  if (m < 0) throw std::invalid_argument("labeled_partition_count: m must be nonnegative");
  return labeled_partition_counts(n, m)[static_cast<std::size_t>(m)];
}

/// ‖σ‖ = ∏_ℓ ℓ^{m_ℓ} m_ℓ! over distinct parts ℓ of multiplicity m_ℓ.
inline Integer symmetry_factor(const Partition& sigma) {
  Integer out = 1;
  for (auto [part, mult] : sigma.multiplicities()) {
    for (int k = 1; k <= mult; ++k) out *= Integer(part) * k;
  }
  return out;
}

/// ‖σ⃗‖ = ∏_i ‖σ^i‖.
inline Integer symmetry_factor(const LabeledPartition& sigma) {
  Integer out = 1;
  for (const auto& s : sigma.slots()) out *= symmetry_factor(s);
  return out;
}

// JSON: [[2,1],[],[1]]

inline Json to_json(const LabeledPartition& sigma) {
  auto arr = Json::array();
  for (const auto& s : sigma.slots()) arr.push_back(s.parts());
  return arr;
}

inline LabeledPartition labeled_partition_from_json(const Json& j) {
  if (!j.is_array()) throw std::invalid_argument("labeled partition must be a JSON array");
  std::vector<Partition> slots;
  for (const auto& s : j) {
    if (!s.is_array()) throw std::invalid_argument("labeled partition slot must be an array");
    slots.emplace_back(s.get<std::vector<int>>());
  }
  return LabeledPartition(std::move(slots));
}

}  // namespace mta
