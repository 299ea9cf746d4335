#pragma once

// Small seeded generators for property tests. Seed from MTA_TEST_SEED when set.

#include "mta/heisenberg.hpp"
#include "mta/partitions.hpp"
#include "mta/rational.hpp"

#include <cstdint>
#include <cstdlib>
#include <random>
#include <vector>

namespace gen {

inline std::uint64_t base_seed() {
  if (const char* s = std::getenv("MTA_TEST_SEED")) return std::strtoull(s, nullptr, 10);
  return 0x5eed1234ULL;
}

class Rng {
 public:
  explicit Rng(std::uint64_t salt = 0) : eng_(base_seed() ^ (salt * 0x9e3779b97f4a7c15ULL)) {}

  int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(eng_); }
  bool coin() { return uniform(0, 1) == 1; }

  mta::Rational rational(int num_bound = 5, int den_bound = 4) {
    return mta::Rational(uniform(-num_bound, num_bound), uniform(1, den_bound));
  }

  mta::Partition partition(int m) {
    std::vector<int> parts;
    while (m > 0) {
      const int p = uniform(1, m);
      parts.push_back(p);
      m -= p;
    }
    return mta::Partition(parts);
  }

  mta::LabeledPartition labeled_partition(int n, int m) {
    std::vector<int> weights(static_cast<std::size_t>(n), 0);
    for (int k = 0; k < m; ++k) ++weights[static_cast<std::size_t>(uniform(0, n - 1))];
    std::vector<mta::Partition> slots;
    for (int w : weights) slots.push_back(partition(w));
    return mta::LabeledPartition(slots);
  }

  mta::heisenberg::Mode mode(int rank, int max_exp) {
    return mta::heisenberg::Mode{uniform(1, rank), uniform(-max_exp, max_exp)};
  }

  /// Sum of a few unordered mode words, normal ordered.
  mta::heisenberg::UElement element(int rank, int max_terms, int max_len, int max_exp) {
    mta::heisenberg::UElement out(rank);
    const int terms = uniform(1, max_terms);
    for (int t = 0; t < terms; ++t) {
      std::vector<mta::heisenberg::Mode> seq;
      const int len = uniform(0, max_len);
      for (int k = 0; k < len; ++k) seq.push_back(mode(rank, max_exp));
      mta::heisenberg::normal_order_into(rank, seq, rational(), out);
    }
    return out;
  }

  std::mt19937_64& engine() { return eng_; }

 private:
  std::mt19937_64 eng_;
};

}  // namespace gen
