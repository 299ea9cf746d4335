// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include "cli.hpp"
#include "mta/heisenberg.hpp"
#include "mta/lattice.hpp"
#include "mta/partitions.hpp"
#include "mta/peirce.hpp"
#include "mta/zhu.hpp"

#include <array>
#include <chrono>
#include <functional>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace mta;
using namespace mta::peirce;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Outcome {
  bool passed = true;
  std::string detail;
  double seconds = -1;  // set when the work was timed elsewhere

  void fail(const std::string& why) {
    if (passed) detail = why;
    passed = false;
  }
};

int failures = 0;

void report(int number, const std::string& title, const std::function<Outcome()>& body) {
  Outcome o;
  const auto t0 = Clock::now();
  try {
    o = body();
  } catch (const std::exception& e) {
    o.fail(std::string("exception: ") + e.what());
  }
  std::ostringstream line;
  line << (o.passed ? "PASS" : "FAIL") << " criterion " << number << " (" << title << ")";
  if (!o.detail.empty()) line << ": " << o.detail;
  line << " [" << (o.seconds >= 0 ? o.seconds : seconds_since(t0)) << " s]";
  std::cout << line.str() << std::endl;
  if (!o.passed) ++failures;
}

// ---- fixtures ----

struct Fixture {
  std::string name;
  PeirceAlgebra algebra;
  std::optional<BlockSizes> blocks;
};

std::string describe(const BlockSizes& s) {
  std::string out = "{";
  for (std::size_t b = 0; b < s.size(); ++b) {
    out += b ? ",{" : "{";
    for (std::size_t j = 0; j < s[b].size(); ++j) out += (j ? "," : "") + std::to_string(s[b][j]);
    out += "}";
  }
  return out + "}";
}

// Every list of at most three blocks with max degree one and entries at most 3,
// up to reordering, plus seeded samples at max degree two and the largest cases.
std::vector<BlockSizes> matrix_fixtures() {
  std::vector<std::vector<std::size_t>> kinds;
  for (std::size_t a = 1; a <= 3; ++a)
    for (std::size_t b = 0; b <= 3; ++b) kinds.push_back({a, b});
  std::vector<BlockSizes> out;
  const std::size_t k = kinds.size();
  for (std::size_t x = 0; x < k; ++x) {
    out.push_back({kinds[x]});
    for (std::size_t y = x; y < k; ++y) {
      out.push_back({kinds[x], kinds[y]});
      for (std::size_t z = y; z < k; ++z) out.push_back({kinds[x], kinds[y], kinds[z]});
    }
  }
  std::mt19937_64 rng(20240611);
  auto pick = [&](std::size_t lo, std::size_t hi) { return std::uniform_int_distribution<std::size_t>(lo, hi)(rng); };
  for (int t = 0; t < 40; ++t) {
    BlockSizes s;
    const std::size_t blocks = pick(1, 3);
    for (std::size_t b = 0; b < blocks; ++b) s.push_back({pick(1, 3), pick(0, 3), pick(0, 3)});
    out.push_back(s);
  }
  out.push_back({{3, 3, 3}, {3, 3, 3}, {3, 3, 3}});
  out.push_back({{3, 0, 3}, {1, 3, 0}, {2, 2, 2}});
  return out;
}

std::vector<Fixture> strong_identity_fixtures() {
  std::vector<Fixture> out;
  for (const auto& s : matrix_fixtures()) out.push_back({"matrix_model " + describe(s), matrix_model(s), s});
  for (const auto& c : {Rational(0), Rational(1), Rational(-5, 2)})
    out.push_back({"heisenberg_truncation(1,3," + to_string(c) + ")", heisenberg_truncation(1, 3, {c}), std::nullopt});
  out.push_back({"heisenberg_truncation(2,2,(1,1/2))", heisenberg_truncation(2, 2, {Rational(1), Rational(1, 2)}), std::nullopt});
  return out;
}

const std::vector<Fixture>& fixtures() {
  static const std::vector<Fixture> all = strong_identity_fixtures();
  return all;
}

// ---- criteria ----

Outcome strong_identity_pairing() {
  Outcome o;
  double worst = 0;
  std::string worst_case;
  for (int n = 1; n <= 2; ++n)
    for (int d = 0; d <= (n == 1 ? 6 : 4); ++d) {
      const auto t0 = Clock::now();
      const auto rep = heisenberg::verify_strong_identity(n, d);
      const double s = seconds_since(t0);
      const auto label = "n=" + std::to_string(n) + " d=" + std::to_string(d);
      if (!rep.success) o.fail(label + ": " + rep.failure);
      for (std::size_t k = 0; k < rep.matrix.basis.size(); ++k)
        if (rep.expected_diagonal[k] != symmetry_factor(rep.matrix.basis[k])) o.fail(label + ": diagonal mismatch");
      if (s >= 60) o.fail(label + " took " + std::to_string(s) + " s");
      if (s > worst) {
        worst = s;
        worst_case = label;
      }
    }
  if (o.passed) o.detail = "pairing matrix is diag(||σ||) for all cases, slowest " + worst_case + " at " + std::to_string(worst) + " s";
  return o;
}

std::vector<long> cli_block_sizes(Outcome& o, int rank, int degree) {
  std::ostringstream out, err;
  const int code = cli::run({"zhu", "heisenberg", "--rank", std::to_string(rank), "--degree", std::to_string(degree)}, out, err);
  std::vector<long> sizes;
  if (code != 0) {
    o.fail("cli exit code " + std::to_string(code) + ": " + err.str());
    return sizes;
  }
  const auto j = Json::parse(out.str());
  for (const auto& b : j["blocks"]) sizes.push_back(b["factors"][0]["size"].get<long>());
  return sizes;
}

Outcome zhu_block_sizes() {
  Outcome o;
  const std::vector<std::pair<std::pair<int, int>, std::vector<long>>> cases{{{1, 5}, {1, 1, 2, 3, 5, 7}},
                                                                             {{2, 3}, {1, 2, 5, 10}}};
  for (const auto& [nd, expected] : cases) {
    const auto [n, d] = nd;
    const auto sizes = cli_block_sizes(o, n, d);
    if (sizes != expected) o.fail("rank " + std::to_string(n) + " degree " + std::to_string(d) + " block sizes differ");
    for (int j = 0; j <= d && j < static_cast<int>(sizes.size()); ++j) {
      const auto cert = heisenberg::phiL_rank_certificate(n, j);
      if (!cert.nondegenerate || cert.dimension != sizes[static_cast<std::size_t>(j)])
        o.fail("certificate disagrees at rank " + std::to_string(n) + " level " + std::to_string(j));
    }
  }
  if (o.passed) o.detail = "[1,1,2,3,5,7] and [1,2,5,10], matching the pairing certificates";
  return o;
}

Outcome lattice_example() {
  Outcome o;
  const auto t0 = Clock::now();
  const auto L = lattice::EvenLattice::from_rows({{8}});
  const auto cos = lattice::dual_cosets(L);
  const std::vector<Rational> weights{0, Rational(1, 16), Rational(1, 4), Rational(9, 16), 1, Rational(9, 16), Rational(1, 4), Rational(1, 16)};
  if (cos.size() != 8) o.fail("expected 8 cosets, found " + std::to_string(cos.size()));
  for (std::size_t k = 0; k < cos.size() && k < 8; ++k) {
    if (cos[k] != lattice::RatVec{Rational(static_cast<long>(k), 8)}) o.fail("coset " + std::to_string(k) + " out of order");
    if (lattice::conformal_weight(L, cos[k]) != weights[k]) o.fail("weight of coset " + std::to_string(k));
    const Integer expected = k == 4 ? 2 : 1;
    if (k != 0 && lattice::graded_dims(L, cos[k], 0) != std::vector<Integer>{expected})
      o.fail("D^" + std::to_string(k) + "_0 differs");
  }
  if (lattice::graded_dims(L, cos[0], 1) != std::vector<Integer>{1, 1}) o.fail("dim (V_L)_1 differs from 1");
  const double s = seconds_since(t0);
  if (s >= 5) o.fail("took " + std::to_string(s) + " s");
  if (o.passed) o.detail = "weights (0,1/16,1/4,9/16,1,9/16,1/4,1/16), D^4_0=2, other D^k_0=1, dim V_1=1";
  return o;
}

// Criteria 4, 5 and 6 share the per-degree zig-zag data, so one pass fills all three.
struct Survey {
  Outcome axioms_morita, zigzag_laws, splitting;
};

const Survey& survey() {
  static const Survey result = [] {
    Survey sv;
    auto& c4 = sv.axioms_morita;
    auto& c5 = sv.zigzag_laws;
    auto& c6 = sv.splitting;
    c4.seconds = c5.seconds = c6.seconds = 0;
    std::size_t validated = 0, roundtrips = 0, unital = 0, mutations = 0, laws_checked = 0, splits = 0;
    std::mt19937_64 rng(7);
    auto timed = [](double& acc, auto&& fn) {
      const auto t0 = Clock::now();
      fn();
      acc += seconds_since(t0);
    };
    for (const auto& fx : fixtures()) {
      const auto& P = fx.algebra;
      if (fx.blocks) {
        timed(c4.seconds, [&] {
          const auto rep = validate_peirce(P);
          if (rep.passed()) ++validated;
          else c4.fail(fx.name + " fails " + rep.first_failure());

          // one perturbed structure constant
          std::vector<std::array<int, 3>> triples;
          for (int i = 0; i <= P.max_degree(); ++i)
            for (int j = 0; j <= P.max_degree(); ++j)
              for (int k = 0; k <= P.max_degree(); ++k)
                if (P.dim(i, j) && P.dim(j, k) && P.dim(i, k)) triples.push_back({i, j, k});
          auto pick = [&](std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); };
          const auto [i, j, k] = triples[pick(triples.size())];
          const std::size_t a = pick(P.dim(i, j)), b = pick(P.dim(j, k)), c = pick(P.dim(i, k));
          auto M = P;
          M.set_structure_constant(i, j, k, a, b, c, M.structure_constant(i, j, k, a, b, c) + 1);
          ++mutations;
          if (validate_peirce(M).passed()) c4.fail(fx.name + " still validates after perturbing one constant");
        });
      }

      for (int d = 0; d <= P.max_degree(); ++d) {
        const auto di = static_cast<std::size_t>(d);
        const auto label = fx.name + " d=" + std::to_string(d);
        bool has_identity = false;
        std::optional<ZigZag> Z;
        timed(c5.seconds, [&] {
          has_identity = find_strong_identity(P, d).element.has_value();
          Z = zigzag(P, d);
          if (!has_identity) return;
          ++laws_checked;
          const auto laws = zigzag_laws(P, *Z);
          if (!laws.passed()) c5.fail(label + " fails " + laws.first_failure());
        });

        bool is_unital = false;
        timed(c6.seconds, [&] {
          const auto rep = ideal_unit_and_split(P, Z->ideal());
          if (!rep.split) return;
          is_unital = true;
          ++splits;
          const auto& sp = *rep.split;
          if (!sp.idempotent) c6.fail(label + ": ε is not idempotent");
          if (!sp.central) c6.fail(label + ": ε is not central");
          if (!sp.block_diagonal) c6.fail(label + ": structure constants do not block-diagonalize");
          if (rank_of(Z->dim_A, Z->star) != Z->dim() || Z->dim() != Z->ideal().dim())
            c6.fail(label + ": ⋆ is not bijective onto Z_d");
        });

        if (!fx.blocks || !has_identity || !is_unital) continue;
        const auto& s = *fx.blocks;
        timed(c4.seconds, [&] {
          ++unital;
          const auto ctx = morita_context(P, *Z);
          auto check = [&](const RoundtripReport& r, const std::string& what) {
            ++roundtrips;
            if (!r.passed()) c4.fail(label + " " + what);
          };
          check(verify_roundtrip(P, ctx, regular_module(ctx.corner)), "regular A_d-module");
          check(verify_roundtrip_zd(P, ctx, regular_module(ctx.zd)), "regular Z_d-module");
          for (std::size_t b = 0; b < s.size(); ++b) {
            if (s[b][di] == 0) continue;
            check(verify_roundtrip(P, ctx, column_module(s, d, b)), "column module of block " + std::to_string(b));
            const auto W0 = restrict_to_ideal(column_module(s, 0, b), ctx.ideal, ctx.zd.label);
            check(verify_roundtrip_zd(P, ctx, W0), "Z_d column module of block " + std::to_string(b));
          }
        });
      }
    }
    if (c4.passed)
      c4.detail = std::to_string(validated) + " fixtures validate, " + std::to_string(roundtrips) + " round trips over " +
                  std::to_string(unital) + " unital degrees, " + std::to_string(mutations) + " mutants rejected";
    if (c5.passed) c5.detail = "laws hold in " + std::to_string(laws_checked) + " (fixture, degree) pairs";
    if (c6.passed) c6.detail = std::to_string(splits) + " unital (fixture, degree) pairs split";
    return sv;
  }();
  return result;
}

Outcome exceptional_degrees() {
  Outcome o;
  const std::vector<std::pair<BlockSizes, int>> cases{{{{1, 0, 1}, {2, 0, 0}}, 1},
                                                     {{{2, 0}, {1, 0}}, 1},
                                                     {{{1, 2, 0}, {3, 1, 0}}, 2},
                                                     {{{3, 0, 0, 2}}, 1}};
  for (const auto& [s, j] : cases) {
    const auto P = matrix_model(s);
    const auto label = describe(s) + " j=" + std::to_string(j);
    if (!validate_peirce(P).passed()) o.fail(label + " does not validate");
    if (P.dim(j, j) != 0) o.fail(label + ": A_j is nonzero");
    const auto Z = zigzag(P, j);
    if (Z.ideal().dim() != 0 || Z.dim() != 0) o.fail(label + ": Z_j is nonzero");
    std::vector<Integer> dims;
    for (int i = 0; i <= P.max_degree(); ++i) dims.emplace_back(P.dim(i, 0));
    if (!zhu::exceptional_degrees(dims, P.max_degree()).degrees.contains(j)) o.fail(label + " not reported exceptional");
  }
  for (int n = 1; n <= 4; ++n) {
    const auto rep = zhu::exceptional_degrees(labeled_partition_counts(n, 8), 8);
    if (!rep.degrees.empty()) o.fail("Heisenberg rank " + std::to_string(n) + " reports exceptional degrees");
  }
  for (int d = 0; d <= 8; ++d) {
    const auto cert = heisenberg::phiL_rank_certificate(1, d);
    if (!cert.nondegenerate || cert.dimension == 0) o.fail("rank 1 certificate vanishes at degree " + std::to_string(d));
  }
  if (o.passed) o.detail = "zero components give zero A_j and Z_j; Heisenberg ranks 1..4 have none up to degree 8";
  return o;
}

Outcome truncation_consistency() {
  Outcome o;
  for (const auto& c : {Rational(0), Rational(3, 2), Rational(-4)}) {
    const auto P = heisenberg_truncation(1, 3, {c});
    const auto label = "c=" + to_string(c);
    const auto rep = validate_peirce(P);
    if (!rep.passed()) o.fail(label + " fails " + rep.first_failure());
    for (int d = 0; d <= 3; ++d) {
      const auto si = find_strong_identity(P, d);
      if (!si.element) o.fail(label + " d=" + std::to_string(d) + ": no strong identity");
      else if (*si.element != truncated_strong_identity(1, d)) o.fail(label + " d=" + std::to_string(d) + ": strong identity differs");
    }
  }
  if (o.passed) o.detail = "three evaluation points validate and recover Σ ||σ||^-1 u_σ ⊗ ū_σ for d ≤ 3";
  return o;
}

}  // namespace

int main() {
  report(1, "strong identity pairing", strong_identity_pairing);
  report(2, "Heisenberg Zhu block sizes", zhu_block_sizes);
  report(3, "rank one lattice of norm 8", lattice_example);
  report(4, "Peirce axioms and Morita round trips", [] { return survey().axioms_morita; });
  report(5, "zig-zag laws", [] { return survey().zigzag_laws; });
  report(6, "idempotent splitting", [] { return survey().splitting; });
  report(7, "exceptional degrees", exceptional_degrees);
  report(8, "truncation consistency", truncation_consistency);
  return failures == 0 ? 0 : 1;
}
