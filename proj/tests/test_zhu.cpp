#include "mta/heisenberg.hpp"
#include "mta/zhu.hpp"
#include "support/generators.hpp"

#include <catch_amalgamated.hpp>

using namespace mta;
using namespace mta::zhu;

namespace {

std::vector<Integer> ints(std::initializer_list<long> v) {
  std::vector<Integer> out;
  for (long x : v) out.emplace_back(x);
  return out;
}

SimpleModuleData module(std::string label, std::initializer_list<long> dims) {
  return SimpleModuleData{std::move(label), ints(dims), std::nullopt};
}

}  // namespace

TEST_CASE("rational descriptors") {
  SECTION("holomorphic V with trivial weight one space") {
    const auto z = rational_zhu_descriptor({module("V", {1, 0, 196884})}, 1);
    REQUIRE(z.blocks.size() == 2);
    CHECK(z.blocks[0].size() == 1);
    CHECK(z.blocks[0][0].size == 1);
    CHECK(z.blocks[1].empty());
    CHECK(zd_support({module("V", {1, 0})}, 1).empty());
  }
  SECTION("two modules") {
    const std::vector<SimpleModuleData> mods{module("M1", {1, 1}), module("M2", {1, 2})};
    const auto z = rational_zhu_descriptor(mods, 1);
    CHECK(z.sizes() == ints({1, 1, 1, 2}));
    CHECK(z.blocks[1][1].module == "M2");
    CHECK(z.blocks[1][1].ring.is_scalar());
    CHECK(zd_support(mods, 1) == std::vector<std::string>{"M1", "M2"});
    CHECK(zd_support(mods, 0).size() == 2);
    const auto z0 = rational_zhu_descriptor(mods, 0);
    CHECK(z0.blocks.size() == 1);
    CHECK(z0.blocks[0].size() == 2);
  }
  SECTION("out of range") {
    CHECK_THROWS_AS(rational_zhu_descriptor({module("M", {1, 1})}, 2), std::out_of_range);
    CHECK_THROWS_AS(zd_support({module("M", {1})}, -1), std::out_of_range);
  }
}

TEST_CASE("rational descriptor properties") {
  gen::Rng rng(41);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<SimpleModuleData> mods;
    const int count = rng.uniform(1, 4);
    for (int i = 0; i < count; ++i) {
      SimpleModuleData m{"M" + std::to_string(i), {}, std::nullopt};
      m.graded_dims.emplace_back(rng.uniform(1, 3));
      for (int j = 1; j <= 4; ++j) m.graded_dims.emplace_back(rng.uniform(0, 3));
      mods.push_back(m);
    }
    Integer prev = 0;
    for (int d = 0; d <= 4; ++d) {
      const auto z = rational_zhu_descriptor(mods, d);
      for (int j = 0; j <= d; ++j) {
        std::vector<std::string> labels;
        for (const auto& f : z.blocks[static_cast<std::size_t>(j)]) labels.push_back(f.module);
        CHECK(labels == zd_support(mods, j));
      }
      Integer oracle = 0;
      for (const auto& m : mods)
        for (int j = 0; j <= d; ++j) oracle += m.graded_dims[static_cast<std::size_t>(j)] * m.graded_dims[static_cast<std::size_t>(j)];
      CHECK(z.total_dimension() == oracle);
      CHECK(z.total_dimension() >= prev);
      prev = z.total_dimension();
    }
  }
}

TEST_CASE("Heisenberg descriptors") {
  CHECK(heisenberg_zhu_descriptor(1, 2).sizes() == ints({1, 1, 2}));
  CHECK(heisenberg_zhu_descriptor(2, 2).sizes() == ints({1, 2, 5}));
  CHECK(heisenberg_zhu_descriptor(1, 5).sizes() == ints({1, 1, 2, 3, 5, 7}));
  CHECK(heisenberg_zhu_descriptor(2, 3).sizes() == ints({1, 2, 5, 10}));
  const auto z0 = heisenberg_zhu_descriptor(3, 0);
  REQUIRE(z0.blocks.size() == 1);
  CHECK(z0.blocks[0][0].ring == Ring::polynomial(3));

  SECTION("block sizes match the pairing certificates") {
    for (int n = 1; n <= 2; ++n) {
      const auto z = heisenberg_zhu_descriptor(n, 4);
      for (int j = 0; j <= 4; ++j) {
        const auto cert = heisenberg::phiL_rank_certificate(n, j);
        CHECK(cert.nondegenerate);
        CHECK(z.blocks[static_cast<std::size_t>(j)][0].size == cert.dimension);
      }
    }
  }
  SECTION("rendering") {
    CHECK(to_text(heisenberg_zhu_descriptor(1, 2)) == "A_2 ≅ Mat_1(A) × Mat_1(A) × Mat_2(A), A = Q[h1]");
    CHECK(to_text(heisenberg_zhu_descriptor(2, 0)) == "A_0 ≅ Mat_1(A), A = Q[h1,h2]");
    CHECK(to_text(rational_zhu_descriptor({module("M", {1, 2})}, 1)) == "A_1 ≅ Mat_1(Q) × Mat_2(Q)");
  }
  SECTION("JSON round trip") {
    const auto z = heisenberg_zhu_descriptor(2, 3);
    const auto j = to_json(z);
    CHECK(j["blocks"][3]["factors"][0]["size"] == 10);
    CHECK(j["blocks"][3]["factors"][0]["ring"] == "polynomial(2)");
    CHECK(to_json(zhu_descriptor_from_json(j)) == j);
    CHECK_THROWS_AS(ring_from_tag("matrix"), std::invalid_argument);
  }
}

TEST_CASE("corollary descriptor") {
  CHECK(cor1_descriptor(ints({1, 3, 9}), 1, 2).sizes() == ints({1, 3, 9}));
  for (int n = 1; n <= 3; ++n)
    for (int d = 0; d <= 5; ++d)
      CHECK(to_json(cor1_descriptor(labeled_partition_counts(n, d), n, d)) == to_json(heisenberg_zhu_descriptor(n, d)));
  try {
    cor1_descriptor(ints({1, 0, 4}), 1, 2);
    FAIL("expected an exceptional-degree error");
  } catch (const std::domain_error& e) {
    CHECK(std::string(e.what()).find("degree 1") != std::string::npos);
  }
  CHECK_THROWS_AS(cor1_descriptor(ints({2, 1}), 1, 1), std::invalid_argument);
}

TEST_CASE("exceptional degrees") {
  CHECK(exceptional_degrees(ints({1, 0, 1}), 2).degrees == std::set<int>{1});
  CHECK(exceptional_degrees(ints({1, 0, 1}), 0).degrees.empty());
  for (int n = 1; n <= 4; ++n) CHECK(exceptional_degrees(labeled_partition_counts(n, 8), 8).degrees.empty());
  CHECK_THROWS_AS(exceptional_degrees(ints({1, 1}), 3), std::out_of_range);
  CHECK_THROWS_AS(exceptional_degrees(ints({0, 1}), 1), std::invalid_argument);
}

TEST_CASE("modules JSON") {
  const auto mods = modules_from_json(Json::parse(R"([{"label":"L0","graded_dims":[1,0,1],"conformal_weight":"1/16"}])"));
  REQUIRE(mods.size() == 1);
  CHECK(mods[0].graded_dims == ints({1, 0, 1}));
  CHECK(*mods[0].conformal_weight == Rational(1, 16));
  CHECK_THROWS_AS(modules_from_json(Json::parse("{}")), std::invalid_argument);
}
