#include "cli.hpp"

#include <catch_amalgamated.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = mta::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

mta::Json json_of(const Result& r) { return mta::Json::parse(r.out); }

std::string temp_file(const std::string& name, const std::string& content) {
  const std::string path = "build_cli_" + name;
  std::ofstream(path) << content;
  return path;
}

}  // namespace

TEST_CASE("heisenberg subcommands") {
  const auto v = run({"heisenberg", "verify", "--rank", "1", "--degree", "3"});
  CHECK(v.code == 0);
  CHECK(json_of(v)["diagonal"] == mta::Json::parse("[3,2,6]"));

  const auto id = run({"heisenberg", "identity", "--rank", "1", "--degree", "2"});
  CHECK(id.code == 0);
  const auto terms = json_of(id)["terms"];
  REQUIRE(terms.size() == 2);
  CHECK(terms[0]["coeff"] == "1/2");

  const auto z = run({"heisenberg", "zhu", "--rank", "2", "--degree", "3"});
  CHECK(z.code == 0);
  CHECK(json_of(z)["consistent"] == true);

  const auto text = run({"heisenberg", "verify", "--rank", "1", "--degree", "3", "--format", "text"});
  CHECK(text.out == "ok: pairing matrix is diag(3, 2, 6)\n");
}

TEST_CASE("zhu subcommands") {
  const auto t = run({"--format", "text", "zhu", "heisenberg", "--rank", "1", "--degree", "2"});
  CHECK(t.code == 0);
  CHECK(t.out == "A_2 ≅ Mat_1(A) × Mat_1(A) × Mat_2(A), A = Q[h1]\n");

  const auto j = json_of(run({"zhu", "heisenberg", "--rank", "1", "--degree", "5"}));
  std::vector<int> sizes;
  for (const auto& b : j["blocks"]) sizes.push_back(b["factors"][0]["size"].get<int>());
  CHECK(sizes == std::vector<int>{1, 1, 2, 3, 5, 7});

  const auto path = temp_file("mods.json", R"([{"label":"M1","graded_dims":[1,1]},{"label":"M2","graded_dims":[1,2]}])");
  const auto r = run({"zhu", "rational", "--modules", path, "--degree", "1"});
  CHECK(r.code == 0);
  CHECK(json_of(r)["text"] == "A_1 ≅ Mat_1(Q) × Mat_1(Q) × Mat_1(Q) × Mat_2(Q)");
  CHECK(run({"zhu", "rational", "--modules", path, "--degree", "4"}).code == 2);
  std::remove(path.c_str());

  const auto e = json_of(run({"zhu", "exceptional", "--dims", "1,0,1", "--max", "2"}));
  REQUIRE(e["exceptional"].size() == 1);
  CHECK(e["exceptional"][0]["degree"] == 1);
  CHECK(json_of(run({"zhu", "exceptional", "--heisenberg-rank", "2", "--max", "8"}))["exceptional"].empty());
}

TEST_CASE("lattice subcommands") {
  const auto d = run({"lattice", "dims", "--gram", "data/z8.gram", "--coset", "4", "--max", "0"});
  CHECK(d.code == 0);
  CHECK(json_of(d)["dims"] == mta::Json::parse("[2]"));

  const auto w = json_of(run({"lattice", "weights", "--gram", "data/z8.gram"}));
  std::vector<std::string> weights;
  for (const auto& x : w["weights"]) weights.push_back(x["conformal_weight"]);
  CHECK(weights == std::vector<std::string>{"0", "1/16", "1/4", "9/16", "1", "9/16", "1/4", "1/16"});

  const auto c = json_of(run({"lattice", "cosets", "--gram", "data/z8.gram"}));
  CHECK(c["determinant"] == 8);
  CHECK(c["cosets"][1] == mta::Json::parse(R"(["1/8"])"));

  CHECK(run({"lattice", "dims", "--gram", "data/z8.gram", "--coset", "8", "--max", "0"}).code == 2);
  CHECK(run({"lattice", "cosets", "--gram", "no/such/file"}).code == 2);
  const auto odd = temp_file("odd.gram", "1\n3\n");
  const auto r = run({"lattice", "cosets", "--gram", odd});
  CHECK(r.code == 2);
  CHECK(r.err.find("--gram") != std::string::npos);
  std::remove(odd.c_str());
}

TEST_CASE("peirce subcommands") {
  const auto fx = run({"peirce", "fixture", "--matrix", "1,1;2,1"});
  REQUIRE(fx.code == 0);
  const auto path = temp_file("alg.json", fx.out);
  CHECK(run({"peirce", "validate", "--algebra", path}).code == 0);
  const auto zz = run({"peirce", "zigzag", "--algebra", path, "--degree", "1"});
  CHECK(zz.code == 0);
  CHECK(json_of(zz)["zigzag_dim"] == 5);
  CHECK(json_of(zz)["star_bijective"] == true);
  CHECK(run({"peirce", "morita", "--algebra", path, "--degree", "1"}).code == 0);
  CHECK(run({"peirce", "zigzag", "--algebra", path, "--degree", "5"}).code == 2);

  auto j = mta::Json::parse(fx.out);
  j["products"][0]["coeff"] = "2";
  std::ofstream(path) << j.dump();
  const auto bad = run({"peirce", "validate", "--algebra", path});
  CHECK(bad.code == 1);
  CHECK_FALSE(json_of(bad)["first_failure"].is_null());

  std::ofstream(path) << "{not json";
  CHECK(run({"peirce", "validate", "--algebra", path}).code == 2);
  std::remove(path.c_str());

  const auto h = run({"peirce", "fixture", "--heisenberg-rank", "1", "--max-degree", "2", "--point", "3/2"});
  CHECK(h.code == 0);
  CHECK(mta::peirce::validate_peirce(mta::peirce::peirce_from_json(mta::Json::parse(h.out))).passed());
  CHECK(run({"peirce", "fixture", "--heisenberg-rank", "2", "--point", "1"}).code == 2);
}

TEST_CASE("usage errors and guardrails") {
  CHECK(run({}).code == 2);
  CHECK(run({"bogus"}).code == 2);
  CHECK(run({"heisenberg", "verify", "--rank", "1"}).code == 2);
  CHECK(run({"heisenberg", "verify", "--rank", "x", "--degree", "1"}).code == 2);
  CHECK(run({"--format", "yaml", "partitions", "count", "--rank", "1", "--max", "3"}).code == 2);
  const auto big = run({"heisenberg", "identity", "--rank", "5", "--degree", "1"});
  CHECK(big.code == 2);
  CHECK(big.err.find("--rank") != std::string::npos);
  CHECK(run({"heisenberg", "identity", "--rank", "5", "--degree", "1", "--unsafe-no-limits"}).code == 0);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("partitions subcommands and determinism") {
  const auto c = json_of(run({"partitions", "count", "--rank", "2", "--max", "4"}));
  CHECK(c["counts"] == mta::Json::parse("[1,2,5,10,20]"));
  const auto l = json_of(run({"partitions", "list", "--rank", "1", "--weight", "3"}));
  REQUIRE(l["partitions"].size() == 3);
  CHECK(l["partitions"][1]["partition"] == mta::Json::parse("[[2,1]]"));
  CHECK(l["partitions"][2]["symmetry_factor"] == 6);

  const std::vector<std::string> args{"heisenberg", "identity", "--rank", "2", "--degree", "3"};
  CHECK(run(args).out == run(args).out);
}
