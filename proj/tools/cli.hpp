#pragma once

// Command-line front end. run() is separate from main() so the tests can drive it.

#include "mta/heisenberg.hpp"
#include "mta/lattice.hpp"
#include "mta/partitions.hpp"
#include "mta/peirce.hpp"
#include "mta/zhu.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace mta::cli {

enum Exit : int { kOk = 0, kVerificationFailed = 1, kUsage = 2 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Limits {
  int max_rank = 4;
  int max_degree = 8;
  int max_lattice_rank = 4;
};

namespace detail {

inline std::string render_partition(const LabeledPartition& s) {
  std::string out = "(";
  for (int i = 0; i < s.rank(); ++i) {
    if (i) out += " | ";
    const auto& parts = s.slot(i).parts();
    if (parts.empty()) out += "∅";
    for (std::size_t k = 0; k < parts.size(); ++k) out += (k ? "," : "") + std::to_string(parts[k]);
  }
  return out + ")";
}

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) out.push_back(cur);
  return out;
}

inline std::vector<Integer> parse_int_list(const std::string& flag, const std::string& s) {
  std::vector<Integer> out;
  for (const auto& tok : split(s, ',')) {
    try {
      out.emplace_back(tok);
    } catch (const std::runtime_error&) {
      throw UsageError(flag + ": not an integer list: " + s);
    }
  }
  if (out.empty()) throw UsageError(flag + ": empty list");
  return out;
}

inline Json read_json_file(const std::string& flag, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError(flag + ": cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw UsageError(flag + ": invalid JSON in " + path + ": " + e.what());
  }
}

inline lattice::EvenLattice read_gram(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("--gram: cannot open " + path);
  try {
    return lattice::parse_gram(in);
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string("--gram: ") + e.what());
  }
}

inline Json integers(const std::vector<Integer>& v) {
  auto a = Json::array();
  for (const auto& x : v) a.push_back(x.convert_to<long long>());
  return a;
}

}  // namespace detail

/// Runs one command line (argv[0] is the program name). Returns the exit code.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact computations for mode transition algebras, Peirce algebras and higher Zhu algebras", "mta"};
  app.require_subcommand(1);

  std::string format = "json";
  bool unsafe = false;
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "text"}));
  app.add_flag("--unsafe-no-limits", unsafe, "Lift the size guardrails (n<=4, d<=8, lattice rank<=4)");

  int rank = 1, degree = 0, max_m = 0, coset = -1;
  std::string gram_path, algebra_path, modules_path, dims_list, matrix_spec, point_spec;
  std::function<int()> action;

  auto emit = [&](const Json& j, const std::string& text) {
    if (format == "json") out << j.dump() << '\n';
    else out << text << '\n';
  };
  auto guard = [&](const char* flag, int value, int cap) {
    if (value < 0) throw UsageError(std::string(flag) + " must be nonnegative");
    if (!unsafe && value > cap)
      throw UsageError(std::string(flag) + " = " + std::to_string(value) + " exceeds the limit " + std::to_string(cap) +
                       " (use --unsafe-no-limits)");
  };
  const Limits lim;
  auto guard_rank = [&] {
    if (rank < 1) throw UsageError("--rank must be positive");
    guard("--rank", rank, lim.max_rank);
  };

  // ---- partitions ----
  auto* parts = app.add_subcommand("partitions", "Labeled partition combinatorics");
  parts->require_subcommand(1);
  auto* p_count = parts->add_subcommand("count", "p^n_m for m = 0..max");
  p_count->add_option("--rank", rank, "Number of labels n")->required();
  p_count->add_option("--max", max_m, "Largest weight m")->required();
  p_count->callback([&] {
    action = [&] {
      guard_rank();
      guard("--max", max_m, 64);
      const auto counts = labeled_partition_counts(rank, max_m);
      std::string text;
      for (std::size_t m = 0; m < counts.size(); ++m) text += (m ? "\n" : "") + std::to_string(m) + " " + counts[m].str();
      emit(Json{{"rank", rank}, {"counts", detail::integers(counts)}}, text);
      return kOk;
    };
  });
  auto* p_list = parts->add_subcommand("list", "Enumerate P^n_m with symmetry factors");
  p_list->add_option("--rank", rank, "Number of labels n")->required();
  p_list->add_option("--weight", max_m, "Weight m")->required();
  p_list->callback([&] {
    action = [&] {
      guard_rank();
      guard("--weight", max_m, 12);
      auto arr = Json::array();
      std::string text;
      for (const auto& s : enumerate_labeled_partitions(rank, max_m)) {
        arr.push_back(Json{{"partition", to_json(s)}, {"symmetry_factor", symmetry_factor(s).convert_to<long long>()}});
        text += (text.empty() ? "" : "\n") + detail::render_partition(s) + "  " + symmetry_factor(s).str();
      }
      emit(Json{{"rank", rank}, {"weight", max_m}, {"partitions", arr}}, text);
      return kOk;
    };
  });

  // ---- heisenberg ----
  auto* heis = app.add_subcommand("heisenberg", "Rank-n Heisenberg mode algebra");
  heis->require_subcommand(1);
  auto* h_id = heis->add_subcommand("identity", "Strong identity 1_d");
  auto* h_verify = heis->add_subcommand("verify", "Check the pairing matrix is diag(‖σ‖)");
  auto* h_zhu = heis->add_subcommand("zhu", "A_d decomposition cross-checked against the pairing");
  for (auto* sc : {h_id, h_verify, h_zhu}) {
    sc->add_option("--rank", rank, "Rank n")->required();
    sc->add_option("--degree", degree, "Degree d")->required();
  }
  h_id->callback([&] {
    action = [&] {
      guard_rank();
      guard("--degree", degree, lim.max_degree);
      const auto terms = heisenberg::strong_identity(rank, degree);
      std::string text = "1_" + std::to_string(degree) + " =";
      for (std::size_t k = 0; k < terms.size(); ++k)
        text += (k ? " + " : " ") + to_string(terms[k].coeff) + " u" + detail::render_partition(terms[k].partition) +
                " ⊗ ū" + detail::render_partition(terms[k].partition);
      emit(Json{{"rank", rank}, {"degree", degree}, {"terms", heisenberg::to_json(terms)}}, text);
      return kOk;
    };
  });
  h_verify->callback([&] {
    action = [&] {
      guard_rank();
      guard("--degree", degree, lim.max_degree);
      const auto rep = heisenberg::verify_strong_identity(rank, degree);
      std::string text = rep.success ? "ok: pairing matrix is diag(" : "FAILED: " + rep.failure;
      if (rep.success) {
        for (std::size_t k = 0; k < rep.expected_diagonal.size(); ++k)
          text += (k ? ", " : "") + rep.expected_diagonal[k].str();
        text += ")";
      }
      Json j{{"rank", rank}, {"degree", degree}, {"success", rep.success}, {"diagonal", detail::integers(rep.expected_diagonal)}};
      if (!rep.success) j["failure"] = rep.failure;
      emit(j, text);
      return rep.success ? kOk : kVerificationFailed;
    };
  });
  auto zhu_heis = [&](bool cross_check) {
    guard_rank();
    guard("--degree", degree, lim.max_degree);
    const auto z = zhu::heisenberg_zhu_descriptor(rank, degree);
    Json j = zhu::to_json(z);
    j["text"] = zhu::to_text(z);
    bool ok = true;
    if (cross_check) {
      auto certs = Json::array();
      for (int m = 0; m <= degree; ++m) {
        const auto cert = heisenberg::phiL_rank_certificate(rank, m);
        const bool match = cert.nondegenerate && cert.dimension == z.blocks[static_cast<std::size_t>(m)].front().size;
        ok = ok && match;
        certs.push_back(Json{{"level", m}, {"dimension", cert.dimension.convert_to<long long>()}, {"nondegenerate", cert.nondegenerate}});
      }
      j["certificates"] = certs;
      j["consistent"] = ok;
    }
    emit(j, zhu::to_text(z) + (ok ? "" : "\nFAILED: block sizes disagree with the pairing certificate"));
    return ok ? kOk : kVerificationFailed;
  };
  h_zhu->callback([&] { action = [&] { return zhu_heis(true); }; });

  // ---- lattice ----
  auto* lat = app.add_subcommand("lattice", "Even lattice VOA modules");
  lat->require_subcommand(1);
  auto* l_cosets = lat->add_subcommand("cosets", "Representatives of L'/L");
  auto* l_weights = lat->add_subcommand("weights", "Conformal weights a_λ");
  auto* l_dims = lat->add_subcommand("dims", "Graded dimensions of V_{λ+L}");
  for (auto* sc : {l_cosets, l_weights, l_dims}) sc->add_option("--gram", gram_path, "Gram matrix file")->required();
  l_dims->add_option("--coset", coset, "Index into the coset list (all cosets if omitted)");
  l_dims->add_option("--max", max_m, "Largest degree N")->required();
  auto load_lattice = [&] {
    auto L = detail::read_gram(gram_path);
    guard("lattice rank", static_cast<int>(L.rank()), lim.max_lattice_rank);
    return L;
  };
  l_cosets->callback([&] {
    action = [&] {
      const auto L = load_lattice();
      auto arr = Json::array();
      std::string text;
      for (const auto& c : lattice::dual_cosets(L)) {
        arr.push_back(lattice::coset_to_json(c));
        text += (text.empty() ? "" : "\n") + lattice::coset_to_json(c).dump();
      }
      emit(Json{{"determinant", L.determinant().convert_to<long long>()}, {"cosets", arr}}, text);
      return kOk;
    };
  });
  l_weights->callback([&] {
    action = [&] {
      const auto L = load_lattice();
      auto arr = Json::array();
      std::string text;
      for (const auto& c : lattice::dual_cosets(L)) {
        const auto w = to_string(lattice::conformal_weight(L, c));
        arr.push_back(Json{{"coset", lattice::coset_to_json(c)}, {"conformal_weight", w}});
        text += (text.empty() ? "" : "\n") + lattice::coset_to_json(c).dump() + " " + w;
      }
      emit(Json{{"weights", arr}}, text);
      return kOk;
    };
  });
  l_dims->callback([&] {
    action = [&] {
      const auto L = load_lattice();
      guard("--max", max_m, 64);
      const auto cosets = lattice::dual_cosets(L);
      auto one = [&](const lattice::RatVec& c) { return lattice::module_json(L, c, max_m); };
      if (coset >= 0) {
        if (static_cast<std::size_t>(coset) >= cosets.size())
          throw UsageError("--coset: index " + std::to_string(coset) + " out of range (" + std::to_string(cosets.size()) + " cosets)");
        const auto j = one(cosets[static_cast<std::size_t>(coset)]);
        emit(j, j["dims"].dump());
      } else {
        auto arr = Json::array();
        std::string text;
        for (const auto& c : cosets) {
          arr.push_back(one(c));
          text += (text.empty() ? "" : "\n") + arr.back()["coset"].dump() + " " + arr.back()["dims"].dump();
        }
        emit(Json{{"modules", arr}}, text);
      }
      return kOk;
    };
  });

  // ---- peirce ----
  auto* pc = app.add_subcommand("peirce", "Finite-dimensional Peirce algebras (JSON input)");
  pc->require_subcommand(1);
  auto* pc_validate = pc->add_subcommand("validate", "Check the Peirce algebra axioms");
  auto* pc_zigzag = pc->add_subcommand("zigzag", "Zig-zag algebra, Z_d and strong identity at degree d");
  auto* pc_morita = pc->add_subcommand("morita", "Morita round trips for the regular modules at degree d");
  auto* pc_fixture = pc->add_subcommand("fixture", "Emit a matrix-model or Heisenberg-truncation algebra");
  for (auto* sc : {pc_validate, pc_zigzag, pc_morita}) sc->add_option("--algebra", algebra_path, "Algebra JSON file")->required();
  for (auto* sc : {pc_zigzag, pc_morita}) sc->add_option("--degree", degree, "Degree d")->required();
  auto* opt_matrix = pc_fixture->add_option("--matrix", matrix_spec, "Block dimension vectors, e.g. \"1,1;2,0\"");
  auto* opt_hrank = pc_fixture->add_option("--heisenberg-rank", rank, "Rank n of the Heisenberg truncation");
  pc_fixture->add_option("--max-degree", degree, "Truncation degree D");
  pc_fixture->add_option("--point", point_spec, "Evaluation point c, e.g. \"1/2,3\"");
  opt_matrix->excludes(opt_hrank);

  auto load_algebra = [&] {
    const Json j = detail::read_json_file("--algebra", algebra_path);
    try {
      return peirce::peirce_from_json(j);
    } catch (const std::invalid_argument& e) {
      throw UsageError(std::string("--algebra: ") + e.what());
    }
  };
  auto check_degree = [&](const peirce::PeirceAlgebra& P) {
    if (degree < 0 || degree > P.max_degree())
      throw UsageError("--degree: " + std::to_string(degree) + " outside 0.." + std::to_string(P.max_degree()));
  };
  pc_validate->callback([&] {
    action = [&] {
      const auto rep = peirce::validate_peirce(load_algebra());
      std::string text;
      for (const auto& c : rep.checks)
        text += (text.empty() ? "" : "\n") + std::string(c.passed ? "pass " : "FAIL ") + c.axiom + (c.detail.empty() || c.passed ? "" : ": " + c.detail);
      emit(peirce::to_json(rep), text);
      return rep.passed() ? kOk : kVerificationFailed;
    };
  });
  pc_zigzag->callback([&] {
    action = [&] {
      const auto P = load_algebra();
      check_degree(P);
      const auto Z = peirce::zigzag(P, degree);
      const auto si = peirce::find_strong_identity(P, degree);
      const auto ideal = Z.ideal();
      Json j{{"degree", degree}, {"corner_dim", P.dim(degree, degree)}, {"zigzag_dim", Z.dim()}, {"ideal_dim", ideal.dim()},
             {"well_defined", Z.well_defined}, {"zero_ring", P.dim(degree, degree) == 0 && ideal.dim() == 0}};
      j["strong_identity"] = si.element ? peirce::vec_to_json(*si.element) : Json(nullptr);
      bool ok = Z.well_defined;
      std::string text = "Z_" + std::to_string(degree) + ": dim " + std::to_string(Z.dim()) + ", ideal dim " + std::to_string(ideal.dim());
      if (si.element) {
        const auto laws = peirce::zigzag_laws(P, Z);
        j["laws"] = peirce::to_json(laws);
        ok = ok && laws.passed();
        text += laws.passed() ? ", zig-zag laws hold" : ", FAILED: " + laws.first_failure();
        const auto split = peirce::ideal_unit_and_split(P, ideal);
        if (split.split) {
          j["epsilon"] = peirce::vec_to_json(split.split->epsilon);
          j["star_bijective"] = Z.dim() == ideal.dim();
        }
      } else {
        text += ", no strong identity";
      }
      emit(j, text);
      return ok ? kOk : kVerificationFailed;
    };
  });
  pc_morita->callback([&] {
    action = [&] {
      const auto P = load_algebra();
      check_degree(P);
      peirce::MoritaContext ctx;
      try {
        ctx = peirce::morita_context(P, degree);
      } catch (const peirce::PreconditionError& e) {
        emit(Json{{"degree", degree}, {"passed", false}, {"error", e.what()}}, std::string("FAILED: ") + e.what());
        return kVerificationFailed;
      }
      auto report = [](const peirce::RoundtripReport& r) {
        return Json{{"original_dim", r.original_dim}, {"intermediate_dim", r.intermediate_dim}, {"roundtrip_dim", r.roundtrip_dim},
                    {"evaluation_rank", r.evaluation_rank}, {"equivariant", r.equivariant}, {"passed", r.passed()}};
      };
      const auto fwd = peirce::verify_roundtrip(P, ctx, peirce::regular_module(ctx.corner));
      const auto bwd = peirce::verify_roundtrip_zd(P, ctx, peirce::regular_module(ctx.zd));
      const bool ok = fwd.passed() && bwd.passed();
      emit(Json{{"degree", degree}, {"corner_regular", report(fwd)}, {"ideal_regular", report(bwd)}, {"passed", ok}},
           ok ? "ok: both round trips are equivariant bijections" : "FAILED: round trip is not an isomorphism");
      return ok ? kOk : kVerificationFailed;
    };
  });
  pc_fixture->callback([&] {
    action = [&] {
      if (!matrix_spec.empty()) {
        peirce::BlockSizes sizes;
        for (const auto& blk : detail::split(matrix_spec, ';')) {
          std::vector<std::size_t> v;
          for (const auto& x : detail::parse_int_list("--matrix", blk)) {
            if (x < 0) throw UsageError("--matrix: negative dimension");
            v.push_back(x.convert_to<std::size_t>());
          }
          sizes.push_back(std::move(v));
        }
        try {
          out << peirce::to_json(peirce::matrix_model(sizes)).dump() << '\n';
        } catch (const std::invalid_argument& e) {
          throw UsageError(std::string("--matrix: ") + e.what());
        }
        return kOk;
      }
      guard_rank();
      guard("--max-degree", degree, lim.max_degree);
      std::vector<Rational> point;
      if (point_spec.empty()) point.assign(static_cast<std::size_t>(rank), Rational(0));
      for (const auto& tok : detail::split(point_spec, ',')) {
        try {
          point.push_back(parse_rational(tok));
        } catch (const std::invalid_argument&) {
          throw UsageError("--point: malformed rational " + tok);
        }
      }
      if (point.size() != static_cast<std::size_t>(rank)) throw UsageError("--point: needs exactly --heisenberg-rank entries");
      out << peirce::to_json(peirce::heisenberg_truncation(rank, degree, point)).dump() << '\n';
      return kOk;
    };
  });

  // ---- zhu ----
  auto* zh = app.add_subcommand("zhu", "Higher Zhu algebra decompositions");
  zh->require_subcommand(1);
  auto* z_rational = zh->add_subcommand("rational", "A_d for a rational VOA from module graded dimensions");
  z_rational->add_option("--modules", modules_path, "Modules JSON file")->required();
  z_rational->add_option("--degree", degree, "Degree d")->required();
  auto* z_heis = zh->add_subcommand("heisenberg", "A_d for the rank-n Heisenberg VOA");
  z_heis->add_option("--rank", rank, "Rank n")->required();
  z_heis->add_option("--degree", degree, "Degree d")->required();
  auto* z_exc = zh->add_subcommand("exceptional", "Exceptional degrees from dim Φ^L(A)_j");
  auto* opt_dims = z_exc->add_option("--dims", dims_list, "Comma-separated dimensions j = 0..");
  auto* opt_zrank = z_exc->add_option("--heisenberg-rank", rank, "Use the rank-n Heisenberg dimensions");
  z_exc->add_option("--max", max_m, "Largest degree")->required();
  opt_dims->excludes(opt_zrank);

  z_rational->callback([&] {
    action = [&] {
      std::vector<zhu::SimpleModuleData> mods;
      try {
        mods = zhu::modules_from_json(detail::read_json_file("--modules", modules_path));
      } catch (const Json::exception& e) {
        throw UsageError(std::string("--modules: ") + e.what());
      } catch (const std::invalid_argument& e) {
        throw UsageError(std::string("--modules: ") + e.what());
      }
      zhu::ZhuDescriptor z;
      try {
        z = zhu::rational_zhu_descriptor(mods, degree);
      } catch (const std::out_of_range& e) {
        throw UsageError(std::string("--degree: ") + e.what());
      }
      Json j = zhu::to_json(z);
      j["text"] = zhu::to_text(z);
      j["support"] = zhu::zd_support(mods, degree);
      emit(j, zhu::to_text(z));
      return kOk;
    };
  });
  z_heis->callback([&] { action = [&] { return zhu_heis(false); }; });
  z_exc->callback([&] {
    action = [&] {
      std::vector<Integer> dims;
      if (!dims_list.empty()) {
        dims = detail::parse_int_list("--dims", dims_list);
      } else if (opt_zrank->count() > 0) {
        guard_rank();
        guard("--max", max_m, lim.max_degree);
        dims = labeled_partition_counts(rank, max_m);
      } else {
        throw UsageError("one of --dims or --heisenberg-rank is required");
      }
      zhu::ExceptionalReport rep;
      try {
        rep = zhu::exceptional_degrees(dims, max_m);
      } catch (const std::exception& e) {
        throw UsageError(std::string("--max/--dims: ") + e.what());
      }
      auto arr = Json::array();
      std::string text = rep.degrees.empty() ? "no exceptional degrees" : "exceptional:";
      for (int d : rep.degrees) {
        arr.push_back(Json{{"degree", d}, {"corner_zero_ring", true}, {"ideal_zero_ring", true}});
        text += " " + std::to_string(d);
      }
      emit(Json{{"max", max_m}, {"exceptional", arr}}, text);
      return kOk;
    };
  });

  std::function<void(CLI::App*)> fall = [&](CLI::App* a) {
    for (auto* sub : a->get_subcommands({})) {
      sub->fallthrough();
      fall(sub);
    }
  };
  fall(&app);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }
  try {
    return action ? action() : kUsage;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
}

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv{"mta"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace mta::cli
