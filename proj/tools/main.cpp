// SPDX-License-Identifier: Apache-2.0
//
// triroots: exact root counting for triangular polynomials over finite
// fields. Subcommands: count, oracle, charsum, equiv, selftest.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "triroots/triroots.hpp"

namespace {

using triroots::Json;

/// Inputs are file paths, "-" for stdin, or inline JSON (starts with '{').
Json load_json(const std::string& input) {
  try {
    if (!input.empty() && input.front() == '{') return Json::parse(input);
    if (input == "-") return Json::parse(std::cin);
    std::ifstream in(input);
    if (!in) triroots::fail("bad_input", "cannot open " + input);
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    triroots::fail("bad_json", e.what());
  }
}

void emit(const Json& j) { std::cout << j.dump(2) << "\n"; }

int emit_error(const triroots::Error& e) {
  emit(Json{{"error", {{"code", e.code()}, {"message", e.what()}}}});
  return 1;
}

triroots::TriangularPoly require_triangular(const triroots::ParsedInput& input) {
  if (input.triangular) return *input.triangular;
  auto classified = triroots::classify(*input.sparse);
  if (!classified.triangular)
    triroots::fail("not_triangular", "input polynomial is not triangular");
  return *classified.triangular;
}

int cmd_count(const std::string& input_arg, bool no_oracle,
              std::uint64_t budget, unsigned threads) {
  triroots::ParsedInput input = triroots::parse_input(load_json(input_arg));
  triroots::TriangularPoly poly = require_triangular(input);
  triroots::CountOptions opts;
  opts.run_oracle_fallback = !no_oracle;
  opts.oracle.point_budget = budget;
  opts.oracle.threads = threads;
  triroots::CountReport rep = triroots::count_roots(poly, opts);
  emit(triroots::serialize_report(rep));
  if (!rep.N) return 2;  // closed forms inapplicable and the oracle declined
  return 0;
}

int cmd_oracle(const std::string& input_arg, bool roots, bool nonzero_only,
               std::uint64_t budget, unsigned threads) {
  triroots::ParsedInput input = triroots::parse_input(load_json(input_arg));
  triroots::SparsePoly poly = input.to_sparse();
  triroots::OracleOptions opts;
  opts.point_budget = budget;
  opts.threads = threads;
  Json out;
  auto counts = triroots::brute_force_count(poly, opts);
  out["N"] = counts.n.str();
  out["N_star"] = counts.n_star.str();
  if (roots) {
    Json points = Json::array();
    for (const auto& pt : triroots::root_set(poly, nonzero_only, opts)) {
      Json point = Json::array();
      for (std::uint64_t c : pt)
        point.push_back(triroots::serialize_element(c, *input.field));
      points.push_back(std::move(point));
    }
    out["roots"] = std::move(points);
  }
  emit(out);
  return 0;
}

int cmd_charsum(const std::string& input_arg) {
  triroots::ParsedInput input = triroots::parse_input(load_json(input_arg));
  Json out;
  out["N_star"] = triroots::charsum_nstar(input.to_sparse()).str();
  emit(out);
  return 0;
}

int cmd_equiv(const std::string& f_arg, const std::string& g_arg,
              const std::string& cert_arg, const std::string& diagonal_arg) {
  triroots::ParsedInput fin = triroots::parse_input(load_json(f_arg));
  Json out;

  if (!diagonal_arg.empty()) {
    triroots::TriangularPoly f = require_triangular(fin);
    std::vector<triroots::Int> exponents;
    std::stringstream ss(diagonal_arg);
    std::string item;
    while (std::getline(ss, item, ',')) exponents.emplace_back(item);
    auto cert = triroots::diagonal_equivalence(f, exponents);
    if (cert) {
      out["status"] = "totally_star_equivalent";
      out["certificate"] = triroots::serialize_certificate(*cert);
    } else {
      out["status"] = "inconclusive";
      out["note"] = "the diagonal criterion is sufficient only; "
                    "no conclusion about inequivalence";
    }
    emit(out);
    return 0;
  }

  if (g_arg.empty()) triroots::fail("bad_input", "equiv needs --g or --diagonal");
  triroots::ParsedInput gin = triroots::parse_input(load_json(g_arg));

  if (!cert_arg.empty()) {
    triroots::TriangularPoly f = require_triangular(fin);
    triroots::TriangularPoly g = require_triangular(gin);
    Json cj = load_json(cert_arg);
    triroots::ResidueMatrix M =
        triroots::parse_matrix(cj.contains("M") ? cj.at("M") : cj,
                               fin.field->q() - 1);
    out["status"] = triroots::to_string(triroots::verify_certificate(f, g, M));
    emit(out);
    return 0;
  }

  // Complete Howell-form decision; upgraded per truncation level when both
  // sides are triangular.
  bool equivalent =
      triroots::star_equivalent_general(fin.to_sparse(), gin.to_sparse());
  if (equivalent && fin.triangular && gin.triangular &&
      triroots::totally_star_equivalent_general(*fin.triangular, *gin.triangular)) {
    out["status"] = "totally_star_equivalent";
  } else {
    out["status"] = equivalent ? "star_equivalent" : "not_valid";
  }
  emit(out);
  return 0;
}

int cmd_selftest(bool as_json, bool mutate_zeta2) {
  triroots::SelftestOptions opts;
  opts.flip_zeta2 = mutate_zeta2;
  auto results = triroots::run_acceptance(opts);
  bool all_ok = true;
  if (as_json) {
    Json out = Json::array();
    for (const auto& r : results) {
      all_ok &= r.passed;
      out.push_back(Json{{"id", r.id},
                         {"name", r.name},
                         {"passed", r.passed},
                         {"elapsed_ms", r.elapsed_ms},
                         {"detail", r.detail}});
    }
    emit(out);
  } else {
    for (const auto& r : results) {
      all_ok &= r.passed;
      std::cout << "[" << (r.passed ? "PASS" : "FAIL") << "] criterion " << r.id
                << ": " << r.name << " (" << r.elapsed_ms << " ms)";
      if (!r.passed && !r.detail.empty()) std::cout << " -- " << r.detail;
      std::cout << "\n";
    }
  }
  return all_ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact root counting for triangular polynomials over finite fields"};
  app.require_subcommand(1);

  std::uint64_t budget = 100'000'000;
  unsigned threads = 1;
  app.add_option("--budget", budget, "point budget for exhaustive enumeration");
  app.add_option("--threads", threads, "worker threads for the enumeration oracle");

  std::string count_input;
  bool no_oracle = false;
  auto* count = app.add_subcommand("count", "count roots of a fully triangular polynomial");
  count->add_option("--input,input", count_input, "polynomial JSON (path, '-' or inline)")->required();
  count->add_flag("--no-oracle", no_oracle, "fail with exit code 2 instead of falling back to enumeration");

  std::string oracle_input;
  bool oracle_roots = false, oracle_nonzero = false;
  auto* oracle = app.add_subcommand("oracle", "exhaustive N and N* by enumeration");
  oracle->add_option("--input,input", oracle_input, "polynomial JSON (path, '-' or inline)")->required();
  oracle->add_flag("--roots", oracle_roots, "also list the root set");
  oracle->add_flag("--nonzero-only", oracle_nonzero, "restrict the listed roots to (F_q*)^n");

  std::string charsum_input;
  auto* charsum = app.add_subcommand("charsum", "N* via the Gauss-sum character formula");
  charsum->add_option("--input,input", charsum_input, "polynomial JSON (path, '-' or inline)")->required();

  std::string equiv_f, equiv_g, equiv_cert, equiv_diagonal;
  auto* equiv = app.add_subcommand("equiv", "decide or certify *-equivalence");
  equiv->add_option("--f,f", equiv_f, "first polynomial JSON")->required();
  equiv->add_option("--g,g", equiv_g, "second polynomial JSON");
  equiv->add_option("--certificate", equiv_cert, "matrix JSON to verify");
  equiv->add_option("--diagonal", equiv_diagonal, "comma-separated diagonal target exponents");

  bool selftest_json = false, mutate_zeta2 = false;
  auto* selftest = app.add_subcommand("selftest", "run the built-in reproduction suite");
  selftest->add_flag("--json", selftest_json, "machine-readable summary");
  selftest->add_flag("--mutate-zeta2", mutate_zeta2, "dev-only fault injection")->group("");

  CLI11_PARSE(app, argc, argv);

  try {
    if (count->parsed()) return cmd_count(count_input, no_oracle, budget, threads);
    if (oracle->parsed()) return cmd_oracle(oracle_input, oracle_roots, oracle_nonzero, budget, threads);
    if (charsum->parsed()) return cmd_charsum(charsum_input);
    if (equiv->parsed()) return cmd_equiv(equiv_f, equiv_g, equiv_cert, equiv_diagonal);
    if (selftest->parsed()) return cmd_selftest(selftest_json, mutate_zeta2);
  } catch (const triroots::Error& e) {
    return emit_error(e);
  } catch (const std::exception& e) {
    return emit_error(triroots::Error("internal", e.what()));
  }
  return 0;
}
