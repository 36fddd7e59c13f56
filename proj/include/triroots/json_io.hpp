// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "triroots/counting.hpp"
#include "triroots/errors.hpp"
#include "triroots/ffield.hpp"
#include "triroots/polyform.hpp"
#include "triroots/starequiv.hpp"

namespace triroots {

using Json = nlohmann::json;

// Wire formats:
//   field:       {"p": int, "m": int, "modulus": [ints]?}   (modulus iff m > 1)
//   element:     int for prime fields, [ints] (LSF coefficients) for m > 1
//   triangular:  {"field":..., "n": int, "coeffs": [elem...], "b": elem,
//                 "exponents": [[d11], [d12, d22], ...]}
//   sparse:      {"field":..., "n": int, "terms": [{"coeff": elem,
//                 "expo": [ints]}...], "b": elem}
// Exponents may be JSON integers or decimal strings (arbitrary precision).
// Counts in reports are always decimal strings.

inline Int parse_bigint(const Json& j, const char* what) {
  if (j.is_number_unsigned()) return Int(j.get<std::uint64_t>());
  if (j.is_number_integer()) return Int(j.get<std::int64_t>());
  if (j.is_string()) {
    try {
      return Int(j.get<std::string>());
    } catch (const std::exception&) {
      fail("bad_input", std::string(what) + ": not a valid integer string");
    }
  }
  fail("bad_input", std::string(what) + ": expected an integer or decimal string");
}

inline std::unique_ptr<FieldSpec> parse_field(const Json& j) {
  if (!j.is_object() || !j.contains("p"))
    fail("bad_input", "field: expected {\"p\": ..., \"m\": ...}");
  std::uint64_t p = j.at("p").get<std::uint64_t>();
  unsigned m = j.value("m", 1u);
  std::vector<std::uint64_t> modulus;
  if (j.contains("modulus"))
    modulus = j.at("modulus").get<std::vector<std::uint64_t>>();
  return std::make_unique<FieldSpec>(p, m, std::move(modulus));
}

inline Json serialize_field(const FieldSpec& f) {
  Json j{{"p", f.p()}, {"m", f.m()}};
  if (f.m() > 1) j["modulus"] = f.modulus();
  return j;
}

inline std::uint64_t parse_element(const Json& j, const FieldSpec& f,
                                   const char* what) {
  if (j.is_number_integer() || j.is_number_unsigned()) {
    if (f.m() != 1 && j.get<std::int64_t>() >= static_cast<std::int64_t>(f.p()))
      fail("bad_input", std::string(what) + ": extension-field elements need a coefficient list");
    return f.from_int(j.get<std::int64_t>());
  }
  if (j.is_array()) {
    auto raw = j.get<std::vector<std::int64_t>>();
    if (raw.size() > f.m())
      fail("bad_input", std::string(what) + ": coefficient list longer than the extension degree");
    std::vector<std::uint64_t> c;
    for (std::int64_t v : raw) c.push_back(f.from_int(v));
    return f.from_coeffs(c);
  }
  fail("bad_input", std::string(what) + ": expected an integer or coefficient list");
}

inline Json serialize_element(std::uint64_t code, const FieldSpec& f) {
  if (f.m() == 1) return Json(code);
  return Json(f.coeffs(code));
}

inline TriangularPoly parse_triangular(const Json& j, const FieldSpec& f) {
  if (!j.contains("coeffs") || !j.contains("exponents"))
    fail("bad_input", "triangular polynomial: expected \"coeffs\" and \"exponents\"");
  std::vector<std::uint64_t> coeffs;
  for (const Json& c : j.at("coeffs")) coeffs.push_back(parse_element(c, f, "coefficient"));
  std::uint64_t b = j.contains("b") ? parse_element(j.at("b"), f, "b") : 0;
  std::vector<std::vector<Int>> expo;
  for (const Json& col : j.at("exponents")) {
    std::vector<Int> column;
    for (const Json& d : col) column.push_back(parse_bigint(d, "exponent"));
    expo.push_back(std::move(column));
  }
  if (j.contains("n") && j.at("n").get<std::size_t>() != coeffs.size())
    fail("bad_input", "\"n\" disagrees with the number of terms");
  return TriangularPoly(f, std::move(coeffs), b, std::move(expo));
}

inline SparsePoly parse_sparse(const Json& j, const FieldSpec& f) {
  if (!j.contains("terms") || !j.contains("n"))
    fail("bad_input", "sparse polynomial: expected \"n\" and \"terms\"");
  unsigned n = j.at("n").get<unsigned>();
  std::vector<Term> terms;
  for (const Json& tj : j.at("terms")) {
    Term t;
    t.coeff = parse_element(tj.at("coeff"), f, "coefficient");
    for (const Json& d : tj.at("expo")) t.expo.push_back(parse_bigint(d, "exponent"));
    terms.push_back(std::move(t));
  }
  std::uint64_t b = j.contains("b") ? parse_element(j.at("b"), f, "b") : 0;
  return SparsePoly(f, n, std::move(terms), b);
}

/// An input document: the owned field plus one polynomial in either schema.
struct ParsedInput {
  std::unique_ptr<FieldSpec> field;
  std::optional<TriangularPoly> triangular;
  std::optional<SparsePoly> sparse;

  const SparsePoly to_sparse() const {
    return sparse ? *sparse : triangular->to_sparse();
  }
};

inline ParsedInput parse_input(const Json& j) {
  if (!j.is_object() || !j.contains("field"))
    fail("bad_input", "expected a polynomial document with a \"field\" object");
  ParsedInput out;
  out.field = parse_field(j.at("field"));
  if (j.contains("terms")) {
    out.sparse = parse_sparse(j, *out.field);
  } else {
    out.triangular = parse_triangular(j, *out.field);
  }
  return out;
}

inline Json serialize_matrix(const ResidueMatrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows; ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols; ++j) row.push_back(m.at(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline ResidueMatrix parse_matrix(const Json& j, std::uint64_t modulus) {
  auto data = j.get<std::vector<std::vector<std::uint64_t>>>();
  return ResidueMatrix::from_rows(modulus, data);
}

inline Json serialize_certificate(const Certificate& cert) {
  Json j;
  j["M"] = serialize_matrix(cert.M);
  j["total"] = cert.total;
  Json targets = Json::array();
  for (const Int& e : cert.target_exponents) targets.push_back(e.str());
  j["target_exponents"] = targets;
  return j;
}

inline Json serialize_report(const CountReport& rep) {
  Json j;
  if (rep.N) j["N"] = rep.N->str();
  Json per_k = Json::array();
  for (const Int& v : rep.n_star_per_k) per_k.push_back(v.str());
  j["N_star_per_k"] = per_k;
  j["method"] = to_string(rep.method);
  if (rep.certificate) j["certificate"] = serialize_certificate(*rep.certificate);
  if (!rep.note.empty()) j["note"] = rep.note;
  j["elapsed_ms"] = rep.elapsed_ms;
  return j;
}

}  // namespace triroots
