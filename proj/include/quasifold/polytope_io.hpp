#pragma once

// Polytope documents (JSON):
//
// {
//   "field": {"minpoly": ["-2", "0", "1"], "root_interval": ["1", "2"]},
//   "dimension": 2,
//   "facets": [{"normal": ["1", "0"], "offset": "0"}, ...],
//   "quasilattice_extra_generators": [["1/2", "0"]]          (optional)
// }
//
// Polynomial coefficients are listed from the constant term up. Every
// number is an exact string in the scalar grammar (integers are also
// accepted as JSON integers); floating-point JSON numbers are rejected.
// A missing "field" means the rationals.

#include "quasifold/error.hpp"
#include "quasifold/expression.hpp"
#include "quasifold/polytope.hpp"

#include "json.hpp"

#include <string>
#include <vector>

namespace quasifold {

struct PolytopeDocument {
  HPolytope polytope;
  std::vector<ScalarVector> extra_generators;
};

namespace detail {

inline std::string exact_text(const nlohmann::json& j, const std::string& where) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number_integer()) return std::to_string(j.get<long long>());
  if (j.is_number_unsigned()) return std::to_string(j.get<unsigned long long>());
  throw Error(ErrorKind::SchemaError, where + ": expected an exact number as a string");
}

inline Scalar scalar_at(const nlohmann::json& j, const FieldPtr& f, const std::string& where) {
  try {
    return parse_scalar(exact_text(j, where), f);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::SchemaError) throw;
    throw Error(ErrorKind::SchemaError, where + ": " + e.what());
  }
}

inline ScalarVector vector_at(const nlohmann::json& j, const FieldPtr& f, const std::string& where) {
  if (!j.is_array()) throw Error(ErrorKind::SchemaError, where + ": expected an array");
  ScalarVector v;
  for (std::size_t i = 0; i < j.size(); ++i) v.push_back(scalar_at(j[i], f, where + "[" + std::to_string(i) + "]"));
  return v;
}

inline FieldPtr field_from_json(const nlohmann::json& doc) {
  if (!doc.contains("field")) return Field::rationals();
  const auto& f = doc["field"];
  if (!f.is_object() || !f.contains("minpoly") || !f.contains("root_interval"))
    throw Error(ErrorKind::SchemaError, "field needs \"minpoly\" and \"root_interval\"");
  const auto& mp = f["minpoly"];
  const auto& ri = f["root_interval"];
  if (!mp.is_array() || !ri.is_array() || ri.size() != 2)
    throw Error(ErrorKind::SchemaError, "minpoly must be an array and root_interval a pair");
  const FieldPtr q = Field::rationals();
  RationalPoly poly;
  for (std::size_t i = 0; i < mp.size(); ++i) {
    const Scalar c = scalar_at(mp[i], q, "field.minpoly[" + std::to_string(i) + "]");
    poly.push_back(c.rational_part());
  }
  const mpq_class lo = scalar_at(ri[0], q, "field.root_interval[0]").rational_part();
  const mpq_class hi = scalar_at(ri[1], q, "field.root_interval[1]").rational_part();
  return Field::create(std::move(poly), lo, hi);
}

}  // namespace detail

inline PolytopeDocument parse_polytope_document(const nlohmann::json& doc) {
  if (!doc.is_object()) throw Error(ErrorKind::SchemaError, "document must be a JSON object");
  const FieldPtr field = detail::field_from_json(doc);
  if (!doc.contains("dimension") || !doc["dimension"].is_number_integer() || doc["dimension"].get<long long>() < 1)
    throw Error(ErrorKind::SchemaError, "\"dimension\" must be a positive integer");
  const auto n = static_cast<std::size_t>(doc["dimension"].get<long long>());
  if (!doc.contains("facets") || !doc["facets"].is_array())
    throw Error(ErrorKind::SchemaError, "\"facets\" must be an array");
  std::vector<Facet> facets;
  const auto& fs = doc["facets"];
  for (std::size_t j = 0; j < fs.size(); ++j) {
    const std::string where = "facets[" + std::to_string(j) + "]";
    if (!fs[j].is_object() || !fs[j].contains("normal") || !fs[j].contains("offset"))
      throw Error(ErrorKind::SchemaError, where + " needs \"normal\" and \"offset\"");
    facets.push_back({detail::vector_at(fs[j]["normal"], field, where + ".normal"),
                      detail::scalar_at(fs[j]["offset"], field, where + ".offset")});
  }
  std::vector<ScalarVector> extra;
  if (doc.contains("quasilattice_extra_generators")) {
    const auto& eg = doc["quasilattice_extra_generators"];
    if (!eg.is_array()) throw Error(ErrorKind::SchemaError, "quasilattice_extra_generators must be an array");
    for (std::size_t i = 0; i < eg.size(); ++i) {
      auto g = detail::vector_at(eg[i], field, "quasilattice_extra_generators[" + std::to_string(i) + "]");
      if (g.size() != n) throw Error(ErrorKind::SchemaError, "extra generator has wrong length");
      extra.push_back(std::move(g));
    }
  }
  return {HPolytope::create(field, n, std::move(facets)), std::move(extra)};
}

inline PolytopeDocument parse_polytope_document(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::SchemaError, std::string("invalid JSON: ") + e.what());
  }
  return parse_polytope_document(doc);
}

inline HPolytope parse_polytope(const std::string& text) { return parse_polytope_document(text).polytope; }

}  // namespace quasifold
