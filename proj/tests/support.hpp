#pragma once

#include "quasifold.hpp"

#include <string>

namespace qtest {

inline quasifold::FieldPtr sqrt2_field() {
  return quasifold::Field::create({mpq_class(-2), mpq_class(0), mpq_class(1)}, mpq_class(1), mpq_class(2));
}

inline quasifold::FieldPtr sqrt3_field() {
  return quasifold::Field::create({mpq_class(-3), mpq_class(0), mpq_class(1)}, mpq_class(1), mpq_class(2));
}

/// theta = cos(pi/10)
inline quasifold::FieldPtr pentagon_field() {
  return quasifold::Field::create({mpq_class(5, 16), mpq_class(0), mpq_class(-5, 4), mpq_class(0), mpq_class(1)},
                                  mpq_class(9, 10), mpq_class(1));
}

inline quasifold::PolytopeDocument builtin(const std::string& name) {
  return quasifold::parse_polytope_document(*quasifold::builtin_document(name));
}

inline quasifold::DelzantData construct(const std::string& name) {
  const auto doc = builtin(name);
  return quasifold::build_construction(doc.polytope, doc.extra_generators);
}

inline quasifold::Scalar q(const quasifold::FieldPtr& f, const char* text) { return quasifold::parse_scalar(text, f); }

}  // namespace qtest
