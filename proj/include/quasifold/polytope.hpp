#pragma once

// Simple convex polytopes in H-representation
//
//   Delta = { mu : <mu, X_j> >= lambda_j,  j = 1..d }
//
// over an exact real number field, with vertex enumeration, simplicity,
// rationality and Delzant-integrality tests. All decisions are exact: a
// strict inequality is settled by certified interval evaluation.

#include "quasifold/error.hpp"
#include "quasifold/integer_forms.hpp"
#include "quasifold/matrix.hpp"
#include "quasifold/scalar.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace quasifold {

struct Facet {
  ScalarVector normal;  // X_j
  Scalar offset;        // lambda_j
};

struct Vertex {
  ScalarVector point;               // mu_v
  std::vector<std::size_t> active;  // F(v), increasing
};

namespace detail {

/// Calls f(subset) for every k-subset of {0..d-1} in lexicographic order.
template <class F>
void for_each_subset(std::size_t d, std::size_t k, F&& f) {
  if (k > d) return;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  for (;;) {
    f(static_cast<const std::vector<std::size_t>&>(idx));
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == d - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

inline Matrix<Scalar> rows_of(const std::vector<Facet>& facets, const std::vector<std::size_t>& which,
                              const Scalar& zero, std::size_t n) {
  Matrix<Scalar> a(which.size(), n, zero);
  for (std::size_t r = 0; r < which.size(); ++r)
    for (std::size_t c = 0; c < n; ++c) a(r, c) = facets[which[r]].normal[c];
  return a;
}

/// True when some nonzero v has <v, X_j> >= 0 for all j. The normals span,
/// so the recession cone is pointed and, if nontrivial, has an extreme ray
/// cut out by n-1 independent facet hyperplanes.
inline bool has_recession_direction(const std::vector<Facet>& facets, std::size_t n, const Scalar& zero) {
  bool found = false;
  for_each_subset(facets.size(), n - 1, [&](const std::vector<std::size_t>& s) {
    if (found) return;
    const Matrix<Scalar> a = rows_of(facets, s, zero, n);
    const auto ker = kernel(a);
    if (ker.size() != 1) return;
    for (int dir : {1, -1}) {
      bool ok = true;
      for (const auto& f : facets) {
        const int sg = dot(f.normal, ker[0]).sign() * dir;
        if (sg < 0) {
          ok = false;
          break;
        }
      }
      if (ok) found = true;
    }
  });
  return found;
}

}  // namespace detail

/// Vertices by exhaustive n-subset solving. Order: first occurrence in
/// lexicographic subset order. Raises UnboundedPolytope for a nontrivial
/// recession cone.
inline std::vector<Vertex> enumerate_vertices(const FieldPtr& field, std::size_t n, const std::vector<Facet>& facets) {
  const Scalar zero = Scalar::zero(field);
  if (detail::has_recession_direction(facets, n, zero))
    throw Error(ErrorKind::UnboundedPolytope, "the facet inequalities admit a recession direction");
  std::vector<Vertex> out;
  detail::for_each_subset(facets.size(), n, [&](const std::vector<std::size_t>& s) {
    const Matrix<Scalar> a = detail::rows_of(facets, s, zero, n);
    if (rank(a) != n) return;
    ScalarVector rhs;
    for (auto j : s) rhs.push_back(facets[j].offset);
    const auto mu = solve(a, rhs);
    if (!mu) return;
    for (const auto& v : out)
      if (v.point == *mu) return;
    Vertex v{*mu, {}};
    for (std::size_t j = 0; j < facets.size(); ++j) {
      const int sg = (dot(*mu, facets[j].normal) - facets[j].offset).sign();
      if (sg < 0) return;
      if (sg == 0) v.active.push_back(j);
    }
    out.push_back(std::move(v));
  });
  return out;
}

class HPolytope {
 public:
  /// Validates the presentation and enumerates the vertices.
  static HPolytope create(FieldPtr field, std::size_t n, std::vector<Facet> facets) {
    if (n == 0) throw Error(ErrorKind::SchemaError, "dimension must be >= 1");
    for (std::size_t j = 0; j < facets.size(); ++j) {
      const auto& f = facets[j];
      if (f.normal.size() != n)
        throw Error(ErrorKind::SchemaError, "facet " + std::to_string(j) + ": normal has wrong length");
      bool nonzero = false;
      for (const auto& x : f.normal) {
        if (!x.field()->same_as(*field)) throw Error(ErrorKind::MixedFields, "facet normal outside the document field");
        nonzero = nonzero || !x.is_zero();
      }
      if (!f.offset.field()->same_as(*field)) throw Error(ErrorKind::MixedFields, "facet offset outside the document field");
      if (!nonzero) throw Error(ErrorKind::SchemaError, "facet " + std::to_string(j) + ": zero normal");
    }
    if (facets.size() < n + 1)
      throw Error(ErrorKind::LowerDimensional, std::to_string(facets.size()) + " facets cannot bound an " +
                                                   std::to_string(n) + "-dimensional polytope");
    HPolytope p(std::move(field), n, std::move(facets));
    if (rank(p.normal_matrix()) != n) throw Error(ErrorKind::NormalsDontSpan, "facet normals do not span");
    p.vertices_ = enumerate_vertices(p.field_, n, p.facets_);
    if (p.vertices_.empty()) throw Error(ErrorKind::LowerDimensional, "the inequalities have no vertex (empty set)");
    Matrix<Scalar> diffs(p.vertices_.size() - 1, n, Scalar::zero(p.field_));
    for (std::size_t i = 1; i < p.vertices_.size(); ++i)
      for (std::size_t c = 0; c < n; ++c) diffs(i - 1, c) = p.vertices_[i].point[c] - p.vertices_[0].point[c];
    if (p.vertices_.size() < n + 1 || rank(diffs) != n)
      throw Error(ErrorKind::LowerDimensional, "vertices span an affine subspace of dimension < n");
    return p;
  }

  std::size_t dim() const { return dim_; }
  std::size_t num_facets() const { return facets_.size(); }
  const FieldPtr& field() const { return field_; }
  const std::vector<Facet>& facets() const { return facets_; }
  const std::vector<Vertex>& vertices() const { return vertices_; }

  /// d x n matrix whose rows are the facet normals.
  Matrix<Scalar> normal_matrix() const {
    Matrix<Scalar> m(facets_.size(), dim_, Scalar::zero(field_));
    for (std::size_t j = 0; j < facets_.size(); ++j)
      for (std::size_t c = 0; c < dim_; ++c) m(j, c) = facets_[j].normal[c];
    return m;
  }

  /// n x n matrix whose rows are the normals of the given facets.
  Matrix<Scalar> active_matrix(const std::vector<std::size_t>& which) const {
    return detail::rows_of(facets_, which, Scalar::zero(field_), dim_);
  }

  ScalarVector offsets() const {
    ScalarVector o;
    for (const auto& f : facets_) o.push_back(f.offset);
    return o;
  }

  /// <mu, X_j> - lambda_j for every facet.
  ScalarVector slacks(const ScalarVector& mu) const {
    ScalarVector s;
    for (const auto& f : facets_) s.push_back(dot(mu, f.normal) - f.offset);
    return s;
  }

 private:
  HPolytope(FieldPtr field, std::size_t n, std::vector<Facet> facets)
      : dim_(n), field_(std::move(field)), facets_(std::move(facets)) {}

  std::size_t dim_;
  FieldPtr field_;
  std::vector<Facet> facets_;
  std::vector<Vertex> vertices_;
};

inline const std::vector<Vertex>& enumerate_vertices(const HPolytope& p) { return p.vertices(); }

struct SimpleReport {
  bool simple = true;
  std::optional<Vertex> witness;
};

/// Simple iff exactly n facets are active at every vertex.
inline SimpleReport check_simple(const HPolytope& p) {
  for (const auto& v : p.vertices())
    if (v.active.size() != p.dim()) return {false, v};
  return {};
}

// ---------------------------------------------------------------------------
// Rationality

struct LatticeCertificate {
  bool rational = false;
  /// Rank over Q of the group generated by the input vectors.
  std::size_t rational_rank = 0;
  /// Rational case: Z-basis (n vectors) and integer coordinates of every
  /// generator in that basis (coordinates[j] has n entries).
  std::vector<ScalarVector> basis;
  IntMatrix coordinates;
  /// Not-rational case: a maximal Q-independent subset of the generators,
  /// chosen greedily by index; it has rational_rank > n members.
  std::vector<std::size_t> independent_generators;
};

namespace detail {

/// Coordinates of a vector of n Scalars as n*g rationals (coordinate-major).
inline std::vector<mpq_class> flatten(const ScalarVector& v) {
  std::vector<mpq_class> out;
  for (const auto& s : v) out.insert(out.end(), s.coeffs().begin(), s.coeffs().end());
  return out;
}

inline ScalarVector unflatten(const std::vector<mpq_class>& flat, const FieldPtr& field) {
  const std::size_t g = field->degree();
  ScalarVector out;
  for (std::size_t i = 0; i < flat.size(); i += g)
    out.emplace_back(field, RationalPoly(flat.begin() + static_cast<std::ptrdiff_t>(i),
                                         flat.begin() + static_cast<std::ptrdiff_t>(i + g)));
  return out;
}

}  // namespace detail

/// Decides whether the Z-span of `generators` (vectors in R^n) is a lattice,
/// i.e. has rank n over Q, and if so returns its Hermite-normal-form basis.
inline LatticeCertificate lattice_certificate(const std::vector<ScalarVector>& generators, std::size_t n,
                                              const FieldPtr& field) {
  LatticeCertificate cert;
  std::vector<std::vector<mpq_class>> flat;
  for (const auto& g : generators) flat.push_back(detail::flatten(g));
  const auto as_columns = Matrix<mpq_class>::from_columns(flat, 0);
  const Echelon<mpq_class> e = rref(as_columns);
  cert.rational_rank = e.pivot_columns.size();
  if (cert.rational_rank != n) {
    cert.rational = false;
    cert.independent_generators = e.pivot_columns;
    return cert;
  }
  cert.rational = true;
  mpz_class scale = 1;
  for (const auto& row : flat) {
    const mpz_class l = lcm_of_denominators(row);
    mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), l.get_mpz_t());
  }
  IntMatrix ints;
  for (const auto& row : flat) {
    std::vector<mpz_class> r;
    for (const auto& x : row) r.emplace_back(mpz_class(x * scale));
    ints.push_back(std::move(r));
  }
  const IntMatrix h = hermite_normal_form(ints);
  if (h.size() != n) throw Error(ErrorKind::InternalInconsistency, "Hermite basis size differs from rational rank");
  std::vector<std::size_t> pivot;
  for (const auto& row : h) {
    std::size_t c = 0;
    while (row[c] == 0) ++c;
    pivot.push_back(c);
  }
  for (const auto& row : h) {
    std::vector<mpq_class> b;
    for (const auto& x : row) b.emplace_back(mpq_class(x, scale));
    for (auto& x : b) x.canonicalize();
    cert.basis.push_back(detail::unflatten(b, field));
  }
  for (const auto& row : ints) {
    std::vector<mpz_class> rem = row, coords;
    for (std::size_t k = 0; k < h.size(); ++k) {
      if (rem[pivot[k]] % h[k][pivot[k]] != 0)
        throw Error(ErrorKind::InternalInconsistency, "generator not in the Z-span of the Hermite basis");
      const mpz_class c = rem[pivot[k]] / h[k][pivot[k]];
      for (std::size_t j = 0; j < rem.size(); ++j) rem[j] -= c * h[k][j];
      coords.push_back(c);
    }
    for (const auto& x : rem)
      if (x != 0) throw Error(ErrorKind::InternalInconsistency, "nonzero remainder after Hermite reduction");
    cert.coordinates.push_back(std::move(coords));
  }
  return cert;
}

inline LatticeCertificate check_rational(const HPolytope& p) {
  std::vector<ScalarVector> normals;
  for (const auto& f : p.facets()) normals.push_back(f.normal);
  return lattice_certificate(normals, p.dim(), p.field());
}

// ---------------------------------------------------------------------------
// Delzant integrality

struct DelzantReport {
  bool integral = false;
  std::vector<std::size_t> primitive_failures;      // facet indices
  std::vector<std::size_t> nonunimodular_vertices;  // indices into p.vertices()
  std::vector<mpz_class> vertex_determinants;       // per vertex, lattice coordinates
};

/// Primitivity of each normal and unimodularity at each vertex, measured in
/// the lattice of `cert` (whose first d coordinate rows are the normals).
inline DelzantReport check_delzant(const HPolytope& p, const LatticeCertificate& cert) {
  if (!cert.rational) throw Error(ErrorKind::NotRationalInput, "Delzant check needs a lattice certificate");
  if (cert.coordinates.size() < p.num_facets())
    throw Error(ErrorKind::DimensionMismatch, "certificate does not cover every facet normal");
  DelzantReport rep;
  for (std::size_t j = 0; j < p.num_facets(); ++j) {
    mpz_class g = 0;
    for (const auto& x : cert.coordinates[j]) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    if (g != 1) rep.primitive_failures.push_back(j);
  }
  for (std::size_t v = 0; v < p.vertices().size(); ++v) {
    const auto& active = p.vertices()[v].active;
    Matrix<mpq_class> a(active.size(), p.dim(), 0);
    for (std::size_t r = 0; r < active.size(); ++r)
      for (std::size_t c = 0; c < p.dim(); ++c) a(r, c) = cert.coordinates[active[r]][c];
    mpz_class det = 0;
    if (a.rows() == a.cols()) det = mpz_class(determinant(a));
    rep.vertex_determinants.push_back(det);
    if (abs(det) != 1) rep.nonunimodular_vertices.push_back(v);
  }
  rep.integral = rep.primitive_failures.empty() && rep.nonunimodular_vertices.empty();
  return rep;
}

}  // namespace quasifold
