#pragma once

// The generalized Delzant construction. From a simple polytope
//
//   Delta = { mu : <mu, X_j> >= lambda_j }
//
// build pi : R^d -> d (e_j -> X_j), the quasilattice Q = Z-span{X_j, extras},
// the subalgebra n = ker pi with basis B (rows), and the reduced space
// M = Psi^{-1}(0) / N where Psi = B * J and J(z) = sum |z_j|^2 e_j^* + lambda.
// Over each vertex sits a fixed point whose chart group is
// Q / Z-span{X_j : j active}, represented by c_i = A_v^{-1} g_i mod Z^n.

#include "quasifold/error.hpp"
#include "quasifold/integer_forms.hpp"
#include "quasifold/matrix.hpp"
#include "quasifold/polytope.hpp"
#include "quasifold/scalar.hpp"

#include <Eigen/Dense>

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

namespace quasifold {

enum class Classification { Manifold, Orbifold, Quasifold };

constexpr std::string_view to_string(Classification c) {
  switch (c) {
    case Classification::Manifold: return "Manifold";
    case Classification::Orbifold: return "Orbifold";
    case Classification::Quasifold: return "Quasifold";
  }
  return "Unknown";
}

struct Quasilattice {
  /// X_1..X_d followed by the user's extra generators.
  std::vector<ScalarVector> generators;
  std::size_t num_normals = 0;
  LatticeCertificate certificate;

  bool is_lattice() const { return certificate.rational; }
};

/// Floating-point image of the exact data, evaluated once at a certified
/// precision. Everything the moment maps and the verifier need.
struct NumericModel {
  double precision = 1e-12;
  Eigen::MatrixXd pi;           // n x d, columns X_j
  Eigen::MatrixXd kernel;       // (d-n) x d, rows span ker pi
  Eigen::VectorXd lambda;       // d
  Eigen::MatrixXd lift;         // d x n, least-norm right inverse of pi
  Eigen::MatrixXd phi_solver;   // n x d, least-squares solver for pi^T mu = J
  double pi_condition = 0;      // sigma_min / sigma_max of pi
  double kernel_sigma_min = 0;  // smallest singular value of the kernel matrix
  std::vector<Eigen::VectorXd> vertices;
};

struct DelzantData {
  HPolytope polytope;
  Matrix<Scalar> pi;  // n x d
  Quasilattice quasilattice;
  ScalarVector lambda;
  std::vector<ScalarVector> kernel_basis;  // d - n vectors of length d
  std::size_t n_rational_dim = 0;          // dim(n ∩ Q^d)
  bool kernel_compact = false;             // N compact iff n_rational_dim == d - n
  std::optional<DelzantReport> delzant;    // measured in Q, when Q is a lattice
  Classification classification = Classification::Quasifold;
  NumericModel numeric;

  std::size_t n() const { return polytope.dim(); }
  std::size_t d() const { return polytope.num_facets(); }
  std::size_t kernel_dimension() const { return kernel_basis.size(); }
  std::size_t manifold_dimension() const { return 2 * d() - 2 * kernel_dimension(); }
};

struct VertexChart {
  std::size_t vertex_index = 0;
  Vertex vertex;
  ScalarVector fixed_point;                    // |z_j|^2, zero exactly on active facets
  std::vector<ScalarVector> group_generators;  // c_i = A_v^{-1} g_i, read mod Z^n
  bool finite = false;
  std::optional<mpz_class> order;           // group order when finite
  std::vector<mpz_class> invariant_factors;  // Z/a1 x Z/a2 x ..., a_k > 1
};

namespace detail {

inline NumericModel make_numeric(const DelzantData& dd, double precision) {
  NumericModel m;
  m.precision = precision;
  const std::size_t n = dd.n(), d = dd.d(), k = dd.kernel_dimension();
  m.pi.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(d));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < d; ++j)
      m.pi(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = dd.pi(i, j).to_double(precision);
  m.kernel.resize(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(d));
  for (std::size_t r = 0; r < k; ++r)
    for (std::size_t j = 0; j < d; ++j)
      m.kernel(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(j)) =
          dd.kernel_basis[r][j].to_double(precision);
  m.lambda.resize(static_cast<Eigen::Index>(d));
  for (std::size_t j = 0; j < d; ++j) m.lambda(static_cast<Eigen::Index>(j)) = dd.lambda[j].to_double(precision);

  const Eigen::MatrixXd gram = m.pi * m.pi.transpose();
  const Eigen::MatrixXd gram_inv = gram.ldlt().solve(Eigen::MatrixXd::Identity(gram.rows(), gram.cols()));
  m.lift = m.pi.transpose() * gram_inv;
  m.phi_solver = gram_inv * m.pi;

  const Eigen::JacobiSVD<Eigen::MatrixXd> svd_pi(m.pi);
  const auto& s = svd_pi.singularValues();
  m.pi_condition = s.size() ? s(s.size() - 1) / s(0) : 0.0;
  const Eigen::JacobiSVD<Eigen::MatrixXd> svd_b(m.kernel);
  const auto& sb = svd_b.singularValues();
  m.kernel_sigma_min = sb.size() ? sb(sb.size() - 1) : 0.0;

  for (const auto& v : dd.polytope.vertices()) {
    Eigen::VectorXd p(static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i) p(static_cast<Eigen::Index>(i)) = v.point[i].to_double(precision);
    m.vertices.push_back(std::move(p));
  }
  return m;
}

}  // namespace detail

/// Runs the construction. `extra_generators` enlarge the quasilattice beyond
/// Z-span{X_j}; `precision` is the certified width for float conversions.
inline DelzantData build_construction(const HPolytope& p, const std::vector<ScalarVector>& extra_generators = {},
                                      double precision = 1e-12) {
  const SimpleReport simple = check_simple(p);
  if (!simple.simple)
    throw Error(ErrorKind::NotSimple, "a vertex has " + std::to_string(simple.witness->active.size()) +
                                          " active facets, expected " + std::to_string(p.dim()));
  const std::size_t n = p.dim(), d = p.num_facets();
  const Scalar zero = Scalar::zero(p.field());

  std::vector<ScalarVector> normals;
  for (const auto& f : p.facets()) normals.push_back(f.normal);
  Quasilattice q;
  q.generators = normals;
  q.num_normals = d;
  for (const auto& g : extra_generators) {
    if (g.size() != n) throw Error(ErrorKind::SchemaError, "extra quasilattice generator has wrong length");
    for (const auto& x : g)
      if (!x.field()->same_as(*p.field()))
        throw Error(ErrorKind::MixedFields, "extra generator outside the document field");
    q.generators.push_back(g);
  }
  q.certificate = lattice_certificate(q.generators, n, p.field());

  Matrix<Scalar> pi = Matrix<Scalar>::from_columns(normals, zero);
  auto ker = kernel(pi);
  if (ker.size() != d - n) throw Error(ErrorKind::InternalInconsistency, "kernel of pi has unexpected dimension");

  DelzantData dd{p, std::move(pi), std::move(q), p.offsets(), std::move(ker), 0, false, std::nullopt,
                 Classification::Quasifold, {}};

  const LatticeCertificate normal_cert = check_rational(p);
  dd.n_rational_dim = d - normal_cert.rational_rank;
  dd.kernel_compact = dd.n_rational_dim == d - n;

  if (dd.quasilattice.is_lattice()) {
    dd.delzant = check_delzant(p, dd.quasilattice.certificate);
    dd.classification = dd.delzant->integral ? Classification::Manifold : Classification::Orbifold;
  }
  if (dd.manifold_dimension() != 2 * n)
    throw Error(ErrorKind::InternalInconsistency, "dim M != 2n");
  dd.numeric = detail::make_numeric(dd, precision);
  return dd;
}

inline VertexChart make_fixed_point(const DelzantData& dd, std::size_t vertex_index) {
  const Vertex& v = dd.polytope.vertices().at(vertex_index);
  VertexChart chart;
  chart.vertex_index = vertex_index;
  chart.vertex = v;
  chart.fixed_point = dd.polytope.slacks(v.point);
  return chart;
}

/// One chart per vertex with the squared moduli |z_j|^2 = <mu_v, X_j> - lambda_j.
inline std::vector<VertexChart> fixed_points(const DelzantData& dd) {
  std::vector<VertexChart> out;
  for (std::size_t i = 0; i < dd.polytope.vertices().size(); ++i) out.push_back(make_fixed_point(dd, i));
  return out;
}

/// Order and invariant factors of (Z^n + sum Z c_i) / Z^n for rational c_i,
/// from the Smith form of [D*I; D*c_i] with D a common denominator.
inline std::pair<mpz_class, std::vector<mpz_class>> finite_quotient_order(const std::vector<std::vector<mpq_class>>& c,
                                                                          std::size_t n) {
  mpz_class den = 1;
  for (const auto& v : c) {
    const mpz_class l = lcm_of_denominators(v);
    mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), l.get_mpz_t());
  }
  IntMatrix m;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<mpz_class> row(n, mpz_class(0));
    row[i] = den;
    m.push_back(std::move(row));
  }
  for (const auto& v : c) {
    std::vector<mpz_class> row;
    for (const auto& x : v) row.emplace_back(mpz_class(x * den));
    m.push_back(std::move(row));
  }
  const auto s = smith_invariants(std::move(m));
  mpz_class order = 1;
  std::vector<mpz_class> factors;
  for (const auto& sk : s) {
    const mpz_class f = den / sk;
    order *= f;
    if (f > 1) factors.push_back(f);
  }
  return {order, factors};
}

/// Chart group at the fixed point over `v`.
inline VertexChart vertex_structure_group(const DelzantData& dd, const Vertex& v) {
  const auto& verts = dd.polytope.vertices();
  std::size_t idx = verts.size();
  for (std::size_t i = 0; i < verts.size(); ++i)
    if (verts[i].point == v.point) idx = i;
  if (idx == verts.size()) throw Error(ErrorKind::NotAVertex, "point is not a vertex of the polytope");

  VertexChart chart = make_fixed_point(dd, idx);
  const Matrix<Scalar> a = dd.polytope.active_matrix(chart.vertex.active).transpose();  // columns X_j, j active
  chart.finite = true;
  std::vector<std::vector<mpq_class>> rational;
  for (const auto& g : dd.quasilattice.generators) {
    auto c = solve(a, g);
    if (!c) throw Error(ErrorKind::InternalInconsistency, "active normals do not span at a vertex");
    std::vector<mpq_class> rc;
    for (const auto& x : *c) {
      if (!x.is_rational()) chart.finite = false;
      rc.push_back(x.rational_part());
    }
    rational.push_back(std::move(rc));
    chart.group_generators.push_back(std::move(*c));
  }
  if (chart.finite) {
    auto [order, factors] = finite_quotient_order(rational, dd.n());
    chart.order = order;
    chart.invariant_factors = std::move(factors);
  }
  return chart;
}

inline std::vector<VertexChart> vertex_charts(const DelzantData& dd) {
  std::vector<VertexChart> out;
  for (const auto& v : dd.polytope.vertices()) out.push_back(vertex_structure_group(dd, v));
  return out;
}

struct ClassificationEvidence {
  Classification classification = Classification::Quasifold;
  LatticeCertificate certificate;
  std::optional<DelzantReport> delzant;
  std::vector<std::optional<mpz_class>> vertex_orders;  // nullopt = infinite
};

/// Classification with both routes: the global lattice/Delzant certificate
/// and the per-vertex structure groups. They must agree.
inline ClassificationEvidence classify(const DelzantData& dd) {
  ClassificationEvidence ev{dd.classification, dd.quasilattice.certificate, dd.delzant, {}};
  bool all_trivial = true, all_finite = true;
  for (const auto& chart : vertex_charts(dd)) {
    ev.vertex_orders.push_back(chart.order);
    if (!chart.finite) all_finite = false;
    if (!chart.order || *chart.order != 1) all_trivial = false;
  }
  const Classification per_vertex = all_trivial  ? Classification::Manifold
                                    : all_finite ? Classification::Orbifold
                                                 : Classification::Quasifold;
  if (per_vertex != dd.classification)
    throw Error(ErrorKind::InternalInconsistency, "certificate route says " + std::string(to_string(dd.classification)) +
                                                      ", vertex groups say " + std::string(to_string(per_vertex)));
  return ev;
}

}  // namespace quasifold
