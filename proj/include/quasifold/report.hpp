#pragma once

// JSON reports. Every exact number is written as {"exact": "...", "value": x};
// keys keep insertion order so a fixed input and seed give byte-identical
// output.

#include "quasifold/construction.hpp"
#include "quasifold/polytope.hpp"
#include "quasifold/verifier.hpp"

#include "json.hpp"

#include <cmath>
#include <string>
#include <vector>

namespace quasifold {

using Json = nlohmann::ordered_json;

inline Json to_json(const mpz_class& x) {
  if (x.fits_slong_p()) return x.get_si();
  return x.get_str();
}

inline Json to_json(const mpq_class& x) { return x.get_str(); }

inline Json to_json(const Scalar& s, double precision = 1e-12) {
  Json j;
  j["exact"] = s.to_string();
  j["value"] = s.to_double(precision);
  return j;
}

inline Json to_json(const ScalarVector& v, double precision = 1e-12) {
  Json j = Json::array();
  for (const auto& s : v) j.push_back(to_json(s, precision));
  return j;
}

/// Non-finite doubles have no JSON literal; they are written as strings.
inline Json number_json(double x) {
  if (std::isfinite(x)) return x;
  if (std::isnan(x)) return "nan";
  return x > 0 ? "inf" : "-inf";
}

inline Json to_json(const Eigen::VectorXd& v) {
  Json j = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) j.push_back(number_json(v(i)));
  return j;
}

inline Json to_json(const std::vector<double>& v) {
  Json j = Json::array();
  for (double x : v) j.push_back(number_json(x));
  return j;
}

inline Json field_json(const Field& f) {
  Json j;
  Json mp = Json::array();
  for (const auto& c : f.minpoly()) mp.push_back(to_json(c));
  j["minpoly"] = std::move(mp);
  j["root_interval"] = {to_json(f.user_interval().lo), to_json(f.user_interval().hi)};
  const auto box = f.isolate(mpq_class(1, mpz_class(1) << 60));
  j["theta"] = (box.lo.get_d() + box.hi.get_d()) / 2;
  return j;
}

inline Json vertex_json(const Vertex& v, double precision = 1e-12) {
  Json j;
  j["point"] = to_json(v.point, precision);
  j["active_facets"] = v.active;
  return j;
}

inline Json certificate_json(const LatticeCertificate& c, double precision = 1e-12) {
  Json j;
  j["rational"] = c.rational;
  j["rational_rank"] = c.rational_rank;
  if (c.rational) {
    Json basis = Json::array();
    for (const auto& b : c.basis) basis.push_back(to_json(b, precision));
    j["basis"] = std::move(basis);
    Json coords = Json::array();
    for (const auto& row : c.coordinates) {
      Json r = Json::array();
      for (const auto& x : row) r.push_back(to_json(x));
      coords.push_back(std::move(r));
    }
    j["coordinates"] = std::move(coords);
  } else {
    j["independent_generators"] = c.independent_generators;
  }
  return j;
}

inline Json delzant_json(const DelzantReport& d) {
  Json j;
  j["integral"] = d.integral;
  j["primitive_failures"] = d.primitive_failures;
  j["nonunimodular_vertices"] = d.nonunimodular_vertices;
  Json dets = Json::array();
  for (const auto& x : d.vertex_determinants) dets.push_back(to_json(x));
  j["vertex_determinants"] = std::move(dets);
  return j;
}

/// Simplicity, rationality (with certificate), Delzant integrality when
/// rational, and the vertex list.
inline Json analysis_json(const HPolytope& p, double precision = 1e-12) {
  Json j;
  j["dimension"] = p.dim();
  j["num_facets"] = p.num_facets();
  j["field"] = field_json(*p.field());
  const SimpleReport s = check_simple(p);
  j["simple"] = s.simple;
  if (s.witness) j["simple_witness"] = vertex_json(*s.witness, precision);
  const LatticeCertificate cert = check_rational(p);
  j["rational"] = cert.rational;
  j["rational_certificate"] = certificate_json(cert, precision);
  if (cert.rational)
    j["delzant"] = delzant_json(check_delzant(p, cert));
  else
    j["delzant"] = nullptr;
  Json verts = Json::array();
  for (const auto& v : p.vertices()) verts.push_back(vertex_json(v, precision));
  j["vertices"] = std::move(verts);
  return j;
}

inline Json chart_json(const VertexChart& c, double precision = 1e-12) {
  Json j;
  j["vertex_index"] = c.vertex_index;
  j["vertex"] = vertex_json(c.vertex, precision);
  j["fixed_point"] = to_json(c.fixed_point, precision);
  Json gens = Json::array();
  for (const auto& g : c.group_generators) gens.push_back(to_json(g, precision));
  j["group_generators"] = std::move(gens);
  j["finite"] = c.finite;
  j["order"] = c.order ? to_json(*c.order) : Json(nullptr);
  Json inv = Json::array();
  for (const auto& a : c.invariant_factors) inv.push_back(to_json(a));
  j["invariant_factors"] = std::move(inv);
  return j;
}

inline Json construction_json(const DelzantData& dd) {
  const double prec = dd.numeric.precision;
  const ClassificationEvidence ev = classify(dd);
  Json j;
  j["n"] = dd.n();
  j["d"] = dd.d();
  j["kernel_dimension"] = dd.kernel_dimension();
  j["manifold_dimension"] = dd.manifold_dimension();
  j["field"] = field_json(*dd.polytope.field());
  Json normals = Json::array();
  for (std::size_t c = 0; c < dd.pi.cols(); ++c) normals.push_back(to_json(dd.pi.column(c), prec));
  j["pi_columns"] = std::move(normals);
  j["lambda"] = to_json(dd.lambda, prec);
  Json ker = Json::array();
  for (const auto& b : dd.kernel_basis) ker.push_back(to_json(b, prec));
  j["kernel_basis"] = std::move(ker);
  j["kernel_rational_dimension"] = dd.n_rational_dim;
  j["kernel_compact"] = dd.kernel_compact;

  Json q;
  Json gens = Json::array();
  for (const auto& g : dd.quasilattice.generators) gens.push_back(to_json(g, prec));
  q["generators"] = std::move(gens);
  q["is_lattice"] = dd.quasilattice.is_lattice();
  q["certificate"] = certificate_json(dd.quasilattice.certificate, prec);
  j["quasilattice"] = std::move(q);

  Json cls;
  cls["classification"] = std::string(to_string(ev.classification));
  cls["delzant"] = ev.delzant ? delzant_json(*ev.delzant) : Json(nullptr);
  Json orders = Json::array();
  for (const auto& o : ev.vertex_orders) orders.push_back(o ? to_json(*o) : Json("infinite"));
  cls["vertex_orders"] = std::move(orders);
  cls["routes_agree"] = true;
  j["classification"] = std::move(cls);

  Json charts = Json::array();
  for (const auto& c : vertex_charts(dd)) charts.push_back(chart_json(c, prec));
  j["vertex_charts"] = std::move(charts);
  return j;
}

inline Json verification_json(const VerificationReport& r, const VerifyConfig& cfg) {
  Json j;
  j["sample_count"] = r.sample_count;
  j["seed"] = cfg.seed;
  j["max_level_residual"] = number_json(r.max_level_residual);
  j["max_roundtrip_error"] = number_json(r.image.max_roundtrip_error);
  j["max_containment_violation"] = number_json(r.image.max_containment_violation);
  j["vertex_attainment_gaps"] = to_json(r.image.vertex_attainment_gaps);
  j["hull_hausdorff"] = number_json(r.image.hull_hausdorff);
  j["hull_hausdorff_exact"] = r.image.hull_hausdorff_exact;
  j["min_dPsi_rank_margin"] = number_json(r.rank.min_relative_margin);
  j["max_hamiltonian_residual"] = number_json(r.max_hamiltonian_residual);
  Json ham;
  ham["steps"] = to_json(r.hamiltonian_steps);
  ham["max_residuals"] = to_json(r.hamiltonian_by_step);
  ham["observed_orders"] = to_json(r.hamiltonian_orders);
  j["hamiltonian_scaling"] = std::move(ham);
  Json inv;
  inv["psi_torus"] = number_json(r.invariance.psi_torus_residual);
  inv["phi_kernel"] = number_json(r.invariance.phi_kernel_residual);
  j["invariance_residuals"] = std::move(inv);
  j["effectiveness_witness"] =
      r.invariance.effectiveness_witness ? Json(*r.invariance.effectiveness_witness) : Json(nullptr);
  Json tol;
  tol["level"] = cfg.tol_level;
  tol["roundtrip"] = cfg.tol_roundtrip;
  tol["containment"] = cfg.tol_containment;
  tol["attainment"] = cfg.tol_attainment;
  tol["rank"] = cfg.tol_rank;
  tol["hamiltonian"] = cfg.tol_hamiltonian;
  tol["hamiltonian_order"] = {cfg.min_hamiltonian_order, cfg.max_hamiltonian_order};
  tol["psi_invariance"] = cfg.tol_psi_invariance;
  tol["phi_invariance"] = cfg.tol_phi_invariance;
  j["tolerances"] = std::move(tol);
  j["failures"] = r.failures;
  j["passed"] = r.passed();
  return j;
}

}  // namespace quasifold
