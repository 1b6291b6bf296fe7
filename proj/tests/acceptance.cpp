// Acceptance checks, one PASS/FAIL line per criterion. Exit status is the
// number of failed criteria.

#include "quasifold.hpp"

#include <Eigen/Dense>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <numbers>
#include <set>
#include <string>
#include <vector>

using namespace quasifold;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail += (detail.empty() ? "" : "; ") + what;
    }
  }
};

int failures = 0;

void criterion(int id, const char* title, double time_limit, const std::function<Outcome()>& body) {
  const auto start = Clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o.pass = false;
    o.detail = std::string("exception: ") + e.what();
  }
  const double secs = std::chrono::duration<double>(Clock::now() - start).count();
  if (time_limit > 0 && secs >= time_limit) o.require(false, "took " + std::to_string(secs) + " s");
  if (!o.pass) ++failures;
  std::printf("[%s] %2d %s (%.3f s)%s%s\n", o.pass ? "PASS" : "FAIL", id, title, secs, o.detail.empty() ? "" : ": ",
              o.detail.c_str());
  std::fflush(stdout);
}

PolytopeDocument builtin(const std::string& name) { return parse_polytope_document(*builtin_document(name)); }

DelzantData construct(const std::string& name) {
  const auto doc = builtin(name);
  return build_construction(doc.polytope, doc.extra_generators);
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

bool all_ratios_equal(const ScalarVector& a, const ScalarVector& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = i + 1; j < a.size(); ++j)
      if (!(a[i] * b[j] - a[j] * b[i]).is_zero()) return false;
  return true;
}

/// Orthogonal projector onto the row space of m.
Eigen::MatrixXd row_projector(const Eigen::MatrixXd& m) {
  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeThinV);
  const Eigen::MatrixXd v = svd.matrixV().leftCols(m.rows());
  return v * v.transpose();
}

mpq_class frac(const mpq_class& x) {
  mpz_class fl;
  mpz_fdiv_q(fl.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return x - fl;
}

// Order of the subgroup of Q^n / Z^n generated by rational vectors, by closure.
std::size_t enumerate_group(const std::vector<ScalarVector>& gens) {
  using Key = std::vector<mpq_class>;
  const std::size_t n = gens.front().size();
  std::set<Key> seen{Key(n, mpq_class(0))};
  std::vector<Key> todo{Key(n, mpq_class(0))};
  while (!todo.empty()) {
    const Key cur = todo.back();
    todo.pop_back();
    for (const auto& g : gens) {
      Key next(n);
      for (std::size_t i = 0; i < n; ++i) next[i] = frac(cur[i] + g[i].rational_part());
      if (seen.insert(next).second) todo.push_back(next);
    }
  }
  return seen.size();
}

const std::vector<std::string> kCorpus = {"sphere",  "teardrop-2",     "teardrop-3", "teardrop-5", "rugby-2",
                                          "rugby-3", "rugby-5",        "interval-sqrt2", "cp2",    "triangle-sqrt2",
                                          "square",  "cube",           "pentagon"};

}  // namespace

int main() {
  // Shared verification runs for criteria 4, 7 and 8.
  std::map<std::string, VerificationReport> reports;
  double verify_seconds = 0;

  criterion(1, "triangle kernel exactly proportional to (t, s, 1), s = 1, t = sqrt 2", 1.0, [] {
    Outcome o;
    const auto dd = construct("triangle-sqrt2");
    const auto f = dd.polytope.field();
    const ScalarVector tsone{parse_scalar("theta", f), parse_scalar("1", f), parse_scalar("1", f)};
    o.require(dd.kernel_basis.size() == 1, "kernel dimension " + std::to_string(dd.kernel_basis.size()));
    if (o.pass) {
      o.require(all_ratios_equal(dd.kernel_basis[0], tsone), "kernel not proportional");
      o.detail = "kernel = (" + dd.kernel_basis[0][0].to_string() + ", " + dd.kernel_basis[0][1].to_string() + ", " +
                 dd.kernel_basis[0][2].to_string() + ")";
    }
    return o;
  });

  criterion(2, "quasisphere Psi coefficients proportional to (1, s/t, -s)", 1.0, [] {
    Outcome o;
    const auto dd = construct("interval-sqrt2");
    const auto f = dd.polytope.field();
    o.require(dd.kernel_basis.size() == 1, "kernel dimension");
    if (!o.pass) return o;
    const auto& b = dd.kernel_basis[0];
    // Psi(z) = b1 |z1|^2 + b2 |z2|^2 + <b, lambda>
    const ScalarVector coeffs{b[0], b[1], dot(b, dd.lambda)};
    const ScalarVector expected{parse_scalar("1", f), parse_scalar("1/theta", f), parse_scalar("-1", f)};
    const Scalar ratio = coeffs[0] / expected[0];
    bool exact = true;
    for (std::size_t i = 0; i < 3; ++i) exact = exact && coeffs[i] == ratio * expected[i];
    o.require(exact, "coefficients not proportional");
    o.require(ratio.sign() != 0, "zero ratio");
    o.detail = "scalar ratio = " + ratio.to_string();
    return o;
  });

  criterion(3, "pentagon level set matches the printed system (row space, 1e-9)", 1.0, [] {
    Outcome o;
    const auto dd = construct("pentagon");
    const double pi = std::numbers::pi, a = std::cos(2 * pi / 5), c = std::cos(4 * pi / 5), r5 = std::sqrt(5.0);
    // computed affine map: Psi(z) = B |z|^2 + B lambda, rows [B | B lambda]
    Eigen::MatrixXd computed(3, 6);
    computed.leftCols(5) = dd.numeric.kernel;
    computed.col(5) = dd.numeric.kernel * dd.numeric.lambda;
    Eigen::MatrixXd homogeneous(3, 5);
    homogeneous << 1, 0, 0, 1, -2 * a,  //
        0, 1, 0, 2 * a, 2 * a,          //
        0, 0, 1, -2 * a, 1;
    const auto with_levels = [&](double l1, double l2, double l3) {
      Eigen::MatrixXd m(3, 6);
      m.leftCols(5) = homogeneous;
      m.col(5) << -l1, -l2, -l3;
      return m;
    };
    const Eigen::MatrixXd corrected = with_levels(r5 / 2, -r5 * c, r5 / 2);
    const Eigen::MatrixXd printed = with_levels(r5 / 2, r5 * c, r5 / 2);
    const double d_hom = (row_projector(dd.numeric.kernel) - row_projector(homogeneous)).norm();
    const double d_aff = (row_projector(computed) - row_projector(corrected)).norm();
    const double d_lit = (row_projector(computed) - row_projector(printed)).norm();
    o.require(d_hom <= 1e-9, "homogeneous distance " + fmt(d_hom));
    o.require(d_aff <= 1e-9, "affine distance " + fmt(d_aff));
    o.detail = "homogeneous " + fmt(d_hom) + ", affine " + fmt(d_aff) +
               " (middle level -sqrt5 c; the literal printed +sqrt5 c gives " + fmt(d_lit) + ")";
    return o;
  });

  criterion(4, "moment image = Delta: containment, round trip, vertex attainment (1e4 samples each)", 30.0, [&] {
    Outcome o;
    const auto start = Clock::now();
    double worst_rt = 0, worst_cont = 0, worst_gap = 0;
    for (const auto& name : kCorpus) {
      const auto dd = construct(name);
      VerifyConfig cfg;
      cfg.samples = 10000;
      cfg.seed = 0;
      const auto rep = run_verification(dd, cfg);
      reports[name] = rep;
      worst_rt = std::max(worst_rt, rep.image.max_roundtrip_error);
      worst_cont = std::max(worst_cont, rep.image.max_containment_violation);
      o.require(rep.sample_count == 10000, name + ": sample count");
      o.require(rep.image.max_containment_violation <= 1e-8, name + ": containment");
      o.require(rep.image.max_roundtrip_error <= 1e-8, name + ": round trip");
      o.require(rep.image.vertex_attainment_gaps.size() == dd.polytope.vertices().size(), name + ": vertex count");
      for (double g : rep.image.vertex_attainment_gaps) {
        worst_gap = std::max(worst_gap, g);
        o.require(g <= 1e-9, name + ": vertex gap " + fmt(g));
      }
      if (name == "pentagon") o.require(rep.image.hull_hausdorff <= 0.05, "pentagon hull distance");
    }
    verify_seconds = std::chrono::duration<double>(Clock::now() - start).count();
    if (o.pass)
      o.detail = std::to_string(kCorpus.size()) + " polytopes, round trip " + fmt(worst_rt) + ", containment " +
                 fmt(worst_cont) + ", vertex gap " + fmt(worst_gap) + ", pentagon hull distance " +
                 fmt(reports["pentagon"].image.hull_hausdorff);
    return o;
  });

  criterion(5, "structure groups: quasisphere infinite with t/s, teardrop (1, k), sphere/cp2 trivial", 1.0, [] {
    Outcome o;
    {
      const auto dd = construct("interval-sqrt2");
      const auto f = dd.polytope.field();
      const Scalar ts = parse_scalar("theta", f), st = parse_scalar("1/theta", f);
      const auto charts = vertex_charts(dd);
      o.require(charts.size() == 2, "quasisphere vertex count");
      const auto has_coordinate = [&](const VertexChart& ch, const Scalar& x) {
        // some generator equals +-x modulo Z, exactly
        for (const auto& g : ch.group_generators)
          for (const Scalar& y : {g[0] - x, g[0] + x})
            if (y.is_rational() && y.rational_part().get_den() == 1) return true;
        return false;
      };
      for (const auto& ch : charts) o.require(!ch.finite && !ch.order, "quasisphere group finite");
      if (charts.size() == 2) {
        o.require(has_coordinate(charts[0], ts), "no generator = t/s mod 1 at the X1 pole");
        o.require(has_coordinate(charts[1], st), "no generator = s/t mod 1 at the X2 pole");
      }
    }
    for (int k : {2, 3, 5}) {
      const auto charts = vertex_charts(construct("teardrop-" + std::to_string(k)));
      o.require(charts.size() == 2 && charts[0].order && charts[1].order && *charts[0].order == 1 &&
                    *charts[1].order == k,
                "teardrop-" + std::to_string(k) + " orders");
    }
    for (const char* name : {"sphere", "cp2"})
      for (const auto& ch : vertex_charts(construct(name)))
        o.require(ch.order && *ch.order == 1, std::string(name) + " nontrivial group");
    std::size_t checked = 0;
    for (int k = 2; k <= 5; ++k)
      for (const std::string family : {"teardrop-", "rugby-"})
        for (const auto& ch : vertex_charts(construct(family + std::to_string(k)))) {
          ++checked;
          o.require(ch.finite && enumerate_group(ch.group_generators) == ch.order->get_ui(),
                    family + std::to_string(k) + ": Smith order differs from enumeration");
        }
    if (o.pass) o.detail = std::to_string(checked) + " vertex groups cross-checked by enumeration";
    return o;
  });

  criterion(6, "classification trichotomy on the corpus, certificate and vertex routes agree", 0, [] {
    Outcome o;
    const std::map<std::string, Classification> expected{
        {"sphere", Classification::Manifold},          {"cp2", Classification::Manifold},
        {"teardrop-2", Classification::Orbifold},      {"teardrop-3", Classification::Orbifold},
        {"teardrop-5", Classification::Orbifold},      {"rugby-2", Classification::Orbifold},
        {"rugby-3", Classification::Orbifold},         {"rugby-5", Classification::Orbifold},
        {"interval-sqrt2", Classification::Quasifold}, {"triangle-sqrt2", Classification::Quasifold},
        {"pentagon", Classification::Quasifold},       {"square", Classification::Manifold},
        {"cube", Classification::Manifold}};
    for (const auto& [name, cls] : expected) {
      const auto dd = construct(name);
      const ClassificationEvidence ev = classify(dd);  // throws if the routes disagree
      o.require(ev.classification == cls, name + " is " + std::string(to_string(ev.classification)));
      bool all_one = true, all_finite = true;
      for (const auto& ord : ev.vertex_orders) {
        all_finite = all_finite && ord.has_value();
        all_one = all_one && ord && *ord == 1;
      }
      const Classification by_vertices = all_one      ? Classification::Manifold
                                         : all_finite ? Classification::Orbifold
                                                      : Classification::Quasifold;
      o.require(by_vertices == cls, name + ": vertex route says " + std::string(to_string(by_vertices)));
    }
    if (o.pass) o.detail = std::to_string(expected.size()) + " entries";
    return o;
  });

  criterion(7, "0 is a regular value: min relative dPsi margin > 1e-6 (1e4 samples each)", 0, [&] {
    Outcome o;
    double worst = 1;
    std::string where;
    for (const auto& name : kCorpus) {
      const auto it = reports.find(name);
      o.require(it != reports.end(), name + ": no verification run");
      if (it == reports.end()) continue;
      const double m = it->second.rank.min_relative_margin;
      o.require(m > 1e-6, name + ": margin " + fmt(m));
      if (m < worst) {
        worst = m;
        where = name;
      }
    }
    if (o.pass) o.detail = "smallest margin " + fmt(worst) + " (" + where + ")";
    return o;
  });

  criterion(8, "Hamiltonian identity: residual <= 1e-6 at h = 1e-5, O(h^2) over h = 1e-3..1e-5", 0, [&] {
    Outcome o;
    double worst = 0, lo_order = 10, hi_order = 0;
    for (const auto& name : kCorpus) {
      const auto it = reports.find(name);
      o.require(it != reports.end(), name + ": no verification run");
      if (it == reports.end()) continue;
      const auto& r = it->second;
      worst = std::max(worst, r.max_hamiltonian_residual);
      o.require(r.max_hamiltonian_residual <= 1e-6, name + ": residual " + fmt(r.max_hamiltonian_residual));
      o.require(r.hamiltonian_steps == std::vector<double>{1e-3, 1e-4, 1e-5}, name + ": steps");
      o.require(r.hamiltonian_orders.size() == 2, name + ": orders");
      for (double p : r.hamiltonian_orders) {
        lo_order = std::min(lo_order, p);
        hi_order = std::max(hi_order, p);
        o.require(p >= 1.8 && p <= 2.2, name + ": observed order " + fmt(p));
      }
    }
    if (o.pass)
      o.detail = "worst residual " + fmt(worst) + ", observed orders in [" + fmt(lo_order) + ", " + fmt(hi_order) +
                 "], 100 pairs per entry";
    return o;
  });

  criterion(9, "dim M = 2d - 2 dim N = 2n for every construction", 0, [&] {
    Outcome o;
    for (const auto& name : kCorpus) {
      const auto dd = construct(name);
      o.require(dd.manifold_dimension() == 2 * dd.d() - 2 * dd.kernel_dimension(), name + ": dimension formula");
      o.require(dd.manifold_dimension() == 2 * dd.n(), name + ": dim M = " + std::to_string(dd.manifold_dimension()));
    }
    if (o.pass) o.detail = std::to_string(kCorpus.size()) + " constructions";
    return o;
  });

  criterion(10, "rationality: pentagon and quasisphere not rational, square/cube/cp2 rational", 1.0, [] {
    Outcome o;
    for (const char* name : {"pentagon", "interval-sqrt2"})
      o.require(!check_rational(builtin(name).polytope).rational, std::string(name) + " reported rational");
    for (const char* name : {"square", "cube", "cp2"}) {
      const auto p = builtin(name).polytope;
      const auto cert = check_rational(p);
      o.require(cert.rational, std::string(name) + " reported not rational");
      if (!cert.rational) continue;
      // every normal is the stated integer combination of the lattice basis
      for (std::size_t j = 0; j < p.num_facets(); ++j) {
        ScalarVector sum(p.dim(), Scalar::zero(p.field()));
        for (std::size_t k = 0; k < p.dim(); ++k)
          for (std::size_t c = 0; c < p.dim(); ++c)
            sum[c] += Scalar(p.field(), mpq_class(cert.coordinates[j][k])) * cert.basis[k][c];
        o.require(sum == p.facets()[j].normal, std::string(name) + ": certificate does not reproduce a normal");
      }
    }
    return o;
  });

  std::printf("%d of 10 criteria failed (verification runs: %.2f s)\n", failures, verify_seconds);
  return failures;
}
