#pragma once

// Monte Carlo and finite-difference checks of the construction:
//   * samples of Psi^{-1}(0) fibred over Delta,
//   * Phi round trip, containment in Delta and attainment of every vertex,
//   * full rank of dPsi along the level set,
//   * the Hamiltonian identity  i(X_M) omega_0 = d<Phi, X>  on C^d,
//   * T^d-invariance of Psi and N-invariance of Phi.

#include "quasifold/construction.hpp"
#include "quasifold/error.hpp"
#include "quasifold/moment.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <numbers>
#include <optional>
#include <random>
#include <tuple>
#include <string>
#include <vector>

namespace quasifold {

/// Deterministic uniform doubles in [0, 1) from mt19937_64 (whose output
/// sequence is fixed by the standard, unlike the distributions).
class Rng {
 public:
  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0) : eng_(seed * 0x9E3779B97F4A7C15ULL + stream) {}
  double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

 private:
  std::mt19937_64 eng_;
};

struct Sample {
  Eigen::VectorXd mu;
  std::vector<double> phases;
  ComplexVector z;
};

/// Facet slacks <mu, X_j> - lambda_j in floating point.
inline Eigen::VectorXd float_slacks(const DelzantData& dd, const Eigen::VectorXd& mu) {
  return dd.numeric.pi.transpose() * mu - dd.numeric.lambda;
}

/// The point z_j = sqrt(<mu, X_j> - lambda_j) e^{2 pi i phase_j} of the
/// level set over mu.
inline ComplexVector lift_point(const Eigen::VectorXd& slacks, const std::vector<double>& phases) {
  ComplexVector z(phases.size());
  for (std::size_t j = 0; j < phases.size(); ++j) {
    const double r = std::sqrt(std::max(0.0, slacks(static_cast<Eigen::Index>(j))));
    z[j] = std::polar(r, 2 * std::numbers::pi * phases[j]);
  }
  return z;
}

/// Uniform mu in Delta (rejection inside the vertex bounding box) and
/// uniform phases.
inline std::vector<Sample> sample_level_set(const DelzantData& dd, std::size_t count, std::uint64_t seed) {
  if (count < 1) throw Error(ErrorKind::DimensionMismatch, "sample count must be >= 1");
  const auto n = static_cast<Eigen::Index>(dd.n());
  Eigen::VectorXd lo = dd.numeric.vertices.front(), hi = lo;
  for (const auto& v : dd.numeric.vertices) {
    lo = lo.cwiseMin(v);
    hi = hi.cwiseMax(v);
  }
  Rng rng(seed, 1);
  std::vector<Sample> out;
  out.reserve(count);
  std::uint64_t draws = 0;
  while (out.size() < count) {
    Eigen::VectorXd mu(n);
    for (Eigen::Index i = 0; i < n; ++i) mu(i) = rng.uniform(lo(i), hi(i));
    ++draws;
    const Eigen::VectorXd s = float_slacks(dd, mu);
    if (s.minCoeff() < 0) {
      if (draws >= 1000000 && static_cast<double>(out.size()) < 1e-4 * static_cast<double>(draws))
        throw Error(ErrorKind::RejectionStall, "acceptance rate below 1e-4");
      continue;
    }
    Sample smp;
    smp.mu = mu;
    for (std::size_t j = 0; j < dd.d(); ++j) smp.phases.push_back(rng.uniform());
    smp.z = lift_point(s, smp.phases);
    out.push_back(std::move(smp));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Moment image

namespace detail {

inline double cross(const Eigen::Vector2d& o, const Eigen::Vector2d& a, const Eigen::Vector2d& b) {
  return (a.x() - o.x()) * (b.y() - o.y()) - (a.y() - o.y()) * (b.x() - o.x());
}

/// Counter-clockwise convex hull (monotone chain).
inline std::vector<Eigen::Vector2d> convex_hull(std::vector<Eigen::Vector2d> pts) {
  std::sort(pts.begin(), pts.end(),
            [](const auto& a, const auto& b) { return a.x() < b.x() || (a.x() == b.x() && a.y() < b.y()); });
  if (pts.size() < 3) return pts;
  std::vector<Eigen::Vector2d> h(2 * pts.size());
  std::size_t k = 0;
  for (const auto& p : pts) {
    while (k >= 2 && cross(h[k - 2], h[k - 1], p) <= 0) --k;
    h[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i > 0; --i) {
    while (k >= t && cross(h[k - 2], h[k - 1], pts[i - 1]) <= 0) --k;
    h[k++] = pts[i - 1];
  }
  h.resize(k - 1);
  return h;
}

inline double segment_distance(const Eigen::Vector2d& p, const Eigen::Vector2d& a, const Eigen::Vector2d& b) {
  const Eigen::Vector2d ab = b - a;
  const double len2 = ab.squaredNorm();
  const double t = len2 > 0 ? std::clamp((p - a).dot(ab) / len2, 0.0, 1.0) : 0.0;
  return (a + t * ab - p).norm();
}

inline double distance_to_polygon(const Eigen::Vector2d& p, const std::vector<Eigen::Vector2d>& hull) {
  if (hull.empty()) return std::numeric_limits<double>::infinity();
  if (hull.size() == 1) return (hull[0] - p).norm();
  bool inside = hull.size() >= 3;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < hull.size(); ++i) {
    const auto& a = hull[i];
    const auto& b = hull[(i + 1) % hull.size()];
    if (cross(a, b, p) < 0) inside = false;
    best = std::min(best, segment_distance(p, a, b));
  }
  return inside ? 0.0 : best;
}

}  // namespace detail

struct MomentImageReport {
  double max_roundtrip_error = 0;
  double max_containment_violation = 0;
  std::vector<double> vertex_attainment_gaps;
  /// Hausdorff distance between Delta and the hull of the Phi-images:
  /// exact for n <= 2, a nearest-sample upper bound otherwise.
  double hull_hausdorff = 0;
  bool hull_hausdorff_exact = true;
};

/// Distance from every vertex of Delta to the hull of `images`, maximized.
inline std::pair<double, bool> hull_hausdorff(const std::vector<Eigen::VectorXd>& vertices,
                                              const std::vector<Eigen::VectorXd>& images) {
  if (images.empty() || vertices.empty()) return {std::numeric_limits<double>::infinity(), true};
  const auto n = vertices.front().size();
  double worst = 0;
  if (n == 1) {
    double lo = images.front()(0), hi = lo;
    for (const auto& p : images) {
      lo = std::min(lo, p(0));
      hi = std::max(hi, p(0));
    }
    for (const auto& v : vertices) worst = std::max(worst, std::max({0.0, lo - v(0), v(0) - hi}));
    return {worst, true};
  }
  if (n == 2) {
    std::vector<Eigen::Vector2d> pts;
    for (const auto& p : images) pts.emplace_back(p(0), p(1));
    const auto hull = detail::convex_hull(std::move(pts));
    for (const auto& v : vertices) worst = std::max(worst, detail::distance_to_polygon({v(0), v(1)}, hull));
    return {worst, true};
  }
  for (const auto& v : vertices) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& p : images) best = std::min(best, (p - v).norm());
    worst = std::max(worst, best);
  }
  return {worst, false};
}

inline std::vector<Eigen::VectorXd> moment_images(const DelzantData& dd, const std::vector<Sample>& samples) {
  std::vector<Eigen::VectorXd> out;
  out.reserve(samples.size());
  for (const auto& s : samples) out.push_back(phi_least_squares(s.z, dd));
  return out;
}

/// Round trip, containment, vertex attainment (exact fixed points lifted
/// with `fiber_draws` random phase vectors each) and hull coverage.
inline MomentImageReport verify_moment_image(const DelzantData& dd, const std::vector<Sample>& samples,
                                             std::uint64_t seed, std::size_t fiber_draws = 8) {
  MomentImageReport rep;
  const auto images = moment_images(dd, samples);
  for (std::size_t i = 0; i < samples.size(); ++i) {
    rep.max_roundtrip_error = std::max(rep.max_roundtrip_error, (images[i] - samples[i].mu).norm());
    const Eigen::VectorXd s = float_slacks(dd, images[i]);
    rep.max_containment_violation = std::max(rep.max_containment_violation, std::max(0.0, -s.minCoeff()));
  }
  Rng rng(seed, 2);
  const auto charts = fixed_points(dd);
  for (std::size_t v = 0; v < charts.size(); ++v) {
    Eigen::VectorXd moduli(static_cast<Eigen::Index>(dd.d()));
    for (std::size_t j = 0; j < dd.d(); ++j)
      moduli(static_cast<Eigen::Index>(j)) = charts[v].fixed_point[j].to_double(dd.numeric.precision);
    double gap = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < std::max<std::size_t>(fiber_draws, 1); ++k) {
      std::vector<double> phases;
      for (std::size_t j = 0; j < dd.d(); ++j) phases.push_back(rng.uniform());
      const ComplexVector z = lift_point(moduli, phases);
      gap = std::min(gap, (phi_least_squares(z, dd) - dd.numeric.vertices[v]).norm());
    }
    rep.vertex_attainment_gaps.push_back(gap);
  }
  std::tie(rep.hull_hausdorff, rep.hull_hausdorff_exact) = hull_hausdorff(dd.numeric.vertices, images);
  return rep;
}

// ---------------------------------------------------------------------------
// Regular value

/// Real Jacobian of Psi at z, (d-n) x 2d, columns ordered x_1, y_1, x_2, ...
inline Eigen::MatrixXd psi_jacobian(const DelzantData& dd, const ComplexVector& z) {
  const auto& b = dd.numeric.kernel;
  Eigen::MatrixXd jac(b.rows(), 2 * b.cols());
  for (Eigen::Index j = 0; j < b.cols(); ++j) {
    const auto zj = z[static_cast<std::size_t>(j)];
    jac.col(2 * j) = 2 * zj.real() * b.col(j);
    jac.col(2 * j + 1) = 2 * zj.imag() * b.col(j);
  }
  return jac;
}

struct RankReport {
  double min_relative_margin = std::numeric_limits<double>::infinity();
  std::size_t worst_sample = 0;
};

/// sigma_min / sigma_max of dPsi, minimized over the samples.
inline RankReport check_regular_value(const DelzantData& dd, const std::vector<Sample>& samples) {
  RankReport rep;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const Eigen::JacobiSVD<Eigen::MatrixXd> svd(psi_jacobian(dd, samples[i].z));
    const auto& s = svd.singularValues();
    const double margin = s(0) > 0 ? s(s.size() - 1) / s(0) : 0.0;
    if (margin < rep.min_relative_margin) {
      rep.min_relative_margin = margin;
      rep.worst_sample = i;
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Hamiltonian identity

/// Torus action: z_j -> e^{2 pi i t_j} z_j.
inline ComplexVector act(const ComplexVector& z, const Eigen::VectorXd& t) {
  ComplexVector out(z.size());
  for (std::size_t j = 0; j < z.size(); ++j)
    out[j] = std::polar(1.0, 2 * std::numbers::pi * t(static_cast<Eigen::Index>(j))) * z[j];
  return out;
}

/// max_k |(i(X_M) omega_0)_k - d<Phi, X>_k| over the 2d real coordinate
/// directions, omega_0 = (1/2 pi i) sum dz_j ^ dzbar_j = -(1/pi) sum dx_j ^ dy_j.
/// X is lifted to the least-norm preimage Xhat under pi. X_M and the
/// derivative of <Phi, X> are both central differences with step h, so the
/// discrepancy is the O(h^2) finite-difference error. The difference
/// quotients are evaluated in closed form to keep cancellation out:
///   (e^{i a h} - e^{-i a h}) z / 2h = i sin(a h) z / h
///   (|z + s|^2 - |z - s|^2) / 2h     = 2 Re(conj(z) s) / h
inline double check_hamiltonian_identity(const DelzantData& dd, const ComplexVector& z, const Eigen::VectorXd& x,
                                         double h) {
  if (!(h >= 1e-8 && h <= 1e-3)) throw Error(ErrorKind::StepOutOfRange, "h must lie in [1e-8, 1e-3]");
  if (x.size() != static_cast<Eigen::Index>(dd.n()))
    throw Error(ErrorKind::DimensionMismatch, "direction must have n entries");
  if (z.size() != dd.d()) throw Error(ErrorKind::DimensionMismatch, "z must have d entries");
  const Eigen::VectorXd xhat = dd.numeric.lift * x;
  // <Phi, X> = x^T S (|z|^2 + lambda), S the least-squares solver
  const Eigen::VectorXd weight = dd.numeric.phi_solver.transpose() * x;

  double worst = 0;
  for (std::size_t j = 0; j < z.size(); ++j) {
    const auto jj = static_cast<Eigen::Index>(j);
    const double angle = 2 * std::numbers::pi * h * xhat(jj);
    const std::complex<double> field = std::complex<double>(0, std::sin(angle) / h) * z[j];
    // omega(V, d/dx_j) = V_y / pi,  omega(V, d/dy_j) = -V_x / pi
    const double lhs_x = field.imag() / std::numbers::pi;
    const double lhs_y = -field.real() / std::numbers::pi;
    const double rhs_x = weight(jj) * 2 * z[j].real();
    const double rhs_y = weight(jj) * 2 * z[j].imag();
    worst = std::max({worst, std::abs(lhs_x - rhs_x), std::abs(lhs_y - rhs_y)});
  }
  return worst;
}

// ---------------------------------------------------------------------------
// Invariance and effectiveness

struct InvarianceReport {
  double psi_torus_residual = 0;   // max |Psi(t.z) - Psi(z)|, t in T^d
  double phi_kernel_residual = 0;  // max |Phi(t.z) - Phi(z)|, t in N
  std::optional<std::size_t> effectiveness_witness;  // first sample with all z_j != 0
};

inline InvarianceReport check_invariance(const DelzantData& dd, const std::vector<Sample>& samples,
                                         std::uint64_t seed) {
  InvarianceReport rep;
  Rng rng(seed, 3);
  const auto d = static_cast<Eigen::Index>(dd.d());
  const Eigen::MatrixXd& b = dd.numeric.kernel;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const auto& z = samples[i].z;
    Eigen::VectorXd t(d);
    for (Eigen::Index j = 0; j < d; ++j) t(j) = rng.uniform();
    rep.psi_torus_residual =
        std::max(rep.psi_torus_residual, (moment_Psi(act(z, t), dd) - moment_Psi(z, dd)).norm());

    Eigen::VectorXd sigma(b.rows());
    for (Eigen::Index k = 0; k < b.rows(); ++k) sigma(k) = rng.uniform();
    Eigen::VectorXd tn = b.transpose() * sigma;
    for (Eigen::Index j = 0; j < d; ++j) tn(j) -= std::floor(tn(j));
    rep.phi_kernel_residual =
        std::max(rep.phi_kernel_residual, (phi_least_squares(act(z, tn), dd) - phi_least_squares(z, dd)).norm());

    if (!rep.effectiveness_witness &&
        std::all_of(z.begin(), z.end(), [](const std::complex<double>& w) { return std::abs(w) > 0; }))
      rep.effectiveness_witness = i;
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Full report

struct VerifyConfig {
  std::size_t samples = 10000;
  std::uint64_t seed = 0;
  std::size_t hamiltonian_pairs = 100;
  double hamiltonian_step = 1e-5;
  std::vector<double> scaling_steps{1e-3, 1e-4, 1e-5};

  double tol_level = 1e-9;
  double tol_roundtrip = 1e-8;
  double tol_containment = 1e-8;
  double tol_attainment = 1e-9;
  double tol_rank = 1e-6;
  double tol_hamiltonian = 1e-6;
  double min_hamiltonian_order = 1.8;  // observed order per decade of h
  double max_hamiltonian_order = 2.2;
  double tol_psi_invariance = 1e-9;
  double tol_phi_invariance = 1e-8;
};

struct VerificationReport {
  std::size_t sample_count = 0;
  double max_level_residual = 0;
  MomentImageReport image;
  RankReport rank;
  double max_hamiltonian_residual = 0;  // at the configured step
  std::vector<double> hamiltonian_steps;
  std::vector<double> hamiltonian_by_step;      // max residual per scaling step
  std::vector<double> hamiltonian_orders;       // log10 ratio per consecutive pair
  InvarianceReport invariance;

  /// Names of the report fields that miss their threshold.
  std::vector<std::string> failures;
  bool passed() const { return failures.empty(); }
};

inline Eigen::VectorXd random_direction(Rng& rng, std::size_t n) {
  Eigen::VectorXd x(static_cast<Eigen::Index>(n));
  for (Eigen::Index i = 0; i < x.size(); ++i) x(i) = rng.uniform(-1, 1);
  return x;
}

/// Max Hamiltonian residual over `pairs` (sample, random direction) pairs.
inline double hamiltonian_residual(const DelzantData& dd, const std::vector<Sample>& samples, std::size_t pairs,
                                   double h, std::uint64_t seed) {
  Rng rng(seed, 4);
  double worst = 0;
  for (std::size_t k = 0; k < pairs; ++k) {
    const auto& z = samples[k % samples.size()].z;
    worst = std::max(worst, check_hamiltonian_identity(dd, z, random_direction(rng, dd.n()), h));
  }
  return worst;
}

inline VerificationReport run_verification(const DelzantData& dd, const VerifyConfig& cfg) {
  VerificationReport rep;
  const auto samples = sample_level_set(dd, cfg.samples, cfg.seed);
  rep.sample_count = samples.size();
  for (const auto& s : samples) rep.max_level_residual = std::max(rep.max_level_residual, moment_Psi(s.z, dd).norm());
  rep.image = verify_moment_image(dd, samples, cfg.seed);
  rep.rank = check_regular_value(dd, samples);
  rep.max_hamiltonian_residual =
      hamiltonian_residual(dd, samples, cfg.hamiltonian_pairs, cfg.hamiltonian_step, cfg.seed);
  rep.hamiltonian_steps = cfg.scaling_steps;
  for (double h : cfg.scaling_steps)
    rep.hamiltonian_by_step.push_back(hamiltonian_residual(dd, samples, cfg.hamiltonian_pairs, h, cfg.seed));
  for (std::size_t i = 1; i < rep.hamiltonian_by_step.size(); ++i)
    rep.hamiltonian_orders.push_back(std::log10(rep.hamiltonian_by_step[i - 1] / rep.hamiltonian_by_step[i]) /
                                     std::log10(cfg.scaling_steps[i - 1] / cfg.scaling_steps[i]));
  rep.invariance = check_invariance(dd, samples, cfg.seed);

  auto require = [&](bool ok, const char* field) {
    if (!ok) rep.failures.emplace_back(field);
  };
  require(rep.max_level_residual <= cfg.tol_level, "max_level_residual");
  require(rep.image.max_roundtrip_error <= cfg.tol_roundtrip, "max_roundtrip_error");
  require(rep.image.max_containment_violation <= cfg.tol_containment, "max_containment_violation");
  require(std::all_of(rep.image.vertex_attainment_gaps.begin(), rep.image.vertex_attainment_gaps.end(),
                      [&](double g) { return g <= cfg.tol_attainment; }),
          "vertex_attainment_gaps");
  require(rep.rank.min_relative_margin > cfg.tol_rank, "min_dPsi_rank_margin");
  require(rep.max_hamiltonian_residual <= cfg.tol_hamiltonian, "max_hamiltonian_residual");
  require(std::all_of(rep.hamiltonian_orders.begin(), rep.hamiltonian_orders.end(),
                      [&](double p) { return p >= cfg.min_hamiltonian_order && p <= cfg.max_hamiltonian_order; }),
          "hamiltonian_orders");
  require(rep.invariance.psi_torus_residual <= cfg.tol_psi_invariance, "psi_torus_residual");
  require(rep.invariance.phi_kernel_residual <= cfg.tol_phi_invariance, "phi_kernel_residual");
  require(rep.invariance.effectiveness_witness.has_value(), "effectiveness_witness");
  return rep;
}

}  // namespace quasifold
