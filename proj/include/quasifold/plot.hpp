#pragma once

// Static artifacts: an SVG of Delta (n = 2) with the Phi-image scatter, and a
// CSV of sampled points mu and their images Phi(z).

#include "quasifold/construction.hpp"
#include "quasifold/error.hpp"
#include "quasifold/verifier.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

namespace quasifold {

namespace detail {

inline std::string fmt(double x, const char* spec = "%.17g") {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, x);
  return buf;
}

}  // namespace detail

/// Header mu_1..mu_n,phi_1..phi_n, one row per sample.
inline std::string samples_csv(const std::vector<Sample>& samples, const std::vector<Eigen::VectorXd>& images,
                               std::size_t n) {
  std::ostringstream out;
  for (std::size_t i = 0; i < n; ++i) out << "mu_" << i + 1 << ',';
  for (std::size_t i = 0; i < n; ++i) out << "phi_" << i + 1 << (i + 1 < n ? "," : "\n");
  for (std::size_t k = 0; k < samples.size(); ++k) {
    for (Eigen::Index i = 0; i < samples[k].mu.size(); ++i) out << detail::fmt(samples[k].mu(i)) << ',';
    for (Eigen::Index i = 0; i < images[k].size(); ++i)
      out << detail::fmt(images[k](i)) << (i + 1 < images[k].size() ? "," : "\n");
  }
  return out.str();
}

/// Outline of Delta from its vertices sorted by angle about the centroid
/// (Delta is convex), plus one dot per image point.
inline std::string polytope_svg(const DelzantData& dd, const std::vector<Eigen::VectorXd>& images) {
  if (dd.n() != 2) throw Error(ErrorKind::DimensionUnsupported, "SVG output needs a 2-dimensional polytope");
  std::vector<Eigen::Vector2d> verts;
  for (const auto& v : dd.numeric.vertices) verts.emplace_back(v(0), v(1));
  Eigen::Vector2d centre = Eigen::Vector2d::Zero();
  for (const auto& v : verts) centre += v;
  centre /= static_cast<double>(verts.size());
  std::sort(verts.begin(), verts.end(), [&](const Eigen::Vector2d& a, const Eigen::Vector2d& b) {
    return std::atan2(a.y() - centre.y(), a.x() - centre.x()) < std::atan2(b.y() - centre.y(), b.x() - centre.x());
  });

  Eigen::Vector2d lo = verts.front(), hi = lo;
  for (const auto& v : verts) {
    lo = lo.cwiseMin(v);
    hi = hi.cwiseMax(v);
  }
  const double size = 480, margin = 20;
  const double span = std::max({hi.x() - lo.x(), hi.y() - lo.y(), 1e-12});
  const double scale = (size - 2 * margin) / span;
  const auto px = [&](double x) { return detail::fmt(margin + (x - lo.x()) * scale, "%.3f"); };
  const auto py = [&](double y) { return detail::fmt(size - margin - (y - lo.y()) * scale, "%.3f"); };

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size << "\" height=\"" << size
      << "\" viewBox=\"0 0 " << size << ' ' << size << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<g id=\"samples\" fill=\"#1f77b4\" fill-opacity=\"0.35\">\n";
  for (const auto& p : images) out << "<circle cx=\"" << px(p(0)) << "\" cy=\"" << py(p(1)) << "\" r=\"1\"/>\n";
  out << "</g>\n";
  out << "<polygon id=\"outline\" fill=\"none\" stroke=\"black\" stroke-width=\"1.5\" points=\"";
  for (std::size_t i = 0; i < verts.size(); ++i)
    out << (i ? " " : "") << px(verts[i].x()) << ',' << py(verts[i].y());
  out << "\"/>\n";
  out << "<g id=\"vertices\" fill=\"black\">\n";
  for (const auto& v : verts) out << "<circle cx=\"" << px(v.x()) << "\" cy=\"" << py(v.y()) << "\" r=\"3\"/>\n";
  out << "</g>\n</svg>\n";
  return out.str();
}

}  // namespace quasifold
