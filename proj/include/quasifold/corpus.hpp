#pragma once

// Built-in polytope documents: the unit interval in its sphere, teardrop,
// rugby-ball and irrational (quasisphere) presentations, the standard and
// irrational right triangles, square, cube, octahedron (not simple) and the
// regular pentagon.

#include <charconv>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace quasifold {

struct CorpusEntry {
  std::string name;
  std::string description;
};

namespace detail {

// theta = sqrt(2)
inline constexpr const char* kSqrt2Field = R"json("field": {"minpoly": ["-2", "0", "1"], "root_interval": ["1", "2"]})json";

// theta = cos(pi/10), root of 16x^4 - 20x^2 + 5. In terms of theta:
//   a = cos(2pi/5) = 2 theta^2 - 3/2     b = sin(2pi/5) = theta
//   c = cos(4pi/5) = 1 - 2 theta^2       d = sin(4pi/5) = 4 theta^3 - 3 theta
inline constexpr const char* kPentagon = R"json({
  "field": {"minpoly": ["5/16", "0", "-5/4", "0", "1"], "root_interval": ["9/10", "1"]},
  "dimension": 2,
  "facets": [
    {"normal": ["1", "0"], "offset": "1 - 2*theta^2"},
    {"normal": ["2*theta^2 - 3/2", "theta"], "offset": "1 - 2*theta^2"},
    {"normal": ["1 - 2*theta^2", "4*theta^3 - 3*theta"], "offset": "1 - 2*theta^2"},
    {"normal": ["1 - 2*theta^2", "-(4*theta^3 - 3*theta)"], "offset": "1 - 2*theta^2"},
    {"normal": ["2*theta^2 - 3/2", "-theta"], "offset": "1 - 2*theta^2"}
  ]
})json";

inline std::string interval_document(const std::string& x1, const std::string& x2, const std::string& lambda2,
                                     const std::string& extra = "") {
  std::string doc = "{\"dimension\": 1, \"facets\": [{\"normal\": [\"" + x1 + "\"], \"offset\": \"0\"}, " +
                    "{\"normal\": [\"" + x2 + "\"], \"offset\": \"" + lambda2 + "\"}]";
  if (!extra.empty()) doc += ", \"quasilattice_extra_generators\": [[\"" + extra + "\"]]";
  return doc + "}";
}

inline std::optional<int> parse_suffix(std::string_view name, std::string_view prefix) {
  if (name.substr(0, prefix.size()) != prefix) return std::nullopt;
  const auto rest = name.substr(prefix.size());
  int k = 0;
  const auto [ptr, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), k);
  if (ec != std::errc() || ptr != rest.data() + rest.size() || rest.empty() || rest[0] == '0') return std::nullopt;
  if (k < 2 || k > 99) return std::nullopt;
  return k;
}

}  // namespace detail

inline std::vector<CorpusEntry> builtin_corpus() {
  return {
      {"sphere", "unit interval, X = (1, -1): the 2-sphere"},
      {"teardrop-2", "unit interval, X = (1, -2), Q = Z: teardrop orbifold"},
      {"teardrop-3", "unit interval, X = (1, -3), Q = Z: teardrop orbifold"},
      {"teardrop-5", "unit interval, X = (1, -5), Q = Z: teardrop orbifold"},
      {"rugby-2", "unit interval, X = (2, -2), Q = Z: rugby-ball orbifold"},
      {"rugby-3", "unit interval, X = (3, -3), Q = Z: rugby-ball orbifold"},
      {"rugby-5", "unit interval, X = (5, -5), Q = Z: rugby-ball orbifold"},
      {"interval-sqrt2", "unit interval, X = (1, -sqrt2), Q = Z + sqrt2 Z: the quasisphere"},
      {"cp2", "triangle (0,0), (1,0), (0,1): complex projective plane"},
      {"triangle-sqrt2", "right triangle (0,0), (1,0), (0,sqrt2), X3 = (-sqrt2, -1): projective quasispace"},
      {"square", "unit square: S^2 x S^2"},
      {"cube", "unit cube: S^2 x S^2 x S^2"},
      {"octahedron", "regular octahedron (not simple)"},
      {"pentagon", "regular pentagon with unit normals and lambda_j = cos(4pi/5)"},
  };
}

/// JSON document of a builtin; teardrop-K and rugby-K accept 2 <= K <= 99.
inline std::optional<std::string> builtin_document(std::string_view name) {
  using detail::interval_document;
  if (name == "sphere") return interval_document("1", "-1", "-1");
  if (auto k = detail::parse_suffix(name, "teardrop-")) {
    const std::string ks = std::to_string(*k);
    return interval_document("1", "-" + ks, "-" + ks);
  }
  if (auto k = detail::parse_suffix(name, "rugby-")) {
    const std::string ks = std::to_string(*k);
    return interval_document(ks, "-" + ks, "-" + ks, "1");
  }
  if (name == "interval-sqrt2")
    return std::string("{") + detail::kSqrt2Field +
           R"json(, "dimension": 1, "facets": [{"normal": ["1"], "offset": "0"}, {"normal": ["-theta"], "offset": "-theta"}]})json";
  if (name == "cp2")
    return std::string(R"json({"dimension": 2, "facets": [
      {"normal": ["1", "0"], "offset": "0"},
      {"normal": ["0", "1"], "offset": "0"},
      {"normal": ["-1", "-1"], "offset": "-1"}]})json");
  if (name == "triangle-sqrt2")
    return std::string("{") + detail::kSqrt2Field + R"json(, "dimension": 2, "facets": [
      {"normal": ["1", "0"], "offset": "0"},
      {"normal": ["0", "1"], "offset": "0"},
      {"normal": ["-theta", "-1"], "offset": "-theta"}]})json";
  if (name == "square")
    return std::string(R"json({"dimension": 2, "facets": [
      {"normal": ["1", "0"], "offset": "0"},
      {"normal": ["0", "1"], "offset": "0"},
      {"normal": ["-1", "0"], "offset": "-1"},
      {"normal": ["0", "-1"], "offset": "-1"}]})json");
  if (name == "cube")
    return std::string(R"json({"dimension": 3, "facets": [
      {"normal": ["1", "0", "0"], "offset": "0"},
      {"normal": ["0", "1", "0"], "offset": "0"},
      {"normal": ["0", "0", "1"], "offset": "0"},
      {"normal": ["-1", "0", "0"], "offset": "-1"},
      {"normal": ["0", "-1", "0"], "offset": "-1"},
      {"normal": ["0", "0", "-1"], "offset": "-1"}]})json");
  if (name == "octahedron") {
    std::string doc = R"json({"dimension": 3, "facets": [)json";
    bool first = true;
    for (int sx : {1, -1})
      for (int sy : {1, -1})
        for (int sz : {1, -1}) {
          if (!first) doc += ", ";
          first = false;
          doc += "{\"normal\": [\"" + std::to_string(-sx) + "\", \"" + std::to_string(-sy) + "\", \"" +
                 std::to_string(-sz) + "\"], \"offset\": \"-1\"}";
        }
    return doc + "]}";
  }
  if (name == "pentagon") return std::string(detail::kPentagon);
  return std::nullopt;
}

}  // namespace quasifold
