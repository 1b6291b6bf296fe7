#pragma once

// Dense univariate polynomials over Q (coefficients low degree first) and
// closed rational intervals. Everything here is exact.

#include <gmpxx.h>

#include <algorithm>
#include <cstddef>
#include <utility>
#include <vector>

namespace quasifold {

using RationalPoly = std::vector<mpq_class>;

inline void trim(RationalPoly& p) {
  while (!p.empty() && sgn(p.back()) == 0) p.pop_back();
}

/// Degree of p, -1 for the zero polynomial.
inline long degree(const RationalPoly& p) {
  for (std::size_t i = p.size(); i > 0; --i)
    if (sgn(p[i - 1]) != 0) return static_cast<long>(i) - 1;
  return -1;
}

inline mpq_class evaluate(const RationalPoly& p, const mpq_class& x) {
  mpq_class acc = 0;
  for (std::size_t i = p.size(); i > 0; --i) acc = acc * x + p[i - 1];
  return acc;
}

inline int sign_at(const RationalPoly& p, const mpq_class& x) { return sgn(evaluate(p, x)); }

inline RationalPoly derivative(const RationalPoly& p) {
  RationalPoly d;
  for (std::size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * static_cast<long>(i));
  trim(d);
  return d;
}

inline RationalPoly multiply(const RationalPoly& a, const RationalPoly& b) {
  if (a.empty() || b.empty()) return {};
  RationalPoly r(a.size() + b.size() - 1, mpq_class(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (sgn(a[i]) == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  trim(r);
  return r;
}

inline RationalPoly subtract(RationalPoly a, const RationalPoly& b) {
  if (a.size() < b.size()) a.resize(b.size(), mpq_class(0));
  for (std::size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
  trim(a);
  return a;
}

/// Quotient and remainder of a / b; b must be nonzero.
inline std::pair<RationalPoly, RationalPoly> divmod(RationalPoly a, RationalPoly b) {
  trim(a);
  trim(b);
  const long db = degree(b);
  RationalPoly q;
  if (degree(a) < db) return {q, a};
  q.assign(static_cast<std::size_t>(degree(a) - db + 1), mpq_class(0));
  const mpq_class lead = b.back();
  while (degree(a) >= db) {
    const long shift = degree(a) - db;
    const mpq_class f = a.back() / lead;
    q[static_cast<std::size_t>(shift)] = f;
    for (long i = 0; i <= db; ++i) a[static_cast<std::size_t>(i + shift)] -= f * b[static_cast<std::size_t>(i)];
    trim(a);
    if (a.empty()) break;
  }
  trim(q);
  return {q, a};
}

inline RationalPoly make_monic(RationalPoly p) {
  trim(p);
  if (p.empty()) return p;
  const mpq_class lead = p.back();
  for (auto& c : p) c /= lead;
  return p;
}

inline RationalPoly gcd(RationalPoly a, RationalPoly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    auto r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return make_monic(a);
}

/// Sturm chain p, p', -rem(p, p'), ... for a square-free p.
inline std::vector<RationalPoly> sturm_chain(const RationalPoly& p) {
  std::vector<RationalPoly> chain{p, derivative(p)};
  while (!chain.back().empty()) {
    auto r = divmod(chain[chain.size() - 2], chain.back()).second;
    for (auto& c : r) c = -c;
    if (r.empty()) break;
    chain.push_back(std::move(r));
  }
  return chain;
}

inline int sign_variations(const std::vector<RationalPoly>& chain, const mpq_class& x) {
  int count = 0;
  int last = 0;
  for (const auto& q : chain) {
    const int s = sign_at(q, x);
    if (s == 0) continue;
    if (last != 0 && s != last) ++count;
    last = s;
  }
  return count;
}

/// Number of distinct real roots in (lo, hi]; p square-free.
inline int count_roots(const RationalPoly& p, const mpq_class& lo, const mpq_class& hi) {
  const auto chain = sturm_chain(p);
  return sign_variations(chain, lo) - sign_variations(chain, hi);
}

struct RationalInterval {
  mpq_class lo;
  mpq_class hi;

  mpq_class width() const { return hi - lo; }
  bool contains_zero() const { return sgn(lo) <= 0 && sgn(hi) >= 0; }
};

inline RationalInterval operator+(const RationalInterval& a, const RationalInterval& b) {
  return {a.lo + b.lo, a.hi + b.hi};
}

inline RationalInterval operator*(const RationalInterval& a, const RationalInterval& b) {
  const mpq_class p[4] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
  return {*std::min_element(p, p + 4), *std::max_element(p, p + 4)};
}

/// Enclosure of {p(x) : x in box} by Horner's scheme in interval arithmetic.
inline RationalInterval enclose(const RationalPoly& p, const RationalInterval& box) {
  RationalInterval acc{0, 0};
  for (std::size_t i = p.size(); i > 0; --i) acc = acc * box + RationalInterval{p[i - 1], p[i - 1]};
  return acc;
}

inline mpz_class lcm_of_denominators(const std::vector<mpq_class>& v) {
  mpz_class l = 1;
  for (const auto& x : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
  return l;
}

}  // namespace quasifold
