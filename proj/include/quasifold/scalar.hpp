#pragma once

#include "quasifold/error.hpp"
#include "quasifold/field.hpp"
#include "quasifold/rational_poly.hpp"

#include <cmath>
#include <limits>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace quasifold {

/// Closed floating-point interval certified to contain a real value.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  double mid() const { return lo + (hi - lo) / 2; }
  double width() const { return hi - lo; }
  bool contains(double x) const { return lo <= x && x <= hi; }
};

namespace detail {

inline double round_down(const mpq_class& q) {
  double d = q.get_d();
  if (mpq_class(d) > q) d = std::nextafter(d, -std::numeric_limits<double>::infinity());
  return d;
}

inline double round_up(const mpq_class& q) {
  double d = q.get_d();
  if (mpq_class(d) < q) d = std::nextafter(d, std::numeric_limits<double>::infinity());
  return d;
}

/// Nearest double (ties toward the lower neighbour).
inline double round_nearest(const mpq_class& q) {
  const double lo = round_down(q), hi = round_up(q);
  return abs(q - mpq_class(lo)) <= abs(mpq_class(hi) - q) ? lo : hi;
}

inline mpq_class dyadic(unsigned bits) { return mpq_class(1, mpz_class(1) << bits); }

}  // namespace detail

/// Element c0 + c1*theta + ... + c_{g-1}*theta^{g-1} of a Field, stored reduced.
class Scalar {
 public:
  Scalar(FieldPtr field, mpq_class value) : field_(std::move(field)), c_(field_->degree(), mpq_class(0)) {
    c_[0] = std::move(value);
  }

  /// Arbitrary polynomial in theta; reduced modulo the minimal polynomial.
  Scalar(FieldPtr field, RationalPoly poly) : field_(std::move(field)) { assign_reduced(std::move(poly)); }

  static Scalar zero(FieldPtr f) { return Scalar(std::move(f), mpq_class(0)); }
  static Scalar one(FieldPtr f) { return Scalar(std::move(f), mpq_class(1)); }
  static Scalar generator(FieldPtr f) { return Scalar(std::move(f), RationalPoly{mpq_class(0), mpq_class(1)}); }

  const FieldPtr& field() const { return field_; }
  const std::vector<mpq_class>& coeffs() const { return c_; }

  bool is_zero() const {
    for (const auto& x : c_)
      if (sgn(x) != 0) return false;
    return true;
  }

  /// True when the value lies in Q (all theta-coefficients vanish).
  bool is_rational() const {
    for (std::size_t i = 1; i < c_.size(); ++i)
      if (sgn(c_[i]) != 0) return false;
    return true;
  }

  const mpq_class& rational_part() const { return c_[0]; }

  Scalar operator-() const {
    Scalar r = *this;
    for (auto& x : r.c_) x = -x;
    return r;
  }

  Scalar& operator+=(const Scalar& o) {
    check_field(o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
  }

  Scalar& operator-=(const Scalar& o) {
    check_field(o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
    return *this;
  }

  Scalar& operator*=(const Scalar& o) {
    check_field(o);
    if (c_.size() == 1) {
      c_[0] *= o.c_[0];
    } else {
      assign_reduced(multiply(c_, o.c_));
    }
    return *this;
  }

  Scalar& operator/=(const Scalar& o) { return *this *= o.inverse(); }

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }

  friend bool operator==(const Scalar& a, const Scalar& b) {
    return a.field_->same_as(*b.field_) && a.c_ == b.c_;
  }

  /// Multiplicative inverse via the extended Euclidean algorithm in Q[x].
  /// A nonconstant gcd with the minimal polynomial means a zero divisor.
  Scalar inverse() const {
    if (is_zero()) throw Error(ErrorKind::DivisionByZeroScalar, "division by zero");
    if (c_.size() == 1) return Scalar(field_, 1 / c_[0]);
    RationalPoly r0 = field_->minpoly(), r1 = c_;
    trim(r1);
    RationalPoly s0, s1{mpq_class(1)};
    while (!r1.empty()) {
      auto [q, r] = divmod(r0, r1);
      RationalPoly s = subtract(s0, multiply(q, s1));
      r0 = std::move(r1);
      r1 = std::move(r);
      s0 = std::move(s1);
      s1 = std::move(s);
    }
    if (degree(r0) != 0)
      throw Error(ErrorKind::DivisionByZeroScalar, "zero divisor (minimal polynomial is reducible)");
    const mpq_class lead = r0[0];
    for (auto& x : s0) x /= lead;
    return Scalar(field_, std::move(s0));
  }

  Scalar pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    Scalar base = *this, acc = one(field_);
    while (e > 0) {
      if (e & 1) acc *= base;
      base *= base;
      e >>= 1;
    }
    return acc;
  }

  /// Exact rational enclosure of width <= `width`.
  RationalInterval enclose(const mpq_class& width) const {
    if (is_rational()) return {c_[0], c_[0]};
    for (unsigned bits = 64;; bits += 32) {
      RationalInterval enc = quasifold::enclose(c_, field_->isolate(detail::dyadic(bits)));
      if (enc.width() <= width) return enc;
    }
  }

  /// Certified floating-point enclosure of width <= `precision` (up to one
  /// ulp of outward rounding at each end).
  Interval eval(double precision) const {
    if (!(precision > 0)) precision = std::numeric_limits<double>::min();
    const RationalInterval enc = enclose(mpq_class(precision) / 2);
    return {detail::round_down(enc.lo), detail::round_up(enc.hi)};
  }

  /// The double nearest to the midpoint of a width-`precision` enclosure
  /// (the nearest double to the value itself when it is rational).
  double to_double(double precision = 1e-12) const {
    if (!(precision > 0)) precision = std::numeric_limits<double>::min();
    const RationalInterval enc = enclose(mpq_class(precision));
    return detail::round_nearest((enc.lo + enc.hi) / 2);
  }

  /// Exact sign, certified by refining the enclosure until it excludes zero.
  int sign() const {
    if (is_zero()) return 0;
    if (is_rational()) return sgn(c_[0]);
    for (unsigned bits = 64; bits <= 8192; bits *= 2) {
      const RationalInterval enc = quasifold::enclose(c_, field_->isolate(detail::dyadic(bits)));
      if (sgn(enc.lo) > 0) return 1;
      if (sgn(enc.hi) < 0) return -1;
    }
    throw Error(ErrorKind::InternalInconsistency, "sign undecided: nonzero element evaluates to zero");
  }

  /// Canonical text form in the expression grammar, e.g. "-3/2 + 2*theta^2".
  std::string to_string() const {
    std::string out;
    for (std::size_t i = 0; i < c_.size(); ++i) {
      if (sgn(c_[i]) == 0) continue;
      mpq_class mag = abs(c_[i]);
      const bool neg = sgn(c_[i]) < 0;
      if (out.empty())
        out += neg ? "-" : "";
      else
        out += neg ? " - " : " + ";
      const bool unit = mag == 1;
      if (i == 0 || !unit) out += mag.get_str();
      if (i > 0) {
        if (!unit) out += "*";
        out += "theta";
        if (i > 1) out += "^" + std::to_string(i);
      }
    }
    return out.empty() ? "0" : out;
  }

  friend std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.to_string(); }

 private:
  void check_field(const Scalar& o) const {
    if (!field_->same_as(*o.field_)) throw Error(ErrorKind::MixedFields, "scalars belong to different fields");
  }

  void assign_reduced(RationalPoly poly) {
    const std::size_t g = field_->degree();
    trim(poly);
    if (static_cast<long>(poly.size()) > static_cast<long>(g)) poly = divmod(std::move(poly), field_->minpoly()).second;
    poly.resize(g, mpq_class(0));
    c_ = std::move(poly);
  }

  FieldPtr field_;
  std::vector<mpq_class> c_;
};

inline bool is_zero(const Scalar& s) { return s.is_zero(); }
inline Scalar zero_like(const Scalar& s) { return Scalar::zero(s.field()); }
inline Scalar one_like(const Scalar& s) { return Scalar::one(s.field()); }

/// Exact comparison helpers; the sign is certified, never tolerance-based.
inline int compare(const Scalar& a, const Scalar& b) { return (a - b).sign(); }

using ScalarVector = std::vector<Scalar>;

inline Scalar dot(const ScalarVector& a, const ScalarVector& b) {
  if (a.size() != b.size()) throw Error(ErrorKind::DimensionMismatch, "dot product of unequal lengths");
  Scalar acc = zero_like(a.at(0));
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

inline std::vector<double> to_doubles(const ScalarVector& v, double precision = 1e-12) {
  std::vector<double> out;
  out.reserve(v.size());
  for (const auto& s : v) out.push_back(s.to_double(precision));
  return out;
}

}  // namespace quasifold
