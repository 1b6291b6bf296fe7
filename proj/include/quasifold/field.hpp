#pragma once

#include "quasifold/error.hpp"
#include "quasifold/rational_poly.hpp"

#include <memory>
#include <string>
#include <vector>

namespace quasifold {

namespace detail {

inline std::vector<mpz_class> positive_divisors(mpz_class n) {
  n = abs(n);
  std::vector<mpz_class> small, large;
  for (mpz_class i = 1; i * i <= n; ++i) {
    if (n % i != 0) continue;
    small.push_back(i);
    if (i * i != n) large.push_back(n / i);
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

/// Some rational root of p (degree >= 1), if any, by the rational root theorem.
inline bool has_rational_root(const RationalPoly& p) {
  const mpz_class scale = lcm_of_denominators(p);
  std::vector<mpz_class> a;
  for (const auto& c : p) a.push_back(mpz_class(c * scale));
  if (a.front() == 0) return true;
  for (const auto& num : positive_divisors(a.front())) {
    for (const auto& den : positive_divisors(a.back())) {
      for (int s : {1, -1}) {
        const mpq_class x(num * s, den);
        if (sign_at(p, x) == 0) return true;
      }
    }
  }
  return false;
}

}  // namespace detail

/// A real number field Q(theta), theta the unique root of `minpoly` inside a
/// rational isolating interval. Immutable after creation.
class Field {
 public:
  /// `minpoly` is given low degree first and must be monic.
  static std::shared_ptr<const Field> create(RationalPoly minpoly, mpq_class lo, mpq_class hi) {
    trim(minpoly);
    if (minpoly.size() < 2) throw Error(ErrorKind::NotMonic, "minimal polynomial must have degree >= 1");
    if (minpoly.back() != 1) throw Error(ErrorKind::NotMonic, "leading coefficient must be 1");
    if (lo > hi) std::swap(lo, hi);
    const int slo = sign_at(minpoly, lo);
    const int shi = sign_at(minpoly, hi);
    if (slo == 0 || shi == 0 || slo == shi)
      throw Error(ErrorKind::NoSignChange, "root interval does not bracket a root of the minimal polynomial");
    const std::size_t g = minpoly.size() - 1;
    if (g >= 2) {
      if (quasifold::degree(gcd(minpoly, derivative(minpoly))) > 0)
        throw Error(ErrorKind::Reducible, "minimal polynomial is not square-free");
      if (detail::has_rational_root(minpoly))
        throw Error(ErrorKind::Reducible, "minimal polynomial has a rational root");
      if (count_roots(minpoly, lo, hi) != 1)
        throw Error(ErrorKind::RootNotIsolated, "interval contains more than one root");
    }
    return std::shared_ptr<const Field>(new Field(std::move(minpoly), std::move(lo), std::move(hi)));
  }

  /// Q itself, presented as Q(theta) with theta = 0.
  static std::shared_ptr<const Field> rationals() {
    return create({mpq_class(0), mpq_class(1)}, mpq_class(-1), mpq_class(1));
  }

  std::size_t degree() const { return minpoly_.size() - 1; }
  const RationalPoly& minpoly() const { return minpoly_; }

  /// Interval around theta as handed in by the user.
  const RationalInterval& user_interval() const { return user_interval_; }

  /// Isolating interval of width <= `width` (a point interval when g = 1).
  RationalInterval isolate(const mpq_class& width) const {
    RationalInterval box = cached_;
    refine(box, width);
    return box;
  }

  /// Two fields are the same when they describe the same root of the same polynomial.
  bool same_as(const Field& other) const {
    if (this == &other) return true;
    if (minpoly_ != other.minpoly_) return false;
    return cached_.lo <= other.cached_.hi && other.cached_.lo <= cached_.hi;
  }

 private:
  Field(RationalPoly minpoly, mpq_class lo, mpq_class hi)
      : minpoly_(std::move(minpoly)), user_interval_{lo, hi}, cached_{lo, hi} {
    if (degree() == 1) {
      const mpq_class root = -minpoly_[0];
      cached_ = {root, root};
    } else {
      refine(cached_, mpq_class(1, mpz_class(1) << 64));
    }
  }

  void refine(RationalInterval& box, const mpq_class& width) const {
    const int slo = sign_at(minpoly_, box.lo);
    while (box.width() > width) {
      mpq_class mid = (box.lo + box.hi) / 2;
      const int sm = sign_at(minpoly_, mid);
      if (sm == 0) {
        box = {mid, mid};
        return;
      }
      if (sm == slo)
        box.lo = std::move(mid);
      else
        box.hi = std::move(mid);
    }
  }

  RationalPoly minpoly_;
  RationalInterval user_interval_;
  RationalInterval cached_;
};

using FieldPtr = std::shared_ptr<const Field>;

}  // namespace quasifold
