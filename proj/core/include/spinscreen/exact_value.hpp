#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <map>
#include <string>

#include "spinscreen/combinatorics.hpp"

namespace spinscreen {

/// An exact real of the form q·√r with q rational and r a square-free
/// positive integer.
///
/// Normal form: the radicand carries no square factor, every square has been
/// moved into q, and zero is stored as q = 0, r = 1. Two values are equal iff
/// their (q, r) pairs are equal, since distinct square-free radicands are
/// linearly independent over the rationals.
class ExactValue {
 public:
  ExactValue() = default;

  static ExactValue rational(const mpq_class& q);
  /// q · √(Π p^e) for a factorised radicand.
  static ExactValue from_prime_powers(const mpq_class& q, const PrimePowers& radicand);
  /// sign · √(Π num / Π den) for small positive integer factors.
  static ExactValue sqrt_of_ratio(int sign, std::initializer_list<long long> num,
                                  std::initializer_list<long long> den);

  const mpq_class& coefficient() const noexcept { return q_; }
  const mpz_class& radicand() const noexcept { return r_; }

  bool is_zero() const noexcept { return sgn(q_) == 0; }
  int sign() const noexcept { return sgn(q_); }
  /// q²·r, the exact square of the value.
  mpq_class squared() const;

  /// Correctly rounded to within one ulp.
  double to_double() const;
  /// Rounds into an MPFR variable at that variable's precision.
  void store(mpfr_ptr out) const;

  std::string to_string() const;

  ExactValue operator-() const;
  friend ExactValue operator*(const ExactValue& l, const ExactValue& r);
  ExactValue& operator*=(const mpq_class& k);

  friend bool operator==(const ExactValue& l, const ExactValue& r) { return l.q_ == r.q_ && l.r_ == r.r_; }

 private:
  mpq_class q_{0};
  mpz_class r_{1};
};

/// A finite sum Σ q_i·√r_i grouped by radicand. Exact zero test is possible
/// because the square-free radicands are independent.
class SurdSum {
 public:
  SurdSum& operator+=(const ExactValue& v);
  SurdSum& operator-=(const ExactValue& v);

  bool is_zero() const noexcept { return terms_.empty(); }
  /// True iff the sum is exactly the rational k.
  bool equals(const mpq_class& k) const;
  double to_double() const;
  std::size_t term_count() const noexcept { return terms_.size(); }

 private:
  struct Less {
    bool operator()(const mpz_class& a, const mpz_class& b) const { return cmp(a, b) < 0; }
  };
  std::map<mpz_class, mpq_class, Less> terms_;
};

}  // namespace spinscreen
