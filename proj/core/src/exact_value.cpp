#include "spinscreen/exact_value.hpp"

#include <sstream>

#include "mpfr_scratch.hpp"
#include "spinscreen/error.hpp"

namespace spinscreen {

namespace {

using detail::MpfrScratch;

void pow_into(mpz_class& acc, std::uint32_t p, int e) {
  mpz_class t;
  mpz_ui_pow_ui(t.get_mpz_t(), p, static_cast<unsigned long>(e));
  acc *= t;
}

}  // namespace

ExactValue ExactValue::rational(const mpq_class& q) {
  ExactValue v;
  v.q_ = q;
  v.q_.canonicalize();
  return v;
}

ExactValue ExactValue::from_prime_powers(const mpq_class& q, const PrimePowers& radicand) {
  ExactValue v;
  if (sgn(q) == 0) return v;
  mpz_class num = 1, den = 1, rad = 1;
  for (const auto& [p, e] : radicand) {
    // p^e = p^(2k) · p^(e - 2k) with e - 2k in {0, 1}
    const int k = (e >= 0) ? e / 2 : -((-e + 1) / 2);
    if (e - 2 * k == 1) rad *= p;
    if (k > 0) pow_into(num, p, k);
    if (k < 0) pow_into(den, p, -k);
  }
  v.q_ = q * mpq_class(num, den);
  v.q_.canonicalize();
  v.r_ = rad;
  return v;
}

ExactValue ExactValue::sqrt_of_ratio(int sign, std::initializer_list<long long> num,
                                     std::initializer_list<long long> den) {
  if (sign == 0) return {};
  PrimePowers pp;
  for (auto n : num) {
    if (n == 0) return {};
    if (n < 0) throw Error(ErrorCode::NegativeRadicand, "negative factor under square root");
    accumulate_integer(pp, static_cast<std::uint64_t>(n), +1);
  }
  for (auto d : den) {
    if (d <= 0) throw Error(ErrorCode::NegativeRadicand, "nonpositive denominator under square root");
    accumulate_integer(pp, static_cast<std::uint64_t>(d), -1);
  }
  return from_prime_powers(mpq_class(sign > 0 ? 1 : -1), pp);
}

mpq_class ExactValue::squared() const {
  mpq_class s = q_ * q_ * mpq_class(r_);
  s.canonicalize();
  return s;
}

void ExactValue::store(mpfr_ptr out) const {
  if (is_zero()) {
    mpfr_set_zero(out, +1);
    return;
  }
  const auto prec = mpfr_get_prec(out) + 32;
  MpfrScratch root(prec), coef(prec);
  mpfr_set_z(root.get(), r_.get_mpz_t(), MPFR_RNDN);
  mpfr_sqrt(root.get(), root.get(), MPFR_RNDN);
  mpfr_set_q(coef.get(), q_.get_mpq_t(), MPFR_RNDN);
  mpfr_mul(out, coef.get(), root.get(), MPFR_RNDN);
}

double ExactValue::to_double() const {
  if (is_zero()) return 0.0;
  MpfrScratch v(128);
  store(v.get());
  return mpfr_get_d(v.get(), MPFR_RNDN);
}

std::string ExactValue::to_string() const {
  std::ostringstream os;
  os << q_.get_str();
  if (r_ != 1) os << "*sqrt(" << r_.get_str() << ')';
  return os.str();
}

ExactValue ExactValue::operator-() const {
  ExactValue v = *this;
  v.q_ = -v.q_;
  return v;
}

ExactValue operator*(const ExactValue& l, const ExactValue& r) {
  if (l.is_zero() || r.is_zero()) return {};
  ExactValue v;
  // √r1·√r2 = g·√(r1 r2 / g²) with g = gcd(r1, r2); the quotient stays square-free.
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), l.r_.get_mpz_t(), r.r_.get_mpz_t());
  v.r_ = (l.r_ / g) * (r.r_ / g);
  v.q_ = l.q_ * r.q_ * mpq_class(g);
  v.q_.canonicalize();
  return v;
}

ExactValue& ExactValue::operator*=(const mpq_class& k) {
  q_ *= k;
  q_.canonicalize();
  if (sgn(q_) == 0) r_ = 1;
  return *this;
}

SurdSum& SurdSum::operator+=(const ExactValue& v) {
  if (v.is_zero()) return *this;
  auto [it, inserted] = terms_.try_emplace(v.radicand(), v.coefficient());
  if (!inserted) {
    it->second += v.coefficient();
    it->second.canonicalize();
    if (sgn(it->second) == 0) terms_.erase(it);
  }
  return *this;
}

SurdSum& SurdSum::operator-=(const ExactValue& v) { return *this += -v; }

bool SurdSum::equals(const mpq_class& k) const {
  if (sgn(k) == 0) return terms_.empty();
  return terms_.size() == 1 && terms_.begin()->first == 1 && terms_.begin()->second == k;
}

double SurdSum::to_double() const {
  constexpr mpfr_prec_t prec = 256;
  MpfrScratch acc(prec), term(prec);
  mpfr_set_zero(acc.get(), +1);
  for (const auto& [r, q] : terms_) {
    MpfrScratch root(prec + 32);
    mpfr_set_z(root.get(), r.get_mpz_t(), MPFR_RNDN);
    mpfr_sqrt(root.get(), root.get(), MPFR_RNDN);
    mpfr_set_q(term.get(), q.get_mpq_t(), MPFR_RNDN);
    mpfr_mul(term.get(), term.get(), root.get(), MPFR_RNDN);
    mpfr_add(acc.get(), acc.get(), term.get(), MPFR_RNDN);
  }
  return mpfr_get_d(acc.get(), MPFR_RNDN);
}

}  // namespace spinscreen
