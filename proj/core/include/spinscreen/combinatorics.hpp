#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <memory>
#include <vector>

namespace spinscreen {

/// Prime factorisation with signed exponents, i.e. a positive rational.
using PrimePowers = std::map<std::uint32_t, int>;

/// Process-wide cache of exact factorials and primes. Grows monotonically;
/// concurrent readers share a lock and growth is serialised.
class FactorialCache {
 public:
  static FactorialCache& instance();

  mpz_class factorial(std::uint32_t n);
  /// Primes p <= n, ascending.
  std::vector<std::uint32_t> primes_up_to(std::uint32_t n);

  std::size_t cached_factorials() const;

 private:
  FactorialCache();
  ~FactorialCache();
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// Exponent of p in n! (Legendre).
int legendre_exponent(std::uint32_t n, std::uint32_t p) noexcept;

/// Adds sign * (prime factorisation of n!) into pp.
void accumulate_factorial(PrimePowers& pp, std::uint32_t n, int sign);
/// Adds sign * (prime factorisation of n) into pp, n > 0, by trial division.
void accumulate_integer(PrimePowers& pp, std::uint64_t n, int sign);

}  // namespace spinscreen
