#include "spinscreen/combinatorics.hpp"

#include <deque>
#include <mutex>
#include <shared_mutex>

#include "spinscreen/error.hpp"

namespace spinscreen {

struct FactorialCache::Impl {
  mutable std::shared_mutex mutex;
  std::deque<mpz_class> factorials{mpz_class(1)};
  std::vector<std::uint32_t> primes;
  std::uint32_t sieved_to = 1;
};

FactorialCache::FactorialCache() : impl_(std::make_unique<Impl>()) {}
FactorialCache::~FactorialCache() = default;

FactorialCache& FactorialCache::instance() {
  static FactorialCache cache;
  return cache;
}

std::size_t FactorialCache::cached_factorials() const {
  std::shared_lock lock(impl_->mutex);
  return impl_->factorials.size();
}

mpz_class FactorialCache::factorial(std::uint32_t n) {
  {
    std::shared_lock lock(impl_->mutex);
    if (n < impl_->factorials.size()) return impl_->factorials[n];
  }
  std::unique_lock lock(impl_->mutex);
  auto& f = impl_->factorials;
  while (f.size() <= n) {
    mpz_class next = f.back() * static_cast<unsigned long>(f.size());
    f.push_back(std::move(next));
  }
  return f[n];
}

std::vector<std::uint32_t> FactorialCache::primes_up_to(std::uint32_t n) {
  {
    std::shared_lock lock(impl_->mutex);
    if (n <= impl_->sieved_to) {
      std::vector<std::uint32_t> out;
      for (auto p : impl_->primes) {
        if (p > n) break;
        out.push_back(p);
      }
      return out;
    }
  }
  std::unique_lock lock(impl_->mutex);
  if (n > impl_->sieved_to) {
    const std::uint32_t limit = std::max<std::uint32_t>(n, 2 * impl_->sieved_to);
    std::vector<bool> composite(limit + 1, false);
    std::vector<std::uint32_t> primes;
    for (std::uint32_t i = 2; i <= limit; ++i) {
      if (composite[i]) continue;
      primes.push_back(i);
      for (std::uint64_t k = static_cast<std::uint64_t>(i) * i; k <= limit; k += i) composite[k] = true;
    }
    impl_->primes = std::move(primes);
    impl_->sieved_to = limit;
  }
  std::vector<std::uint32_t> out;
  for (auto p : impl_->primes) {
    if (p > n) break;
    out.push_back(p);
  }
  return out;
}

int legendre_exponent(std::uint32_t n, std::uint32_t p) noexcept {
  int e = 0;
  for (std::uint64_t q = p; q <= n; q *= p) e += static_cast<int>(n / q);
  return e;
}

void accumulate_factorial(PrimePowers& pp, std::uint32_t n, int sign) {
  if (n < 2) return;
  for (auto p : FactorialCache::instance().primes_up_to(n)) {
    const int e = legendre_exponent(n, p);
    auto& slot = pp[p];
    slot += sign * e;
    if (slot == 0) pp.erase(p);
  }
}

void accumulate_integer(PrimePowers& pp, std::uint64_t n, int sign) {
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "cannot factor zero");
  auto add = [&](std::uint64_t p, int e) {
    auto& slot = pp[static_cast<std::uint32_t>(p)];
    slot += sign * e;
    if (slot == 0) pp.erase(static_cast<std::uint32_t>(p));
  };
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    if (e) add(p, e);
  }
  if (n > 1) {
    if (n > 0xffffffffULL) throw Error(ErrorCode::InvalidArgument, "prime factor exceeds 32 bits");
    add(n, 1);
  }
}

}  // namespace spinscreen
