#include "primesum/primality.hpp"

#include <algorithm>
#include <cmath>

#include "primesum/errors.hpp"

namespace primesum {

namespace {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  base %= m;
  while (exp) {
    if (exp & 1) r = mulmod(r, base, m);
    base = mulmod(base, base, m);
    exp >>= 1;
  }
  return r;
}

// Deterministic Miller-Rabin for x < 2^64 with a fixed 7-witness base set.
bool miller_rabin(std::uint64_t x) {
  if (x < 2) return false;
  for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (x % p == 0) return x == p;
  }
  std::uint64_t d = x - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2ull, 325ull, 9375ull, 28178ull, 450775ull, 9780504ull, 1795265022ull}) {
    std::uint64_t v = powmod(a % x, d, x);
    if (v == 0 || v == 1 || v == x - 1) continue;
    bool witness = true;
    for (int i = 1; i < s; ++i) {
      v = mulmod(v, v, x);
      if (v == x - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

}  // namespace

bool is_prime(std::int64_t x) {
  if (x < 0) throw DomainOverflowError("is_prime: negative input " + std::to_string(x));
  return miller_rabin(static_cast<std::uint64_t>(x));
}

std::vector<std::int64_t> primes_up_to(std::int64_t limit) {
  std::vector<std::int64_t> out;
  if (limit < 2) return out;
  std::vector<std::uint8_t> composite(static_cast<std::size_t>(limit) + 1, 0);
  for (std::int64_t i = 2; i <= limit; ++i) {
    if (composite[static_cast<std::size_t>(i)]) continue;
    out.push_back(i);
    for (std::int64_t j = i * i; j <= limit; j += i) composite[static_cast<std::size_t>(j)] = 1;
  }
  return out;
}

std::int64_t nth_odd_prime(std::size_t k) {
  if (k < 1) throw ConfigError("nth_odd_prime: k must be >= 1");
  // p_{k+1} < (k+1)(ln(k+1) + ln ln(k+1)) for k+1 >= 6; pad generously below that.
  std::size_t want = k + 1;  // skip 2
  std::int64_t bound = 64;
  if (want >= 6) {
    double w = static_cast<double>(want);
    bound = static_cast<std::int64_t>(w * (std::log(w) + std::log(std::log(w)))) + 16;
  }
  for (;;) {
    auto ps = primes_up_to(bound);
    if (ps.size() >= want) return ps[want - 1];
    bound *= 2;
  }
}

Sieve::Sieve(std::int64_t limit) : limit_(std::max<std::int64_t>(limit, 2)) {
  flags_.assign(static_cast<std::size_t>(limit_) + 1, 1);
  flags_[0] = flags_[1] = 0;
  for (std::int64_t i = 2; i * i <= limit_; ++i) {
    if (!flags_[static_cast<std::size_t>(i)]) continue;
    for (std::int64_t j = i * i; j <= limit_; j += i) flags_[static_cast<std::size_t>(j)] = 0;
  }
}

bool Sieve::contains(std::int64_t x) const {
  if (x < 0) throw DomainOverflowError("Sieve::contains: negative input " + std::to_string(x));
  if (x <= limit_) return flags_[static_cast<std::size_t>(x)] != 0;
  return miller_rabin(static_cast<std::uint64_t>(x));
}

}  // namespace primesum
