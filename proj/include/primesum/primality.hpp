#pragma once

#include <cstdint>
#include <vector>

namespace primesum {

// Deterministic primality test for the full non-negative 64-bit signed range.
// Throws DomainOverflowError for negative input.
bool is_prime(std::int64_t x);

// All primes <= limit, ascending.
std::vector<std::int64_t> primes_up_to(std::int64_t limit);

// k-th odd prime, 1-based: 1 -> 3, 2 -> 5, 3 -> 7, ...
// Throws ConfigError for k < 1.
std::int64_t nth_odd_prime(std::size_t k);

// Reusable sieve of odd-prime flags; O(1) membership below its limit,
// falls back to is_prime above it.
class Sieve {
 public:
  explicit Sieve(std::int64_t limit = 1'000'000);
  bool contains(std::int64_t x) const;
  std::int64_t limit() const noexcept { return limit_; }

 private:
  std::int64_t limit_;
  std::vector<std::uint8_t> flags_;  // flags_[i] == 1 iff i is prime, i <= limit_
};

}  // namespace primesum
