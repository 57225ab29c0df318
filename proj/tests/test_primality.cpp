#include <cstdint>
#include <vector>

#include "doctest.h"
#include "oracle.hpp"
#include "primesum/errors.hpp"
#include "primesum/primality.hpp"

using namespace primesum;

TEST_CASE("is_prime on known values") {
  CHECK(is_prime(2));
  CHECK(is_prime(3));
  CHECK(is_prime(19));
  CHECK(is_prime(148306273));
  CHECK_FALSE(is_prime(0));
  CHECK_FALSE(is_prime(1));
  CHECK_FALSE(is_prime(15));
  CHECK_FALSE(is_prime(21));
  CHECK_FALSE(is_prime(1ll << 40));
}

TEST_CASE("is_prime rejects negatives") {
  CHECK_THROWS_AS(is_prime(-1), DomainOverflowError);
  CHECK_THROWS_AS(is_prime(-97), DomainOverflowError);
}

TEST_CASE("is_prime agrees with trial division up to 20000") {
  for (std::int64_t x = 0; x <= 20000; ++x) {
    CAPTURE(x);
    REQUIRE(is_prime(x) == oracle::is_prime(x));
  }
}

TEST_CASE("is_prime near 64-bit scale") {
  // 2^61 - 1 is a Mersenne prime; its neighbours are not.
  CHECK(is_prime((1ll << 61) - 1));
  CHECK_FALSE(is_prime((1ll << 61) - 3));
  CHECK(is_prime(9223372036854775783ll));  // largest prime below 2^63
}

TEST_CASE("primes_up_to small limits") {
  CHECK(primes_up_to(10) == std::vector<std::int64_t>{2, 3, 5, 7});
  CHECK(primes_up_to(30) == std::vector<std::int64_t>{2, 3, 5, 7, 11, 13, 17, 19, 23, 29});
  CHECK(primes_up_to(1) == std::vector<std::int64_t>{});
  CHECK(primes_up_to(2) == std::vector<std::int64_t>{2});
}

TEST_CASE("primes_up_to agrees with trial division") {
  CHECK(primes_up_to(5000) == oracle::primes_up_to(5000));
}

TEST_CASE("odd members of primes_up_to(60) sum to 438") {
  std::int64_t total = 0;
  for (std::int64_t p : primes_up_to(60)) {
    if (p != 2) total += p;
  }
  CHECK(total == 438);
}

TEST_CASE("nth_odd_prime") {
  CHECK(nth_odd_prime(1) == 3);
  CHECK(nth_odd_prime(2) == 5);
  CHECK(nth_odd_prime(16) == 59);  // frozen from the enumeration oracle
  for (std::size_t k = 1; k <= 100; ++k) {
    CAPTURE(k);
    REQUIRE(nth_odd_prime(k) == oracle::nth_odd_prime(k));
  }
  CHECK_THROWS_AS(nth_odd_prime(0), ConfigError);
}

TEST_CASE("Sieve membership matches is_prime across its limit") {
  Sieve sieve(1000);
  CHECK(sieve.limit() == 1000);
  for (std::int64_t x = 0; x <= 1000; ++x) {
    CAPTURE(x);
    REQUIRE(sieve.contains(x) == oracle::is_prime(x));
  }
  // beyond the limit it falls back to the full test
  CHECK(sieve.contains(1009));
  CHECK_FALSE(sieve.contains(1007));  // 19 * 53
  CHECK(sieve.contains(148306273));
}
