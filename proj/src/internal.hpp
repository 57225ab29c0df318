#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "primesum/construction.hpp"
#include "primesum/errors.hpp"
#include "primesum/primality.hpp"

namespace primesum::detail {

inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r = 0;
  if (__builtin_add_overflow(a, b, &r)) throw DomainOverflowError("sum exceeds 64-bit range");
  return r;
}

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r = 0;
  if (__builtin_mul_overflow(a, b, &r)) throw DomainOverflowError("product exceeds 64-bit range");
  return r;
}

// Checks primality/oddness/distinctness rules on the base elements and appends
// human-readable violations.
inline void check_base_elements(const std::vector<std::int64_t>& elements, bool allow_two,
                                bool distinct, VerificationReport& report) {
  std::set<std::int64_t> seen;
  for (std::size_t i = 0; i < elements.size(); ++i) {
    std::int64_t e = elements[i];
    if (!is_prime(e)) {
      report.violations.push_back("element " + std::to_string(e) + " at index " +
                                  std::to_string(i) + " is not prime");
    } else if (!allow_two && e == 2) {
      report.violations.push_back("element 2 at index " + std::to_string(i) +
                                  " is not an odd prime");
    }
    if (distinct && !seen.insert(e).second) {
      report.violations.push_back("element " + std::to_string(e) + " at index " +
                                  std::to_string(i) + " repeats an earlier element");
    }
  }
}

}  // namespace primesum::detail
