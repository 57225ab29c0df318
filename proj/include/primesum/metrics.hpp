#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "primesum/construction.hpp"

namespace primesum {

// Sum of the base elements (the seed row/layer/grid; generated cells do not count).
std::uint64_t weight(const Construction& construction);

// Number of prime-sum checks the kind imposes at this order: windows for
// vectors/matrices, generated cells for stairs/pyramids/tuples/cylinders,
// adjacent pairs for goldbach squares.  `aux` is required for tuples (total
// length) and cylinders (total layers).  Matrix counts include anti-diagonal
// runs, the densest reading of the grid.
std::size_t sum_count(Kind kind, std::size_t order, std::size_t aux = 0);

// Exact rational with fixed-point rendering (round half up).
struct Ratio {
  std::uint64_t num = 0;
  std::uint64_t den = 1;
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  std::string to_decimal(int places = 2) const;
};

// Prime sums produced per base element: sum_count / element_count.
Ratio efficiency(Kind kind, std::size_t order, std::size_t aux = 0);
Ratio efficiency(const Construction& construction);

// Smallest conceivable weight of a vector of `order` distinct primes: the sum
// of the first `order` odd primes for even orders, and the smallest prime
// expressible as a sum of `order` distinct odd primes for odd orders (the full
// window forces a prime total).  Order 1 admits the even prime.
std::uint64_t vector_weight_lower_bound(std::size_t order);

struct EfficiencyRow {
  Construction construction;
  std::uint64_t weight = 0;
  std::size_t sums = 0;
  Ratio efficiency;
  bool valid = false;
};

// Catalog entry for orders whose optimum is out of enumeration reach: the best
// weight anyone has exhibited plus the provable floor.  Invariant:
// lower_bound <= best_known_weight.
struct BoundsRecord {
  Kind kind = Kind::Vector;
  std::size_t order = 0;
  std::uint64_t lower_bound = 0;
  std::uint64_t best_known_weight = 0;
  bool proven_optimal = false;
};

// JSONL readers for shipped bounds tables (one record per line, keys kind,
// order, lower_bound, best_known_weight, proven_optimal).  Throws ParseError
// with the offending line number on malformed input.
std::vector<BoundsRecord> read_bounds(std::istream& in);
std::vector<BoundsRecord> read_bounds_file(const std::string& path);

// Evaluates every construction and returns rows sorted by efficiency,
// descending; ties broken by kind then order.
std::vector<EfficiencyRow> efficiency_table(const std::vector<Construction>& constructions);

}  // namespace primesum
