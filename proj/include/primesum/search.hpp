#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "primesum/construction.hpp"

namespace primesum {

// Defect count: 0 exactly when the construction satisfies every rule of its
// kind.  Counts composite window sums / generated cells, base-element rule
// breaches, and for goldbach squares the missing plus surplus target
// coverings.  For tuples and cylinders the construction's aux is the target
// length / layer count and the score is the shortfall against it.
std::uint64_t score(const Construction& construction);

struct MutationWeights {
  double swap = 0.5;
  double replace = 0.5;
};

struct SearchConfig {
  Kind kind = Kind::Vector;
  std::size_t order = 0;
  std::size_t aux = 0;               // tuples: target length; cylinders: target layers
  std::uint64_t rng_seed = 0;        // whole-run seed; restart r derives its own stream
  std::int64_t prime_pool_limit = 0; // 0 -> default_pool_limit(kind, order)
  std::uint64_t max_iterations = 20000;  // per restart
  std::uint64_t max_restarts = 0;    // 0 -> restart until success or time limit
  MutationWeights mutation_weights;
  std::uint64_t target_score = 0;    // stop a restart once score <= this
  int workers = 0;                   // 0 -> all cores; 1 -> serial reference path
  double time_limit = 0;             // wall seconds; 0 -> none
  // Called in restart order each time a restart beats every earlier one
  // (lower score, or same score at lower weight), the winning restart
  // included.  Runs on the coordinating thread, so it may write to streams.
  std::function<void(std::uint64_t restart, std::uint64_t score,
                     const std::vector<std::int64_t>& elements)>
      on_improvement;
};

struct SearchStats {
  std::uint64_t iterations = 0;  // summed over restarts up to the successful one
  std::uint64_t restarts = 0;    // restarts started (successful one included)
  double elapsed = 0;            // wall seconds; informational, not reproducible
};

struct SearchResult {
  bool success = false;
  Construction best;
  std::uint64_t score = UINT64_MAX;
  SearchStats stats;
};

// Candidate primes drawn at or below this bound when the config leaves
// prime_pool_limit at 0.  Scales with the kind's base element count.
std::int64_t default_pool_limit(Kind kind, std::size_t order);

// Randomized hill climbing with restarts: from a random state, apply one
// random mutation per iteration and keep it only when the score strictly
// improves; restart from fresh when the iteration budget runs out.  With the
// same seed the outcome is byte-identical across runs and worker counts, as
// long as the run terminates by success or restart budget (a wall-clock stop
// cuts restarts nondeterministically).
SearchResult hill_climb(const SearchConfig& config);

}  // namespace primesum
