#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "primesum/construction.hpp"

namespace primesum {

struct ExhaustiveOptions {
  std::uint64_t initial_upper_bound = 0;  // inclusive weight cap; 0 -> ascend until found
  std::uint64_t budget = 0;               // max enumeration nodes; 0 -> unlimited
  int workers = 0;                        // 0 -> all cores; 1 -> serial reference path
  std::size_t aux_target = 0;             // tuple: total length (0 -> derived bound); cylinder: layers
  std::int64_t element_limit = 0;         // restrict candidates to primes <= this; 0 -> unrestricted
  bool prune_prime_weight = true;  // skip weight classes whose total is forced prime but is not
  bool prune_residues = true;      // skip subsets whose mod-3 profile forces a sum divisible by 3
  bool prune_symmetry = true;      // enumerate one representative per reversal/rotation/transpose orbit
};

struct OptimalResult {
  bool found = false;
  Construction construction;  // first witness in canonical enumeration order
  std::uint64_t weight = 0;
  bool proven_optimal = false;  // sweep below (and including) the answer completed
  std::uint64_t nodes_explored = 0;
  double elapsed = 0;  // wall seconds; informational
};

// Minimal-weight construction of the kind at this order, by enumerating weight
// classes in ascending order; the first class containing a valid construction
// is the optimum.  Every pruning rule is validated-safe: disabling them via
// options changes node counts, never results.  Deterministic for a fixed
// configuration, including nodes_explored, at any worker count — unless the
// node budget cuts the run short, in which case found=false/proven=false
// report a best-effort partial sweep.
OptimalResult optimize(Kind kind, std::size_t order, const ExhaustiveOptions& options = {});

// True when exhaustive enumeration confirms no construction of this kind and
// order has weight < claimed_weight.  Runs the same sweep as optimize with the
// cap claimed_weight-1.  Throws InconclusiveError if the budget runs out first.
bool prove_weight_floor(Kind kind, std::size_t order, std::uint64_t claimed_weight,
                        const ExhaustiveOptions& options = {});

// Upper bound on the length any tuple of this order can reach: the sums'
// residues mod 3 eventually hit 0 (a multiple of 3 > 3) for every seed, and
// this simulates all seed residue patterns to find the longest run.  Returns
// nullopt when some residue pattern is still alive after `horizon` generated
// terms (orders = 1 mod 3 admit cycles that never force a multiple of 3).
std::optional<std::size_t> tuple_max_length_bound(std::size_t order, std::size_t horizon = 200);

struct CylinderScan {
  std::size_t order = 0;
  std::int64_t element_limit = 0;
  std::size_t max_layers = 0;      // deepest total layer count reached
  std::uint64_t first_layers = 0;  // first layers fully formed during the scan
  std::uint64_t nodes_explored = 0;
  std::vector<Construction> best;  // examples reaching max_layers (at most 8)
};

// Expands every first layer of odd primes <= element_limit (one representative
// per rotation/reflection orbit) and records the deepest cylinder.  layers_cap
// stops runaway expansions.
CylinderScan scan_cylinders(std::size_t order, std::int64_t element_limit,
                            std::size_t layers_cap = 64, int workers = 0);

}  // namespace primesum
