#include <algorithm>
#include <cstdint>
#include <vector>

#include "doctest.h"
#include "oracle.hpp"
#include "primesum/construction.hpp"
#include "primesum/errors.hpp"
#include "primesum/exhaustive.hpp"
#include "primesum/metrics.hpp"
#include "primesum/search.hpp"

using namespace primesum;

TEST_CASE("optimize finds proven minimal weights for small orders") {
  struct Case {
    Kind kind;
    std::size_t order;
    std::uint64_t expected;
  };
  const Case cases[] = {
      {Kind::Vector, 1, 2},   {Kind::Vector, 2, 8},        {Kind::Vector, 5, 43},
      {Kind::Vector, 6, 56},  {Kind::CyclicVector, 5, 53}, {Kind::Stair, 5, 39},
      {Kind::Stair, 3, 19},   {Kind::Pyramid, 3, 127},     {Kind::Matrix, 3, 127},
      {Kind::GoldbachSquare, 2, 18},
  };
  for (const auto& c : cases) {
    CAPTURE(kind_name(c.kind));
    CAPTURE(c.order);
    auto r = optimize(c.kind, c.order);
    REQUIRE(r.found);
    CHECK(r.weight == c.expected);
    CHECK(r.proven_optimal);
    CHECK(r.nodes_explored >= 1);
    CHECK(verify(r.construction).valid);
    CHECK(weight(r.construction) == c.expected);
  }
}

TEST_CASE("optimize matches the best grids at order four") {
  auto matrix = optimize(Kind::Matrix, 4);
  REQUIRE(matrix.found);
  CHECK(matrix.weight == 438);
  CHECK(matrix.proven_optimal);
  CHECK(verify(matrix.construction).valid);

  auto pyramid = optimize(Kind::Pyramid, 4);
  REQUIRE(pyramid.found);
  CHECK(pyramid.weight == 438);
  CHECK(pyramid.proven_optimal);
  CHECK(verify(pyramid.construction).valid);
}

TEST_CASE("optimize derives the tuple target length when omitted") {
  auto r = optimize(Kind::Tuple, 3);
  REQUIRE(r.found);
  CHECK(r.weight == 23);
  CHECK(r.construction.elements == std::vector<std::int64_t>{3, 13, 7});
  CHECK(r.construction.aux == 7);  // the realized full length
  CHECK(verify(r.construction).valid);
}

TEST_CASE("optimize handles cylinders with an explicit layer target") {
  ExhaustiveOptions opt;
  opt.aux_target = 2;
  auto r = optimize(Kind::Cylinder, 4, opt);
  REQUIRE(r.found);
  CHECK(r.weight == 16);
  CHECK(r.construction.elements == std::vector<std::int64_t>{3, 3, 5, 5});
  CHECK(r.construction.aux >= 2);
  CHECK(verify(r.construction).valid);
  CHECK_THROWS_AS(optimize(Kind::Cylinder, 4), ConfigError);  // target required
}

TEST_CASE("optimize validates its inputs") {
  CHECK_THROWS_AS(optimize(Kind::Vector, 0), ConfigError);
  CHECK_THROWS_AS(optimize(Kind::Tuple, 4), ConfigError);   // even order
  CHECK_THROWS_AS(optimize(Kind::Tuple, 7), ConfigError);   // no finite bound, needs aux_target
  CHECK_THROWS_AS(optimize(Kind::Matrix, 9), ConfigError);  // 81 slots exceed enumeration reach
  CHECK_THROWS_AS(optimize(Kind::GoldbachSquare, 1), ShapeError);
}

TEST_CASE("an upper bound below the optimum ends with a clean negative") {
  ExhaustiveOptions opt;
  opt.initial_upper_bound = 42;
  auto r = optimize(Kind::Vector, 5, opt);
  CHECK_FALSE(r.found);
  CHECK(r.proven_optimal);  // the whole range 43..42 is vacuously swept
  opt.initial_upper_bound = 52;
  auto rc = optimize(Kind::CyclicVector, 5, opt);
  CHECK_FALSE(rc.found);
  CHECK(rc.proven_optimal);  // classes up to 52 enumerate empty
  CHECK(rc.nodes_explored >= 1);
}

TEST_CASE("an element limit restricts the candidate pool") {
  ExhaustiveOptions opt;
  opt.element_limit = 13;
  opt.initial_upper_bound = 60;
  auto r = optimize(Kind::Vector, 5, opt);
  CHECK_FALSE(r.found);  // 3+5+7+11+13 = 39 is the only subset and spans no prime class
  CHECK(r.proven_optimal);

  opt.element_limit = 17;
  opt.initial_upper_bound = 0;
  auto ok = optimize(Kind::Vector, 5, opt);
  REQUIRE(ok.found);
  CHECK(ok.weight == 43);
  for (std::int64_t e : ok.construction.elements) CHECK(e <= 17);
}

TEST_CASE("a tiny node budget aborts without claiming proof") {
  ExhaustiveOptions opt;
  opt.budget = 10;
  auto r = optimize(Kind::Vector, 7, opt);
  CHECK_FALSE(r.found);
  CHECK_FALSE(r.proven_optimal);
}

TEST_CASE("pruning rules change node counts but never results") {
  auto baseline = optimize(Kind::Vector, 6);
  REQUIRE(baseline.found);
  for (int off = 0; off < 3; ++off) {
    CAPTURE(off);
    ExhaustiveOptions opt;
    opt.prune_prime_weight = off != 0;
    opt.prune_residues = off != 1;
    opt.prune_symmetry = off != 2;
    auto r = optimize(Kind::Vector, 6, opt);
    REQUIRE(r.found);
    CHECK(r.weight == baseline.weight);
    CHECK(r.proven_optimal);
    CHECK(verify(r.construction).valid);
  }
  ExhaustiveOptions none;
  none.prune_prime_weight = false;
  none.prune_residues = false;
  none.prune_symmetry = false;
  auto plain = optimize(Kind::CyclicVector, 5, none);
  REQUIRE(plain.found);
  CHECK(plain.weight == 53);
  auto pruned = optimize(Kind::CyclicVector, 5);
  CHECK(pruned.weight == 53);
  CHECK(pruned.nodes_explored <= plain.nodes_explored);
}

TEST_CASE("worker count never changes results or node counts") {
  struct Case {
    Kind kind;
    std::size_t order;
    std::size_t aux;
  };
  const Case cases[] = {
      {Kind::Vector, 6, 0}, {Kind::Stair, 5, 0}, {Kind::Tuple, 3, 0}, {Kind::Cylinder, 4, 2}};
  for (const auto& c : cases) {
    CAPTURE(kind_name(c.kind));
    ExhaustiveOptions serial;
    serial.workers = 1;
    serial.aux_target = c.aux;
    ExhaustiveOptions parallel;
    parallel.workers = 4;
    parallel.aux_target = c.aux;
    auto a = optimize(c.kind, c.order, serial);
    auto b = optimize(c.kind, c.order, parallel);
    CHECK(a.found == b.found);
    CHECK(a.weight == b.weight);
    CHECK(a.construction == b.construction);
    CHECK(a.nodes_explored == b.nodes_explored);
  }
}

TEST_CASE("repeated runs are fully deterministic") {
  auto a = optimize(Kind::Matrix, 3);
  auto b = optimize(Kind::Matrix, 3);
  CHECK(a.construction == b.construction);
  CHECK(a.nodes_explored == b.nodes_explored);
  CHECK(a.weight == b.weight);
}

TEST_CASE("prove_weight_floor confirms honest floors and rejects false ones") {
  CHECK(prove_weight_floor(Kind::CyclicVector, 5, 53));   // sweeps 43..52 empty
  CHECK_FALSE(prove_weight_floor(Kind::CyclicVector, 5, 54));  // 53 exists below 54
  CHECK(prove_weight_floor(Kind::Tuple, 3, 23));          // classes 15..22 all fail
  CHECK_FALSE(prove_weight_floor(Kind::Tuple, 3, 24));
  CHECK(prove_weight_floor(Kind::Vector, 5, 43));         // trivially: 43 is the analytic floor
  CHECK(prove_weight_floor(Kind::Vector, 5, 0));          // nothing to sweep
}

TEST_CASE("prove_weight_floor raises when the budget runs out first") {
  ExhaustiveOptions opt;
  opt.budget = 5;
  CHECK_THROWS_AS(prove_weight_floor(Kind::CyclicVector, 7, 1000, opt), InconclusiveError);
}

TEST_CASE("tuple length bounds from residue analysis") {
  CHECK(tuple_max_length_bound(3) == 7);
  CHECK(tuple_max_length_bound(5) == 11);
  CHECK(tuple_max_length_bound(9) == 19);
  CHECK(tuple_max_length_bound(11) == 23);
  CHECK_FALSE(tuple_max_length_bound(7).has_value());   // order 1 mod 3: no forced stop
  CHECK_FALSE(tuple_max_length_bound(13).has_value());
  CHECK_THROWS_AS(tuple_max_length_bound(0), ConfigError);
  CHECK_THROWS_AS(tuple_max_length_bound(4), ConfigError);  // tuples have odd order
}

TEST_CASE("order-3 cylinders never pass two layers") {
  // a 3-ring's second layer repeats the full sum s three times, so the third
  // layer would need 3s to be prime
  auto scan = scan_cylinders(3, 30);
  CHECK(scan.max_layers == 2);
  CHECK(scan.first_layers >= 1);
  CHECK(scan.nodes_explored >= 1);
  REQUIRE(!scan.best.empty());
  for (const auto& c : scan.best) {
    CAPTURE(c.elements[0]);
    CHECK(c.order == 3);
    CHECK(c.aux == 2);
    CHECK(verify(c).valid);
    for (std::int64_t e : c.elements) {
      CHECK(e <= 30);
      CHECK(oracle::is_prime(e));
    }
    // canonical form: the smallest element leads
    CHECK(c.elements[0] == *std::min_element(c.elements.begin(), c.elements.end()));
  }
}

TEST_CASE("order-1 cylinders stop at their first layer") {
  auto scan = scan_cylinders(1, 20);
  CHECK(scan.max_layers == 1);
  CHECK(scan.first_layers == 7);  // 3, 5, 7, 11, 13, 17, 19
  CHECK(scan.best.size() == 7);
  for (const auto& c : scan.best) CHECK(c.aux == 1);
}

TEST_CASE("cylinder scans validate their inputs") {
  CHECK_THROWS_AS(scan_cylinders(0, 100), ConfigError);
  CHECK_THROWS_AS(scan_cylinders(3, 2), ConfigError);
}

TEST_CASE("cylinder scans are worker-invariant") {
  auto serial = scan_cylinders(3, 40, 64, 1);
  auto parallel = scan_cylinders(3, 40, 64, 4);
  CHECK(serial.max_layers == parallel.max_layers);
  CHECK(serial.first_layers == parallel.first_layers);
  CHECK(serial.nodes_explored == parallel.nodes_explored);
  REQUIRE(serial.best.size() == parallel.best.size());
  for (std::size_t i = 0; i < serial.best.size(); ++i) {
    CHECK(serial.best[i] == parallel.best[i]);
  }
}

TEST_CASE("exhaustive optima agree with randomized search floors") {
  // hill climbing can only ever match or exceed the proven optimum
  SearchConfig cfg;
  cfg.kind = Kind::Vector;
  cfg.order = 6;
  cfg.rng_seed = 17;
  cfg.prime_pool_limit = 60;
  cfg.max_iterations = 2000;
  cfg.max_restarts = 40;
  auto climbed = hill_climb(cfg);
  auto proven = optimize(Kind::Vector, 6);
  REQUIRE(climbed.success);
  REQUIRE(proven.found);
  CHECK(weight(climbed.best) >= proven.weight);
}
