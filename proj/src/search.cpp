#include "primesum/search.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstring>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "primesum/errors.hpp"
#include "primesum/metrics.hpp"
#include "primesum/primality.hpp"
#include "internal.hpp"

namespace primesum {

using detail::checked_add;

namespace {

// splitmix64: tiny, seedable, identical across toolchains
struct Rng {
  std::uint64_t s;
  std::uint64_t next() {
    s += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = s;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }
  std::uint64_t below(std::uint64_t n) { return next() % n; }
};

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t restart) {
  Rng g{seed ^ (0xA0761D6478BD642Full * (restart + 1))};
  return g.next();
}

bool fast_prime(std::int64_t x) {
  static thread_local Sieve sieve(1 << 20);
  return sieve.contains(x);
}

struct Scorer {
  Kind kind;
  std::size_t order;
  std::size_t aux;
  // scratch buffers reused across calls
  std::vector<std::int64_t> work, work2;
  std::vector<std::uint32_t> coverage;

  std::uint64_t base_defects(const std::vector<std::int64_t>& e) const {
    const bool allow_two = kind == Kind::Vector || kind == Kind::CyclicVector;
    const bool distinct = requires_distinct(kind);
    std::uint64_t d = 0;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (!fast_prime(e[i]) || (!allow_two && e[i] == 2)) ++d;
      if (distinct) {
        for (std::size_t j = 0; j < i; ++j) {
          if (e[j] == e[i]) {
            ++d;
            break;
          }
        }
      }
    }
    return d;
  }

  std::uint64_t operator()(const std::vector<std::int64_t>& e) {
    std::uint64_t d = base_defects(e);
    const std::size_t n = order;
    switch (kind) {
      case Kind::Vector:
        for (std::size_t len = 3; len <= n; len += 2) {
          for (std::size_t i = 0; i + len <= n; ++i) {
            std::int64_t s = 0;
            for (std::size_t k = 0; k < len; ++k) s = checked_add(s, e[i + k]);
            if (!fast_prime(s)) ++d;
          }
        }
        break;
      case Kind::CyclicVector: {
        for (std::size_t len = 3; len < n; len += 2) {
          for (std::size_t i = 0; i < n; ++i) {
            std::int64_t s = 0;
            for (std::size_t k = 0; k < len; ++k) s = checked_add(s, e[(i + k) % n]);
            if (!fast_prime(s)) ++d;
          }
        }
        if (n % 2 == 1 && n >= 3) {
          std::int64_t s = 0;
          for (std::int64_t v : e) s = checked_add(s, v);
          if (!fast_prime(s)) ++d;
        }
        break;
      }
      case Kind::Tuple: {
        if (aux <= n) break;
        work.assign(e.begin(), e.end());
        while (work.size() < aux) {
          std::int64_t s = 0;
          for (std::size_t k = work.size() - n; k < work.size(); ++k) s = checked_add(s, work[k]);
          if (!fast_prime(s) || std::find(work.begin(), work.end(), s) != work.end()) break;
          work.push_back(s);
        }
        d += aux - work.size();
        break;
      }
      case Kind::Stair: {
        work.assign(e.begin(), e.end());
        const std::size_t rows = (n + 1) / 2;
        for (std::size_t r = 1; r < rows; ++r) {
          work2.clear();
          for (std::size_t c = 0; c + 2 < work.size(); ++c) {
            std::int64_t s = checked_add(checked_add(work[c], work[c + 1]), work[c + 2]);
            if (!fast_prime(s)) ++d;
            work2.push_back(s);
          }
          work.swap(work2);
        }
        break;
      }
      case Kind::Pyramid: {
        work.assign(e.begin(), e.end());
        std::size_t width = n;
        const std::size_t levels = (n + 1) / 2;
        for (std::size_t k = 1; k < levels; ++k) {
          const std::size_t w = width - 2;
          work2.assign(w * w, 0);
          for (std::size_t r = 0; r < w; ++r) {
            for (std::size_t c = 0; c < w; ++c) {
              std::int64_t s = 0;
              for (std::size_t dr = 0; dr < 3; ++dr) {
                for (std::size_t dc = 0; dc < 3; ++dc) {
                  s = checked_add(s, work[(r + dr) * width + (c + dc)]);
                }
              }
              if (!fast_prime(s)) ++d;
              work2[r * w + c] = s;
            }
          }
          work.swap(work2);
          width = w;
        }
        break;
      }
      case Kind::Cylinder: {
        work.assign(e.begin(), e.end());
        for (std::size_t layer = 1; layer < aux; ++layer) {
          work2.assign(n, 0);
          for (std::size_t c = 0; c < n; ++c) {
            work2[c] =
                checked_add(checked_add(work[(c + n - 1) % n], work[c]), work[(c + 1) % n]);
            if (!fast_prime(work2[c])) ++d;
          }
          work.swap(work2);
        }
        break;
      }
      case Kind::GoldbachSquare: {
        const std::size_t targets = 2 * n * (n - 1);
        coverage.assign(targets, 0);
        std::uint64_t out_of_range = 0;
        auto add_pair = [&](std::int64_t a, std::int64_t b) {
          std::int64_t s = a + b;
          if (s < 6 || s % 2 != 0 || static_cast<std::size_t>((s - 6) / 2) >= targets) {
            ++out_of_range;
          } else {
            ++coverage[static_cast<std::size_t>((s - 6) / 2)];
          }
        };
        for (std::size_t r = 0; r < n; ++r) {
          for (std::size_t c = 0; c + 1 < n; ++c) add_pair(e[r * n + c], e[r * n + c + 1]);
        }
        for (std::size_t r = 0; r + 1 < n; ++r) {
          for (std::size_t c = 0; c < n; ++c) add_pair(e[r * n + c], e[(r + 1) * n + c]);
        }
        for (std::uint32_t cnt : coverage) {
          if (cnt == 0) {
            ++d;  // missing target
          } else {
            d += cnt - 1;  // surplus coverings
          }
        }
        d += out_of_range;
        break;
      }
      case Kind::Matrix: {
        const int ni = static_cast<int>(n);
        constexpr int kDirs[3][2] = {{0, 1}, {1, 0}, {1, 1}};
        for (auto [dr, dc] : kDirs) {
          for (int len = 3; len <= ni; len += 2) {
            for (int r = 0; r < ni; ++r) {
              for (int c = 0; c < ni; ++c) {
                int er = r + (len - 1) * dr, ec = c + (len - 1) * dc;
                if (er >= ni || ec >= ni) continue;
                std::int64_t s = 0;
                for (int k = 0; k < len; ++k) s = checked_add(s, e[(r + k * dr) * ni + c + k * dc]);
                if (!fast_prime(s)) ++d;
              }
            }
          }
        }
        break;
      }
    }
    return d;
  }
};

struct RestartOutcome {
  bool success = false;
  std::uint64_t score = UINT64_MAX;
  std::uint64_t weight = UINT64_MAX;
  std::uint64_t iterations = 0;
  std::vector<std::int64_t> elements;
};

class Climber {
 public:
  Climber(const SearchConfig& cfg, std::vector<std::int64_t> pool)
      : cfg_(cfg), pool_(std::move(pool)) {
    base_count_ = element_count(cfg.kind, cfg.order);
    double total = cfg.mutation_weights.swap + cfg.mutation_weights.replace;
    if (total <= 0) throw ConfigError("mutation weights must not both be zero");
    swap_cut_ = static_cast<std::uint64_t>(cfg.mutation_weights.swap / total * 8192.0);
  }

  RestartOutcome run_restart(std::uint64_t restart_index) const {
    Rng g{mix_seed(cfg_.rng_seed, restart_index)};
    Scorer scorer{cfg_.kind, cfg_.order, cfg_.aux, {}, {}, {}};

    std::vector<std::int64_t> state = initial_state(g);
    std::uint64_t best = scorer(state);
    std::vector<std::int64_t> candidate;
    RestartOutcome out;
    for (std::uint64_t it = 0; it < cfg_.max_iterations; ++it) {
      if (best <= cfg_.target_score) {
        out.iterations = it;
        out.success = true;
        break;
      }
      candidate = state;
      mutate(candidate, g);
      std::uint64_t s = scorer(candidate);
      if (s < best) {
        best = s;
        state.swap(candidate);
      }
    }
    if (!out.success) {
      out.iterations = cfg_.max_iterations;
      out.success = best <= cfg_.target_score;
    }
    out.score = best;
    out.weight = 0;
    for (std::int64_t e : state) out.weight += static_cast<std::uint64_t>(e);
    out.elements = std::move(state);
    return out;
  }

 private:
  std::vector<std::int64_t> initial_state(Rng& g) const {
    std::vector<std::int64_t> state(base_count_);
    if (requires_distinct(cfg_.kind)) {
      std::vector<std::int64_t> deck = pool_;
      for (std::size_t i = 0; i < base_count_; ++i) {
        std::size_t j = i + static_cast<std::size_t>(g.below(deck.size() - i));
        std::swap(deck[i], deck[j]);
        state[i] = deck[i];
      }
    } else {
      for (auto& v : state) v = pool_[g.below(pool_.size())];
    }
    return state;
  }

  void mutate(std::vector<std::int64_t>& e, Rng& g) const {
    const bool can_swap = e.size() >= 2;
    bool do_swap = can_swap && (g.next() & 8191) < swap_cut_;
    if (do_swap) {
      std::size_t i = static_cast<std::size_t>(g.below(e.size()));
      std::size_t j = static_cast<std::size_t>(g.below(e.size() - 1));
      if (j >= i) ++j;
      std::swap(e[i], e[j]);
      return;
    }
    std::size_t i = static_cast<std::size_t>(g.below(e.size()));
    if (requires_distinct(cfg_.kind)) {
      for (int tries = 0; tries < 64; ++tries) {
        std::int64_t v = pool_[g.below(pool_.size())];
        if (std::find(e.begin(), e.end(), v) == e.end()) {
          e[i] = v;
          return;
        }
      }
    } else {
      std::int64_t v = pool_[g.below(pool_.size())];
      if (v != e[i]) {
        e[i] = v;
      }
    }
  }

  const SearchConfig& cfg_;
  std::vector<std::int64_t> pool_;
  std::size_t base_count_;
  std::uint64_t swap_cut_;
};

bool better_failure(const RestartOutcome& a, const RestartOutcome& b) {
  // prefer lower score, then lower weight (b is the incumbent)
  if (a.score != b.score) return a.score < b.score;
  return a.weight < b.weight;
}

}  // namespace

std::int64_t default_pool_limit(Kind kind, std::size_t order) {
  if (order == 0) throw ConfigError("order must be >= 1");
  if (kind == Kind::GoldbachSquare) {
    // elements above max_target - 3 can never pair into range
    return 4 * static_cast<std::int64_t>(order) * (static_cast<std::int64_t>(order) - 1) + 1;
  }
  const std::size_t base = element_count(kind, order);
  return std::max<std::int64_t>(100, 8 * nth_odd_prime(base));
}

std::uint64_t score(const Construction& construction) {
  const std::size_t expect = element_count(construction.kind, construction.order);
  if (construction.elements.size() < expect) {
    throw ShapeError("construction needs " + std::to_string(expect) + " base elements, got " +
                     std::to_string(construction.elements.size()));
  }
  std::vector<std::int64_t> base(construction.elements.begin(),
                                 construction.elements.begin() + expect);
  Scorer scorer{construction.kind, construction.order, construction.aux, {}, {}, {}};
  return scorer(base);
}

SearchResult hill_climb(const SearchConfig& config) {
  if (config.order == 0) throw ConfigError("order must be >= 1");
  if ((config.kind == Kind::Tuple || config.kind == Kind::Cylinder) && config.aux == 0) {
    throw ConfigError("searching tuples/cylinders needs aux (target length/layers)");
  }
  if (config.kind == Kind::Tuple && config.aux < config.order) {
    throw ConfigError("tuple target length must be >= order");
  }
  if (config.max_restarts == 0 && config.time_limit <= 0) {
    throw ConfigError("set max_restarts or time_limit; unbounded searches never return");
  }
  if (config.max_iterations == 0) throw ConfigError("max_iterations must be >= 1");

  std::int64_t limit = config.prime_pool_limit != 0 ? config.prime_pool_limit
                                                    : default_pool_limit(config.kind, config.order);
  std::vector<std::int64_t> pool;
  for (std::int64_t p : primes_up_to(limit)) {
    if (p == 2) {
      // the even prime only ever fits a 1-element vector
      if ((config.kind == Kind::Vector || config.kind == Kind::CyclicVector) && config.order == 1) {
        pool.push_back(p);
      }
      continue;
    }
    pool.push_back(p);
  }
  const std::size_t base_count = element_count(config.kind, config.order);
  if (requires_distinct(config.kind) && pool.size() <= base_count) {
    throw ConfigError("prime pool up to " + std::to_string(limit) + " has only " +
                      std::to_string(pool.size()) + " candidates for " +
                      std::to_string(base_count) + " distinct elements");
  }
  if (pool.empty()) throw ConfigError("prime pool is empty");

  Climber climber(config, pool);
  const auto start = std::chrono::steady_clock::now();
  auto out_of_time = [&] {
    if (config.time_limit <= 0) return false;
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count() >=
           config.time_limit;
  };

  int workers = config.workers;
#ifdef _OPENMP
  if (workers <= 0) workers = omp_get_max_threads();
#else
  workers = 1;
#endif

  RestartOutcome best_fail;
  std::uint64_t iterations_before_success = 0;  // restarts with index < r*
  RestartOutcome winner;
  std::uint64_t winner_index = UINT64_MAX;
  std::uint64_t restarts_run = 0;

  const std::uint64_t chunk = workers > 1 ? static_cast<std::uint64_t>(workers) * 4 : 1;
  for (std::uint64_t base = 0;; base += chunk) {
    if (config.max_restarts != 0 && base >= config.max_restarts) break;
    if (out_of_time()) break;
    std::uint64_t count = chunk;
    if (config.max_restarts != 0) {
      count = std::min<std::uint64_t>(count, config.max_restarts - base);
    }
    std::vector<RestartOutcome> outcomes(count);
    if (workers > 1) {
#ifdef _OPENMP
      std::atomic<std::uint64_t> min_success{UINT64_MAX};
#pragma omp parallel for schedule(dynamic, 1) num_threads(workers)
      for (std::int64_t i = 0; i < static_cast<std::int64_t>(count); ++i) {
        std::uint64_t r = base + static_cast<std::uint64_t>(i);
        if (r > min_success.load(std::memory_order_relaxed)) continue;  // can't beat the winner
        outcomes[i] = climber.run_restart(r);
        if (outcomes[i].success) {
          std::uint64_t cur = min_success.load(std::memory_order_relaxed);
          while (r < cur && !min_success.compare_exchange_weak(cur, r)) {
          }
        }
      }
#endif
    } else {
      for (std::uint64_t i = 0; i < count; ++i) {
        outcomes[i] = climber.run_restart(base + i);
        if (outcomes[i].success) break;  // later restarts can't win
        if (out_of_time()) {
          outcomes.resize(i + 1);
          count = i + 1;
          break;
        }
      }
    }
    for (std::uint64_t i = 0; i < count; ++i) {
      const RestartOutcome& o = outcomes[i];
      if (o.elements.empty()) continue;  // skipped: a lower restart already won
      std::uint64_t r = base + i;
      ++restarts_run;
      if (o.success) {
        if (config.on_improvement) config.on_improvement(r, o.score, o.elements);
        winner = o;
        winner_index = r;
        break;
      }
      iterations_before_success += o.iterations;
      if (best_fail.elements.empty() || better_failure(o, best_fail)) {
        best_fail = o;
        if (config.on_improvement) config.on_improvement(r, o.score, o.elements);
      }
    }
    if (winner_index != UINT64_MAX) break;
  }

  SearchResult result;
  result.best.kind = config.kind;
  result.best.order = config.order;
  result.best.aux = config.aux;
  if (winner_index != UINT64_MAX) {
    result.success = true;
    result.score = winner.score;
    result.best.elements = winner.elements;
    result.stats.restarts = winner_index + 1;
    result.stats.iterations = iterations_before_success + winner.iterations;
  } else {
    result.score = best_fail.elements.empty() ? UINT64_MAX : best_fail.score;
    result.best.elements = best_fail.elements;
    result.stats.restarts = restarts_run;
    result.stats.iterations = iterations_before_success;
  }
  // expose the realized expansion size so the result verifies as-is
  if (result.success && (config.kind == Kind::Tuple || config.kind == Kind::Cylinder)) {
    Expansion ex = config.kind == Kind::Tuple ? expand_tuple(result.best.elements, 0)
                                              : expand_cylinder(result.best.elements, 0);
    result.best.aux = ex.construction.aux;
  }
  result.stats.elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

}  // namespace primesum
