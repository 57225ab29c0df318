#include "primesum/exhaustive.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <chrono>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "primesum/errors.hpp"
#include "primesum/metrics.hpp"
#include "primesum/primality.hpp"
#include "internal.hpp"

namespace primesum {

namespace {

const Sieve& shared_sieve() {
  static const Sieve sieve(1 << 22);
  return sieve;
}

std::vector<std::int64_t> odd_primes_up_to(std::int64_t limit) {
  std::vector<std::int64_t> out;
  for (std::int64_t p : primes_up_to(limit)) {
    if (p > 2) out.push_back(p);
  }
  return out;
}

int worker_count(int requested) {
#ifdef _OPENMP
  return requested > 0 ? requested : omp_get_max_threads();
#else
  (void)requested;
  return 1;
#endif
}

// runs body(0..count-1); workers == 1 is the serial reference path
template <class Fn>
void for_each_task(std::size_t count, int workers, Fn&& body) {
#ifdef _OPENMP
  if (workers > 1) {
#pragma omp parallel for schedule(dynamic, 1) num_threads(workers)
    for (std::int64_t f = 0; f < static_cast<std::int64_t>(count); ++f) {
      body(static_cast<std::size_t>(f));
    }
    return;
  }
#endif
  (void)workers;
  for (std::size_t f = 0; f < count; ++f) body(f);
}

// ---------------------------------------------------------------------------
// constraint schedules for permutation search (vector/cyclic/stair/pyramid/matrix)

struct Constraint {
  std::vector<std::pair<std::uint32_t, std::int64_t>> terms;  // (slot, coefficient)
};

struct PermContext {
  std::size_t slots = 0;
  std::vector<Constraint> cons;
  std::vector<std::uint32_t> order;  // placement order
  std::vector<std::vector<std::uint32_t>> due;  // constraint ids completing at each step
  struct Pair {
    std::uint32_t a, b;  // require value[a] < value[b]
  };
  std::vector<std::vector<Pair>> pair_due;
  bool pin_first = false;  // slot order[0] takes the subset minimum only
};

// trinomial coefficient rows: row r of (1+x+x^2)^r, 2r+1 entries
std::vector<std::vector<std::int64_t>> trinomial_rows(std::size_t max_row) {
  std::vector<std::vector<std::int64_t>> rows{{1}};
  for (std::size_t r = 1; r <= max_row; ++r) {
    const auto& prev = rows.back();
    std::vector<std::int64_t> cur(2 * r + 1, 0);
    for (std::size_t j = 0; j < prev.size(); ++j) {
      for (std::size_t d = 0; d < 3; ++d) cur[j + d] += prev[j];
    }
    rows.push_back(std::move(cur));
  }
  return rows;
}

std::vector<Constraint> build_constraints(Kind kind, std::size_t n) {
  std::vector<Constraint> cons;
  auto window = [&](std::size_t start, std::size_t len, bool wrap) {
    Constraint c;
    for (std::size_t k = 0; k < len; ++k) {
      c.terms.push_back({static_cast<std::uint32_t>(wrap ? (start + k) % n : start + k), 1});
    }
    cons.push_back(std::move(c));
  };
  switch (kind) {
    case Kind::Vector:
      for (std::size_t len = 3; len <= n; len += 2) {
        for (std::size_t i = 0; i + len <= n; ++i) window(i, len, false);
      }
      break;
    case Kind::CyclicVector:
      for (std::size_t len = 3; len < n; len += 2) {
        for (std::size_t i = 0; i < n; ++i) window(i, len, true);
      }
      if (n % 2 == 1 && n >= 3) window(0, n, true);
      break;
    case Kind::Stair: {
      const std::size_t rows = (n + 1) / 2;
      auto tri = trinomial_rows(rows);
      for (std::size_t r = 1; r < rows; ++r) {
        const std::size_t width = n - 2 * r;
        for (std::size_t c = 0; c < width; ++c) {
          Constraint cc;
          for (std::size_t k = 0; k <= 2 * r; ++k) {
            cc.terms.push_back({static_cast<std::uint32_t>(c + k), tri[r][k]});
          }
          cons.push_back(std::move(cc));
        }
      }
      break;
    }
    case Kind::Pyramid: {
      const std::size_t levels = (n + 1) / 2;
      auto tri = trinomial_rows(levels);
      for (std::size_t k = 1; k < levels; ++k) {
        for (std::size_t r = k; r + k < n; ++r) {
          for (std::size_t c = k; c + k < n; ++c) {
            Constraint cc;
            for (std::size_t a = 0; a <= 2 * k; ++a) {
              for (std::size_t b = 0; b <= 2 * k; ++b) {
                cc.terms.push_back({static_cast<std::uint32_t>((r - k + a) * n + (c - k + b)),
                                    tri[k][a] * tri[k][b]});
              }
            }
            cons.push_back(std::move(cc));
          }
        }
      }
      break;
    }
    case Kind::Matrix: {
      const int ni = static_cast<int>(n);
      constexpr int kDirs[3][2] = {{0, 1}, {1, 0}, {1, 1}};
      for (auto [dr, dc] : kDirs) {
        for (int len = 3; len <= ni; len += 2) {
          for (int r = 0; r < ni; ++r) {
            for (int c = 0; c < ni; ++c) {
              if (r + (len - 1) * dr >= ni || c + (len - 1) * dc >= ni) continue;
              Constraint cc;
              for (int k = 0; k < len; ++k) {
                cc.terms.push_back(
                    {static_cast<std::uint32_t>((r + k * dr) * ni + c + k * dc), 1});
              }
              cons.push_back(std::move(cc));
            }
          }
        }
      }
      break;
    }
    default:
      throw ConfigError("no constraint schedule for this kind");
  }
  return cons;
}

PermContext build_perm_context(Kind kind, std::size_t n, bool prune_symmetry) {
  PermContext ctx;
  ctx.slots = element_count(kind, n);
  ctx.cons = build_constraints(kind, n);
  ctx.pin_first = prune_symmetry && kind == Kind::CyclicVector;

  // greedy placement order: finish constraints as early as possible
  const std::size_t m = ctx.cons.size();
  std::vector<std::vector<std::uint32_t>> slot_cons(ctx.slots);
  std::vector<std::size_t> remaining(m), placed_terms(m, 0);
  for (std::size_t id = 0; id < m; ++id) {
    remaining[id] = ctx.cons[id].terms.size();
    for (auto [s, coeff] : ctx.cons[id].terms) slot_cons[s].push_back(id);
  }
  std::vector<bool> placed(ctx.slots, false);
  auto place = [&](std::uint32_t s) {
    ctx.order.push_back(s);
    placed[s] = true;
    for (std::uint32_t id : slot_cons[s]) {
      --remaining[id];
      ++placed_terms[id];
    }
  };
  if (ctx.pin_first) place(0);
  while (ctx.order.size() < ctx.slots) {
    std::uint32_t best_slot = 0;
    long best_complete = -1, best_started = -1;
    for (std::uint32_t s = 0; s < ctx.slots; ++s) {
      if (placed[s]) continue;
      long complete = 0, started = 0;
      for (std::uint32_t id : slot_cons[s]) {
        if (remaining[id] == 1) {
          ++complete;
        } else if (placed_terms[id] > 0) {
          ++started;
        }
      }
      if (complete > best_complete ||
          (complete == best_complete && started > best_started)) {
        best_complete = complete;
        best_started = started;
        best_slot = s;
      }
    }
    place(best_slot);
  }

  std::vector<std::uint32_t> pos(ctx.slots);
  for (std::size_t step = 0; step < ctx.slots; ++step) pos[ctx.order[step]] = step;
  ctx.due.assign(ctx.slots, {});
  for (std::size_t id = 0; id < m; ++id) {
    std::uint32_t last = 0;
    for (auto [s, coeff] : ctx.cons[id].terms) last = std::max(last, pos[s]);
    ctx.due[last].push_back(static_cast<std::uint32_t>(id));
  }

  ctx.pair_due.assign(ctx.slots, {});
  if (prune_symmetry && ctx.slots >= 2) {
    std::vector<PermContext::Pair> pairs;
    auto slot_at = [&](std::size_t r, std::size_t c) {
      return static_cast<std::uint32_t>(r * n + c);
    };
    switch (kind) {
      case Kind::Vector:
      case Kind::Stair:
        pairs.push_back({0, static_cast<std::uint32_t>(n - 1)});  // reversal
        break;
      case Kind::CyclicVector:
        if (n >= 3) pairs.push_back({1, static_cast<std::uint32_t>(n - 1)});  // reflection
        break;
      case Kind::Matrix:
        pairs.push_back({slot_at(0, 0), slot_at(n - 1, n - 1)});  // half turn
        pairs.push_back({slot_at(0, 1), slot_at(1, 0)});          // transpose
        break;
      case Kind::Pyramid:
        pairs.push_back({slot_at(0, 0), slot_at(0, n - 1)});  // smallest corner first
        pairs.push_back({slot_at(0, 0), slot_at(n - 1, 0)});
        pairs.push_back({slot_at(0, 0), slot_at(n - 1, n - 1)});
        pairs.push_back({slot_at(0, 1), slot_at(1, 0)});  // then fix the reflection
        break;
      default:
        break;
    }
    for (auto p : pairs) {
      if (p.a == p.b) continue;
      ctx.pair_due[std::max(pos[p.a], pos[p.b])].push_back(p);
    }
  }
  return ctx;
}

// depth-first search over arrangements of one subset
struct PermSearch {
  const PermContext& ctx;
  const std::vector<std::int64_t>& subset;  // ascending
  const Sieve& sieve;
  std::vector<std::int64_t> value;
  std::uint64_t used = 0;
  std::uint64_t nodes = 0;

  explicit PermSearch(const PermContext& c, const std::vector<std::int64_t>& s)
      : ctx(c), subset(s), sieve(shared_sieve()), value(c.slots, 0) {}

  bool dfs(std::size_t step) {
    if (step == ctx.slots) return true;
    const std::uint32_t slot = ctx.order[step];
    const std::size_t limit = (step == 0 && ctx.pin_first) ? 1 : subset.size();
    for (std::size_t vi = 0; vi < limit; ++vi) {
      if (used & (1ull << vi)) continue;
      ++nodes;
      value[slot] = subset[vi];
      bool ok = true;
      for (std::uint32_t id : ctx.due[step]) {
        std::int64_t s = 0;
        for (auto [sl, coeff] : ctx.cons[id].terms) s += coeff * value[sl];
        if (!sieve.contains(s)) {
          ok = false;
          break;
        }
      }
      if (ok) {
        for (auto p : ctx.pair_due[step]) {
          if (!(value[p.a] < value[p.b])) {
            ok = false;
            break;
          }
        }
      }
      if (ok) {
        used |= 1ull << vi;
        if (dfs(step + 1)) return true;
        used &= ~(1ull << vi);
      }
    }
    return false;
  }
};

// ---------------------------------------------------------------------------
// mod-3 feasibility of residue multisets (necessary condition on subsets)

// Can counts of residues (c0,c1,c2) be arranged in a line (ring) so that no
// odd-length window of >= 3 elements sums to a multiple of 3?  For stairs only
// 3-windows apply (max_len = 3).
struct ResidueFeasibility {
  std::size_t n = 0;
  bool cyclic = false;
  std::size_t max_len = 0;  // 0 -> unbounded
  std::vector<std::uint8_t> table;  // [c0 * (n+1) + c1]

  bool feasible(int c0, int c1) const { return table[c0 * (n + 1) + c1] != 0; }
};

struct ResidueDfs {
  std::size_t n;
  bool cyclic;
  std::size_t max_len;
  std::array<int, 3> counts;
  std::vector<int> prefix;  // P[0..n], mod 3

  bool ok_tail() const {
    if (!cyclic) return true;
    // wrap windows: start s, odd length L in [3, n-1] with s + L > n
    for (std::size_t s = 1; s < n; ++s) {
      for (std::size_t L = 3; L <= n - 1; L += 2) {
        if (s + L <= n) continue;
        int sum = ((prefix[n] - prefix[s] + prefix[s + L - n]) % 3 + 3) % 3;
        if (sum == 0) return false;
      }
    }
    if (n % 2 == 1 && n >= 3 && prefix[n] % 3 == 0) return false;  // full ring
    return true;
  }

  bool dfs(std::size_t pos, std::uint8_t mask_even, std::uint8_t mask_odd) {
    if (pos == n) return ok_tail();
    const std::size_t idx = pos + 1;
    for (int r = 0; r < 3; ++r) {
      if (counts[r] == 0) continue;
      int pn = (prefix[pos] + r) % 3;
      bool bad = false;
      if (max_len == 3) {
        if (idx >= 3 && prefix[idx - 3] == pn) bad = true;
      } else {
        std::uint8_t mask = (idx % 2 == 0) ? mask_odd : mask_even;
        if (mask & (1 << pn)) bad = true;
      }
      if (bad) continue;
      prefix[idx] = pn;
      --counts[r];
      std::uint8_t me = mask_even, mo = mask_odd;
      if (pos >= 1) {  // index pos-1 moves out of the 2-step exclusion zone
        if ((pos - 1) % 2 == 0) {
          me |= 1 << prefix[pos - 1];
        } else {
          mo |= 1 << prefix[pos - 1];
        }
      }
      bool good = dfs(pos + 1, me, mo);
      ++counts[r];
      if (good) return true;
    }
    return false;
  }
};

ResidueFeasibility build_residue_table(std::size_t n, bool cyclic, std::size_t max_len) {
  ResidueFeasibility out;
  out.n = n;
  out.cyclic = cyclic;
  out.max_len = max_len;
  out.table.assign(2 * (n + 1), 0);
  for (int c0 = 0; c0 <= 1; ++c0) {
    for (int c1 = 0; c1 + c0 <= static_cast<int>(n); ++c1) {
      ResidueDfs dfs{n, cyclic, max_len, {c0, c1, static_cast<int>(n) - c0 - c1},
                     std::vector<int>(n + 1, 0)};
      out.table[c0 * (n + 1) + c1] = dfs.dfs(0, 0, 0) ? 1 : 0;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// subsets of distinct odd primes with an exact sum

struct SubsetPool {
  std::vector<std::int64_t> pool;    // ascending odd primes
  std::vector<std::int64_t> prefix;  // prefix[i] = sum of pool[0..i)
  std::vector<std::int64_t> suffix;  // suffix[i] = sum of pool[i..)

  explicit SubsetPool(std::vector<std::int64_t> p) : pool(std::move(p)) {
    prefix.assign(pool.size() + 1, 0);
    for (std::size_t i = 0; i < pool.size(); ++i) prefix[i + 1] = prefix[i] + pool[i];
    suffix.assign(pool.size() + 1, 0);
    for (std::size_t i = pool.size(); i > 0; --i) suffix[i - 1] = suffix[i] + pool[i - 1];
  }

  std::int64_t min_take(std::size_t idx, std::size_t take) const {
    return prefix[idx + take] - prefix[idx];
  }
  std::int64_t max_take(std::size_t take) const { return suffix[pool.size() - take]; }
};

template <class Leaf>
void enum_subsets(const SubsetPool& sp, std::size_t idx, std::size_t left, std::int64_t rem,
                  std::vector<std::int64_t>& cur, std::array<int, 3>& res_counts,
                  std::uint64_t& nodes, Leaf&& leaf) {
  if (left == 0) {
    if (rem == 0) leaf();
    return;
  }
  if (idx + left > sp.pool.size()) return;
  if (rem < sp.min_take(idx, left) || rem > sp.max_take(left)) return;
  ++nodes;
  // include pool[idx]
  {
    std::int64_t v = sp.pool[idx];
    if (v <= rem) {
      cur.push_back(v);
      ++res_counts[static_cast<std::size_t>(v % 3)];
      enum_subsets(sp, idx + 1, left - 1, rem - v, cur, res_counts, nodes, leaf);
      --res_counts[static_cast<std::size_t>(v % 3)];
      cur.pop_back();
    }
  }
  enum_subsets(sp, idx + 1, left, rem, cur, res_counts, nodes, leaf);
}

// ---------------------------------------------------------------------------
// one weight class of a permutation kind

struct ClassOutcome {
  bool found = false;
  std::vector<std::int64_t> witness;
  std::uint64_t nodes = 0;
  bool aborted = false;
};

struct BudgetGate {
  std::uint64_t limit = 0;  // 0 -> unlimited
  std::atomic<std::uint64_t> spent{0};
  std::atomic<bool> tripped{false};

  bool charge(std::uint64_t amount) {
    if (limit == 0) return true;
    std::uint64_t total = spent.fetch_add(amount, std::memory_order_relaxed) + amount;
    if (total > limit) {
      tripped.store(true, std::memory_order_relaxed);
      return false;
    }
    return !tripped.load(std::memory_order_relaxed);
  }
};

ClassOutcome run_perm_class(const PermContext& ctx, std::size_t k, std::uint64_t W,
                            std::int64_t element_limit, const ResidueFeasibility* residues,
                            BudgetGate& budget, int workers) {
  std::int64_t cap = static_cast<std::int64_t>(W) - 3 * (static_cast<std::int64_t>(k) - 1);
  if (element_limit > 0) cap = std::min(cap, element_limit);
  SubsetPool sp(odd_primes_up_to(cap));
  const std::size_t tasks = sp.pool.size();

  struct TaskResult {
    bool found = false;
    std::vector<std::int64_t> witness;
    std::uint64_t nodes = 0;
    bool aborted = false;
  };
  std::vector<TaskResult> results(tasks);

  auto run_task = [&](std::size_t f) {
    TaskResult& tr = results[f];
    std::int64_t first = sp.pool[f];
    std::int64_t rem = static_cast<std::int64_t>(W) - first;
    if (rem < 0) return;
    std::vector<std::int64_t> cur{first};
    std::array<int, 3> counts{0, 0, 0};
    ++counts[static_cast<std::size_t>(first % 3)];
    std::uint64_t subset_batch = 0;
    enum_subsets(sp, f + 1, k - 1, rem, cur, counts, tr.nodes, [&] {
      if (tr.aborted) return;
      if (residues && !residues->feasible(counts[0], counts[1])) return;
      PermSearch ps(ctx, cur);
      bool ok = ps.dfs(0);
      tr.nodes += ps.nodes;
      if (ok && !tr.found) {
        tr.found = true;
        tr.witness = ps.value;
      }
      subset_batch += ps.nodes + 1;
      if (subset_batch >= 4096) {
        if (!budget.charge(subset_batch)) tr.aborted = true;
        subset_batch = 0;
      }
    });
    if (subset_batch > 0 && !budget.charge(subset_batch)) tr.aborted = true;
  };

  for_each_task(tasks, workers, [&](std::size_t f) {
    if (budget.tripped.load(std::memory_order_relaxed)) {
      results[f].aborted = true;
    } else {
      run_task(f);
    }
  });

  ClassOutcome out;
  for (std::size_t f = 0; f < tasks; ++f) {
    out.nodes += results[f].nodes;
    out.aborted = out.aborted || results[f].aborted;
    if (!out.found && results[f].found) {
      out.found = true;
      out.witness = results[f].witness;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// tuples: subsets + seed arrangements, pruned by the forced prefix of sums

// max generated run achievable by arranging a residue multiset, memoized per counts
struct TupleRunBound {
  std::size_t n;
  std::size_t horizon;
  std::vector<int> table;  // [c0*(n+1)+c1] = max run (or horizon when unbounded)

  int run_for(std::array<int, 3>& counts, std::vector<int>& seed, std::size_t pos) const {
    if (pos == n) {
      std::vector<int> r = seed;
      std::size_t steps = 0;
      while (steps < horizon) {
        int s = 0;
        for (std::size_t k = r.size() - n; k < r.size(); ++k) s += r[k];
        s %= 3;
        if (s == 0) break;
        r.push_back(s);
        ++steps;
      }
      return static_cast<int>(steps);
    }
    int best = -1;
    for (int v = 0; v < 3; ++v) {
      if (counts[v] == 0) continue;
      --counts[v];
      seed[pos] = v;
      best = std::max(best, run_for(counts, seed, pos + 1));
      ++counts[v];
      if (best >= static_cast<int>(horizon)) break;
    }
    return best;
  }
};

TupleRunBound build_tuple_run_bounds(std::size_t n, std::size_t horizon) {
  TupleRunBound out{n, horizon, std::vector<int>(2 * (n + 1), 0)};
  for (int c0 = 0; c0 <= 1; ++c0) {
    for (int c1 = 0; c1 + c0 <= static_cast<int>(n); ++c1) {
      std::array<int, 3> counts{c0, c1, static_cast<int>(n) - c0 - c1};
      std::vector<int> seed(n);
      out.table[c0 * (n + 1) + c1] = out.run_for(counts, seed, 0);
    }
  }
  return out;
}

// arrangements of one subset as a tuple seed; t_{n+1+j} = 2 t_{n+j} - s_j is
// checkable as soon as seed position j is chosen
struct TupleSearch {
  std::size_t n;
  std::size_t target;
  const std::vector<std::int64_t>& subset;
  const Sieve& sieve;
  std::vector<std::int64_t> seed;
  std::vector<std::int64_t> tail;  // tail[j] = t_{n+1+j}
  std::uint64_t used = 0;
  std::uint64_t nodes = 0;

  TupleSearch(std::size_t order, std::size_t tgt, const std::vector<std::int64_t>& s,
              std::uint64_t W)
      : n(order), target(tgt), subset(s), sieve(shared_sieve()), seed(order, 0) {
    tail.assign(target > n ? target - n : 0, 0);
    if (!tail.empty()) tail[0] = static_cast<std::int64_t>(W);
  }

  bool dfs(std::size_t pos) {
    if (pos == n) return true;
    for (std::size_t vi = 0; vi < subset.size(); ++vi) {
      if (used & (1ull << vi)) continue;
      ++nodes;
      seed[pos] = subset[vi];
      bool ok = true;
      const std::size_t j = pos + 1;  // 1-based seed position
      if (j < tail.size()) {
        // t_{n+1+j} = 2 t_{n+j} - s_j
        tail[j] = 2 * tail[j - 1] - seed[pos];
        if (tail[j] <= 0 || !sieve.contains(tail[j])) ok = false;
      }
      if (ok) {
        used |= 1ull << vi;
        if (dfs(pos + 1)) return true;
        used &= ~(1ull << vi);
      }
    }
    return false;
  }
};

ClassOutcome run_tuple_class(std::size_t n, std::size_t target, std::uint64_t W,
                             std::int64_t element_limit, const TupleRunBound* run_bounds,
                             BudgetGate& budget, int workers) {
  std::int64_t cap = static_cast<std::int64_t>(W) - 3 * (static_cast<std::int64_t>(n) - 1);
  if (element_limit > 0) cap = std::min(cap, element_limit);
  SubsetPool sp(odd_primes_up_to(cap));
  const std::size_t tasks = sp.pool.size();

  struct TaskResult {
    bool found = false;
    std::vector<std::int64_t> witness;
    std::uint64_t nodes = 0;
    bool aborted = false;
  };
  std::vector<TaskResult> results(tasks);

  auto run_task = [&](std::size_t f) {
    TaskResult& tr = results[f];
    std::int64_t first = sp.pool[f];
    std::int64_t rem = static_cast<std::int64_t>(W) - first;
    if (rem < 0) return;
    std::vector<std::int64_t> cur{first};
    std::array<int, 3> counts{0, 0, 0};
    ++counts[static_cast<std::size_t>(first % 3)];
    enum_subsets(sp, f + 1, n - 1, rem, cur, counts, tr.nodes, [&] {
      if (tr.aborted) return;
      if (run_bounds) {
        int reach = run_bounds->table[counts[0] * (n + 1) + counts[1]];
        if (n + static_cast<std::size_t>(reach) < target) return;
      }
      TupleSearch ts(n, target, cur, W);
      bool ok = ts.dfs(0);
      tr.nodes += ts.nodes;
      if (ok) {
        // the prefix checks covered tail positions 1..n-1; confirm the rest
        Expansion ex = expand_tuple(ts.seed, 0);
        if (ex.construction.elements.size() >= target && !tr.found) {
          tr.found = true;
          tr.witness = ts.seed;
        }
      }
      if (!budget.charge(ts.nodes + 1)) tr.aborted = true;
    });
  };

  for_each_task(tasks, workers, [&](std::size_t f) {
    if (budget.tripped.load(std::memory_order_relaxed)) {
      results[f].aborted = true;
    } else {
      run_task(f);
    }
  });

  ClassOutcome out;
  for (std::size_t f = 0; f < tasks; ++f) {
    out.nodes += results[f].nodes;
    out.aborted = out.aborted || results[f].aborted;
    if (!out.found && results[f].found) {
      out.found = true;
      out.witness = results[f].witness;
    }
  }
  return out;
}

}  // namespace

// declared early so the drivers below can call it
std::optional<std::size_t> tuple_max_length_bound(std::size_t order, std::size_t horizon) {
  if (order == 0) throw ConfigError("order must be >= 1");
  if (order % 2 == 0) throw ConfigError("tuple order must be odd");
  TupleRunBound bounds = build_tuple_run_bounds(order, horizon);
  int best = 0;
  for (int v : bounds.table) best = std::max(best, v);
  if (best >= static_cast<int>(horizon)) return std::nullopt;
  return order + static_cast<std::size_t>(best);
}

namespace {

// ---------------------------------------------------------------------------
// cylinders: compositions of odd primes (repeats allowed) on a ring

struct CylinderLeafStats {
  bool found = false;
  std::vector<std::int64_t> witness;
  std::size_t witness_layers = 0;
};

// expands a first layer counting total layers, capped
std::size_t cylinder_depth(const std::vector<std::int64_t>& layer0, std::size_t cap,
                           const Sieve& sieve) {
  std::size_t n = layer0.size();
  std::vector<std::int64_t> prev = layer0, cur(n);
  std::size_t layers = 1;
  while (layers < cap) {
    bool ok = true;
    for (std::size_t c = 0; c < n; ++c) {
      cur[c] = detail::checked_add(detail::checked_add(prev[(c + n - 1) % n], prev[c]),
                                   prev[(c + 1) % n]);
      if (!sieve.contains(cur[c])) ok = false;
    }
    if (!ok) break;
    prev.swap(cur);
    ++layers;
  }
  return layers;
}

struct CylinderClassSearch {
  std::size_t n;
  std::size_t target_layers;
  const std::vector<std::int64_t>& pool;  // ascending odd primes
  std::size_t min_index;                  // canon: no value below pool[min_index]
  bool reflect_canon;
  const Sieve& sieve;
  std::vector<std::int64_t> value;
  std::uint64_t nodes = 0;
  CylinderLeafStats out;

  bool dfs(std::size_t pos, std::int64_t rem) {
    if (pos == n) {
      if (rem != 0) return false;
      // wrap cells n-1 and 0 of the next layer close the ring
      if (n >= 2) {
        std::int64_t a = value[n - 2] + value[n - 1] + value[0];
        std::int64_t b = value[n - 1] + value[0] + value[1];
        if (!sieve.contains(a) || !sieve.contains(b)) return false;
      }
      std::size_t depth = cylinder_depth(value, target_layers + 8, sieve);
      if (depth >= target_layers) {
        out.found = true;
        out.witness = value;
        out.witness_layers = depth;
        return true;
      }
      return false;
    }
    std::size_t left = n - pos - 1;
    for (std::size_t vi = min_index; vi < pool.size(); ++vi) {
      std::int64_t v = pool[vi];
      std::int64_t after = rem - v;
      if (after < static_cast<std::int64_t>(left) * 3) break;  // pool ascending
      if (after > static_cast<std::int64_t>(left) * pool.back()) continue;
      ++nodes;
      value[pos] = v;
      bool ok = true;
      if (reflect_canon && pos == n - 1 && n >= 3 && value[1] > value[n - 1]) ok = false;
      // inner cell pos-1 of the second layer is fixed once slot pos is set
      if (ok && pos >= 2 && n >= 3) {
        std::int64_t cell = value[pos - 2] + value[pos - 1] + value[pos];
        if (!sieve.contains(cell)) ok = false;
      }
      if (ok && dfs(pos + 1, after)) return true;
    }
    return false;
  }
};

ClassOutcome run_cylinder_class(std::size_t n, std::size_t target_layers, std::uint64_t W,
                                std::int64_t element_limit, bool prune_symmetry,
                                BudgetGate& budget, int workers) {
  std::int64_t cap = static_cast<std::int64_t>(W) - 3 * (static_cast<std::int64_t>(n) - 1);
  if (element_limit > 0) cap = std::min(cap, element_limit);
  std::vector<std::int64_t> pool = odd_primes_up_to(cap);
  const std::size_t tasks = pool.size();

  struct TaskResult {
    bool found = false;
    std::vector<std::int64_t> witness;
    std::uint64_t nodes = 0;
    bool aborted = false;
  };
  std::vector<TaskResult> results(tasks);

  auto run_task = [&](std::size_t f) {
    TaskResult& tr = results[f];
    std::int64_t first = pool[f];
    std::int64_t rem = static_cast<std::int64_t>(W) - first;
    if (rem < 3 * static_cast<std::int64_t>(n - 1) && n > 1) return;
    CylinderClassSearch search{n,    target_layers, pool, prune_symmetry ? f : 0,
                               prune_symmetry, shared_sieve(), {},   0,  {}};
    search.value.assign(n, 0);
    search.value[0] = first;
    if (n == 1) {
      if (rem == 0 && cylinder_depth(search.value, target_layers + 8, shared_sieve()) >=
                          target_layers) {
        tr.found = true;
        tr.witness = search.value;
      }
      tr.nodes += 1;
      return;
    }
    bool ok = search.dfs(1, rem);
    tr.nodes += search.nodes + 1;
    if (ok) {
      tr.found = true;
      tr.witness = search.out.witness;
    }
    if (!budget.charge(search.nodes + 1)) tr.aborted = true;
  };

  for_each_task(tasks, workers, [&](std::size_t f) {
    if (budget.tripped.load(std::memory_order_relaxed)) {
      results[f].aborted = true;
    } else {
      run_task(f);
    }
  });

  ClassOutcome out;
  for (std::size_t f = 0; f < tasks; ++f) {
    out.nodes += results[f].nodes;
    out.aborted = out.aborted || results[f].aborted;
    if (!out.found && results[f].found) {
      out.found = true;
      out.witness = results[f].witness;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// goldbach squares: compositions with exact-once coverage of the even targets

struct GoldbachSearch {
  std::size_t n;
  const std::vector<std::int64_t>& pool;
  const std::vector<int>& degree;        // adjacency degree per cell
  const std::vector<std::int64_t>& mw;   // mw[pos] = sum of (degree-2) over cells >= pos
  std::vector<std::int64_t> value;
  std::vector<std::uint8_t> covered;  // per target index (t-6)/2
  std::int64_t max_target;
  BudgetGate* budget;
  std::uint64_t nodes = 0;
  bool aborted = false;

  bool dfs(std::size_t pos, std::int64_t rem, std::int64_t rem_m) {
    const std::size_t cells = n * n;
    if (pos == cells) return rem == 0 && rem_m == 0;
    const std::size_t left = cells - pos - 1;
    const std::size_t r = pos / n, c = pos % n;
    const std::int64_t d2 = degree[pos] - 2;
    for (std::int64_t v : pool) {
      if (aborted) return false;
      std::int64_t after = rem - v;
      if (after < static_cast<std::int64_t>(left) * 3) break;
      if (after > static_cast<std::int64_t>(left) * pool.back()) continue;
      std::int64_t after_m = rem_m - d2 * v;
      if (after_m < 3 * mw[pos + 1]) break;  // only shrinks as v grows
      if (after_m > pool.back() * mw[pos + 1]) {
        if (d2 == 0) break;  // independent of v
        continue;
      }
      if ((++nodes & 4095) == 0 && !budget->charge(4096)) {
        aborted = true;
        return false;
      }
      value[pos] = v;
      // cover the pairs this cell completes (left and up neighbours)
      std::size_t marked[2];
      std::size_t marked_count = 0;
      bool ok = true;
      auto try_cover = [&](std::int64_t other) {
        std::int64_t s = v + other;
        if (s < 6 || s > max_target) return false;
        std::size_t ti = static_cast<std::size_t>((s - 6) / 2);
        if (covered[ti]) return false;
        covered[ti] = 1;
        marked[marked_count++] = ti;
        return true;
      };
      if (c > 0) ok = try_cover(value[pos - 1]);
      if (ok && r > 0) ok = try_cover(value[pos - n]);
      if (ok && dfs(pos + 1, after, after_m)) return true;
      for (std::size_t i = 0; i < marked_count; ++i) covered[marked[i]] = 0;
    }
    return false;
  }
};

ClassOutcome run_goldbach_class(std::size_t n, std::uint64_t W, std::int64_t element_limit,
                                BudgetGate& budget, int workers) {
  (void)workers;  // a single pruned sweep; kept serial so the witness order is obvious
  const std::int64_t max_target = 4 + 4 * static_cast<std::int64_t>(n) * (n - 1);
  std::int64_t cap = max_target - 3;
  if (element_limit > 0) cap = std::min(cap, element_limit);
  std::vector<std::int64_t> pool = odd_primes_up_to(cap);
  ClassOutcome out;
  if (pool.empty()) return out;

  const std::size_t cells = n * n;
  std::vector<int> degree(cells);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      int d = 0;
      if (r > 0) ++d;
      if (r + 1 < n) ++d;
      if (c > 0) ++d;
      if (c + 1 < n) ++d;
      degree[r * n + c] = d;
    }
  }
  std::vector<std::int64_t> mw(cells + 1, 0);
  for (std::size_t i = cells; i > 0; --i) mw[i - 1] = mw[i] + (degree[i - 1] - 2);
  // sum over targets t of t equals sum over cells of degree*value; subtracting
  // twice the weight leaves a fixed surplus the interior must absorb
  std::int64_t target_sum = 0;
  for (std::int64_t t = 6; t <= max_target; t += 2) target_sum += t;
  std::int64_t m = target_sum - 2 * static_cast<std::int64_t>(W);
  if (m < 3 * mw[0] || m > pool.back() * mw[0]) return out;  // class impossible

  GoldbachSearch search{n,
                        pool,
                        degree,
                        mw,
                        std::vector<std::int64_t>(cells, 0),
                        std::vector<std::uint8_t>(static_cast<std::size_t>((max_target - 4) / 2), 0),
                        max_target,
                        &budget};
  bool ok = search.dfs(0, static_cast<std::int64_t>(W), m);
  out.nodes = search.nodes + 1;
  if (search.aborted || !budget.charge(search.nodes & 4095)) {
    out.aborted = true;
    return out;
  }
  if (ok) {
    out.found = true;
    out.witness = search.value;
  }
  return out;
}

// ---------------------------------------------------------------------------
// the ascending weight-class driver

std::uint64_t class_floor(Kind kind, std::size_t order) {
  switch (kind) {
    case Kind::Vector:
    case Kind::CyclicVector:
      return vector_weight_lower_bound(order);
    case Kind::Tuple:
    case Kind::Stair: {
      std::uint64_t s = 0;
      for (std::size_t i = 1; i <= order; ++i) s += static_cast<std::uint64_t>(nth_odd_prime(i));
      return s;
    }
    case Kind::Pyramid:
    case Kind::Matrix: {
      std::uint64_t s = 0;
      for (std::size_t i = 1; i <= order * order; ++i) {
        s += static_cast<std::uint64_t>(nth_odd_prime(i));
      }
      return s;
    }
    case Kind::Cylinder:
      return 3 * static_cast<std::uint64_t>(order);
    case Kind::GoldbachSquare:
      return 3 * static_cast<std::uint64_t>(order) * order;
  }
  throw ConfigError("unknown kind value");
}

bool weight_must_be_prime(Kind kind, std::size_t order, std::size_t tuple_target) {
  switch (kind) {
    case Kind::Vector:
    case Kind::CyclicVector:
      return order % 2 == 1 && order >= 3;  // the full window is one of the sums
    case Kind::Tuple:
      return tuple_target > order;  // the first generated term equals the weight
    default:
      return false;
  }
}

OptimalResult sweep_up_to(Kind kind, std::size_t order, const ExhaustiveOptions& options,
                          std::uint64_t inclusive_cap) {
  if (order == 0) throw ConfigError("order must be >= 1");
  if (kind == Kind::GoldbachSquare && order < 2) throw ShapeError("goldbach order must be >= 2");
  const std::size_t base = element_count(kind, order);
  if (base > 64) throw ConfigError("order too large for exhaustive enumeration");

  const auto start = std::chrono::steady_clock::now();
  OptimalResult result;
  result.construction.kind = kind;
  result.construction.order = order;

  // the even prime only ever fits a lone element
  if ((kind == Kind::Vector || kind == Kind::CyclicVector) && order == 1) {
    result.nodes_explored = 1;
    if (inclusive_cap == 0 || inclusive_cap >= 2) {
      result.found = true;
      result.construction.elements = {2};
      result.weight = 2;
      result.proven_optimal = true;
    } else {
      result.proven_optimal = true;
    }
    result.elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return result;
  }

  std::size_t tuple_target = 0;
  std::optional<TupleRunBound> tuple_bounds;
  if (kind == Kind::Tuple) {
    if (order % 2 == 0) throw ConfigError("tuple order must be odd");
    if (options.aux_target != 0) {
      if (options.aux_target < order) throw ConfigError("tuple target length must be >= order");
      tuple_target = options.aux_target;
    } else {
      auto bound = tuple_max_length_bound(order);
      if (!bound) {
        throw ConfigError(
            "tuples of this order have no finite length bound; pass an explicit aux_target");
      }
      tuple_target = *bound;
    }
    if (options.prune_residues) tuple_bounds = build_tuple_run_bounds(order, tuple_target);
  }
  std::size_t cylinder_target = 0;
  if (kind == Kind::Cylinder) {
    if (options.aux_target == 0) {
      throw ConfigError("cylinder optimization needs aux_target = total layers");
    }
    cylinder_target = options.aux_target;
  }

  std::optional<PermContext> perm_ctx;
  std::optional<ResidueFeasibility> residues;
  const bool perm_kind = kind == Kind::Vector || kind == Kind::CyclicVector ||
                         kind == Kind::Stair || kind == Kind::Pyramid || kind == Kind::Matrix;
  if (perm_kind) {
    perm_ctx = build_perm_context(kind, order, options.prune_symmetry);
    if (options.prune_residues &&
        (kind == Kind::Vector || kind == Kind::CyclicVector || kind == Kind::Stair)) {
      residues = build_residue_table(order, kind == Kind::CyclicVector,
                                     kind == Kind::Stair ? 3 : 0);
    }
  }

  BudgetGate budget;
  budget.limit = options.budget;
  const int workers = worker_count(options.workers);

  const std::uint64_t floor_w = class_floor(kind, order);
  for (std::uint64_t W = floor_w;; W += 2) {
    if (inclusive_cap != 0 && W > inclusive_cap) {
      result.proven_optimal = true;  // the whole range was enumerated
      break;
    }
    if (options.prune_prime_weight && weight_must_be_prime(kind, order, tuple_target) &&
        !is_prime(static_cast<std::int64_t>(W))) {
      continue;
    }
    ClassOutcome outcome;
    if (perm_kind) {
      outcome = run_perm_class(*perm_ctx, base, W, options.element_limit,
                               residues ? &*residues : nullptr, budget, workers);
    } else if (kind == Kind::Tuple) {
      outcome = run_tuple_class(order, tuple_target, W, options.element_limit,
                                tuple_bounds ? &*tuple_bounds : nullptr, budget, workers);
    } else if (kind == Kind::Cylinder) {
      outcome = run_cylinder_class(order, cylinder_target, W, options.element_limit,
                                   options.prune_symmetry, budget, workers);
    } else {
      outcome = run_goldbach_class(order, W, options.element_limit, budget, workers);
    }
    result.nodes_explored += outcome.nodes;
    if (outcome.aborted) {
      result.proven_optimal = false;
      break;
    }
    if (outcome.found) {
      result.found = true;
      result.weight = W;
      result.proven_optimal = true;
      result.construction.elements = outcome.witness;
      if (kind == Kind::Tuple) {
        result.construction.aux = expand_tuple(outcome.witness, 0).construction.elements.size();
      } else if (kind == Kind::Cylinder) {
        result.construction.aux = expand_cylinder(outcome.witness, 0).construction.aux;
      }
      break;
    }
  }
  result.elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

}  // namespace

OptimalResult optimize(Kind kind, std::size_t order, const ExhaustiveOptions& options) {
  return sweep_up_to(kind, order, options, options.initial_upper_bound);
}

bool prove_weight_floor(Kind kind, std::size_t order, std::uint64_t claimed_weight,
                        const ExhaustiveOptions& options) {
  if (claimed_weight <= 1) return true;  // weights are sums of primes, so always >= 2
  OptimalResult swept = sweep_up_to(kind, order, options, claimed_weight - 1);
  if (swept.found) return false;
  if (!swept.proven_optimal) {
    throw InconclusiveError("node budget exhausted before the sweep below " +
                            std::to_string(claimed_weight) + " completed");
  }
  return true;
}

CylinderScan scan_cylinders(std::size_t order, std::int64_t element_limit,
                            std::size_t layers_cap, int workers) {
  if (order == 0) throw ConfigError("order must be >= 1");
  if (element_limit < 3) throw ConfigError("element_limit must admit at least one odd prime");
  CylinderScan scan;
  scan.order = order;
  scan.element_limit = element_limit;
  const std::vector<std::int64_t> pool = odd_primes_up_to(element_limit);
  if (pool.empty()) return scan;
  scan.max_layers = 1;  // any single layer of primes qualifies
  const Sieve& sieve = shared_sieve();
  const std::size_t n = order;

  struct TaskResult {
    std::size_t max_layers = 1;
    std::uint64_t leaves = 0;
    std::uint64_t nodes = 0;
    std::vector<std::vector<std::int64_t>> best;
  };
  std::vector<TaskResult> results(pool.size());

  // canonical first layers: minimum value first, reflection resolved by
  // value[1] <= value[n-1]
  struct Scanner {
    std::size_t n;
    std::size_t layers_cap;
    const std::vector<std::int64_t>& pool;
    std::size_t min_index;
    const Sieve& sieve;
    TaskResult& tr;
    std::vector<std::int64_t> value;

    void dfs(std::size_t pos) {
      if (pos == n) {
        if (n >= 2) {
          std::int64_t a = value[n - 2] + value[n - 1] + value[0];
          std::int64_t b = value[n - 1] + value[0] + value[1];
          if (!sieve.contains(a) || !sieve.contains(b)) return;
        }
        ++tr.leaves;
        std::size_t depth = cylinder_depth(value, layers_cap, sieve);
        if (depth > tr.max_layers) {
          tr.max_layers = depth;
          tr.best.clear();
        }
        if (depth == tr.max_layers && tr.best.size() < 8) tr.best.push_back(value);
        return;
      }
      for (std::size_t vi = min_index; vi < pool.size(); ++vi) {
        ++tr.nodes;
        value[pos] = pool[vi];
        if (pos == n - 1 && n >= 3 && value[1] > value[n - 1]) continue;
        if (pos >= 2 && n >= 3) {
          std::int64_t cell = value[pos - 2] + value[pos - 1] + value[pos];
          if (!sieve.contains(cell)) continue;
        }
        dfs(pos + 1);
      }
    }
  };

  auto run_task = [&](std::size_t f) {
    TaskResult& tr = results[f];
    Scanner scanner{n, layers_cap, pool, f, sieve, tr, std::vector<std::int64_t>(n, 0)};
    scanner.value[0] = pool[f];
    if (n == 1) {
      // a lone cell: the next layer is 3x itself, never prime
      ++tr.leaves;
      ++tr.nodes;
      tr.best.push_back(scanner.value);
      return;
    }
    scanner.dfs(1);
  };

  for_each_task(pool.size(), worker_count(workers), run_task);

  for (const TaskResult& tr : results) {
    scan.first_layers += tr.leaves;
    scan.nodes_explored += tr.nodes;
    if (tr.max_layers > scan.max_layers) {
      scan.max_layers = tr.max_layers;
      scan.best.clear();
    }
  }
  for (const TaskResult& tr : results) {
    if (tr.max_layers != scan.max_layers) continue;
    for (const auto& layer : tr.best) {
      if (scan.best.size() >= 8) break;
      Construction c;
      c.kind = Kind::Cylinder;
      c.order = order;
      c.elements = layer;
      c.aux = scan.max_layers;
      scan.best.push_back(std::move(c));
    }
  }
  return scan;
}

}  // namespace primesum
