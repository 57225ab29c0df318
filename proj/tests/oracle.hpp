#pragma once

// Independent reference implementations used to cross-check the library.
// Everything here is deliberately written the most direct way possible —
// trial division, explicit window enumeration, plain expansion loops — so
// that agreement with the optimized library code is meaningful evidence.
// Nothing in this header calls into the library.

#include <cstddef>
#include <cstdint>
#include <map>
#include <set>
#include <vector>

namespace oracle {

inline bool is_prime(std::int64_t x) {
  if (x < 2) return false;
  if (x < 4) return true;
  if (x % 2 == 0) return false;
  for (std::int64_t d = 3; d * d <= x; d += 2) {
    if (x % d == 0) return false;
  }
  return true;
}

inline std::vector<std::int64_t> primes_up_to(std::int64_t limit) {
  std::vector<std::int64_t> out;
  for (std::int64_t x = 2; x <= limit; ++x) {
    if (is_prime(x)) out.push_back(x);
  }
  return out;
}

// 1-based: 1 -> 3, 2 -> 5, ...
inline std::int64_t nth_odd_prime(std::size_t k) {
  std::int64_t x = 2;
  std::size_t seen = 0;
  while (true) {
    ++x;
    if (x != 2 && is_prime(x)) {
      if (++seen == k) return x;
    }
  }
}

// Every odd-length (>= 3) window sum of a line, in (start, length) order.
inline std::vector<std::int64_t> vector_window_sums(const std::vector<std::int64_t>& e) {
  std::vector<std::int64_t> sums;
  const std::size_t n = e.size();
  for (std::size_t len = 3; len <= n; len += 2) {
    for (std::size_t i = 0; i + len <= n; ++i) {
      std::int64_t s = 0;
      for (std::size_t k = 0; k < len; ++k) s += e[i + k];
      sums.push_back(s);
    }
  }
  return sums;
}

// Wrapping windows of length 3..n-1 plus, for odd n >= 3, the full ring once.
inline std::vector<std::int64_t> cyclic_window_sums(const std::vector<std::int64_t>& e) {
  std::vector<std::int64_t> sums;
  const std::size_t n = e.size();
  for (std::size_t len = 3; len < n; len += 2) {
    for (std::size_t i = 0; i < n; ++i) {
      std::int64_t s = 0;
      for (std::size_t k = 0; k < len; ++k) s += e[(i + k) % n];
      sums.push_back(s);
    }
  }
  if (n % 2 == 1 && n >= 3) {
    std::int64_t s = 0;
    for (std::int64_t v : e) s += v;
    sums.push_back(s);
  }
  return sums;
}

inline bool distinct(const std::vector<std::int64_t>& e) {
  return std::set<std::int64_t>(e.begin(), e.end()).size() == e.size();
}

inline bool vector_valid(const std::vector<std::int64_t>& e, bool cyclic) {
  if (!distinct(e)) return false;
  for (std::int64_t v : e) {
    if (!is_prime(v)) return false;
  }
  auto sums = cyclic ? cyclic_window_sums(e) : vector_window_sums(e);
  for (std::int64_t s : sums) {
    if (!is_prime(s)) return false;
  }
  return true;
}

// Grows the tuple until the next n-term sum is composite or repeats a term.
inline std::vector<std::int64_t> tuple_terms(const std::vector<std::int64_t>& seed) {
  const std::size_t n = seed.size();
  std::vector<std::int64_t> terms = seed;
  std::set<std::int64_t> seen(seed.begin(), seed.end());
  while (true) {
    std::int64_t s = 0;
    for (std::size_t k = terms.size() - n; k < terms.size(); ++k) s += terms[k];
    if (!is_prime(s) || seen.count(s)) break;
    terms.push_back(s);
    seen.insert(s);
  }
  return terms;
}

// Rows of a stair, first row included; stops early only at the natural end.
inline std::vector<std::vector<std::int64_t>> stair_rows(const std::vector<std::int64_t>& first) {
  std::vector<std::vector<std::int64_t>> rows{first};
  while (rows.back().size() >= 3) {
    const auto& p = rows.back();
    std::vector<std::int64_t> next;
    for (std::size_t i = 0; i + 2 < p.size(); ++i) next.push_back(p[i] + p[i + 1] + p[i + 2]);
    rows.push_back(next);
  }
  return rows;
}

inline bool stair_valid(const std::vector<std::int64_t>& first) {
  if (!distinct(first)) return false;
  for (std::int64_t v : first) {
    if (!is_prime(v) || v == 2) return false;
  }
  auto rows = stair_rows(first);
  for (std::size_t r = 1; r < rows.size(); ++r) {
    for (std::int64_t s : rows[r]) {
      if (!is_prime(s)) return false;
    }
  }
  return true;
}

// Levels of a pyramid, base included, each level 2 narrower per side.
inline std::vector<std::vector<std::int64_t>> pyramid_levels(const std::vector<std::int64_t>& base,
                                                          std::size_t n) {
  std::vector<std::vector<std::int64_t>> levels{base};
  std::size_t width = n;
  while (width >= 3) {
    const auto& p = levels.back();
    const std::size_t w = width - 2;
    std::vector<std::int64_t> next(w * w);
    for (std::size_t r = 0; r < w; ++r) {
      for (std::size_t c = 0; c < w; ++c) {
        std::int64_t s = 0;
        for (std::size_t dr = 0; dr < 3; ++dr) {
          for (std::size_t dc = 0; dc < 3; ++dc) s += p[(r + dr) * width + (c + dc)];
        }
        next[r * w + c] = s;
      }
    }
    levels.push_back(next);
    width = w;
  }
  return levels;
}

inline bool pyramid_valid(const std::vector<std::int64_t>& base, std::size_t n) {
  if (base.size() != n * n || !distinct(base)) return false;
  for (std::int64_t v : base) {
    if (!is_prime(v) || v == 2) return false;
  }
  auto levels = pyramid_levels(base, n);
  for (std::size_t k = 1; k < levels.size(); ++k) {
    for (std::int64_t s : levels[k]) {
      if (!is_prime(s)) return false;
    }
  }
  return true;
}

// Layers of a cylinder until a generated cell goes composite (cap optional).
inline std::vector<std::vector<std::int64_t>> cylinder_layers(const std::vector<std::int64_t>& first,
                                                           std::size_t max_layers = 0) {
  const std::size_t n = first.size();
  std::vector<std::vector<std::int64_t>> layers{first};
  while (max_layers == 0 || layers.size() < max_layers) {
    const auto& p = layers.back();
    std::vector<std::int64_t> next(n);
    bool ok = true;
    for (std::size_t c = 0; c < n; ++c) {
      next[c] = p[(c + n - 1) % n] + p[c] + p[(c + 1) % n];
      if (!is_prime(next[c])) ok = false;
    }
    if (!ok) break;
    layers.push_back(next);
  }
  return layers;
}

// True when adjacent pairs cover 6..4+4n(n-1) exactly once and cells are odd primes.
inline bool goldbach_valid(const std::vector<std::int64_t>& cells, std::size_t n) {
  if (cells.size() != n * n) return false;
  for (std::int64_t v : cells) {
    if (!is_prime(v) || v == 2) return false;
  }
  std::map<std::int64_t, int> got;
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c + 1 < n; ++c) ++got[cells[r * n + c] + cells[r * n + c + 1]];
  }
  for (std::size_t r = 0; r + 1 < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) ++got[cells[r * n + c] + cells[(r + 1) * n + c]];
  }
  const std::int64_t top = 4 + 4 * static_cast<std::int64_t>(n) * (static_cast<std::int64_t>(n) - 1);
  std::map<std::int64_t, int> want;
  for (std::int64_t v = 6; v <= top; v += 2) want[v] = 1;
  return got == want;
}

// All odd-length (>= 3) in-bounds straight-line run sums of a grid;
// 3 directions by default (right, down, down-right), 4 adds down-left.
inline std::vector<std::int64_t> matrix_run_sums(const std::vector<std::int64_t>& cells, std::size_t n,
                                              bool anti_diagonals) {
  std::vector<std::int64_t> sums;
  std::vector<std::pair<int, int>> dirs{{0, 1}, {1, 0}, {1, 1}};
  if (anti_diagonals) dirs.push_back({1, -1});
  const int ni = static_cast<int>(n);
  for (auto [dr, dc] : dirs) {
    for (int len = 3; len <= ni; len += 2) {
      for (int r = 0; r < ni; ++r) {
        for (int c = 0; c < ni; ++c) {
          const int er = r + (len - 1) * dr, ec = c + (len - 1) * dc;
          if (er < 0 || er >= ni || ec < 0 || ec >= ni) continue;
          std::int64_t s = 0;
          for (int k = 0; k < len; ++k) s += cells[(r + k * dr) * ni + (c + k * dc)];
          sums.push_back(s);
        }
      }
    }
  }
  return sums;
}

inline bool matrix_valid(const std::vector<std::int64_t>& cells, std::size_t n,
                         bool anti_diagonals) {
  if (cells.size() != n * n || !distinct(cells)) return false;
  for (std::int64_t v : cells) {
    if (!is_prime(v) || v == 2) return false;
  }
  for (std::int64_t s : matrix_run_sums(cells, n, anti_diagonals)) {
    if (!is_prime(s)) return false;
  }
  return true;
}

// Smallest prime expressible as a sum of n distinct odd primes (n odd),
// by brute force over subsets of a generous pool.
inline std::int64_t smallest_prime_sum_of_distinct_odd_primes(std::size_t n) {
  std::vector<std::int64_t> odd;
  for (std::int64_t x = 3; odd.size() < 4 * n + 16; x += 2) {
    if (is_prime(x)) odd.push_back(x);
  }
  std::int64_t floor = 0;
  for (std::size_t i = 0; i < n; ++i) floor += odd[i];
  for (std::int64_t target = floor;; target += 2) {
    if (!is_prime(target)) continue;
    // depth-first subset-sum over the ascending pool
    bool found = false;
    struct Frame {
      std::size_t idx;
      std::size_t left;
      std::int64_t remain;
    };
    std::vector<Frame> frames{{0, n, target}};
    while (!frames.empty()) {
      Frame f = frames.back();
      frames.pop_back();
      if (f.left == 0) {
        if (f.remain == 0) {
          found = true;
          break;
        }
        continue;
      }
      if (f.idx >= odd.size()) continue;
      std::int64_t mn = 0, mx = 0;
      if (f.idx + f.left > odd.size()) continue;
      for (std::size_t k = 0; k < f.left; ++k) {
        mn += odd[f.idx + k];
        mx += odd[odd.size() - 1 - k];
      }
      if (f.remain < mn || f.remain > mx) continue;
      frames.push_back({f.idx + 1, f.left, f.remain});
      frames.push_back({f.idx + 1, f.left - 1, f.remain - odd[f.idx]});
    }
    if (found) return target;
  }
}

}  // namespace oracle
