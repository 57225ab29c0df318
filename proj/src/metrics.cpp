#include "primesum/metrics.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <functional>

#include "json.hpp"
#include "primesum/errors.hpp"
#include "primesum/primality.hpp"
#include "internal.hpp"

namespace primesum {

std::uint64_t weight(const Construction& construction) {
  const std::size_t base = element_count(construction.kind, construction.order);
  if (construction.elements.size() < base) {
    throw ShapeError("construction needs " + std::to_string(base) + " base elements, got " +
                     std::to_string(construction.elements.size()));
  }
  std::uint64_t w = 0;
  for (std::size_t i = 0; i < base; ++i) {
    std::int64_t e = construction.elements[i];
    if (e < 0) throw DomainOverflowError("negative element");
    w += static_cast<std::uint64_t>(e);
  }
  return w;
}

namespace {

std::size_t odd_windows_in_line(std::size_t len) {
  // windows of odd length >= 3 inside a line of `len` cells
  return len < 3 ? 0 : (len - 1) * (len - 1) / 4;
}

std::size_t matrix_sum_count(std::size_t n) {
  // right + down + down-right + down-left, enumerated directly
  std::size_t rows = n * odd_windows_in_line(n);
  std::size_t diag = 0;
  for (std::size_t d = 1; d < n; ++d) diag += 2 * odd_windows_in_line(d);
  diag += odd_windows_in_line(n);
  return 2 * rows + 2 * diag;
}

}  // namespace

std::size_t sum_count(Kind kind, std::size_t order, std::size_t aux) {
  const std::size_t n = order;
  if (n == 0) throw ConfigError("order must be >= 1");
  switch (kind) {
    case Kind::Vector:
      return (n - 1) * (n - 1) / 4;
    case Kind::CyclicVector:
      if (n <= 2) return 0;
      return (n - 2) * (2 * n - 1 + (n % 2 == 0 ? 1 : -1)) / 4;
    case Kind::Tuple:
      if (aux < n) throw ConfigError("tuple sum_count needs aux = total length >= order");
      return aux - n;
    case Kind::Stair:
      return (n - 1) * (n - 1) / 4;
    case Kind::Pyramid:
      return n * (n - 1) * (n - 2) / 6;
    case Kind::Cylinder:
      if (aux < 1) throw ConfigError("cylinder sum_count needs aux = total layers >= 1");
      return n * (aux - 1);
    case Kind::GoldbachSquare:
      return 2 * n * (n - 1);
    case Kind::Matrix:
      return matrix_sum_count(n);
  }
  throw ConfigError("unknown kind value");
}

std::string Ratio::to_decimal(int places) const {
  if (den == 0) throw ConfigError("zero denominator");
  std::uint64_t scale = 1;
  for (int i = 0; i < places; ++i) scale *= 10;
  std::uint64_t scaled = num * scale;
  std::uint64_t q = scaled / den, r = scaled % den;
  if (2 * r >= den) ++q;  // round half up
  if (places == 0) return std::to_string(q);
  std::string frac = std::to_string(q % scale);
  frac.insert(frac.begin(), places - frac.size(), '0');
  return std::to_string(q / scale) + "." + frac;
}

Ratio efficiency(Kind kind, std::size_t order, std::size_t aux) {
  if (kind == Kind::GoldbachSquare) {
    throw ConfigError("goldbach squares produce even targets, not prime sums");
  }
  return Ratio{sum_count(kind, order, aux), element_count(kind, order)};
}

Ratio efficiency(const Construction& construction) {
  return efficiency(construction.kind, construction.order, construction.aux);
}

std::uint64_t vector_weight_lower_bound(std::size_t order) {
  if (order == 0) throw ConfigError("order must be >= 1");
  if (order == 1) return 2;
  const std::size_t n = order;
  std::vector<std::int64_t> odd;
  {
    std::int64_t limit = 64;
    while (true) {
      odd.clear();
      for (std::int64_t p : primes_up_to(limit)) {
        if (p > 2) odd.push_back(p);
      }
      if (odd.size() >= 4 * n) break;
      limit *= 2;
    }
  }
  std::uint64_t s0 = 0;
  for (std::size_t k = 0; k < n; ++k) s0 += static_cast<std::uint64_t>(odd[k]);
  if (n % 2 == 0) return s0;
  // odd order: the full window is one of the sums, so the weight itself must
  // be prime; find the smallest prime >= s0 reachable with distinct odd primes
  std::function<bool(std::size_t, std::size_t, std::uint64_t)> can =
      [&](std::size_t idx, std::size_t left, std::uint64_t target) -> bool {
    if (left == 0) return target == 0;
    if (idx + left > odd.size()) return false;
    std::uint64_t mn = 0, mx = 0;
    for (std::size_t k = 0; k < left; ++k) {
      mn += static_cast<std::uint64_t>(odd[idx + k]);
      mx += static_cast<std::uint64_t>(odd[odd.size() - 1 - k]);
    }
    if (target < mn || target > mx) return false;
    if (can(idx + 1, left - 1, target - static_cast<std::uint64_t>(odd[idx]))) return true;
    return can(idx + 1, left, target);
  };
  for (std::uint64_t t = s0;; t += 2) {
    if (!is_prime(static_cast<std::int64_t>(t))) continue;
    if (can(0, n, t)) return t;
  }
}

std::vector<EfficiencyRow> efficiency_table(const std::vector<Construction>& constructions) {
  std::vector<EfficiencyRow> rows;
  rows.reserve(constructions.size());
  for (const auto& c : constructions) {
    if (c.kind == Kind::GoldbachSquare) continue;  // no prime sums to rate
    EfficiencyRow row;
    row.construction = c;
    row.weight = weight(c);
    row.sums = sum_count(c.kind, c.order, c.aux);
    row.efficiency = efficiency(c.kind, c.order, c.aux);
    row.valid = verify(c).valid;
    rows.push_back(std::move(row));
  }
  std::sort(rows.begin(), rows.end(), [](const EfficiencyRow& a, const EfficiencyRow& b) {
    std::uint64_t lhs = a.efficiency.num * b.efficiency.den;
    std::uint64_t rhs = b.efficiency.num * a.efficiency.den;
    if (lhs != rhs) return lhs > rhs;
    if (a.construction.kind != b.construction.kind) {
      return a.construction.kind < b.construction.kind;
    }
    return a.construction.order < b.construction.order;
  });
  return rows;
}

std::vector<BoundsRecord> read_bounds(std::istream& in) {
  std::vector<BoundsRecord> records;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    nlohmann::json j = nlohmann::json::parse(line, nullptr, /*allow_exceptions=*/false);
    if (j.is_discarded() || !j.is_object()) {
      throw ParseError("line " + std::to_string(line_no) + ": not a JSON object", line_no);
    }
    try {
      BoundsRecord rec;
      rec.kind = kind_from_name(j.at("kind").get<std::string>());
      rec.order = j.at("order").get<std::size_t>();
      rec.lower_bound = j.at("lower_bound").get<std::uint64_t>();
      rec.best_known_weight = j.at("best_known_weight").get<std::uint64_t>();
      rec.proven_optimal = j.value("proven_optimal", false);
      if (rec.lower_bound > rec.best_known_weight) {
        throw ParseError("lower_bound " + std::to_string(rec.lower_bound) +
                         " exceeds best_known_weight " + std::to_string(rec.best_known_weight));
      }
      records.push_back(rec);
    } catch (const nlohmann::json::exception& e) {
      throw ParseError("line " + std::to_string(line_no) + ": " + e.what(), line_no);
    } catch (const ParseError& e) {
      throw ParseError("line " + std::to_string(line_no) + ": " + e.what(), line_no);
    }
  }
  return records;
}

std::vector<BoundsRecord> read_bounds_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  return read_bounds(in);
}

}  // namespace primesum
