#include "primesum/construction.hpp"

#include <algorithm>
#include <set>

#include "primesum/errors.hpp"
#include "primesum/primality.hpp"
#include "internal.hpp"

namespace primesum {

using detail::check_base_elements;
using detail::checked_add;

namespace {

constexpr std::pair<Kind, std::string_view> kKindNames[] = {
    {Kind::Vector, "vector"},
    {Kind::CyclicVector, "cyclic_vector"},
    {Kind::Tuple, "tuple"},
    {Kind::Stair, "stair"},
    {Kind::Pyramid, "pyramid"},
    {Kind::Cylinder, "cylinder"},
    {Kind::GoldbachSquare, "goldbach_square"},
    {Kind::Matrix, "matrix"},
};

}  // namespace

std::string_view kind_name(Kind kind) {
  for (auto [k, name] : kKindNames) {
    if (k == kind) return name;
  }
  throw ConfigError("unknown kind value");
}

Kind kind_from_name(std::string_view name) {
  for (auto [k, n] : kKindNames) {
    if (n == name) return k;
  }
  throw ParseError("unknown construction kind '" + std::string(name) + "'");
}

std::size_t element_count(Kind kind, std::size_t order) {
  if (order == 0) throw ConfigError("order must be >= 1");
  switch (kind) {
    case Kind::Pyramid:
    case Kind::GoldbachSquare:
    case Kind::Matrix:
      return order * order;
    default:
      return order;
  }
}

bool requires_distinct(Kind kind) {
  switch (kind) {
    case Kind::Cylinder:
    case Kind::GoldbachSquare:
      return false;
    default:
      return true;
  }
}

Expansion expand_tuple(const std::vector<std::int64_t>& seed, std::size_t max_length) {
  const std::size_t n = seed.size();
  if (n == 0) throw ShapeError("tuple seed must be non-empty");
  Expansion out;
  out.construction.kind = Kind::Tuple;
  out.construction.order = n;
  out.construction.elements = seed;
  check_base_elements(seed, /*allow_two=*/false, /*distinct=*/true, out.report);
  if (n % 2 == 0) out.report.violations.push_back("tuple order must be odd");
  if (out.report.violations.empty()) {
    std::set<std::int64_t> seen(seed.begin(), seed.end());
    auto& terms = out.construction.elements;
    while (max_length == 0 || terms.size() < max_length) {
      std::int64_t s = 0;
      for (std::size_t k = terms.size() - n; k < terms.size(); ++k) s = checked_add(s, terms[k]);
      bool prime = is_prime(s);
      bool fresh = !seen.count(s);
      if (!prime || !fresh) {
        out.report.notes.push_back("next term " + std::to_string(s) + " is " +
                                   (prime ? "a repeat" : "composite") +
                                   "; sequence stops at length " +
                                   std::to_string(terms.size()));
        break;
      }
      out.report.sums.push_back({{terms.size()}, s, true});
      ++out.report.generated_primes;
      terms.push_back(s);
      seen.insert(s);
    }
  }
  out.construction.aux = out.construction.elements.size();
  out.report.valid = out.report.violations.empty();
  out.report.notes.push_back("expanded to " + std::to_string(out.construction.elements.size()) +
                             " terms");
  return out;
}

Expansion expand_stair(const std::vector<std::int64_t>& first_row) {
  const std::size_t n = first_row.size();
  if (n == 0) throw ShapeError("stair first row must be non-empty");
  Expansion out;
  out.construction.kind = Kind::Stair;
  out.construction.order = n;
  out.construction.elements = first_row;
  check_base_elements(first_row, /*allow_two=*/false, /*distinct=*/true, out.report);
  std::set<std::int64_t> all(first_row.begin(), first_row.end());
  std::vector<std::int64_t> prev = first_row;
  const std::size_t rows = (n + 1) / 2;  // widths n, n-2, ..., down to 1 or 2
  for (std::size_t r = 1; r < rows; ++r) {
    std::vector<std::int64_t> cur;
    for (std::size_t c = 0; c + 2 < prev.size(); ++c) {
      std::int64_t s = checked_add(checked_add(prev[c], prev[c + 1]), prev[c + 2]);
      bool ok = is_prime(s);
      out.report.sums.push_back({{r, c}, s, ok});
      if (ok) {
        ++out.report.generated_primes;
      } else {
        out.report.violations.push_back("row " + std::to_string(r) + " cell " +
                                        std::to_string(c) + " = " + std::to_string(s) +
                                        " is composite");
      }
      if (!all.insert(s).second) {
        out.report.notes.push_back("row " + std::to_string(r) + " cell " + std::to_string(c) +
                                   " = " + std::to_string(s) + " repeats an earlier value");
      }
      cur.push_back(s);
      out.construction.elements.push_back(s);
    }
    prev = std::move(cur);
  }
  out.report.valid = out.report.violations.empty();
  out.report.notes.push_back(std::to_string(rows) + " rows");
  return out;
}

Expansion expand_pyramid(const std::vector<std::int64_t>& base, std::size_t order) {
  const std::size_t n = order;
  if (n == 0) throw ShapeError("pyramid order must be >= 1");
  if (base.size() != n * n) {
    throw ShapeError("pyramid base needs " + std::to_string(n * n) + " elements, got " +
                     std::to_string(base.size()));
  }
  Expansion out;
  out.construction.kind = Kind::Pyramid;
  out.construction.order = n;
  out.construction.elements = base;
  check_base_elements(base, /*allow_two=*/false, /*distinct=*/true, out.report);
  std::set<std::int64_t> all(base.begin(), base.end());
  std::vector<std::int64_t> prev = base;  // level k-1, width n-2(k-1), row-major
  std::size_t width = n;
  const std::size_t levels = (n + 1) / 2;
  for (std::size_t k = 1; k < levels; ++k) {
    const std::size_t w = width - 2;
    std::vector<std::int64_t> cur(w * w);
    for (std::size_t r = 0; r < w; ++r) {
      for (std::size_t c = 0; c < w; ++c) {
        std::int64_t s = 0;
        for (std::size_t dr = 0; dr < 3; ++dr) {
          for (std::size_t dc = 0; dc < 3; ++dc) {
            s = checked_add(s, prev[(r + dr) * width + (c + dc)]);
          }
        }
        bool ok = is_prime(s);
        out.report.sums.push_back({{k, r, c}, s, ok});
        if (ok) {
          ++out.report.generated_primes;
        } else {
          out.report.violations.push_back("level " + std::to_string(k) + " cell (" +
                                          std::to_string(r) + "," + std::to_string(c) + ") = " +
                                          std::to_string(s) + " is composite");
        }
        if (!all.insert(s).second) {
          out.report.notes.push_back("level " + std::to_string(k) + " cell (" +
                                     std::to_string(r) + "," + std::to_string(c) + ") = " +
                                     std::to_string(s) + " repeats an earlier value");
        }
        cur[r * w + c] = s;
        out.construction.elements.push_back(s);
      }
    }
    prev = std::move(cur);
    width = w;
  }
  out.report.valid = out.report.violations.empty();
  out.report.notes.push_back(std::to_string(levels) + " levels");
  return out;
}

Expansion expand_cylinder(const std::vector<std::int64_t>& first_layer, std::size_t max_layers) {
  const std::size_t n = first_layer.size();
  if (n == 0) throw ShapeError("cylinder first layer must be non-empty");
  Expansion out;
  out.construction.kind = Kind::Cylinder;
  out.construction.order = n;
  out.construction.elements = first_layer;
  check_base_elements(first_layer, /*allow_two=*/false, /*distinct=*/false, out.report);
  std::size_t layers = 1;
  if (out.report.violations.empty()) {
    std::vector<std::int64_t> prev = first_layer;
    while (max_layers == 0 || layers < max_layers) {
      std::vector<std::int64_t> cur(n);
      bool ok = true;
      for (std::size_t c = 0; c < n; ++c) {
        cur[c] = checked_add(checked_add(prev[(c + n - 1) % n], prev[c]), prev[(c + 1) % n]);
        if (!is_prime(cur[c])) ok = false;
      }
      if (!ok) {
        out.report.notes.push_back("layer " + std::to_string(layers) +
                                   " would contain a composite cell; expansion stops at " +
                                   std::to_string(layers) + " layers");
        break;
      }
      for (std::size_t c = 0; c < n; ++c) {
        out.report.sums.push_back({{layers, c}, cur[c], true});
        ++out.report.generated_primes;
        out.construction.elements.push_back(cur[c]);
      }
      prev = std::move(cur);
      ++layers;
    }
  }
  out.construction.aux = layers;
  out.report.valid = out.report.violations.empty();
  out.report.notes.push_back(std::to_string(layers) + " layers");
  return out;
}

Expansion expand(const Construction& construction) {
  const auto& e = construction.elements;
  switch (construction.kind) {
    case Kind::Tuple:
      if (e.size() != construction.order) {
        throw ShapeError("tuple seed must have exactly `order` elements");
      }
      return expand_tuple(e, construction.aux);
    case Kind::Stair:
      if (e.size() != construction.order) {
        throw ShapeError("stair first row must have exactly `order` elements");
      }
      return expand_stair(e);
    case Kind::Pyramid:
      return expand_pyramid(e, construction.order);
    case Kind::Cylinder:
      if (e.size() != construction.order) {
        throw ShapeError("cylinder first layer must have exactly `order` elements");
      }
      return expand_cylinder(e, construction.aux);
    default:
      throw ConfigError(std::string("expand does not apply to kind '") +
                        std::string(kind_name(construction.kind)) + "'");
  }
}

}  // namespace primesum
