#include <algorithm>
#include <map>
#include <numeric>

#include "primesum/construction.hpp"
#include "primesum/errors.hpp"
#include "primesum/primality.hpp"
#include "internal.hpp"

namespace primesum {

using detail::check_base_elements;
using detail::checked_add;

namespace {

constexpr std::size_t kMaxReportedViolations = 24;

void cap_violations(VerificationReport& report) {
  if (report.violations.size() > kMaxReportedViolations) {
    std::size_t extra = report.violations.size() - kMaxReportedViolations;
    report.violations.resize(kMaxReportedViolations);
    report.violations.push_back("... and " + std::to_string(extra) + " more");
  }
}

void record_window(VerificationReport& report, std::vector<std::size_t> at, std::int64_t value,
                   const std::string& what) {
  bool ok = is_prime(value);
  if (ok) {
    ++report.generated_primes;
  } else {
    report.violations.push_back(what + " sums to " + std::to_string(value) + " (composite)");
  }
  report.sums.push_back({std::move(at), value, ok});
}

}  // namespace

VerificationReport verify_vector(const std::vector<std::int64_t>& elements, bool cyclic) {
  const std::size_t n = elements.size();
  if (n == 0) throw ShapeError("vector must be non-empty");
  VerificationReport report;
  check_base_elements(elements, /*allow_two=*/true, /*distinct=*/true, report);
  if (!cyclic) {
    for (std::size_t len = 3; len <= n; len += 2) {
      for (std::size_t i = 0; i + len <= n; ++i) {
        std::int64_t s = 0;
        for (std::size_t k = 0; k < len; ++k) s = checked_add(s, elements[i + k]);
        record_window(report, {i, len}, s,
                      "window [" + std::to_string(i) + ".." + std::to_string(i + len - 1) + "]");
      }
    }
  } else {
    for (std::size_t len = 3; len < n; len += 2) {
      for (std::size_t i = 0; i < n; ++i) {
        std::int64_t s = 0;
        for (std::size_t k = 0; k < len; ++k) s = checked_add(s, elements[(i + k) % n]);
        const std::size_t last = i + len - 1;
        record_window(report, {i, len}, s,
                      "window [" + std::to_string(i) + ".." + std::to_string(last % n) +
                          (last < n ? "]" : "] (wraps)"));
      }
    }
    if (n % 2 == 1 && n >= 3) {
      // The full ring is one window, not n rotated copies.
      std::int64_t s = 0;
      for (std::int64_t e : elements) s = checked_add(s, e);
      record_window(report, {0, n}, s, "full ring");
    }
  }
  report.valid = report.violations.empty();
  cap_violations(report);
  return report;
}

VerificationReport verify_goldbach(const std::vector<std::int64_t>& elements, std::size_t order) {
  const std::size_t n = order;
  if (n < 2) throw ShapeError("goldbach square needs order >= 2");
  if (elements.size() != n * n) {
    throw ShapeError("goldbach square needs " + std::to_string(n * n) + " elements, got " +
                     std::to_string(elements.size()));
  }
  VerificationReport report;
  check_base_elements(elements, /*allow_two=*/false, /*distinct=*/false, report);
  const std::int64_t max_target = 4 + 4 * static_cast<std::int64_t>(n) * (n - 1);
  std::map<std::int64_t, std::size_t> coverage;
  auto pair_at = [&](std::size_t r0, std::size_t c0, std::size_t r1, std::size_t c1) {
    std::int64_t s = checked_add(elements[r0 * n + c0], elements[r1 * n + c1]);
    coverage[s]++;
    report.sums.push_back({{r0, c0, r1, c1}, s, true});  // ok fixed up below
  };
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c + 1 < n; ++c) pair_at(r, c, r, c + 1);
  }
  for (std::size_t r = 0; r + 1 < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) pair_at(r, c, r + 1, c);
  }
  for (auto& rec : report.sums) {
    std::int64_t s = rec.value;
    rec.ok = s >= 6 && s <= max_target && s % 2 == 0 && coverage[s] == 1;
  }
  for (std::int64_t t = 6; t <= max_target; t += 2) {
    auto it = coverage.find(t);
    std::size_t cnt = it == coverage.end() ? 0 : it->second;
    if (cnt == 0) {
      report.violations.push_back("even target " + std::to_string(t) + " is not covered");
    } else if (cnt > 1) {
      report.violations.push_back("even target " + std::to_string(t) + " is covered " +
                                  std::to_string(cnt) + " times");
    }
  }
  for (auto& [t, cnt] : coverage) {
    if (t < 6 || t > max_target) {
      report.violations.push_back("pair sum " + std::to_string(t) + " falls outside 6.." +
                                  std::to_string(max_target));
    }
  }
  report.notes.push_back((report.violations.empty() ? "covers 6.." : "targets 6..") +
                         std::to_string(max_target));
  report.valid = report.violations.empty();
  cap_violations(report);
  return report;
}

VerificationReport verify_matrix(const std::vector<std::int64_t>& elements, std::size_t order,
                                 const MatrixOptions& options) {
  const std::size_t n = order;
  if (n == 0) throw ShapeError("matrix order must be >= 1");
  if (elements.size() != n * n) {
    throw ShapeError("matrix needs " + std::to_string(n * n) + " elements, got " +
                     std::to_string(elements.size()));
  }
  VerificationReport report;
  check_base_elements(elements, /*allow_two=*/false, /*distinct=*/true, report);
  struct Dir {
    int dr, dc;
    const char* name;
  };
  std::vector<Dir> dirs{{0, 1, "right"}, {1, 0, "down"}, {1, 1, "down-right"}};
  if (options.anti_diagonals) dirs.push_back({1, -1, "down-left"});
  const int ni = static_cast<int>(n);
  for (std::size_t d = 0; d < dirs.size(); ++d) {
    auto [dr, dc, name] = dirs[d];
    for (int len = 3; len <= ni; len += 2) {
      for (int r = 0; r < ni; ++r) {
        for (int c = 0; c < ni; ++c) {
          int er = r + (len - 1) * dr, ec = c + (len - 1) * dc;
          if (er < 0 || er >= ni || ec < 0 || ec >= ni) continue;
          std::int64_t s = 0;
          for (int k = 0; k < len; ++k) {
            s = checked_add(s, elements[static_cast<std::size_t>((r + k * dr) * ni + c + k * dc)]);
          }
          record_window(report,
                        {d, static_cast<std::size_t>(r), static_cast<std::size_t>(c),
                         static_cast<std::size_t>(len)},
                        s,
                        std::string(name) + " run at (" + std::to_string(r) + "," +
                            std::to_string(c) + ") len " + std::to_string(len));
        }
      }
    }
  }
  if (options.anti_diagonals) report.notes.push_back("anti-diagonal runs included");
  report.valid = report.violations.empty();
  cap_violations(report);
  return report;
}

VerificationReport verify(const Construction& construction, const MatrixOptions& options) {
  const auto& e = construction.elements;
  const std::size_t expect = element_count(construction.kind, construction.order);
  switch (construction.kind) {
    case Kind::Vector:
    case Kind::CyclicVector:
      if (e.size() != expect) {
        throw ShapeError("vector of order " + std::to_string(construction.order) + " needs " +
                         std::to_string(expect) + " elements, got " + std::to_string(e.size()));
      }
      return verify_vector(e, construction.kind == Kind::CyclicVector);
    case Kind::GoldbachSquare:
      return verify_goldbach(e, construction.order);
    case Kind::Matrix:
      return verify_matrix(e, construction.order, options);
    case Kind::Tuple: {
      if (e.size() != expect) {
        throw ShapeError("tuple seed of order " + std::to_string(construction.order) + " needs " +
                         std::to_string(expect) + " elements, got " + std::to_string(e.size()));
      }
      Expansion ex = expand_tuple(e, 0);  // run to natural stop
      VerificationReport report = std::move(ex.report);
      std::size_t reached = ex.construction.elements.size();
      if (construction.aux != 0 && reached != construction.aux) {
        report.violations.push_back("claimed length " + std::to_string(construction.aux) +
                                    " but the seed generates exactly " + std::to_string(reached) +
                                    " terms");
      }
      report.valid = report.violations.empty();
      cap_violations(report);
      return report;
    }
    case Kind::Stair: {
      if (e.size() != expect) {
        throw ShapeError("stair of order " + std::to_string(construction.order) + " needs " +
                         std::to_string(expect) + " first-row elements, got " +
                         std::to_string(e.size()));
      }
      VerificationReport report = expand_stair(e).report;
      cap_violations(report);
      return report;
    }
    case Kind::Pyramid: {
      VerificationReport report = expand_pyramid(e, construction.order).report;
      cap_violations(report);
      return report;
    }
    case Kind::Cylinder: {
      if (e.size() != expect) {
        throw ShapeError("cylinder of order " + std::to_string(construction.order) + " needs " +
                         std::to_string(expect) + " first-layer elements, got " +
                         std::to_string(e.size()));
      }
      Expansion ex = expand_cylinder(e, 0);  // run to natural stop
      VerificationReport report = std::move(ex.report);
      std::size_t reached = ex.construction.aux;
      if (construction.aux != 0 && reached != construction.aux) {
        report.violations.push_back("claimed " + std::to_string(construction.aux) +
                                    " layers but the first layer generates exactly " +
                                    std::to_string(reached));
      }
      report.valid = report.violations.empty();
      cap_violations(report);
      return report;
    }
  }
  throw ConfigError("unknown kind value");
}

}  // namespace primesum
