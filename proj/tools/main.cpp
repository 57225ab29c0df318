// primesum: verify, expand, search, optimize, and report on prime-sum
// constructions stored as JSONL documents.
//
// Exit codes: 0 success/valid, 1 invalid or nothing found, 2 usage or data
// errors, 3 inconclusive (node budget exhausted).

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <iomanip>
#include <iostream>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "primesum/construction.hpp"
#include "primesum/document.hpp"
#include "primesum/errors.hpp"
#include "primesum/exhaustive.hpp"
#include "primesum/metrics.hpp"
#include "primesum/search.hpp"

namespace {

using nlohmann::ordered_json;
using namespace primesum;

std::vector<Document> load_documents(const std::string& path) {
  if (path.empty() || path == "-") return read_jsonl(std::cin);
  return read_jsonl_file(path);
}

ordered_json document_json(const Document& document) {
  return ordered_json::parse(to_json(document));
}

std::string join(const std::vector<std::string>& parts, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

// ---------------------------------------------------------------------------

// Order is explicit for grids (side length) and otherwise equals the element
// count; inline input carries a flat element list, so derive accordingly.
std::size_t derive_order(Kind kind, std::size_t element_total) {
  switch (kind) {
    case Kind::Pyramid:
    case Kind::GoldbachSquare:
    case Kind::Matrix: {
      auto side = static_cast<std::size_t>(std::llround(std::sqrt(double(element_total))));
      if (side * side != element_total) {
        throw ShapeError("a square grid needs a square element count, got " +
                         std::to_string(element_total));
      }
      return side;
    }
    default:
      return element_total;
  }
}

int run_verify(const std::string& path, const std::string& inline_kind,
               const std::vector<std::int64_t>& inline_elements, std::size_t inline_order,
               std::size_t inline_aux, bool as_json, bool anti_diagonals, bool quiet) {
  std::vector<Document> documents;
  if (!inline_elements.empty()) {
    if (inline_kind.empty()) throw ConfigError("--elements needs --kind");
    Document document;
    document.construction.kind = kind_from_name(inline_kind);
    document.construction.order =
        inline_order != 0 ? inline_order : derive_order(document.construction.kind,
                                                        inline_elements.size());
    document.construction.elements = inline_elements;
    document.construction.aux = inline_aux;
    documents.push_back(std::move(document));
  } else {
    documents = load_documents(path);
  }
  const MatrixOptions options{anti_diagonals};
  std::size_t valid_count = 0;
  for (std::size_t i = 0; i < documents.size(); ++i) {
    const Construction& c = documents[i].construction;
    VerificationReport report = verify(c, options);
    if (report.valid) ++valid_count;
    if (as_json) {
      ordered_json line;
      line["index"] = i + 1;
      line["kind"] = std::string(kind_name(c.kind));
      line["order"] = c.order;
      line["weight"] = weight(c);
      line["sums"] = report.sums.size();
      line["valid"] = report.valid;
      line["violations"] = report.violations;
      line["notes"] = report.notes;
      std::cout << line.dump() << "\n";
    } else if (!quiet) {
      std::cout << "#" << (i + 1) << " " << kind_name(c.kind) << " order " << c.order
                << " weight " << weight(c) << ": " << (report.valid ? "VALID" : "INVALID");
      if (report.valid) {
        std::vector<std::string> parts;
        if (report.generated_primes > 0) {
          parts.push_back(std::to_string(report.generated_primes) + " prime sums");
        }
        parts.insert(parts.end(), report.notes.begin(), report.notes.end());
        if (!parts.empty()) std::cout << " — " << join(parts, "; ");
      } else {
        std::cout << " — " << join(report.violations, "; ");
      }
      std::cout << "\n";
    }
  }
  if (!as_json) {
    std::cout << documents.size() << " documents: " << valid_count << " valid, "
              << (documents.size() - valid_count) << " invalid\n";
  }
  return valid_count == documents.size() ? 0 : 1;
}

// ---------------------------------------------------------------------------

void print_rows(const std::vector<std::int64_t>& elements, std::size_t offset,
                std::size_t count, const std::string& label) {
  std::cout << "  " << label;
  if (!label.empty()) std::cout << ":";
  for (std::size_t i = 0; i < count; ++i) std::cout << " " << elements[offset + i];
  std::cout << "\n";
}

int run_expand(const std::string& path, bool as_json, std::size_t max) {
  const std::vector<Document> documents = load_documents(path);
  bool all_valid = true;
  for (std::size_t i = 0; i < documents.size(); ++i) {
    const Construction& c = documents[i].construction;
    Expansion ex;
    switch (c.kind) {
      case Kind::Tuple:
        ex = expand_tuple(c.elements, max);
        break;
      case Kind::Stair:
        ex = expand_stair(c.elements);
        break;
      case Kind::Pyramid:
        ex = expand_pyramid(c.elements, c.order);
        break;
      case Kind::Cylinder:
        ex = expand_cylinder(c.elements, max);
        break;
      default:
        throw ConfigError(std::string("document #") + std::to_string(i + 1) + ": " +
                          std::string(kind_name(c.kind)) +
                          " is fully written out already; nothing to expand");
    }
    all_valid = all_valid && ex.report.valid;
    const std::size_t base = element_count(c.kind, c.order);
    if (as_json) {
      ordered_json line;
      line["index"] = i + 1;
      line["kind"] = std::string(kind_name(c.kind));
      line["order"] = c.order;
      line["valid"] = ex.report.valid;
      line["base"] = std::vector<std::int64_t>(ex.construction.elements.begin(),
                                               ex.construction.elements.begin() + base);
      line["generated"] = std::vector<std::int64_t>(ex.construction.elements.begin() + base,
                                                    ex.construction.elements.end());
      if (ex.construction.aux != 0) line["aux"] = ex.construction.aux;
      line["violations"] = ex.report.violations;
      line["notes"] = ex.report.notes;
      std::cout << line.dump() << "\n";
      continue;
    }
    std::cout << "#" << (i + 1) << " " << kind_name(c.kind) << " order " << c.order << ": "
              << (ex.report.valid ? "VALID" : "INVALID") << "\n";
    const auto& all = ex.construction.elements;
    switch (c.kind) {
      case Kind::Tuple:
        print_rows(all, 0, all.size(), "terms (" + std::to_string(all.size()) + ")");
        break;
      case Kind::Stair: {
        std::size_t offset = 0, width = c.order, row = 0;
        while (offset < all.size()) {
          print_rows(all, offset, width, "row " + std::to_string(row));
          offset += width;
          width -= 2;
          ++row;
        }
        break;
      }
      case Kind::Pyramid: {
        std::size_t offset = 0, width = c.order, level = 0;
        while (offset < all.size()) {
          std::cout << "  level " << level << ":\n";
          for (std::size_t r = 0; r < width; ++r) {
            print_rows(all, offset + r * width, width, "");
          }
          offset += width * width;
          width -= 2;
          ++level;
        }
        break;
      }
      case Kind::Cylinder: {
        for (std::size_t layer = 0; layer * c.order < all.size(); ++layer) {
          print_rows(all, layer * c.order, c.order, "layer " + std::to_string(layer));
        }
        break;
      }
      default:
        break;
    }
    for (const std::string& v : ex.report.violations) std::cout << "  ! " << v << "\n";
    for (const std::string& n : ex.report.notes) std::cout << "  - " << n << "\n";
  }
  return all_valid ? 0 : 1;
}

// ---------------------------------------------------------------------------

int run_search(SearchConfig config, bool as_json) {
  config.on_improvement = [](std::uint64_t restart, std::uint64_t score,
                             const std::vector<std::int64_t>& elements) {
    const std::int64_t w = std::accumulate(elements.begin(), elements.end(), std::int64_t{0});
    std::cerr << "restart " << (restart + 1) << ": score " << score << ", weight " << w << "\n";
  };
  SearchResult result = hill_climb(config);
  if (as_json) {
    ordered_json line;
    line["success"] = result.success;
    line["score"] = result.score;
    line["restarts"] = result.stats.restarts;
    line["iterations"] = result.stats.iterations;
    if (result.success) {
      Document document;
      document.construction = result.best;
      line["document"] = document_json(document);
    }
    std::cout << line.dump() << "\n";
  } else if (result.success) {
    Document document;
    document.construction = result.best;
    std::cout << to_json(document) << "\n";
    std::cerr << "success: weight " << weight(result.best) << " after "
              << result.stats.restarts << " restarts, " << result.stats.iterations
              << " iterations\n";
  } else {
    std::cerr << "no valid construction found (best score " << result.score << " after "
              << result.stats.restarts << " restarts)\n";
  }
  return result.success ? 0 : 1;
}

// ---------------------------------------------------------------------------

int run_optimize(Kind kind, std::size_t order, const ExhaustiveOptions& options,
                 std::uint64_t prove_floor, bool as_json) {
  if (prove_floor != 0) {
    bool proven = prove_weight_floor(kind, order, prove_floor, options);
    if (as_json) {
      ordered_json line;
      line["kind"] = std::string(kind_name(kind));
      line["order"] = order;
      line["claimed_weight"] = prove_floor;
      line["proven"] = proven;
      std::cout << line.dump() << "\n";
    } else if (proven) {
      std::cout << "proven: every " << kind_name(kind) << " of order " << order
                << " weighs at least " << prove_floor << "\n";
    } else {
      std::cout << "refuted: a " << kind_name(kind) << " of order " << order
                << " lighter than " << prove_floor << " exists\n";
    }
    return proven ? 0 : 1;
  }

  OptimalResult result = optimize(kind, order, options);
  if (as_json) {
    ordered_json line;
    line["found"] = result.found;
    line["weight"] = result.weight;
    line["proven_optimal"] = result.proven_optimal;
    line["nodes"] = result.nodes_explored;
    if (result.found) {
      Document document;
      document.construction = result.construction;
      line["document"] = document_json(document);
    }
    std::cout << line.dump() << "\n";
  } else if (result.found) {
    Document document;
    document.construction = result.construction;
    std::cout << to_json(document) << "\n";
    std::cerr << (result.proven_optimal ? "optimal" : "best found") << " weight "
              << result.weight << " (" << result.nodes_explored << " nodes)\n";
  } else {
    std::cerr << "no construction found"
              << (result.proven_optimal ? " (range exhausted)" : " (budget exhausted)") << " after "
              << result.nodes_explored << " nodes\n";
  }
  if (result.found) return 0;
  return result.proven_optimal ? 1 : 3;
}

// ---------------------------------------------------------------------------

int run_report_bounds(const std::string& path, const std::string& format) {
  std::vector<BoundsRecord> records;
  if (path.empty() || path == "-") {
    records = read_bounds(std::cin);
  } else {
    records = read_bounds_file(path);
  }
  if (records.empty()) throw ConfigError("no bounds records supplied");
  std::stable_sort(records.begin(), records.end(), [](const BoundsRecord& a,
                                                      const BoundsRecord& b) {
    if (a.kind != b.kind) return kind_name(a.kind) < kind_name(b.kind);
    return a.order < b.order;
  });
  if (format == "json") {
    for (const BoundsRecord& r : records) {
      ordered_json line;
      line["kind"] = std::string(kind_name(r.kind));
      line["order"] = r.order;
      line["lower_bound"] = r.lower_bound;
      line["best_known_weight"] = r.best_known_weight;
      line["proven_optimal"] = r.proven_optimal;
      std::cout << line.dump() << "\n";
    }
    return 0;
  }
  if (format == "csv") {
    std::cout << "kind,order,lower_bound,best_known_weight,proven_optimal\n";
    for (const BoundsRecord& r : records) {
      std::cout << kind_name(r.kind) << "," << r.order << "," << r.lower_bound << ","
                << r.best_known_weight << "," << (r.proven_optimal ? "true" : "false") << "\n";
    }
    return 0;
  }
  std::cout << std::left << std::setw(16) << "kind" << std::right << std::setw(6) << "order"
            << std::setw(13) << "lower-bound" << std::setw(12) << "best-known" << "  proven\n";
  for (const BoundsRecord& r : records) {
    std::cout << std::left << std::setw(16) << kind_name(r.kind) << std::right << std::setw(6)
              << r.order << std::setw(13) << r.lower_bound << std::setw(12)
              << r.best_known_weight << "  " << (r.proven_optimal ? "yes" : "no") << "\n";
  }
  return 0;
}

int run_report(const std::string& path, const std::string& format) {
  const std::vector<Document> documents = load_documents(path);
  if (documents.empty()) throw ConfigError("no documents supplied");
  std::vector<Construction> constructions;
  constructions.reserve(documents.size());
  std::size_t unrated = 0;
  for (const Document& d : documents) {
    if (d.construction.kind == Kind::GoldbachSquare) ++unrated;
    constructions.push_back(d.construction);
  }
  std::vector<EfficiencyRow> rows = efficiency_table(constructions);
  if (format == "json") {
    for (const EfficiencyRow& row : rows) {
      ordered_json line;
      line["kind"] = std::string(kind_name(row.construction.kind));
      line["order"] = row.construction.order;
      line["weight"] = row.weight;
      line["sums"] = row.sums;
      line["efficiency"] = row.efficiency.to_decimal(2);
      line["valid"] = row.valid;
      std::cout << line.dump() << "\n";
    }
  } else if (format == "csv") {
    std::cout << "kind,order,weight,sums,efficiency,valid\n";
    for (const EfficiencyRow& row : rows) {
      std::cout << kind_name(row.construction.kind) << "," << row.construction.order << ","
                << row.weight << "," << row.sums << "," << row.efficiency.to_decimal(2) << ","
                << (row.valid ? "true" : "false") << "\n";
    }
  } else {
    std::cout << std::left << std::setw(16) << "kind" << std::right << std::setw(6) << "order"
              << std::setw(10) << "weight" << std::setw(7) << "sums" << std::setw(13)
              << "per-element" << "  valid\n";
    for (const EfficiencyRow& row : rows) {
      std::cout << std::left << std::setw(16) << kind_name(row.construction.kind) << std::right
                << std::setw(6) << row.construction.order << std::setw(10) << row.weight
                << std::setw(7) << row.sums << std::setw(13) << row.efficiency.to_decimal(2)
                << "  " << (row.valid ? "yes" : "NO") << "\n";
    }
    if (unrated > 0) {
      std::cout << "(" << unrated
                << " goldbach_square document(s) not rated: their pair sums are even targets, "
                   "not primes)\n";
    }
  }
  int invalid = 0;
  for (const EfficiencyRow& row : rows) {
    if (!row.valid) {
      std::cerr << "invalid construction: " << kind_name(row.construction.kind) << " order "
                << row.construction.order << "\n";
      ++invalid;
    }
  }
  return invalid ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"prime-sum construction toolkit"};
  app.set_version_flag("--version", "primesum 1.0.0");
  app.require_subcommand(1);

  // verify -------------------------------------------------------------------
  auto* verify_cmd = app.add_subcommand("verify", "check JSONL documents against their rules");
  std::string verify_path;
  std::string verify_kind;
  std::vector<std::int64_t> verify_elements;
  std::size_t verify_order = 0, verify_aux = 0;
  bool verify_json = false, verify_anti = false, verify_quiet = false;
  verify_cmd->add_option("input", verify_path, "JSONL file ('-' or empty reads stdin)");
  verify_cmd->add_option("--kind", verify_kind, "inline construction kind (with --elements)");
  verify_cmd
      ->add_option("--elements", verify_elements,
                   "inline elements, row-major for grids (skips the input file)")
      ->expected(-1)
      ->delimiter(',');
  verify_cmd->add_option("--order", verify_order,
                         "inline order (default: element count, or grid side)");
  verify_cmd->add_option("--aux", verify_aux, "inline claimed tuple length / cylinder layers");
  verify_cmd->add_flag("--json", verify_json, "one JSON result object per document");
  verify_cmd->add_flag("--anti-diagonals", verify_anti,
                       "matrices: also require anti-diagonal runs prime");
  verify_cmd->add_flag("--quiet", verify_quiet, "print only the summary line");

  // expand -------------------------------------------------------------------
  auto* expand_cmd =
      app.add_subcommand("expand", "grow tuples/stairs/pyramids/cylinders from their seeds");
  std::string expand_path;
  bool expand_json = false;
  std::size_t expand_max = 0;
  expand_cmd->add_option("input", expand_path, "JSONL file ('-' or empty reads stdin)");
  expand_cmd->add_flag("--json", expand_json, "one JSON result object per document");
  expand_cmd->add_option("--max", expand_max,
                         "stop tuples/cylinders at this many terms/layers (0 = natural stop)");

  // search -------------------------------------------------------------------
  auto* search_cmd = app.add_subcommand("search", "randomized hill climbing with restarts");
  std::string search_kind;
  SearchConfig config;
  double swap_weight = 0.5;
  bool search_json = false;
  search_cmd->add_option("--kind", search_kind, "construction kind")->required();
  search_cmd->add_option("--order", config.order, "order (element count / side length)")
      ->required();
  search_cmd->add_option("--aux", config.aux, "tuples: target length; cylinders: target layers");
  search_cmd->add_option("--seed", config.rng_seed, "RNG seed (default 0)");
  search_cmd->add_option("--pool-limit", config.prime_pool_limit,
                         "draw candidate primes <= this (0 = kind default)");
  search_cmd->add_option("--iterations", config.max_iterations, "iterations per restart");
  search_cmd->add_option("--restarts", config.max_restarts, "max restarts (0 = until time limit)");
  search_cmd->add_option("--time-limit", config.time_limit,
                         "wall seconds (default 60 when --restarts is 0)");
  search_cmd->add_option("--workers", config.workers, "parallel restarts (1 = serial reference)");
  search_cmd->add_option("--swap-weight", swap_weight, "probability of swap vs replace mutations")
      ->check(CLI::Range(0.0, 1.0));
  search_cmd->add_flag("--json", search_json, "machine-readable result");

  // optimize -----------------------------------------------------------------
  auto* optimize_cmd =
      app.add_subcommand("optimize", "prove minimal weights by ascending weight classes");
  std::string optimize_kind;
  std::size_t optimize_order = 0;
  ExhaustiveOptions exhaustive;
  std::uint64_t prove_floor = 0;
  bool optimize_json = false;
  bool no_prime_weight = false, no_residues = false, no_symmetry = false;
  optimize_cmd->add_option("--kind", optimize_kind, "construction kind")->required();
  optimize_cmd->add_option("--order", optimize_order, "order")->required();
  optimize_cmd->add_option("--aux-target", exhaustive.aux_target,
                           "tuples: required length (0 = derived bound); cylinders: layers");
  optimize_cmd->add_option("--upper-bound", exhaustive.initial_upper_bound,
                           "stop after this weight class (inclusive; 0 = none)");
  optimize_cmd->add_option("--budget", exhaustive.budget, "max enumeration nodes (0 = unlimited)");
  optimize_cmd->add_option("--element-limit", exhaustive.element_limit,
                           "restrict elements to primes <= this (0 = unrestricted)");
  optimize_cmd->add_option("--workers", exhaustive.workers,
                           "parallel subset scan (1 = serial reference)");
  optimize_cmd->add_option("--prove-floor", prove_floor,
                           "instead of optimizing, confirm no weight below this exists");
  optimize_cmd->add_flag("--no-prune-prime-weight", no_prime_weight,
                         "disable the prime-total class skip");
  optimize_cmd->add_flag("--no-prune-residues", no_residues, "disable the mod-3 subset filter");
  optimize_cmd->add_flag("--no-prune-symmetry", no_symmetry,
                         "enumerate all symmetric arrangements");
  optimize_cmd->add_flag("--json", optimize_json, "machine-readable result");

  // report -------------------------------------------------------------------
  auto* report_cmd =
      app.add_subcommand("report", "efficiency or bounds table for JSONL documents");
  std::string report_path;
  std::string report_format = "text";
  bool report_json = false, report_efficiency = false, report_bounds = false;
  report_cmd->add_option("input", report_path, "JSONL file ('-' or empty reads stdin)");
  report_cmd->add_flag("--efficiency", report_efficiency,
                       "prime sums per element, best first (the default table)");
  report_cmd->add_flag("--bounds", report_bounds,
                       "weight floors and best known weights (input: bounds records)");
  report_cmd->add_option("--format", report_format, "text, csv, or json")
      ->check(CLI::IsMember({"text", "csv", "json"}));
  report_cmd->add_flag("--json", report_json, "shorthand for --format json");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*verify_cmd) {
      return run_verify(verify_path, verify_kind, verify_elements, verify_order, verify_aux,
                        verify_json, verify_anti, verify_quiet);
    }
    if (*expand_cmd) return run_expand(expand_path, expand_json, expand_max);
    if (*search_cmd) {
      config.kind = kind_from_name(search_kind);
      config.mutation_weights.swap = swap_weight;
      config.mutation_weights.replace = 1.0 - swap_weight;
      if (config.max_restarts == 0 && config.time_limit == 0) config.time_limit = 60;
      return run_search(config, search_json);
    }
    if (*optimize_cmd) {
      exhaustive.prune_prime_weight = !no_prime_weight;
      exhaustive.prune_residues = !no_residues;
      exhaustive.prune_symmetry = !no_symmetry;
      return run_optimize(kind_from_name(optimize_kind), optimize_order, exhaustive, prove_floor,
                          optimize_json);
    }
    if (*report_cmd) {
      if (report_efficiency && report_bounds) {
        throw ConfigError("--efficiency and --bounds are mutually exclusive");
      }
      if (report_json) report_format = "json";
      return report_bounds ? run_report_bounds(report_path, report_format)
                           : run_report(report_path, report_format);
    }
  } catch (const InconclusiveError& e) {
    std::cerr << "inconclusive: " << e.what() << "\n";
    return 3;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
