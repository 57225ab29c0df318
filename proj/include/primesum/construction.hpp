#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace primesum {

enum class Kind {
  Vector,
  CyclicVector,
  Tuple,
  Stair,
  Pyramid,
  Cylinder,
  GoldbachSquare,
  Matrix,
};

// Canonical lowercase name, e.g. Kind::CyclicVector -> "cyclic_vector".
std::string_view kind_name(Kind kind);

// Inverse of kind_name; throws ParseError on unknown names.
Kind kind_from_name(std::string_view name);

// One construction instance.  Elements are stored flat; grid-shaped kinds
// (pyramid, goldbach_square, matrix) use row-major order.  `aux` carries the
// kind-specific extra parameter: generated length for tuples, layer count for
// cylinders; zero means "not set".
struct Construction {
  Kind kind = Kind::Vector;
  std::size_t order = 0;
  std::vector<std::int64_t> elements;
  std::size_t aux = 0;

  bool operator==(const Construction&) const = default;
};

// Expected element count for the declared shape (n for linear kinds, n*n for
// grid kinds).  Throws ConfigError for order 0.
std::size_t element_count(Kind kind, std::size_t order);

// Returns true when the kind requires pairwise-distinct base elements.
bool requires_distinct(Kind kind);

// One evaluated sum: where it came from, its value, and whether it passed.
struct SumRecord {
  std::vector<std::size_t> at;  // index tuple (window start, row/col, ...)
  std::int64_t value = 0;
  bool ok = false;
};

struct VerificationReport {
  bool valid = false;
  std::vector<SumRecord> sums;
  std::size_t generated_primes = 0;  // sums (or generated cells) that are prime
  std::vector<std::string> violations;
  std::vector<std::string> notes;
};

struct MatrixOptions {
  bool anti_diagonals = false;  // also require odd-length anti-diagonal sums prime
};

// --- verification -----------------------------------------------------------

// A vector of n distinct primes where every window of odd length >= 3 sums to
// a prime.  With cyclic=true windows wrap around; for odd n the full window is
// evaluated once, not once per rotation.
VerificationReport verify_vector(const std::vector<std::int64_t>& elements, bool cyclic);

// Grid of n*n primes (duplicates allowed) whose horizontally and vertically
// adjacent pairs sum to every even number 6..4+4n(n-1) exactly once.
VerificationReport verify_goldbach(const std::vector<std::int64_t>& elements, std::size_t order);

// Matrix of n*n distinct primes where every odd-length run of consecutive
// cells going right, down, or down-right sums to a prime; options.anti_diagonals
// additionally checks runs going down-left.
VerificationReport verify_matrix(const std::vector<std::int64_t>& elements, std::size_t order,
                                 const MatrixOptions& options = {});

// Dispatch on kind; validates shape first (ShapeError).  For tuples, stairs,
// pyramids and cylinders this re-derives the generated part and checks it.
VerificationReport verify(const Construction& construction, const MatrixOptions& options = {});

// --- expansion --------------------------------------------------------------

// Expansion bundles the fully expanded construction (base + generated
// elements) with the verification evidence gathered while expanding.
struct Expansion {
  Construction construction;
  VerificationReport report;
};

// Extend a seed of n distinct odd primes with p_i = p_{i-n} + ... + p_{i-1}
// while the sums stay prime and distinct.  max_length 0 means "run until the
// sequence stops"; otherwise expansion halts at that many terms.
Expansion expand_tuple(const std::vector<std::int64_t>& seed, std::size_t max_length = 0);

// Build the stair rows below a first row of n distinct primes: each cell is
// the sum of the 3 cells above it, so each row is 2 cells narrower than the
// one before, giving (n+1)/2 rows in total.  Every generated cell must be
// prime.
Expansion expand_stair(const std::vector<std::int64_t>& first_row);

// Build pyramid levels above an n*n base of distinct primes: each cell of the
// next (n-2)*(n-2) level is the sum of the 3x3 block below it, giving (n+1)/2
// levels.  Every generated cell must be prime; as with stairs, distinctness is
// demanded of the base only, and repeats among generated cells are reported as
// notes.
Expansion expand_pyramid(const std::vector<std::int64_t>& base, std::size_t order);

// Build cylinder layers below a first layer of n primes (duplicates allowed):
// like a stair but wrapping, so every layer keeps n cells.  max_layers 0 means
// "run until a generated cell is composite".
Expansion expand_cylinder(const std::vector<std::int64_t>& first_layer, std::size_t max_layers = 0);

// Dispatch on kind for the four generative kinds; the input construction's
// elements are the seed/base and aux (if nonzero) is the length/layer target.
Expansion expand(const Construction& construction);

}  // namespace primesum
