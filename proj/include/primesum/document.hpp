#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "primesum/construction.hpp"

namespace primesum {

// One JSONL record: a construction plus bookkeeping.  Serialized with a fixed
// key order (schema_version, kind, order, elements, aux, provenance) so that
// re-serializing a parsed line reproduces it byte for byte.  Grid kinds
// (pyramid/goldbach_square/matrix) nest their elements as rows; the rest stay
// flat.  aux appears as {"length": k} for tuples and {"layers": k} for
// cylinders, and is omitted when zero.
struct Document {
  int schema_version = 1;
  Construction construction;
  std::optional<std::string> provenance;

  bool operator==(const Document&) const = default;
};

// Compact single-line JSON; no trailing newline.
std::string to_json(const Document& document);

// Parses one JSON object.  Throws ParseError (with column when available) on
// malformed input, ShapeError when element counts contradict kind/order.
Document from_json(const std::string& text);

// JSONL: one document per non-empty line.  Parse errors carry the line number.
std::vector<Document> read_jsonl(std::istream& in);
std::vector<Document> read_jsonl_file(const std::string& path);
void write_jsonl(std::ostream& out, const std::vector<Document>& documents);

}  // namespace primesum
