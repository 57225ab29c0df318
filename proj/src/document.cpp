#include "primesum/document.hpp"

#include <fstream>
#include <istream>
#include <ostream>

#include <json.hpp>

#include "primesum/errors.hpp"

namespace primesum {

namespace {

using ordered_json = nlohmann::ordered_json;

bool nests_elements(Kind kind) {
  return kind == Kind::Pyramid || kind == Kind::GoldbachSquare || kind == Kind::Matrix;
}

const char* aux_key(Kind kind) {
  switch (kind) {
    case Kind::Tuple:
      return "length";
    case Kind::Cylinder:
      return "layers";
    default:
      return nullptr;
  }
}

std::int64_t element_from_json(const ordered_json& v) {
  if (!v.is_number_integer() || v.is_number_float()) {
    throw ParseError("elements must be integers");
  }
  std::int64_t e = v.get<std::int64_t>();
  if (e < 0) throw ParseError("elements must be non-negative");
  return e;
}

}  // namespace

std::string to_json(const Document& document) {
  const Construction& c = document.construction;
  ordered_json j;
  j["schema_version"] = document.schema_version;
  j["kind"] = std::string(kind_name(c.kind));
  j["order"] = c.order;
  if (nests_elements(c.kind)) {
    const std::size_t n = c.order;
    if (c.elements.size() != n * n) {
      throw ShapeError("grid construction needs order^2 elements to serialize");
    }
    ordered_json rows = ordered_json::array();
    for (std::size_t r = 0; r < n; ++r) {
      ordered_json row = ordered_json::array();
      for (std::size_t col = 0; col < n; ++col) row.push_back(c.elements[r * n + col]);
      rows.push_back(std::move(row));
    }
    j["elements"] = std::move(rows);
  } else {
    j["elements"] = c.elements;
  }
  if (const char* key = aux_key(c.kind); key && c.aux != 0) {
    j["aux"] = ordered_json{{key, c.aux}};
  }
  if (document.provenance) j["provenance"] = *document.provenance;
  return j.dump();
}

Document from_json(const std::string& text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what(), 0, e.byte);
  }
  if (!j.is_object()) throw ParseError("document must be a JSON object");

  Document doc;
  if (!j.contains("schema_version") || !j["schema_version"].is_number_integer()) {
    throw ParseError("missing integer field 'schema_version'");
  }
  doc.schema_version = j["schema_version"].get<int>();
  if (doc.schema_version != 1) {
    throw ParseError("unsupported schema_version " + std::to_string(doc.schema_version));
  }
  if (!j.contains("kind") || !j["kind"].is_string()) {
    throw ParseError("missing string field 'kind'");
  }
  doc.construction.kind = kind_from_name(j["kind"].get<std::string>());
  if (!j.contains("order") || !j["order"].is_number_unsigned()) {
    throw ParseError("missing non-negative integer field 'order'");
  }
  doc.construction.order = j["order"].get<std::size_t>();
  if (doc.construction.order == 0) throw ParseError("order must be >= 1");

  if (!j.contains("elements") || !j["elements"].is_array()) {
    throw ParseError("missing array field 'elements'");
  }
  const ordered_json& elems = j["elements"];
  auto& out = doc.construction.elements;
  if (!elems.empty() && elems.front().is_array()) {
    for (const auto& row : elems) {
      if (!row.is_array()) throw ParseError("elements rows must all be arrays");
      for (const auto& v : row) out.push_back(element_from_json(v));
    }
  } else {
    for (const auto& v : elems) out.push_back(element_from_json(v));
  }
  const std::size_t expect = element_count(doc.construction.kind, doc.construction.order);
  if (out.size() != expect) {
    throw ShapeError(std::string(kind_name(doc.construction.kind)) + " of order " +
                     std::to_string(doc.construction.order) + " needs " + std::to_string(expect) +
                     " elements, got " + std::to_string(out.size()));
  }

  if (j.contains("aux")) {
    const char* key = aux_key(doc.construction.kind);
    if (!key) {
      throw ParseError(std::string("kind '") + std::string(kind_name(doc.construction.kind)) +
                       "' takes no aux field");
    }
    const ordered_json& aux = j["aux"];
    if (!aux.is_object() || !aux.contains(key) || !aux[key].is_number_unsigned()) {
      throw ParseError(std::string("aux must be an object with unsigned field '") + key + "'");
    }
    doc.construction.aux = aux[key].get<std::size_t>();
  }
  if (j.contains("provenance")) {
    if (!j["provenance"].is_string()) throw ParseError("provenance must be a string");
    doc.provenance = j["provenance"].get<std::string>();
  }
  return doc;
}

std::vector<Document> read_jsonl(std::istream& in) {
  std::vector<Document> docs;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      docs.push_back(from_json(line));
    } catch (const ParseError& e) {
      throw ParseError("line " + std::to_string(line_no) + ": " + e.what(), line_no, e.column());
    } catch (const ShapeError& e) {
      throw ShapeError("line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return docs;
}

std::vector<Document> read_jsonl_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  return read_jsonl(in);
}

void write_jsonl(std::ostream& out, const std::vector<Document>& documents) {
  for (const auto& d : documents) out << to_json(d) << '\n';
}

}  // namespace primesum
