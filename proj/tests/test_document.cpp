#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "primesum/construction.hpp"
#include "primesum/document.hpp"
#include "primesum/errors.hpp"

using namespace primesum;

namespace {
const std::string kCorpusPath = std::string(PRIMESUM_DATA_DIR) + "/corpus.jsonl";
}

TEST_CASE("every shipped corpus line survives a byte-identical round trip") {
  std::ifstream in(kCorpusPath);
  REQUIRE(in.is_open());
  std::string line;
  std::size_t lines = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    ++lines;
    CAPTURE(line);
    CHECK(to_json(from_json(line)) == line);
  }
  CHECK(lines == 81);
}

TEST_CASE("serialization uses a fixed key order") {
  Document doc;
  doc.construction = {Kind::Tuple, 3, {3, 13, 7}, 7};
  doc.provenance = "optimal, weight 23";
  CHECK(to_json(doc) ==
        "{\"schema_version\":1,\"kind\":\"tuple\",\"order\":3,\"elements\":[3,13,7],"
        "\"aux\":{\"length\":7},\"provenance\":\"optimal, weight 23\"}");
}

TEST_CASE("aux and provenance are omitted when absent") {
  Document doc;
  doc.construction = {Kind::Vector, 3, {3, 5, 11}, 0};
  CHECK(to_json(doc) == "{\"schema_version\":1,\"kind\":\"vector\",\"order\":3,\"elements\":[3,5,11]}");
}

TEST_CASE("cylinders label their aux as layers") {
  Document doc;
  doc.construction = {Kind::Cylinder, 4, {1091, 3001, 257, 271}, 6};
  CHECK(to_json(doc) ==
        "{\"schema_version\":1,\"kind\":\"cylinder\",\"order\":4,"
        "\"elements\":[1091,3001,257,271],\"aux\":{\"layers\":6}}");
}

TEST_CASE("grid kinds nest their elements as rows") {
  Document doc;
  doc.construction = {Kind::Matrix, 2, {3, 5, 7, 11}, 0};
  CHECK(to_json(doc) ==
        "{\"schema_version\":1,\"kind\":\"matrix\",\"order\":2,\"elements\":[[3,5],[7,11]]}");
  Document back = from_json(to_json(doc));
  CHECK(back.construction.elements == std::vector<std::int64_t>{3, 5, 7, 11});
  CHECK(back == doc);
}

TEST_CASE("serializing a malformed grid is an error") {
  Document doc;
  doc.construction = {Kind::Matrix, 3, {3, 5, 7, 11}, 0};  // 4 elements, needs 9
  CHECK_THROWS_AS(to_json(doc), ShapeError);
}

TEST_CASE("from_json rejects malformed documents") {
  CHECK_THROWS_AS(from_json("{\"schema_version\":1,"), ParseError);
  CHECK_THROWS_AS(from_json("[1,2,3]"), ParseError);
  CHECK_THROWS_AS(from_json("{\"kind\":\"vector\",\"order\":3,\"elements\":[3,5,11]}"),
                  ParseError);  // schema_version missing
  CHECK_THROWS_AS(
      from_json("{\"schema_version\":2,\"kind\":\"vector\",\"order\":3,\"elements\":[3,5,11]}"),
      ParseError);  // unsupported version
  CHECK_THROWS_AS(
      from_json("{\"schema_version\":1,\"kind\":\"triangle\",\"order\":3,\"elements\":[3,5,11]}"),
      ParseError);  // unknown kind
  CHECK_THROWS_AS(
      from_json("{\"schema_version\":1,\"kind\":\"vector\",\"order\":0,\"elements\":[]}"),
      ParseError);  // zero order
  CHECK_THROWS_AS(from_json("{\"schema_version\":1,\"kind\":\"vector\",\"order\":3}"),
                  ParseError);  // elements missing
  CHECK_THROWS_AS(
      from_json("{\"schema_version\":1,\"kind\":\"vector\",\"order\":3,\"elements\":[3,5.5,11]}"),
      ParseError);  // non-integer element
  CHECK_THROWS_AS(
      from_json("{\"schema_version\":1,\"kind\":\"vector\",\"order\":3,\"elements\":[3,-5,11]}"),
      ParseError);  // negative element
  CHECK_THROWS_AS(
      from_json(
          "{\"schema_version\":1,\"kind\":\"vector\",\"order\":3,\"elements\":[3,5,11],\"aux\":"
          "{\"length\":9}}"),
      ParseError);  // vectors take no aux
  CHECK_THROWS_AS(
      from_json(
          "{\"schema_version\":1,\"kind\":\"tuple\",\"order\":3,\"elements\":[3,13,7],\"aux\":7}"),
      ParseError);  // aux must be an object with the right key
  CHECK_THROWS_AS(
      from_json("{\"schema_version\":1,\"kind\":\"vector\",\"order\":3,\"elements\":[3,5,11],"
                "\"provenance\":42}"),
      ParseError);  // provenance must be a string
}

TEST_CASE("from_json reports the byte offset of a syntax error") {
  try {
    from_json("{\"schema_version\":1,oops}");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.column() > 0);
  }
}

TEST_CASE("element count must match the declared shape") {
  CHECK_THROWS_WITH_AS(
      from_json("{\"schema_version\":1,\"kind\":\"vector\",\"order\":4,\"elements\":[3,5,11]}"),
      doctest::Contains("needs 4 elements, got 3"), ShapeError);
  CHECK_THROWS_AS(
      from_json("{\"schema_version\":1,\"kind\":\"matrix\",\"order\":3,\"elements\":"
                "[[3,5,7],[11,13,17]]}"),
      ShapeError);  // 6 cells, needs 9
}

TEST_CASE("read_jsonl skips blank lines and numbers parse errors") {
  std::istringstream good(
      "{\"schema_version\":1,\"kind\":\"vector\",\"order\":1,\"elements\":[2]}\n"
      "\n"
      "   \t\n"
      "{\"schema_version\":1,\"kind\":\"vector\",\"order\":3,\"elements\":[3,5,11]}\n");
  auto docs = read_jsonl(good);
  REQUIRE(docs.size() == 2);
  CHECK(docs[0].construction.order == 1);
  CHECK(docs[1].construction.order == 3);

  std::istringstream bad(
      "{\"schema_version\":1,\"kind\":\"vector\",\"order\":1,\"elements\":[2]}\n"
      "\n"
      "{broken\n");
  try {
    read_jsonl(bad);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }

  std::istringstream short_line(
      "{\"schema_version\":1,\"kind\":\"vector\",\"order\":9,\"elements\":[2]}\n");
  CHECK_THROWS_WITH_AS(read_jsonl(short_line), doctest::Contains("line 1"), ShapeError);
}

TEST_CASE("write_jsonl then read_jsonl is the identity") {
  std::vector<Document> docs;
  docs.push_back({1, {Kind::Vector, 3, {3, 5, 11}, 0}, std::nullopt});
  docs.push_back({1, {Kind::Tuple, 3, {3, 13, 7}, 7}, "optimal, weight 23"});
  docs.push_back({1, {Kind::GoldbachSquare, 2, {5, 7, 3, 3}, 0}, "best-known, weight 18"});
  std::ostringstream out;
  write_jsonl(out, docs);
  std::string text = out.str();
  CHECK(std::count(text.begin(), text.end(), '\n') == 3);
  std::istringstream in(text);
  auto back = read_jsonl(in);
  CHECK(back == docs);
}

TEST_CASE("read_jsonl_file loads the shipped corpus") {
  auto docs = read_jsonl_file(kCorpusPath);
  REQUIRE(docs.size() == 81);
  CHECK(docs.front().construction.kind == Kind::Vector);
  CHECK(docs.front().construction.order == 1);
  CHECK(docs.front().construction.elements == std::vector<std::int64_t>{2});
  REQUIRE(docs.front().provenance.has_value());
  CHECK(*docs.front().provenance == "optimal, weight 2");
  for (const auto& d : docs) {
    CAPTURE(to_json(d));
    CHECK(d.schema_version == 1);
    REQUIRE(d.provenance.has_value());
    CHECK(d.provenance->find("weight ") != std::string::npos);
  }
}

TEST_CASE("read_jsonl_file rejects a missing path") {
  CHECK_THROWS_AS(read_jsonl_file("/nonexistent/corpus.jsonl"), ParseError);
}
