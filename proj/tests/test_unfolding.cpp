#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "doctest.h"
#include "test_util.hpp"
#include "uag/unfolding.hpp"

using namespace uag;

namespace {

void expect_spec_error(const std::string& text, const std::string& needle,
                       int line) {
  try {
    parse_spec(text);
    FAIL_CHECK("no error for: " << needle);
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find(needle) != std::string::npos);
    CHECK(e.line == line);
    CHECK(e.column > 0);
  }
}

}  // namespace

TEST_CASE("finite graph: lookups, adjacency, components") {
  FiniteGraph g;
  g.names = {"a", "b", "c", "d"};
  g.edges = {{0, 1}, {2, 3}};
  CHECK(g.find("c") == 2);
  CHECK(g.find("z") == -1);
  CHECK(g.has_edge(0, 1));
  CHECK(g.has_edge(1, 0));
  CHECK_FALSE(g.has_edge(1, 2));
  CHECK_FALSE(g.has_edge(0, 0));
  CHECK(g.adjacency() ==
        std::vector<std::vector<int>>{{1}, {0}, {3}, {2}});
  CHECK(g.component_ids() == std::vector<int>{0, 0, 1, 1});
}

TEST_CASE("spec parsing: sections in any order, comments ignored") {
  UnfoldingSpec spec = parse_spec(
      "# comment line\n"
      "sigma: a -> b\n"
      "dvertices: d0\n"
      "fvertices: a b  # trailing comment\n"
      "eta: d0 -> a b\n"
      "fedges: a-b\n");
  CHECK(spec.prefix_size() == 1);
  CHECK(spec.block_size() == 2);
  CHECK(spec.block.has_edge(0, 1));
  CHECK(spec.eta == std::vector<std::vector<int>>{{0, 1}});
  CHECK(spec.sigma == std::vector<std::vector<int>>{{1}, {}});
}

TEST_CASE("spec parsing: the bundled examples load") {
  for (const char* name : {"s1.ugs", "s2.ugs", "s3.ugs", "s4.ugs", "s5.ugs"}) {
    UnfoldingSpec spec = parse_spec(testutil::read_data_file(name));
    CHECK(spec.block_size() >= 1);
    CHECK_NOTHROW(spec.check_valid());
  }
  UnfoldingSpec s5 = parse_spec(testutil::read_data_file("s5.ugs"));
  CHECK(s5.block_size() == 3);
  CHECK(s5.sigma == std::vector<std::vector<int>>{{1}, {}, {1}});
}

TEST_CASE("spec serialization: canonical text and round trip") {
  UnfoldingSpec s3 = parse_spec(testutil::read_data_file("s3.ugs"));
  CHECK(serialize_spec(s3) ==
        "fvertices: a b\n"
        "sigma: a -> b\n"
        "sigma: b -> a\n");
  UnfoldingSpec full = parse_spec(
      "dvertices: d0 d1\n"
      "fvertices: a b\n"
      "dedges: d0-d1\n"
      "fedges: a-b\n"
      "eta: d1 -> b\n"
      "sigma: b -> a b\n");
  std::string text = serialize_spec(full);
  CHECK(equal_structure(parse_spec(text), full));
  CHECK(serialize_spec(parse_spec(text)) == text);
}

TEST_CASE("spec parsing: errors carry position") {
  expect_spec_error("fvertices: a\nfvertices: b\n", "duplicate", 2);
  expect_spec_error("fvertices: a a\n", "duplicate", 1);
  expect_spec_error("fvertices: a\nwidgets: x\n", "unknown section", 2);
  expect_spec_error("dvertices: d0\n", "fvertices", 1);
  expect_spec_error("fvertices: a\nfedges: a-a\n", "self", 2);
  expect_spec_error("fvertices: a b\nfedges: a-b b-a\n", "duplicate", 2);
  expect_spec_error("fvertices: a b\nfedges: ab\n", "edge", 2);
  expect_spec_error("fvertices: a b\nsigma: a -> b\nsigma: a -> a\n",
                    "sigma", 3);
  expect_spec_error("fvertices: a\nsigma: a -> a a\n", "duplicate", 2);
  expect_spec_error("fvertices: a\nsigma: b -> a\n", "unknown", 2);
}

TEST_CASE("vertex names: format and parse are inverse") {
  UnfoldingSpec spec = parse_spec(
      "dvertices: d\n"
      "fvertices: x y\n"
      "eta: d -> x\n"
      "sigma: x -> y\n");
  Vertex d = prefix_vertex(0);
  Vertex y3 = block_vertex(1, 3);
  CHECK(format_vertex(spec, d) == "d");
  CHECK(format_vertex(spec, y3) == "y@3");
  CHECK(parse_vertex(spec, "d") == d);
  CHECK(parse_vertex(spec, "y@3") == y3);
  CHECK(parse_vertex(spec, "x@0") == block_vertex(0, 0));
}

TEST_CASE("vertex names: rejections explain themselves") {
  UnfoldingSpec spec = parse_spec(
      "dvertices: d\n"
      "fvertices: x\n");
  auto message = [&](std::string_view text) {
    try {
      parse_vertex(spec, text);
      return std::string("(no error)");
    } catch (const std::invalid_argument& e) {
      return std::string(e.what());
    }
  };
  CHECK(message("x").find("needs a level") != std::string::npos);
  CHECK(message("z").find("unknown vertex") != std::string::npos);
  CHECK(message("d@1").find("unknown block vertex") != std::string::npos);
  CHECK(message("x@").find("bad level") != std::string::npos);
  CHECK(message("x@two").find("bad level") != std::string::npos);
  CHECK(message("x@2000000000").find("level too large") != std::string::npos);
}

TEST_CASE("truncation: layout and adjacency") {
  UnfoldingSpec s3 = parse_spec(testutil::read_data_file("s3.ugs"));
  Truncation t = truncate(s3, 3);
  CHECK(t.size() == 6);
  CHECK(t.index_of(block_vertex(1, 2)) == 5);
  CHECK(t.index_of(block_vertex(0, 3)) == -1);
  CHECK(t.vertex_at(2) == block_vertex(0, 1));
  // sigma(a) = {b}, sigma(b) = {a}: rungs of a ladder, no level-internal edges.
  CHECK(t.adj == std::vector<std::vector<int>>{
                     {3}, {2}, {1, 5}, {0, 4}, {3}, {2}});
}

TEST_CASE("truncation: degree stays below the structural bound") {
  UnfoldingSpec spec = parse_spec(
      "dvertices: d0 d1\n"
      "fvertices: a b c\n"
      "dedges: d0-d1\n"
      "fedges: a-b a-c b-c\n"
      "eta: d0 -> a b c\n"
      "eta: d1 -> a\n"
      "sigma: a -> a b c\n"
      "sigma: b -> a\n"
      "sigma: c -> b c\n");
  Truncation t = truncate(spec, 6);
  int bound = spec.prefix_size() + 3 * spec.block_size();
  for (const auto& row : t.adj)
    CHECK(static_cast<int>(row.size()) <= bound);
}

TEST_CASE("vertex codes: frozen values and inverse table") {
  CHECK(encode_vertex(block_vertex(1, 3), 2, Encoding::PureSigma) == 7);
  CHECK(encode_vertex(prefix_vertex(1), 3, Encoding::WithPrefix) == 1);
  CHECK(encode_vertex(block_vertex(0, 0), 3, Encoding::WithPrefix) == 3);

  // prefix_size 1, block_size 2, modulus 3: codes 1, 2 and 5 name nothing.
  using V = std::optional<Vertex>;
  auto dec = [](long long value) {
    return decode_vertex(value, 1, 2, 3, Encoding::WithPrefix);
  };
  CHECK(dec(0) == V(prefix_vertex(0)));
  CHECK(dec(1) == V());
  CHECK(dec(2) == V());
  CHECK(dec(3) == V(block_vertex(0, 0)));
  CHECK(dec(4) == V(block_vertex(1, 0)));
  CHECK(dec(5) == V());
  CHECK(dec(6) == V(block_vertex(0, 1)));
  CHECK(dec(7) == V(block_vertex(1, 1)));

  for (long long code = 0; code < 40; ++code) {
    auto v = decode_vertex(code, 1, 2, 3, Encoding::WithPrefix);
    if (v) CHECK(encode_vertex(*v, 3, Encoding::WithPrefix) == code);
    auto w = decode_vertex(code, 0, 2, 2, Encoding::PureSigma);
    REQUIRE(w.has_value());
    CHECK(encode_vertex(*w, 2, Encoding::PureSigma) == code);
  }
}

TEST_CASE("synthesis: ladder spec becomes the expected finals") {
  UnfoldingSpec s3 = parse_spec(testutil::read_data_file("s3.ugs"));
  OneLoopStandardAutomaton a = synthesize_automaton(s3);
  CHECK(a.loop_constant == 2);
  CHECK(a.tail_finals.empty());
  CHECK(a.loop_finals == std::set<std::pair<int, int>>{{0, 3}, {1, 1}});
}

TEST_CASE("extraction: finals split into edges and attachments") {
  UnfoldingSpec spec = extract_spec(make_standard(2, {{0, 1}}, {{0, 2}}));
  CHECK(spec.prefix.names == std::vector<std::string>{"d0", "d1"});
  CHECK(spec.block.names == std::vector<std::string>{"f0", "f1"});
  CHECK(spec.prefix.has_edge(0, 1));
  CHECK(spec.block.edges.empty());
  CHECK(spec.eta == std::vector<std::vector<int>>{{}, {}});
  CHECK(spec.sigma == std::vector<std::vector<int>>{{0}, {}});
}

TEST_CASE("extraction inverts synthesis up to padding") {
  for (const char* name : {"s1.ugs", "s2.ugs", "s3.ugs", "s4.ugs", "s5.ugs"}) {
    UnfoldingSpec spec = parse_spec(testutil::read_data_file(name));
    int p = spec.loop_constant();
    UnfoldingSpec back = extract_spec(synthesize_automaton(spec));
    CHECK(equal_structure(back, pad_spec(spec, p, p)));
  }
}

TEST_CASE("padding: identity at current sizes, names stay fresh") {
  UnfoldingSpec s3 = parse_spec(testutil::read_data_file("s3.ugs"));
  CHECK(equal_structure(pad_spec(s3, 0, 2), s3));
  UnfoldingSpec wide = pad_spec(s3, 2, 4);
  CHECK(wide.prefix_size() == 2);
  CHECK(wide.block_size() == 4);
  CHECK_NOTHROW(wide.check_valid());
  CHECK(wide.sigma[0] == std::vector<int>{1});
  CHECK(wide.sigma[3].empty());
}

TEST_CASE("truncation matches the synthesized automaton edge for edge") {
  UnfoldingSpec spec = parse_spec(
      "dvertices: d0\n"
      "fvertices: a b\n"
      "fedges: a-b\n"
      "eta: d0 -> b\n"
      "sigma: a -> a\n"
      "sigma: b -> a\n");
  int p = spec.loop_constant();
  UnaryPairAutomaton aut = to_pair_automaton(synthesize_automaton(spec));
  UnfoldingSpec padded = pad_spec(spec, p, p);
  Truncation t = truncate(padded, 5);
  for (int i = 0; i < t.size(); ++i)
    for (int j = 0; j < t.size(); ++j) {
      long long ci =
          encode_vertex(t.vertex_at(i), p, Encoding::WithPrefix);
      long long cj =
          encode_vertex(t.vertex_at(j), p, Encoding::WithPrefix);
      bool edge = i != j && t.index_of(t.vertex_at(i)) >= 0 &&
                  std::find(t.adj[i].begin(), t.adj[i].end(), j) !=
                      t.adj[i].end();
      if (t.vertex_at(i).level < 4 && t.vertex_at(j).level < 4)
        CHECK(aut.accepts_pair(ci, cj) == edge);
    }
}
