#include "doctest.h"
#include "test_util.hpp"
#include "uag/connectivity.hpp"
#include "uag/oracle.hpp"

using namespace uag;

namespace {

UnfoldingSpec load(const char* name) {
  return parse_spec(testutil::read_data_file(name));
}

}  // namespace

TEST_CASE("connectivity: bundled examples") {
  CHECK(is_connected(load("s1.ugs")));
  CHECK_FALSE(is_connected(load("s2.ugs")));
  CHECK_FALSE(is_connected(load("s3.ugs")));
  CHECK_FALSE(is_connected(load("s4.ugs")));
  CHECK_FALSE(is_connected(load("s5.ugs")));
}

TEST_CASE("connectivity: a prefix vertex can bridge two towers") {
  // y@i only ever reaches x copies one level down; without the bridge through
  // d the two towers would stay apart, with it the whole graph is one piece.
  CHECK(is_connected(parse_spec(
      "dvertices: d\n"
      "fvertices: x y\n"
      "eta: d -> x y\n"
      "sigma: x -> x y\n")));
  // Here y@1, y@2, ... are isolated: bridging at the bottom is not enough.
  CHECK_FALSE(is_connected(parse_spec(
      "dvertices: d\n"
      "fvertices: x y\n"
      "eta: d -> x y\n"
      "sigma: x -> x\n")));
  // An unattached prefix vertex disconnects an otherwise connected graph.
  CHECK_FALSE(is_connected(parse_spec(
      "dvertices: d\n"
      "fvertices: x\n"
      "sigma: x -> x\n")));
}

TEST_CASE("connectivity: full ladder against the automaton criterion") {
  UnfoldingSpec full_ladder = parse_spec(
      "fvertices: a b\n"
      "fedges: a-b\n"
      "sigma: a -> a\n");
  AnalysisContext ctx(full_ladder);
  CHECK(is_connected(ctx));
  CHECK(naive_connect(ctx));

  AnalysisContext rail(load("s1.ugs"));
  CHECK(naive_connect(rail));
  AnalysisContext ladder(load("s3.ugs"));
  CHECK_FALSE(naive_connect(ladder));
}

TEST_CASE("connectivity: automaton criterion needs an empty prefix") {
  UnfoldingSpec spec = parse_spec(
      "dvertices: d\n"
      "fvertices: x\n"
      "eta: d -> x\n"
      "sigma: x -> x\n");
  AnalysisContext ctx(spec);
  CHECK(is_connected(ctx));
  CHECK_THROWS_AS(naive_connect(ctx), std::invalid_argument);
}

TEST_CASE("connectivity: two procedures agree on random prefix-free graphs") {
  for (int t = 0; t < 60; ++t) {
    UnfoldingSpec spec = generate_spec(3000 + t, 4, 0, 0.25 + 0.15 * (t % 3));
    AnalysisContext ctx(spec);
    CHECK(is_connected(ctx) == naive_connect(ctx));
  }
}
