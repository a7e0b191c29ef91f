#include <doctest.h>

#include <random>

#include "advnet/error.hpp"
#include "advnet/instances.hpp"
#include "advnet/netgraph.hpp"
#include "oracles.hpp"

using namespace advnet;

namespace {

Network diamond() {
  const int a[] = {1, 2}, b[] = {1, 1};
  return simple_two_level(a, b);
}

Network opening() { return validate(builtin_instance("opening").raw).network; }

Errc error_of(const RawNetwork& raw) {
  try {
    validate(raw);
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return Errc::InvalidInput;
}

}  // namespace

TEST_SUITE("netgraph") {
  TEST_CASE("diamond layout") {
    Network net = diamond();
    CHECK(net.edge_count() == 5);
    CHECK(net.name(net.edge(0).head) == "V1");
    CHECK(net.name(net.edge(1).head) == "V2");
    CHECK(net.name(net.edge(2).head) == "V2");
    CHECK(net.name(net.edge(3).tail) == "V1");
    CHECK(net.name(net.edge(4).tail) == "V2");
    CHECK(net.vulnerable() == EdgeSet{0, 1, 2});
  }

  TEST_CASE("single edge network") {
    Network net = make_network({"S", "T"}, {{"S", "T"}}, "S", {"T"}, {});
    CHECK(net.intermediates().empty());
    CHECK(min_cut(net, net.source(), net.vertex("T")) == 1);
    CHECK(enumerate_minimal_cuts(net, net.vertex("T")) == std::vector<EdgeSet>{{0}});
  }

  TEST_CASE("validation errors") {
    CHECK(error_of({{"S", "V", "W", "T"}, {{"S", "V"}, {"V", "W"}, {"W", "V"}, {"W", "T"}}, "S", {"T"}, {}}) ==
          Errc::CyclicGraph);
    CHECK(error_of({{"S", "V", "T"}, {{"S", "V"}, {"V", "S"}, {"V", "T"}}, "S", {"T"}, {}}) == Errc::SourceHasInEdges);
    CHECK(error_of({{"S", "T"}, {{"T", "S"}}, "S", {"T"}, {}}) != Errc::InvalidInput);
    CHECK(error_of({{"S", "T"}, {}, "S", {}, {}}) == Errc::EmptyTerminalSet);
    CHECK(error_of({{"S", "T"}, {{"S", "X"}}, "S", {"T"}, {}}) == Errc::UnknownVertex);
    CHECK(error_of({{"S", "V", "T"}, {{"S", "T"}, {"S", "V"}}, "S", {"T"}, {}}) == Errc::DanglingIntermediate);
    CHECK(error_of({{"S", "V", "T"}, {{"S", "V"}}, "S", {"T"}, {}}) != Errc::InvalidInput);
  }

  TEST_CASE("edge order is a linear extension and renumbering is reported") {
    RawNetwork raw{{"S", "V", "T"}, {{"V", "T"}, {"S", "V"}, {"S", "T"}}, "S", {"T"}, {0}};
    ValidatedNetwork vn = validate(raw);
    CHECK(vn.reordered());
    const Network& net = vn.network;
    for (EdgeId e = 0; e < net.edge_count(); ++e)
      for (EdgeId f = 0; f < net.edge_count(); ++f)
        if (precedes(net, e, f)) CHECK(e <= f);
    // The vulnerable raw edge 0 (V->T) keeps its endpoints after renumbering.
    const EdgeId mapped = vn.edge_map[0];
    CHECK(net.name(net.edge(mapped).tail) == "V");
    CHECK(net.vulnerable() == EdgeSet{mapped});
  }

  TEST_CASE("min cuts") {
    Network op = opening();
    CHECK(min_cut(op, op.source(), op.vertex("T1")) == 2);
    CHECK(min_cut(op, op.source(), op.vertex("T2")) == 2);
    const int a[] = {2, 2}, b[] = {1, 1};
    Network md = simple_two_level(a, b);
    CHECK(min_cut(md, md.source(), md.vertex("T")) == 2);
  }

  TEST_CASE("minimal cuts of the diamond") {
    Network net = diamond();
    auto cuts = enumerate_minimal_cuts(net, net.vertex("T"));
    std::sort(cuts.begin(), cuts.end());
    std::vector<EdgeSet> expected{{0, 1, 2}, {0, 4}, {1, 2, 3}, {3, 4}};
    CHECK(cuts == expected);
  }

  TEST_CASE("relay bypass has the source cut") {
    Network net = validate(builtin_instance("relay_bypass").raw).network;
    auto cuts = enumerate_minimal_cuts(net, net.vertex("T"));
    CHECK(std::find(cuts.begin(), cuts.end(), EdgeSet{0, 1, 2}) != cuts.end());
  }

  TEST_CASE("cut algorithms agree with brute force") {
    for (const auto& name : instance_names()) {
      Network net = validate(builtin_instance(name).raw).network;
      if (net.vertex_count() > 12) continue;
      for (VertexId term : net.terminals()) {
        auto cuts = enumerate_minimal_cuts(net, term);
        REQUIRE(!cuts.empty());
        std::size_t smallest = cuts.front().size();
        for (const auto& c : cuts) {
          smallest = std::min(smallest, c.size());
          CHECK(is_cut(net, c, term));
        }
        CHECK(static_cast<int>(smallest) == min_cut(net, net.source(), term));
        CHECK(min_cut(net, net.source(), term) == oracle::min_cut(net, term));
      }
    }
  }

  TEST_CASE("cut guard") {
    Network net = validate(builtin_instance("opening").raw).network;
    CHECK_THROWS_AS(enumerate_minimal_cuts(net, net.vertex("T1"), 3), Error);
  }

  TEST_CASE("precedence on the opening network") {
    Network net = opening();
    CHECK(precedes(net, 1, 9));
    CHECK(precedes(net, 4, 4));
    CHECK_FALSE(precedes(net, 9, 1));
    const EdgeSet cut1{0, 1, 8};
    CHECK(immediate_predecessors(net, 9, cut1) == EdgeSet{8});
    CHECK(immediate_predecessors(net, 4, cut1) == EdgeSet{0, 1});
    CHECK(cut_precedes(net, cut1, EdgeSet{4, 9}));
    CHECK_FALSE(cut_precedes(net, EdgeSet{4, 9}, cut1));
  }

  TEST_CASE("diamond immediate predecessors") {
    Network net = diamond();
    CHECK(immediate_predecessors(net, 4, EdgeSet{1, 2}) == EdgeSet{1, 2});
  }

  TEST_CASE("levels") {
    auto d = detect_levels(diamond());
    REQUIRE(d);
    CHECK(d->levels() == 2);
    CHECK(d->matrices[0] == IntMatrix(1, 2, {1, 2}));
    CHECK(d->matrices[1] == IntMatrix(2, 1, {1, 1}));
    CHECK_FALSE(detect_levels(opening()));

    Network hex = validate(builtin_instance("hexagon_3level").raw).network;
    auto lv = detect_levels(hex);
    REQUIRE(lv);
    CHECK(lv->levels() == 3);
    IntMatrix middle(6, 4, {1, 1, 0, 0, 1, 1, 0, 0, 1, 1, 0, 0, 1, 1, 0, 0, 0, 0, 1, 1, 0, 0, 1, 1});
    CHECK(lv->matrices[1] == middle);
  }

  TEST_CASE("level round trip") {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 40; ++trial) {
      const int n = std::uniform_int_distribution<int>(1, 3)(rng);
      const int m = std::uniform_int_distribution<int>(1, 3)(rng);
      IntMatrix first(1, n), middle(n, m), last(m, 1);
      for (int i = 0; i < n; ++i) first(0, i) = std::uniform_int_distribution<int>(1, 2)(rng);
      for (int j = 0; j < m; ++j) last(j, 0) = std::uniform_int_distribution<int>(1, 2)(rng);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < m; ++j) middle(i, j) = std::uniform_int_distribution<int>(0, 2)(rng);
      // every vertex needs an in- and out-edge
      for (int i = 0; i < n; ++i) middle(i, i % m) = std::max(1, middle(i, i % m));
      for (int j = 0; j < m; ++j) middle(j % n, j) = std::max(1, middle(j % n, j));
      LevelMatrices lm{{first, middle, last}};
      auto back = detect_levels(from_level_matrices(lm));
      REQUIRE(back);
      CHECK(*back == lm);
    }
  }

  TEST_CASE("simplified notation") {
    const int a[] = {2, 2}, b[] = {1, 1};
    Network md = simple_two_level(a, b);
    auto d = two_level_degrees(md);
    REQUIRE(d);
    CHECK(d->a == std::vector<int>{2, 2});
    CHECK(d->b == std::vector<int>{1, 1});
    IntMatrix path1(1, 1, {1}), path2(1, 1, {1});
    Network path = from_level_matrices({{path1, path2}});
    CHECK(path.edge_count() == 2);
    CHECK(path.intermediates().size() == 1);
    CHECK_FALSE(two_level_degrees(opening()));
  }

  TEST_CASE("edge set formatting") {
    CHECK(format_edge_set({0, 4, 9}) == "{0,4,9}");
    CHECK(make_edge_set({3, 1, 3}) == EdgeSet{1, 3});
  }
}
