#include <doctest.h>

#include <random>

#include "advnet/error.hpp"
#include "advnet/instances.hpp"
#include "advnet/netcode.hpp"
#include "advnet/schemes.hpp"
#include "oracles.hpp"

using namespace advnet;

namespace {

Network net_of(const char* name) { return validate(builtin_instance(name).raw).network; }

NetworkCode random_code(const Network& net, unsigned q, std::mt19937& rng) {
  std::map<VertexId, NodeFunction> fns;
  for (VertexId v : net.intermediates()) {
    const int in = static_cast<int>(net.in_edges(v).size()), out = static_cast<int>(net.out_edges(v).size());
    std::vector<Symbol> entries(*word_space_size(q, static_cast<std::size_t>(in)) * static_cast<std::size_t>(out));
    for (auto& s : entries) s = static_cast<Symbol>(rng() % q);
    fns.emplace(v, NodeFunction::table(in, out, q, std::move(entries)));
  }
  return NetworkCode(net, q, std::move(fns));
}

std::set<Word> fanout_words(const Channel& ch, std::size_t x, unsigned q, std::size_t len) {
  std::set<Word> out;
  for (Output y : ch.fanout(x)) out.insert(word_at(y, q, len));
  return out;
}

}  // namespace

TEST_SUITE("netcode") {
  TEST_CASE("forward evaluation on the diamond") {
    const int a[] = {1, 2}, b[] = {1, 1};
    Network net = simple_two_level(a, b);
    std::map<VertexId, NodeFunction> fns;
    fns.emplace(net.vertex("V1"), NodeFunction::forward(1, 1));
    fns.emplace(net.vertex("V2"), NodeFunction::table(2, 1, 3, {0, 1, 2, 1, 2, 0, 2, 0, 1}));
    NetworkCode code(net, 3, std::move(fns));
    const Symbol x[] = {2, 2, 2};
    Word v = evaluate(net, code, x, {});
    CHECK(v[3] == 2);
    CHECK(v[4] == (2 + 2) % 3);
    Word with_error = evaluate(net, code, x, ErrorPattern{{{1, 0}}});
    CHECK(with_error[4] == 2);
    CHECK_THROWS_AS(evaluate(net, code, x, ErrorPattern{{{3, 0}}}), Error);
  }

  TEST_CASE("arity checks") {
    const int a[] = {1, 2}, b[] = {1, 1};
    Network net = simple_two_level(a, b);
    std::map<VertexId, NodeFunction> fns;
    fns.emplace(net.vertex("V1"), NodeFunction::forward(1, 1));
    fns.emplace(net.vertex("V2"), NodeFunction::forward(1, 1));
    CHECK_THROWS_AS(NetworkCode(net, 2, fns), Error);
    fns.erase(net.vertex("V2"));
    CHECK_THROWS_AS(NetworkCode(net, 2, fns), Error);
  }

  TEST_CASE("constant relay node") {
    Network net = net_of("relay_bypass");
    std::map<VertexId, NodeFunction> fns;
    fns.emplace(net.vertex("V1"), NodeFunction::forward(1, 1));
    fns.emplace(net.vertex("V2"), NodeFunction::constant(1, Word{1}));
    NetworkCode code(net, 2, std::move(fns));
    Channel ch = induced_channel(net, code, net.vertex("T"), 1);
    for (std::uint64_t xi = 0; xi < 8; ++xi) {
      const Word x = word_at(xi, 2, 3);
      std::set<Word> expected;
      // Terminal in-edges: S->T (x[1]), V1->T (x[0]), V2->T (constant).
      for (std::uint64_t y = 0; y < 4; ++y) {
        const Word w = word_at(y, 2, 2);
        if (hamming_distance(w, Word{x[0], x[1]}) <= 1) expected.insert(Word{w[1], w[0], 1});
      }
      CHECK(fanout_words(ch, xi, 2, 3) == expected);
    }
  }

  TEST_CASE("opening scheme forward pass with an error after the merge") {
    Scheme s = scheme_opening_network(3);
    const Symbol x[] = {2, 2, 2, 2};
    Word v = evaluate(s.network, s.code, x, ErrorPattern{{{8, 1}}});
    CHECK(v[4] == 2);
    CHECK(v[9] == 1);
  }

  TEST_CASE("induced channels agree with the direct simulator") {
    std::mt19937 rng(17);
    for (const char* name : {"diamond", "mirrored_diamond", "relay_bypass"}) {
      Network net = net_of(name);
      for (unsigned q : {2u, 3u}) {
        NetworkCode code = random_code(net, q, rng);
        const std::size_t len = net.out_edges(net.source()).size();
        for (int t = 0; t <= 2; ++t) {
          Channel ch = induced_channel(net, code, net.terminals()[0], t);
          for (std::uint64_t xi = 0; xi < ch.input_count(); ++xi) {
            auto direct = oracle::fanouts(net, oracle::node_map(code), word_at(xi, q, len), t, q)[0];
            CHECK(fanout_words(ch, xi, q, net.in_edges(net.terminals()[0]).size()) == direct);
          }
        }
      }
    }
  }

  TEST_CASE("t = 0 is deterministic and t is monotone") {
    std::mt19937 rng(4);
    Network net = net_of("opening");
    NetworkCode code = random_code(net, 2, rng);
    for (VertexId term : net.terminals()) {
      Channel c0 = induced_channel(net, code, term, 0);
      Channel c1 = induced_channel(net, code, term, 1);
      Channel c2 = induced_channel(net, code, term, 2);
      CHECK(c0.deterministic());
      CHECK(finer_than(c0, c1));
      CHECK(finer_than(c1, c2));
    }
  }

  TEST_CASE("enlarging the vulnerable set only adds outputs") {
    std::mt19937 rng(8);
    Network small = net_of("opening");
    Network big = small.with_vulnerable({0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10});
    NetworkCode code = random_code(small, 2, rng);
    NetworkCode same(big, 2, code.functions());
    for (VertexId term : small.terminals())
      CHECK(finer_than(induced_channel(small, code, term, 1), induced_channel(big, same, term, 1)));
  }

  TEST_CASE("transfer channel between the opening cuts") {
    Scheme s = scheme_opening_network(3);
    const Network& net = s.network;
    const EdgeSet e1{0, 1, 8}, e2{4, 9};
    Channel ch = transfer_channel(net, s.code, e1, e2, 1);
    for (std::uint64_t xi = 0; xi < 27; ++xi) {
      const Word x = word_at(xi, 3, 3);
      std::set<Word> expected;
      for (std::uint64_t yi = 0; yi < 27; ++yi) {
        const Word y = word_at(yi, 3, 3);
        if (hamming_distance(x, y) > 1) continue;
        const Word v1 = s.code.at(net.vertex("V1"))(Word{y[0], y[1]});
        const Word v4 = s.code.at(net.vertex("V4"))(Word{y[2]});
        expected.insert(Word{v1[0], v4[0]});
      }
      CHECK(fanout_words(ch, xi, 3, 2) == expected);
    }
    Channel det = transfer_channel(net, s.code, e1, e2, 0);
    CHECK(det.deterministic());
    CHECK_THROWS_AS(transfer_channel(net, s.code, EdgeSet{0, 1}, e2, 1), Error);
  }

  TEST_CASE("transfer from the source cut equals the induced channel") {
    Scheme s = scheme_diamond(3);
    const Network& net = s.network;
    Channel a = transfer_channel(net, s.code, EdgeSet{0, 1, 2}, EdgeSet{3, 4}, 1);
    Channel b = induced_channel(net, s.code, net.vertex("T"), 1);
    CHECK(a == b);
  }

  TEST_CASE("induced channel decomposes into transfer channels") {
    std::mt19937 rng(21);
    Network base = net_of("opening");
    // E1 must be an antichain: with {0,1,8} an error on edge 0 also reaches edge 8.
    const EdgeSet e1{4, 5, 6}, e2{4, 9}, src{0, 1, 2, 3};
    Network restricted = base.with_vulnerable(e1);
    Network clean = base.with_vulnerable({});
    for (int trial = 0; trial < 3; ++trial) {
      NetworkCode code = random_code(base, 2, rng);
      NetworkCode on_restricted(restricted, 2, code.functions());
      NetworkCode on_clean(clean, 2, code.functions());
      Channel first = transfer_channel(clean, on_clean, src, e1, 0);
      Channel middle = transfer_channel(restricted, on_restricted, e1, e2, 1);
      Channel last = transfer_channel(clean, on_clean, e2, e2, 0);
      Channel whole = induced_channel(restricted, on_restricted, restricted.vertex("T1"), 1);
      CHECK(concatenate(concatenate(first, middle), last) == whole);
    }
  }

  TEST_CASE("linear nodes") {
    Field f(5);
    FieldMatrix m(1, 3);
    m(0, 0) = 1, m(0, 1) = 2, m(0, 2) = 3;
    NodeFunction node = NodeFunction::linear(f, m);
    for (std::uint64_t i = 0; i < 125; ++i) {
      Word x = word_at(i, 5, 3);
      CHECK(node(x)[0] == (x[0] + 2 * x[1] + 3 * x[2]) % 5);
    }
  }

  TEST_CASE("linear codes in table and matrix form") {
    const int a[] = {2, 2}, b[] = {1, 1};
    Network net = simple_two_level(a, b);
    LinearNetworkCode zero{Field(3), {}}, ident{Field(3), {}}, mixed{Field(3), {}};
    for (VertexId v : net.intermediates()) {
      zero.matrices[v] = FieldMatrix(1, 2);
      FieldMatrix id(1, 2);
      id(0, 0) = 1;
      ident.matrices[v] = id;
      FieldMatrix mx(1, 2);
      mx(0, 0) = 2, mx(0, 1) = 1;
      mixed.matrices[v] = mx;
    }
    NetworkCode z = expand_linear(net, zero, 3);
    for (VertexId v : net.intermediates())
      for (Symbol s : z.at(v).tabulate(3)) CHECK(s == 0);
    NetworkCode id = expand_linear(net, ident, 3);
    NetworkCode fw(net, 3, {{net.intermediates()[0], NodeFunction::forward(2, 1)}, {net.intermediates()[1], NodeFunction::forward(2, 1)}});
    for (VertexId v : net.intermediates()) CHECK(id.at(v).tabulate(3) == fw.at(v).tabulate(3));
    NetworkCode t1 = expand_linear(net, mixed, 3), t2 = as_network_code(net, mixed);
    for (VertexId v : net.intermediates()) CHECK(t1.at(v).tabulate(3) == t2.at(v).tabulate(3));
    CHECK_THROWS_AS(expand_linear(net, mixed, 5), Error);
  }

  TEST_CASE("error pattern enumeration") {
    const EdgeId edges[] = {2, 5, 7, 9};
    std::size_t n = 0;
    for_each_error_pattern(edges, 2, 3, [&](std::span<const std::pair<EdgeId, Symbol>> err) {
      ++n;
      CHECK(err.size() <= 2);
      CHECK(std::is_sorted(err.begin(), err.end()));
    });
    CHECK(n == error_pattern_count(4, 2, 3));
    CHECK(n == oracle::error_patterns({2, 5, 7, 9}, 2, 3).size());
  }
}
