#include <doctest.h>

#include <random>
#include <set>

#include "advnet/channel.hpp"
#include "advnet/word.hpp"
#include "oracles.hpp"

using namespace advnet;

namespace {

Channel example_channel() {
  return Channel(8, {{0, 2}, {0, 1, 4, 6}, {2, 3, 5}, {2, 3, 4, 7}, {2, 3, 4, 6}, {0, 1, 5}, {6}, {0, 1, 5, 7}});
}

Channel random_channel(std::mt19937& rng, std::size_t inputs, std::size_t outputs) {
  std::vector<std::vector<Output>> fan(inputs);
  for (auto& f : fan) {
    const int k = std::uniform_int_distribution<int>(1, 3)(rng);
    for (int i = 0; i < k; ++i) f.push_back(std::uniform_int_distribution<Output>(0, outputs - 1)(rng));
    std::sort(f.begin(), f.end());
    f.erase(std::unique(f.begin(), f.end()), f.end());
  }
  return Channel(outputs, std::move(fan));
}

std::vector<std::set<std::uint64_t>> as_sets(const Channel& ch) {
  std::vector<std::set<std::uint64_t>> out;
  for (std::size_t x = 0; x < ch.input_count(); ++x) out.emplace_back(ch.fanout(x).begin(), ch.fanout(x).end());
  return out;
}

// Coarsening: every fan-out gains a few extra outputs.
Channel coarsen(const Channel& ch, std::mt19937& rng) {
  std::vector<std::vector<Output>> fan;
  for (std::size_t x = 0; x < ch.input_count(); ++x) {
    std::vector<Output> f(ch.fanout(x).begin(), ch.fanout(x).end());
    if (rng() % 2) f.push_back(std::uniform_int_distribution<Output>(0, ch.output_count() - 1)(rng));
    std::sort(f.begin(), f.end());
    f.erase(std::unique(f.begin(), f.end()), f.end());
    fan.push_back(std::move(f));
  }
  return Channel(ch.output_count(), std::move(fan));
}

Channel hamming(unsigned q, int n, int t) {
  const auto size = *word_space_size(q, static_cast<std::size_t>(n));
  return Channel::from_function(size, size, [&](std::size_t x) {
    std::vector<Output> out;
    Word w = word_at(x, q, static_cast<std::size_t>(n));
    for (std::uint64_t y = 0; y < size; ++y)
      if (hamming_distance(w, word_at(y, q, static_cast<std::size_t>(n))) <= t) out.push_back(y);
    return out;
  });
}

}  // namespace

TEST_SUITE("channel") {
  TEST_CASE("unambiguous codes of the example channel") {
    Channel ch = example_channel();
    const std::size_t good[] = {3, 5, 6};
    const std::size_t bad[] = {0, 1};
    const std::size_t one[] = {4};
    CHECK(is_unambiguous(ch, good));
    CHECK_FALSE(is_unambiguous(ch, bad));
    CHECK(is_unambiguous(ch, one));
  }

  TEST_CASE("capacity of the example channel") {
    auto r = one_shot_capacity(example_channel());
    CHECK(r.code_size == 3);
    CHECK(r.exact);
    CHECK(r.witness == InputCode{3, 5, 6});
    CHECK(r.log2_size() == doctest::Approx(std::log2(3.0)));
    CHECK(oracle::max_unambiguous(as_sets(example_channel())) == 3);
  }

  TEST_CASE("identity channel") {
    auto r = one_shot_capacity(Channel::identity(6));
    CHECK(r.code_size == 6);
    CHECK(r.log_size(6) == doctest::Approx(1.0));
    CHECK(Channel::identity(3).deterministic());
    CHECK_FALSE(example_channel().deterministic());
  }

  TEST_CASE("finer than") {
    Channel ch = example_channel();
    CHECK(finer_than(ch, ch));
    CHECK(finer_than(hamming(2, 3, 1), hamming(2, 3, 2)));
    CHECK_FALSE(finer_than(hamming(2, 3, 2), hamming(2, 3, 1)));
    std::vector<std::vector<Output>> rev;
    for (Output x = 0; x < 8; ++x) rev.push_back({7 - x});
    CHECK_FALSE(finer_than(ch, Channel(8, rev)));
  }

  TEST_CASE("concatenation") {
    Channel ch = example_channel();
    CHECK(concatenate(ch, Channel::identity(8)) == ch);
    Channel h = hamming(2, 1, 1);
    Channel hh = concatenate(h, h);
    CHECK(hh.fanout(0).size() == 2);
    CHECK(hh.fanout(1).size() == 2);
    std::mt19937 rng(3);
    for (int trial = 0; trial < 20; ++trial) {
      Channel a = random_channel(rng, 5, 4), b = random_channel(rng, 4, 6), c = random_channel(rng, 6, 3);
      CHECK(concatenate(concatenate(a, b), c) == concatenate(a, concatenate(b, c)));
    }
    CHECK(concatenate(Channel::identity(2), Channel::identity(3)).output_count() == 3);
    CHECK_THROWS(concatenate(Channel::identity(3), Channel::identity(2)));
  }

  TEST_CASE("witness is maximal and matches brute force") {
    std::mt19937 rng(11);
    for (int trial = 0; trial < 60; ++trial) {
      Channel ch = random_channel(rng, 10, 8);
      auto r = one_shot_capacity(ch);
      CHECK(is_unambiguous(ch, r.witness));
      CHECK(r.code_size == oracle::max_unambiguous(as_sets(ch)));
      for (std::size_t x = 0; x < ch.input_count(); ++x) {
        if (std::find(r.witness.begin(), r.witness.end(), x) != r.witness.end()) continue;
        InputCode bigger = r.witness;
        bigger.push_back(x);
        CHECK_FALSE(is_unambiguous(ch, bigger));
      }
    }
  }

  TEST_CASE("greedy gives a valid lower bound") {
    std::mt19937 rng(5);
    for (int trial = 0; trial < 30; ++trial) {
      Channel ch = random_channel(rng, 12, 9);
      CapacityOptions opt;
      opt.greedy = true;
      auto g = one_shot_capacity(ch, opt);
      CHECK_FALSE(g.exact);
      CHECK(is_unambiguous(ch, g.witness));
      CHECK(g.code_size <= one_shot_capacity(ch).code_size);
    }
  }

  TEST_CASE("monotonicity and data processing") {
    std::mt19937 rng(2024);
    for (int trial = 0; trial < 50; ++trial) {
      Channel fine = random_channel(rng, 8, 8);
      Channel coarse = coarsen(fine, rng);
      CHECK(finer_than(fine, coarse));
      CHECK(one_shot_capacity(fine).code_size >= one_shot_capacity(coarse).code_size);
      Channel second = random_channel(rng, 8, 6);
      const auto joined = one_shot_capacity(concatenate(fine, second)).code_size;
      CHECK(joined <= one_shot_capacity(fine).code_size);
      CHECK(joined <= one_shot_capacity(second).code_size);
    }
  }

  TEST_CASE("independent set pruning threshold") {
    Graph g(4);
    g.add_edge(0, 1);
    CHECK(maximum_independent_set(g).size() == 3);
    CHECK(maximum_independent_set(g, 3).empty());
    CHECK(maximum_independent_set(g, 2).size() == 3);
  }

  TEST_CASE("fan-out validation") {
    CHECK_THROWS(Channel(2, {{0}, {}}));
    CHECK_THROWS(Channel(2, {{0}, {2}}));
  }
}
