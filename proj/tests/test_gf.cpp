#include <doctest.h>

#include "advnet/error.hpp"
#include "advnet/gf.hpp"
#include "advnet/word.hpp"
#include "oracles.hpp"

using namespace advnet;

namespace {

void each_word(unsigned q, int n, const std::function<void(const Word&)>& fn) {
  const auto size = *word_space_size(q, static_cast<std::size_t>(n));
  for (std::uint64_t i = 0; i < size; ++i) fn(word_at(i, q, static_cast<std::size_t>(n)));
}

}  // namespace

TEST_SUITE("gf") {
  TEST_CASE("prime power detection") {
    CHECK(prime_power(2));
    CHECK(prime_power(9)->prime == 3);
    CHECK(prime_power(9)->exponent == 2);
    CHECK_FALSE(prime_power(6));
    CHECK_FALSE(prime_power(1));
    CHECK_THROWS_AS(Field(6), Error);
  }

  TEST_CASE("small field facts") {
    Field f2(2), f5(5), f4(4);
    CHECK(f2.add(1, 1) == 0);
    CHECK(f5.inv(2) == 3);
    // x is element 2, x+1 is element 3 under x^2 + x + 1
    CHECK(f4.modulus() == std::vector<unsigned>{1, 1});
    CHECK(f4.mul(2, 2) == 3);
  }

  TEST_CASE("prime fields match modular arithmetic") {
    for (unsigned p : {2u, 3u, 5u, 7u, 11u, 13u}) {
      Field f(p);
      for (unsigned a = 0; a < p; ++a)
        for (unsigned b = 0; b < p; ++b) {
          CHECK(f.mul(static_cast<Symbol>(a), static_cast<Symbol>(b)) == oracle::gf_prime_mul(a, b, p));
          CHECK(f.add(static_cast<Symbol>(a), static_cast<Symbol>(b)) == (a + b) % p);
        }
    }
  }

  TEST_CASE("field axioms") {
    for (unsigned q : {4u, 8u, 9u, 16u, 25u, 27u}) {
      Field f(q);
      for (unsigned a = 0; a < q; ++a) {
        const auto x = static_cast<Symbol>(a);
        CHECK(f.add(x, f.neg(x)) == 0);
        if (a) CHECK(f.mul(x, f.inv(x)) == 1);
        for (unsigned b = 0; b < q; ++b) {
          const auto y = static_cast<Symbol>(b);
          CHECK(f.mul(x, y) == f.mul(y, x));
          for (unsigned c = 0; c < q; c += 3) {
            const auto z = static_cast<Symbol>(c);
            CHECK(f.mul(x, f.add(y, z)) == f.add(f.mul(x, y), f.mul(x, z)));
          }
        }
      }
    }
  }

  TEST_CASE("matrices") {
    Field f(5);
    FieldMatrix m(2, 2);
    m(0, 0) = 1, m(0, 1) = 2, m(1, 0) = 3, m(1, 1) = 4;
    auto inv = inverse(f, m);
    REQUIRE(inv);
    const Symbol x[] = {1, 1};
    CHECK(apply(f, *inv, apply(f, m, x)) == Word{1, 1});
    FieldMatrix singular(2, 2);
    singular(0, 0) = 1, singular(0, 1) = 2, singular(1, 0) = 2, singular(1, 1) = 4;
    CHECK_FALSE(inverse(f, singular));
    FieldMatrix ns = null_space(f, singular);
    CHECK(ns.rows == 1);
    Word v(ns.data.begin(), ns.data.end());
    CHECK(apply(f, singular, v) == Word{0, 0});
  }

  TEST_CASE("repetition code") {
    ReedSolomon rs(Field(3), 3, 1);
    const Symbol m[] = {2};
    CHECK(rs.encode(m) == Word{2, 2, 2});
    const Symbol r[] = {2, 0, 2};
    auto d = rs.decode(r);
    REQUIRE(d);
    CHECK(rs.message_of(*d) == Word{2});
  }

  TEST_CASE("MDS distance on small codes") {
    for (unsigned q : {4u, 5u, 7u, 8u}) {
      Field f(q);
      for (int n = 2; n <= std::min<int>(5, static_cast<int>(q)); ++n)
        for (int k = 1; k <= std::min(n, 2); ++k) {
          ReedSolomon rs(f, n, k);
          std::vector<Word> words;
          each_word(q, k, [&](const Word& m) { words.push_back(rs.encode(m)); });
          int dmin = n + 1;
          for (std::size_t i = 0; i < words.size(); ++i)
            for (std::size_t j = i + 1; j < words.size(); ++j) dmin = std::min(dmin, hamming_distance(words[i], words[j]));
          CHECK(dmin == n - k + 1);
        }
    }
  }

  TEST_CASE("error correction by injection") {
    struct Case {
      unsigned q;
      int n, k;
    };
    for (Case c : {Case{7, 6, 2}, Case{7, 5, 1}, Case{5, 5, 3}, Case{8, 7, 3}}) {
      ReedSolomon rs(Field(c.q), c.n, c.k);
      const int radius = rs.radius();
      std::size_t checked = 0;
      each_word(c.q, c.k, [&](const Word& m) {
        const Word cw = rs.encode(m);
        for_each_sparse_word(c.n, radius, c.q, true, [&](const Word& e, std::span<const int>) {
          Word r = cw;
          for (int i = 0; i < c.n; ++i) r[static_cast<std::size_t>(i)] = Field(c.q).add(r[static_cast<std::size_t>(i)], e[static_cast<std::size_t>(i)]);
          auto d = rs.decode(r);
          ++checked;
          if (!d || *d != m) FAIL_CHECK("decode failed");
        });
      });
      CHECK(checked > 0);
    }
  }

  TEST_CASE("decoders agree") {
    ReedSolomon rs(Field(7), 7, 3);
    std::mt19937 rng(9);
    for (int trial = 0; trial < 400; ++trial) {
      Word r(7);
      for (auto& s : r) s = static_cast<Symbol>(rng() % 7);
      CHECK(rs.decode_exhaustive(r) == rs.decode_berlekamp_welch(r));
    }
  }

  TEST_CASE("syndrome decoding") {
    ReedSolomon rs(Field(11), 6, 2);
    SyndromeDecoder sd(rs, 2);
    CHECK(sd.injective());
    const Symbol m[] = {3, 7};
    Word r = rs.encode(m);
    r[1] = 0;
    r[4] = 9;
    auto d = sd.decode(r);
    REQUIRE(d);
    CHECK(*d == Word{3, 7});
    SyndromeDecoder over(rs, 3);
    CHECK_FALSE(over.injective());
  }

  TEST_CASE("words") {
    CHECK(word_index(Word{1, 0, 2}, 3) == 11);
    CHECK(word_at(11, 3, 3) == Word{1, 0, 2});
    CHECK(word_string(Word{3, 10}, 11) == "3,10");
    CHECK(parse_word("3,10", 11) == Word{3, 10});
    CHECK(parse_word("012", 3) == Word{0, 1, 2});
    CHECK_THROWS(parse_word("3", 3));
    CHECK_FALSE(word_space_size(256, 9));
    int count = 0;
    for_each_sparse_word(4, 2, 3, false, [&](const Word&, std::span<const int>) { ++count; });
    CHECK(count == 1 + 4 * 3 + 6 * 9);
  }
}
