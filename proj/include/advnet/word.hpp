#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace advnet {

// Alphabet symbols are 0..q-1 with q <= 256.
using Symbol = std::uint8_t;
using Word = std::vector<Symbol>;

// q^length, or nullopt when it does not fit in 64 bits.
std::optional<std::uint64_t> word_space_size(unsigned q, std::size_t length);

// Base-q index of a word, first coordinate most significant.
std::uint64_t word_index(std::span<const Symbol> w, unsigned q);
Word word_at(std::uint64_t index, unsigned q, std::size_t length);

// Digits for q <= 10 ("0121"), comma-separated values otherwise ("3,10,0").
std::string word_string(std::span<const Symbol> w, unsigned q);
Word parse_word(std::string_view text, unsigned q);

int hamming_distance(std::span<const Symbol> a, std::span<const Symbol> b);

// Visits every word of length n over {0..q-1} with at most `radius` nonzero entries.
// Entries are written in place; the callback receives the support (positions) too.
template <typename Fn>
void for_each_sparse_word(int n, int radius, unsigned q, bool nonzero_only, Fn&& fn);

}  // namespace advnet

#include "advnet/detail/sparse_words.hpp"
