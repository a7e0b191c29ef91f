#include "advnet/word.hpp"

#include <charconv>
#include <limits>

#include "advnet/error.hpp"

namespace advnet {

std::optional<std::uint64_t> word_space_size(unsigned q, std::size_t length) {
  std::uint64_t size = 1;
  for (std::size_t i = 0; i < length; ++i) {
    if (size > std::numeric_limits<std::uint64_t>::max() / q) return std::nullopt;
    size *= q;
  }
  return size;
}

std::uint64_t word_index(std::span<const Symbol> w, unsigned q) {
  std::uint64_t index = 0;
  for (Symbol s : w) index = index * q + s;
  return index;
}

Word word_at(std::uint64_t index, unsigned q, std::size_t length) {
  Word w(length, 0);
  for (std::size_t i = length; i-- > 0;) {
    w[i] = static_cast<Symbol>(index % q);
    index /= q;
  }
  return w;
}

std::string word_string(std::span<const Symbol> w, unsigned q) {
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (q <= 10) {
      out.push_back(static_cast<char>('0' + w[i]));
    } else {
      if (i) out.push_back(',');
      out += std::to_string(w[i]);
    }
  }
  return out;
}

Word parse_word(std::string_view text, unsigned q) {
  Word w;
  if (q <= 10) {
    for (char c : text) {
      if (c < '0' || c - '0' >= static_cast<int>(q))
        throw Error(Errc::InvalidInput, "bad symbol in word '" + std::string(text) + "'");
      w.push_back(static_cast<Symbol>(c - '0'));
    }
    return w;
  }
  std::size_t pos = 0;
  while (pos <= text.size() && !text.empty()) {
    std::size_t end = text.find(',', pos);
    if (end == std::string_view::npos) end = text.size();
    unsigned value = 0;
    auto res = std::from_chars(text.data() + pos, text.data() + end, value);
    if (res.ec != std::errc{} || res.ptr != text.data() + end || value >= q)
      throw Error(Errc::InvalidInput, "bad symbol in word '" + std::string(text) + "'");
    w.push_back(static_cast<Symbol>(value));
    pos = end + 1;
  }
  return w;
}

int hamming_distance(std::span<const Symbol> a, std::span<const Symbol> b) {
  if (a.size() != b.size()) throw Error(Errc::LengthMismatch, "hamming distance of unequal lengths");
  int d = 0;
  for (std::size_t i = 0; i < a.size(); ++i) d += a[i] != b[i];
  return d;
}

}  // namespace advnet
