#pragma once

#include <vector>

namespace advnet {

template <typename Fn>
void for_each_sparse_word(int n, int radius, unsigned q, bool nonzero_only, Fn&& fn) {
  Word word(static_cast<std::size_t>(n), 0);
  std::vector<int> support;
  const Symbol first = nonzero_only ? 1 : 0;
  // Supports in lexicographic order, then values in odometer order.
  auto visit_values = [&](auto&& self, std::size_t pos) -> void {
    if (pos == support.size()) {
      fn(static_cast<const Word&>(word), static_cast<const std::vector<int>&>(support));
      return;
    }
    for (unsigned v = first; v < q; ++v) {
      word[static_cast<std::size_t>(support[pos])] = static_cast<Symbol>(v);
      self(self, pos + 1);
    }
    word[static_cast<std::size_t>(support[pos])] = 0;
  };
  auto choose = [&](auto&& self, int start, int remaining) -> void {
    if (remaining == 0) {
      visit_values(visit_values, 0);
      return;
    }
    for (int i = start; i <= n - remaining; ++i) {
      support.push_back(i);
      self(self, i + 1, remaining - 1);
      support.pop_back();
    }
  };
  for (int w = 0; w <= radius && w <= n; ++w) choose(choose, 0, w);
}

}  // namespace advnet
