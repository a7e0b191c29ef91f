#include "advnet/channel.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <unordered_map>

#include "advnet/error.hpp"

namespace advnet {

Channel::Channel(std::size_t output_count, std::vector<std::vector<Output>> fanouts)
    : outputs_(output_count), fanouts_(std::move(fanouts)) {
  for (std::size_t x = 0; x < fanouts_.size(); ++x) {
    auto& f = fanouts_[x];
    if (f.empty()) throw Error(Errc::InvalidInput, "empty fan-out for input " + std::to_string(x));
    std::sort(f.begin(), f.end());
    f.erase(std::unique(f.begin(), f.end()), f.end());
    if (f.back() >= outputs_) throw Error(Errc::SpaceMismatch, "output outside output space");
  }
}

Channel Channel::from_function(std::size_t input_count, std::size_t output_count,
                               const std::function<std::vector<Output>(std::size_t)>& fanout) {
  std::vector<std::vector<Output>> table(input_count);
  for (std::size_t x = 0; x < input_count; ++x) table[x] = fanout(x);
  return Channel(output_count, std::move(table));
}

Channel Channel::identity(std::size_t n) {
  std::vector<std::vector<Output>> table(n);
  for (std::size_t x = 0; x < n; ++x) table[x] = {x};
  return Channel(n, std::move(table));
}

bool Channel::deterministic() const {
  return std::all_of(fanouts_.begin(), fanouts_.end(), [](const auto& f) { return f.size() == 1; });
}

bool is_unambiguous(const Channel& ch, std::span<const std::size_t> code) {
  std::unordered_map<Output, std::size_t> owner;
  for (std::size_t x : code) {
    if (x >= ch.input_count()) throw Error(Errc::WordOutsideDomain, std::to_string(x));
    for (Output y : ch.fanout(x)) {
      auto [it, fresh] = owner.emplace(y, x);
      if (!fresh && it->second != x) return false;
    }
  }
  return true;
}

bool finer_than(const Channel& finer, const Channel& coarser) {
  if (finer.input_count() != coarser.input_count() || finer.output_count() != coarser.output_count())
    throw Error(Errc::SpaceMismatch, "channels have different input or output spaces");
  for (std::size_t x = 0; x < finer.input_count(); ++x) {
    auto a = finer.fanout(x);
    auto b = coarser.fanout(x);
    if (!std::includes(b.begin(), b.end(), a.begin(), a.end())) return false;
  }
  return true;
}

Channel concatenate(const Channel& first, const Channel& second) {
  if (first.output_count() > second.input_count())
    throw Error(Errc::SpaceMismatch, "output space of the first channel exceeds input space of the second");
  std::vector<std::vector<Output>> table(first.input_count());
  for (std::size_t x = 0; x < first.input_count(); ++x) {
    auto& out = table[x];
    for (Output y : first.fanout(x)) {
      auto f = second.fanout(static_cast<std::size_t>(y));
      out.insert(out.end(), f.begin(), f.end());
    }
  }
  return Channel(second.output_count(), std::move(table));
}

Graph::Graph(std::size_t n) : n_(n), words_((n + 63) / 64), bits_(n * words_, 0) {}

void Graph::add_edge(std::size_t i, std::size_t j) {
  if (i == j) return;
  bits_[i * words_ + j / 64] |= std::uint64_t{1} << (j % 64);
  bits_[j * words_ + i / 64] |= std::uint64_t{1} << (i % 64);
}

bool Graph::adjacent(std::size_t i, std::size_t j) const {
  return (bits_[i * words_ + j / 64] >> (j % 64)) & 1;
}

std::size_t Graph::degree(std::size_t i) const {
  std::size_t d = 0;
  for (std::size_t w = 0; w < words_; ++w) d += static_cast<std::size_t>(std::popcount(bits_[i * words_ + w]));
  return d;
}

void Graph::merge(const Graph& other) {
  if (other.n_ != n_) throw Error(Errc::SpaceMismatch, "graphs of different order");
  for (std::size_t k = 0; k < bits_.size(); ++k) bits_[k] |= other.bits_[k];
}

void Graph::add_confusions(std::span<const std::vector<Output>> fanouts) {
  std::vector<std::pair<Output, std::size_t>> pairs;
  for (std::size_t x = 0; x < fanouts.size(); ++x)
    for (Output y : fanouts[x]) pairs.emplace_back(y, x);
  std::sort(pairs.begin(), pairs.end());
  for (std::size_t lo = 0; lo < pairs.size();) {
    std::size_t hi = lo;
    while (hi < pairs.size() && pairs[hi].first == pairs[lo].first) ++hi;
    for (std::size_t i = lo; i < hi; ++i)
      for (std::size_t j = i + 1; j < hi; ++j) add_edge(pairs[i].second, pairs[j].second);
    lo = hi;
  }
}

Graph confusability_graph(const Channel& ch) {
  std::vector<std::vector<Output>> fanouts(ch.input_count());
  for (std::size_t x = 0; x < ch.input_count(); ++x) {
    auto f = ch.fanout(x);
    fanouts[x].assign(f.begin(), f.end());
  }
  Graph g(ch.input_count());
  g.add_confusions(fanouts);
  return g;
}

namespace {

// Maximum clique in the complement graph, with greedy colouring bounds.
class CliqueSearch {
 public:
  CliqueSearch(const Graph& g, std::size_t must_exceed) : n_(g.size()), words_((g.size() + 63) / 64) {
    // Relabel vertices by decreasing complement degree.
    order_.resize(n_);
    std::iota(order_.begin(), order_.end(), std::size_t{0});
    std::stable_sort(order_.begin(), order_.end(),
                     [&](std::size_t x, std::size_t y) { return g.degree(x) < g.degree(y); });
    compl_.assign(n_ * words_, 0);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j)
        if (i != j && !g.adjacent(order_[i], order_[j])) set(compl_.data() + i * words_, j);
    best_size_ = must_exceed;
  }

  std::vector<std::size_t> run() {
    std::vector<std::uint64_t> all(words_, 0);
    for (std::size_t i = 0; i < n_; ++i) set(all.data(), i);
    std::vector<std::size_t> current;
    if (n_ > 0) expand(all, current);
    std::vector<std::size_t> result;
    for (std::size_t v : best_) result.push_back(order_[v]);
    std::sort(result.begin(), result.end());
    return result;
  }

 private:
  static void set(std::uint64_t* b, std::size_t i) { b[i / 64] |= std::uint64_t{1} << (i % 64); }
  static void clear(std::uint64_t* b, std::size_t i) { b[i / 64] &= ~(std::uint64_t{1} << (i % 64)); }
  bool empty(const std::vector<std::uint64_t>& b) const {
    return std::all_of(b.begin(), b.end(), [](std::uint64_t w) { return w == 0; });
  }

  void expand(std::vector<std::uint64_t> candidates, std::vector<std::size_t>& current) {
    std::vector<std::size_t> verts;
    std::vector<std::size_t> colours;
    std::vector<std::uint64_t> uncoloured = candidates;
    std::vector<std::uint64_t> cls(words_);
    std::size_t colour = 0;
    while (!empty(uncoloured)) {
      ++colour;
      cls = uncoloured;
      for (std::size_t w = 0; w < words_; ++w) {
        while (cls[w]) {
          std::size_t v = w * 64 + static_cast<std::size_t>(std::countr_zero(cls[w]));
          clear(cls.data(), v);
          clear(uncoloured.data(), v);
          const std::uint64_t* nb = compl_.data() + v * words_;
          for (std::size_t k = w; k < words_; ++k) cls[k] &= ~nb[k];
          verts.push_back(v);
          colours.push_back(colour);
        }
      }
    }
    std::vector<std::uint64_t> next(words_);
    for (std::size_t idx = verts.size(); idx-- > 0;) {
      if (current.size() + colours[idx] <= best_size_) return;
      std::size_t v = verts[idx];
      current.push_back(v);
      const std::uint64_t* nb = compl_.data() + v * words_;
      for (std::size_t k = 0; k < words_; ++k) next[k] = candidates[k] & nb[k];
      if (empty(next)) {
        if (current.size() > best_size_) {
          best_size_ = current.size();
          best_ = current;
        }
      } else {
        expand(next, current);
      }
      current.pop_back();
      clear(candidates.data(), v);
    }
  }

  std::size_t n_;
  std::size_t words_;
  std::vector<std::size_t> order_;
  std::vector<std::uint64_t> compl_;
  std::size_t best_size_ = 0;
  std::vector<std::size_t> best_;
};

}  // namespace

std::vector<std::size_t> maximum_independent_set(const Graph& g, std::size_t must_exceed) {
  return CliqueSearch(g, must_exceed).run();
}

std::vector<std::size_t> greedy_independent_set(const Graph& g) {
  const std::size_t n = g.size();
  std::vector<std::uint64_t> alive(g.words(), 0);
  for (std::size_t v = 0; v < n; ++v) alive[v / 64] |= std::uint64_t{1} << (v % 64);
  auto is_alive = [&](std::size_t v) { return (alive[v / 64] >> (v % 64)) & 1; };
  std::vector<std::size_t> chosen;
  for (;;) {
    std::size_t pick = n;
    int pick_degree = 0;
    for (std::size_t v = 0; v < n; ++v) {
      if (!is_alive(v)) continue;
      int d = 0;
      const std::uint64_t* row = g.row(v);
      for (std::size_t w = 0; w < g.words(); ++w) d += std::popcount(row[w] & alive[w]);
      if (pick == n || d < pick_degree) {
        pick = v;
        pick_degree = d;
      }
    }
    if (pick == n) break;
    chosen.push_back(pick);
    const std::uint64_t* row = g.row(pick);
    for (std::size_t w = 0; w < g.words(); ++w) alive[w] &= ~row[w];
    alive[pick / 64] &= ~(std::uint64_t{1} << (pick % 64));
  }
  std::sort(chosen.begin(), chosen.end());
  return chosen;
}

double CapacityResult::log2_size() const { return std::log2(static_cast<double>(code_size)); }

double CapacityResult::log_size(double base) const {
  return std::log(static_cast<double>(code_size)) / std::log(base);
}

CapacityResult one_shot_capacity(const Channel& ch, const CapacityOptions& options) {
  if (ch.input_count() == 0) throw Error(Errc::InvalidInput, "channel has no inputs");
  if (ch.input_count() > options.max_inputs && !options.greedy)
    throw Error(Errc::DomainTooLarge, std::to_string(ch.input_count()) + " inputs exceed limit " +
                                          std::to_string(options.max_inputs));
  Graph g = confusability_graph(ch);
  CapacityResult r;
  r.exact = !options.greedy;
  r.witness = options.greedy ? greedy_independent_set(g) : maximum_independent_set(g);
  r.code_size = r.witness.size();
  return r;
}

}  // namespace advnet
