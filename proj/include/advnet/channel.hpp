#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace advnet {

using Output = std::uint64_t;
// A code for a channel, as a list of input indices.
using InputCode = std::vector<std::size_t>;

// Finite adversarial channel: input x maps to a nonempty set of possible outputs.
// Inputs are 0..input_count()-1, outputs are 0..output_count()-1.
class Channel {
 public:
  Channel(std::size_t output_count, std::vector<std::vector<Output>> fanouts);
  static Channel from_function(std::size_t input_count, std::size_t output_count,
                               const std::function<std::vector<Output>(std::size_t)>& fanout);
  static Channel identity(std::size_t n);

  std::size_t input_count() const noexcept { return fanouts_.size(); }
  std::size_t output_count() const noexcept { return outputs_; }
  std::span<const Output> fanout(std::size_t x) const { return fanouts_.at(x); }
  bool deterministic() const;

  friend bool operator==(const Channel&, const Channel&) = default;

 private:
  std::size_t outputs_;
  std::vector<std::vector<Output>> fanouts_;
};

bool is_unambiguous(const Channel& ch, std::span<const std::size_t> code);
bool finer_than(const Channel& finer, const Channel& coarser);
Channel concatenate(const Channel& first, const Channel& second);

// Simple undirected graph stored as adjacency bit rows.
class Graph {
 public:
  explicit Graph(std::size_t n = 0);
  std::size_t size() const noexcept { return n_; }
  std::size_t words() const noexcept { return words_; }
  void add_edge(std::size_t i, std::size_t j);
  bool adjacent(std::size_t i, std::size_t j) const;
  std::size_t degree(std::size_t i) const;
  const std::uint64_t* row(std::size_t i) const { return bits_.data() + i * words_; }
  void merge(const Graph& other);
  // Adds a clique on every group of inputs sharing an output.
  void add_confusions(std::span<const std::vector<Output>> fanouts);

 private:
  std::size_t n_;
  std::size_t words_;
  std::vector<std::uint64_t> bits_;
};

Graph confusability_graph(const Channel& ch);

// Largest independent set, but only if it has more than `must_exceed` vertices; otherwise empty.
std::vector<std::size_t> maximum_independent_set(const Graph& g, std::size_t must_exceed = 0);
std::vector<std::size_t> greedy_independent_set(const Graph& g);

struct CapacityOptions {
  std::size_t max_inputs = 2000;
  bool greedy = false;
};

struct CapacityResult {
  std::size_t code_size = 0;
  InputCode witness;
  bool exact = true;  // false when produced by the greedy fallback (a lower bound)
  double log2_size() const;
  double log_size(double base) const;
};

CapacityResult one_shot_capacity(const Channel& ch, const CapacityOptions& options = {});

}  // namespace advnet
