#pragma once

#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "advnet/channel.hpp"
#include "advnet/gf.hpp"
#include "advnet/netgraph.hpp"
#include "advnet/word.hpp"

namespace advnet {

// The processing function of one intermediate node: A^{in} -> A^{out}.
// Coordinates follow the global edge order of the node's in- and out-edges.
class NodeFunction {
 public:
  using Fn = std::function<void(std::span<const Symbol>, std::span<Symbol>)>;
  enum class Kind { Table, Linear, Callable };

  // entries[(input index) * out + j], input index in base q, first coordinate most significant.
  static NodeFunction table(int in_arity, int out_arity, unsigned q, std::vector<Symbol> entries);
  static NodeFunction linear(const Field& field, FieldMatrix coefficients);
  static NodeFunction callable(int in_arity, int out_arity, Fn fn, std::string label);
  // out_j = in_j for j < min(in, out); remaining outputs are 0.
  static NodeFunction forward(int in_arity, int out_arity);
  static NodeFunction constant(int in_arity, Word value);

  int in_arity() const noexcept { return in_; }
  int out_arity() const noexcept { return out_; }
  Kind kind() const noexcept { return kind_; }
  const std::string& label() const noexcept { return label_; }
  const FieldMatrix* matrix() const noexcept { return kind_ == Kind::Linear ? &matrix_ : nullptr; }

  void apply(std::span<const Symbol> in, std::span<Symbol> out) const;
  Word operator()(std::span<const Symbol> in) const;

  // Full table over A^{in}; throws DomainTooLarge above max_entries rows.
  std::vector<Symbol> tabulate(unsigned q, std::uint64_t max_entries = 1u << 22) const;

 private:
  Kind kind_ = Kind::Callable;
  int in_ = 0;
  int out_ = 0;
  unsigned q_ = 0;
  std::vector<Symbol> entries_;
  std::optional<Field> field_;
  FieldMatrix matrix_;
  Fn fn_;
  std::string label_;
};

class NetworkCode {
 public:
  NetworkCode(const Network& net, unsigned q, std::map<VertexId, NodeFunction> functions);

  unsigned alphabet() const noexcept { return q_; }
  const NodeFunction& at(VertexId v) const;
  const std::map<VertexId, NodeFunction>& functions() const noexcept { return functions_; }

 private:
  unsigned q_;
  std::map<VertexId, NodeFunction> functions_;
};

struct LinearNetworkCode {
  Field field;
  std::map<VertexId, FieldMatrix> matrices;  // out(V) x in(V) per intermediate node
};

// Table form of a linear code over A = GF(q).
NetworkCode expand_linear(const Network& net, const LinearNetworkCode& lin, unsigned q);
// Same map, kept in matrix form (no table blow-up).
NetworkCode as_network_code(const Network& net, const LinearNetworkCode& lin);

// Substitutions applied to edges after their tail node writes them.
struct ErrorPattern {
  std::vector<std::pair<EdgeId, Symbol>> assignments;  // sorted by edge id
  friend bool operator==(const ErrorPattern&, const ErrorPattern&) = default;
};

// Values carried by every edge, in edge order.
Word evaluate(const Network& net, const NetworkCode& code, std::span<const Symbol> source_word,
              const ErrorPattern& err);

// Reusable forward evaluator; not thread-safe, use one per thread.
class Evaluator {
 public:
  Evaluator(const Network& net, const NetworkCode& code);

  void run(std::span<const Symbol> source_word, std::span<const std::pair<EdgeId, Symbol>> errors,
           std::span<Symbol> edge_values);
  Output terminal_output(std::span<const Symbol> edge_values, VertexId terminal) const;
  const Network& network() const noexcept { return *net_; }
  unsigned alphabet() const noexcept { return code_->alphabet(); }

 private:
  const Network* net_;
  const NetworkCode* code_;
  std::vector<int> source_position_;  // per edge, index in out(S) or -1
  std::vector<int> out_position_;     // per edge, index in out(tail)
  std::vector<Word> node_in_;
  std::vector<Word> node_out_;
};

// Calls fn(span of (edge, value)) for every substitution of at most t edges of `edges`.
void for_each_error_pattern(std::span<const EdgeId> edges, int t, unsigned q,
                            const std::function<void(std::span<const std::pair<EdgeId, Symbol>>)>& fn);

std::size_t error_pattern_count(std::size_t edges, int t, unsigned q);

// Sorted, distinct outputs at each requested terminal for one source word.
std::vector<std::vector<Output>> induced_fanouts(Evaluator& ev, std::span<const Symbol> source_word,
                                                 std::span<const VertexId> terminals, int t);

Channel induced_channel(const Network& net, const NetworkCode& code, VertexId terminal, int t,
                        std::size_t max_inputs = 1u << 20);

Channel transfer_channel(const Network& net, const NetworkCode& code, const EdgeSet& cut1,
                         const EdgeSet& cut2, int t, std::size_t max_inputs = 1u << 20);

}  // namespace advnet
