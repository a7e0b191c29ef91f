#include "advnet/netcode.hpp"

#include <algorithm>

#include "advnet/error.hpp"

namespace advnet {

NodeFunction NodeFunction::table(int in_arity, int out_arity, unsigned q, std::vector<Symbol> entries) {
  auto rows = word_space_size(q, static_cast<std::size_t>(in_arity));
  if (!rows || entries.size() != *rows * static_cast<std::uint64_t>(out_arity))
    throw Error(Errc::ArityMismatch, "table size does not match q^in * out");
  for (Symbol s : entries)
    if (s >= q) throw Error(Errc::InvalidInput, "table symbol outside alphabet");
  NodeFunction f;
  f.kind_ = Kind::Table;
  f.in_ = in_arity;
  f.out_ = out_arity;
  f.q_ = q;
  f.entries_ = std::move(entries);
  f.label_ = "table";
  return f;
}

NodeFunction NodeFunction::linear(const Field& field, FieldMatrix coefficients) {
  NodeFunction f;
  f.kind_ = Kind::Linear;
  f.in_ = coefficients.cols;
  f.out_ = coefficients.rows;
  f.q_ = field.order();
  f.field_ = field;
  f.matrix_ = std::move(coefficients);
  f.label_ = "linear";
  return f;
}

NodeFunction NodeFunction::callable(int in_arity, int out_arity, Fn fn, std::string label) {
  NodeFunction f;
  f.kind_ = Kind::Callable;
  f.in_ = in_arity;
  f.out_ = out_arity;
  f.fn_ = std::move(fn);
  f.label_ = std::move(label);
  return f;
}

NodeFunction NodeFunction::forward(int in_arity, int out_arity) {
  return callable(
      in_arity, out_arity,
      [](std::span<const Symbol> in, std::span<Symbol> out) {
        for (std::size_t j = 0; j < out.size(); ++j) out[j] = j < in.size() ? in[j] : Symbol{0};
      },
      "forward");
}

NodeFunction NodeFunction::constant(int in_arity, Word value) {
  const int out = static_cast<int>(value.size());
  return callable(
      in_arity, out,
      [value = std::move(value)](std::span<const Symbol>, std::span<Symbol> o) {
        std::copy(value.begin(), value.end(), o.begin());
      },
      "constant");
}

void NodeFunction::apply(std::span<const Symbol> in, std::span<Symbol> out) const {
  switch (kind_) {
    case Kind::Table: {
      std::uint64_t row = word_index(in, q_);
      auto first = entries_.begin() + static_cast<std::ptrdiff_t>(row * static_cast<std::uint64_t>(out_));
      std::copy(first, first + out_, out.begin());
      return;
    }
    case Kind::Linear: {
      for (int i = 0; i < out_; ++i) {
        Symbol acc = 0;
        for (int j = 0; j < in_; ++j) acc = field_->add(acc, field_->mul(matrix_(i, j), in[static_cast<std::size_t>(j)]));
        out[static_cast<std::size_t>(i)] = acc;
      }
      return;
    }
    case Kind::Callable:
      fn_(in, out);
      return;
  }
}

Word NodeFunction::operator()(std::span<const Symbol> in) const {
  Word out(static_cast<std::size_t>(out_), 0);
  apply(in, out);
  return out;
}

std::vector<Symbol> NodeFunction::tabulate(unsigned q, std::uint64_t max_entries) const {
  if (kind_ == Kind::Table && q == q_) return entries_;
  auto rows = word_space_size(q, static_cast<std::size_t>(in_));
  if (!rows || *rows > max_entries)
    throw Error(Errc::DomainTooLarge, "node table with " + std::to_string(in_) + " inputs is too large");
  std::vector<Symbol> entries(*rows * static_cast<std::uint64_t>(out_));
  Word in(static_cast<std::size_t>(in_), 0);
  for (std::uint64_t r = 0; r < *rows; ++r) {
    apply(in, std::span<Symbol>(entries.data() + r * static_cast<std::uint64_t>(out_), static_cast<std::size_t>(out_)));
    for (std::size_t i = in.size(); i-- > 0;) {
      if (++in[i] < q) break;
      in[i] = 0;
    }
  }
  return entries;
}

NetworkCode::NetworkCode(const Network& net, unsigned q, std::map<VertexId, NodeFunction> functions)
    : q_(q), functions_(std::move(functions)) {
  if (q < 2 || q > 256) throw Error(Errc::InvalidInput, "alphabet size must be in [2,256]");
  for (VertexId v : net.intermediates()) {
    auto it = functions_.find(v);
    if (it == functions_.end()) throw Error(Errc::ArityMismatch, "no function for node " + net.name(v));
    if (it->second.in_arity() != static_cast<int>(net.in_edges(v).size()) ||
        it->second.out_arity() != static_cast<int>(net.out_edges(v).size()))
      throw Error(Errc::ArityMismatch, "function arity does not match degrees of " + net.name(v));
  }
  for (const auto& [v, fn] : functions_)
    if (v < 0 || v >= net.vertex_count() || !net.is_intermediate(v))
      throw Error(Errc::ArityMismatch, "function given for a non-intermediate vertex");
}

const NodeFunction& NetworkCode::at(VertexId v) const {
  auto it = functions_.find(v);
  if (it == functions_.end()) throw Error(Errc::ArityMismatch, "no function for vertex " + std::to_string(v));
  return it->second;
}

NetworkCode as_network_code(const Network& net, const LinearNetworkCode& lin) {
  std::map<VertexId, NodeFunction> fns;
  for (const auto& [v, m] : lin.matrices) fns.emplace(v, NodeFunction::linear(lin.field, m));
  return NetworkCode(net, lin.field.order(), std::move(fns));
}

NetworkCode expand_linear(const Network& net, const LinearNetworkCode& lin, unsigned q) {
  if (lin.field.order() != q) throw Error(Errc::FieldMismatch, "field order differs from alphabet size");
  std::map<VertexId, NodeFunction> fns;
  for (const auto& [v, m] : lin.matrices) {
    NodeFunction f = NodeFunction::linear(lin.field, m);
    fns.emplace(v, NodeFunction::table(f.in_arity(), f.out_arity(), q, f.tabulate(q)));
  }
  return NetworkCode(net, q, std::move(fns));
}

Evaluator::Evaluator(const Network& net, const NetworkCode& code)
    : net_(&net),
      code_(&code),
      source_position_(static_cast<std::size_t>(net.edge_count()), -1),
      out_position_(static_cast<std::size_t>(net.edge_count()), 0),
      node_in_(static_cast<std::size_t>(net.vertex_count())),
      node_out_(static_cast<std::size_t>(net.vertex_count())) {
  for (VertexId v = 0; v < net.vertex_count(); ++v) {
    auto outs = net.out_edges(v);
    for (std::size_t i = 0; i < outs.size(); ++i) {
      out_position_[static_cast<std::size_t>(outs[i])] = static_cast<int>(i);
      if (v == net.source()) source_position_[static_cast<std::size_t>(outs[i])] = static_cast<int>(i);
    }
    node_in_[static_cast<std::size_t>(v)].resize(net.in_edges(v).size());
    node_out_[static_cast<std::size_t>(v)].resize(outs.size());
  }
}

void Evaluator::run(std::span<const Symbol> source_word, std::span<const std::pair<EdgeId, Symbol>> errors,
                    std::span<Symbol> edge_values) {
  const Network& net = *net_;
  if (source_word.size() != net.out_edges(net.source()).size())
    throw Error(Errc::ArityMismatch, "source word length differs from out-degree of the source");
  std::size_t next_error = 0;
  for (EdgeId e = 0; e < net.edge_count(); ++e) {
    const auto ue = static_cast<std::size_t>(e);
    const int sp = source_position_[ue];
    Symbol value;
    if (sp >= 0) {
      value = source_word[static_cast<std::size_t>(sp)];
    } else {
      const VertexId v = net.edge(e).tail;
      const auto uv = static_cast<std::size_t>(v);
      if (out_position_[ue] == 0) {
        auto ins = net.in_edges(v);
        for (std::size_t i = 0; i < ins.size(); ++i) node_in_[uv][i] = edge_values[static_cast<std::size_t>(ins[i])];
        code_->at(v).apply(node_in_[uv], node_out_[uv]);
      }
      value = node_out_[uv][static_cast<std::size_t>(out_position_[ue])];
    }
    while (next_error < errors.size() && errors[next_error].first < e) ++next_error;
    if (next_error < errors.size() && errors[next_error].first == e) value = errors[next_error].second;
    edge_values[ue] = value;
  }
}

Output Evaluator::terminal_output(std::span<const Symbol> edge_values, VertexId terminal) const {
  Output key = 0;
  const unsigned q = code_->alphabet();
  for (EdgeId e : net_->in_edges(terminal)) key = key * q + edge_values[static_cast<std::size_t>(e)];
  return key;
}

Word evaluate(const Network& net, const NetworkCode& code, std::span<const Symbol> source_word,
              const ErrorPattern& err) {
  for (std::size_t i = 0; i < err.assignments.size(); ++i) {
    const auto& [e, s] = err.assignments[i];
    if (!net.is_vulnerable(e)) throw Error(Errc::ErrorOutsideVulnerableSet, "edge " + std::to_string(e));
    if (s >= code.alphabet()) throw Error(Errc::InvalidInput, "error symbol outside alphabet");
    if (i && err.assignments[i - 1].first >= e) throw Error(Errc::InvalidInput, "error pattern not sorted");
  }
  Evaluator ev(net, code);
  Word values(static_cast<std::size_t>(net.edge_count()), 0);
  ev.run(source_word, err.assignments, values);
  return values;
}

void for_each_error_pattern(std::span<const EdgeId> edges, int t, unsigned q,
                            const std::function<void(std::span<const std::pair<EdgeId, Symbol>>)>& fn) {
  std::vector<std::pair<EdgeId, Symbol>> pattern;
  const int n = static_cast<int>(edges.size());
  auto values = [&](auto&& self, std::size_t pos) -> void {
    if (pos == pattern.size()) {
      fn(pattern);
      return;
    }
    for (unsigned v = 0; v < q; ++v) {
      pattern[pos].second = static_cast<Symbol>(v);
      self(self, pos + 1);
    }
  };
  auto choose = [&](auto&& self, int start, int remaining) -> void {
    if (remaining == 0) {
      values(values, 0);
      return;
    }
    for (int i = start; i <= n - remaining; ++i) {
      pattern.emplace_back(edges[static_cast<std::size_t>(i)], Symbol{0});
      self(self, i + 1, remaining - 1);
      pattern.pop_back();
    }
  };
  for (int size = 0; size <= t && size <= n; ++size) choose(choose, 0, size);
}

std::size_t error_pattern_count(std::size_t edges, int t, unsigned q) {
  std::size_t total = 0;
  std::size_t binom = 1;
  std::size_t power = 1;
  for (std::size_t k = 0; k <= static_cast<std::size_t>(std::max(t, 0)) && k <= edges; ++k) {
    total += binom * power;
    binom = binom * (edges - k) / (k + 1);
    power *= q;
  }
  return total;
}

std::vector<std::vector<Output>> induced_fanouts(Evaluator& ev, std::span<const Symbol> source_word,
                                                 std::span<const VertexId> terminals, int t) {
  const Network& net = ev.network();
  std::vector<std::vector<Output>> result(terminals.size());
  Word values(static_cast<std::size_t>(net.edge_count()), 0);
  for_each_error_pattern(net.vulnerable(), t, ev.alphabet(), [&](std::span<const std::pair<EdgeId, Symbol>> err) {
    ev.run(source_word, err, values);
    for (std::size_t i = 0; i < terminals.size(); ++i) result[i].push_back(ev.terminal_output(values, terminals[i]));
  });
  for (auto& f : result) {
    std::sort(f.begin(), f.end());
    f.erase(std::unique(f.begin(), f.end()), f.end());
  }
  return result;
}

Channel induced_channel(const Network& net, const NetworkCode& code, VertexId terminal, int t,
                        std::size_t max_inputs) {
  if (!net.is_terminal(terminal)) throw Error(Errc::NotATerminal, net.name(terminal));
  const unsigned q = code.alphabet();
  auto inputs = word_space_size(q, net.out_edges(net.source()).size());
  auto outputs = word_space_size(q, net.in_edges(terminal).size());
  if (!inputs || *inputs > max_inputs || !outputs)
    throw Error(Errc::DomainTooLarge, "induced channel input or output space too large");
  Evaluator ev(net, code);
  const VertexId terms[] = {terminal};
  std::vector<std::vector<Output>> table(*inputs);
  for (std::uint64_t x = 0; x < *inputs; ++x) {
    Word w = word_at(x, q, net.out_edges(net.source()).size());
    table[x] = std::move(induced_fanouts(ev, w, terms, t)[0]);
  }
  return Channel(*outputs, std::move(table));
}

namespace {

// Evaluates edges downstream of cut1 using only values on cut1 edges.
class CutEvaluator {
 public:
  CutEvaluator(const Network& net, const NetworkCode& code, const EdgeSet& cut1)
      : net_(net), code_(code), cut1_(cut1), slot_(static_cast<std::size_t>(net.edge_count()), -1) {
    for (std::size_t i = 0; i < cut1.size(); ++i) slot_[static_cast<std::size_t>(cut1[i])] = static_cast<int>(i);
  }

  Symbol value(EdgeId g, std::span<const Symbol> x) {
    known_.assign(static_cast<std::size_t>(net_.vertex_count()), Word{});
    return compute(g, x);
  }

 private:
  Symbol compute(EdgeId g, std::span<const Symbol> x) {
    int s = slot_[static_cast<std::size_t>(g)];
    if (s >= 0) return x[static_cast<std::size_t>(s)];
    const VertexId v = net_.edge(g).tail;
    if (v == net_.source()) throw Error(Errc::NotPreceding, "edge " + std::to_string(g) + " bypasses the first cut");
    Word& out = known_[static_cast<std::size_t>(v)];
    if (out.empty()) {
      auto ins = net_.in_edges(v);
      Word in(ins.size());
      for (std::size_t i = 0; i < ins.size(); ++i) in[i] = compute(ins[i], x);
      out = code_.at(v)(in);
    }
    auto outs = net_.out_edges(v);
    auto pos = std::find(outs.begin(), outs.end(), g) - outs.begin();
    return out[static_cast<std::size_t>(pos)];
  }

  const Network& net_;
  const NetworkCode& code_;
  const EdgeSet& cut1_;
  std::vector<int> slot_;
  std::vector<Word> known_;
};

}  // namespace

Channel transfer_channel(const Network& net, const NetworkCode& code, const EdgeSet& cut1,
                         const EdgeSet& cut2, int t, std::size_t max_inputs) {
  if (!cut_precedes(net, cut1, cut2)) throw Error(Errc::NotPreceding, "first edge set does not precede the second");
  const unsigned q = code.alphabet();
  auto inputs = word_space_size(q, cut1.size());
  auto outputs = word_space_size(q, cut2.size());
  if (!inputs || *inputs > max_inputs || !outputs)
    throw Error(Errc::DomainTooLarge, "transfer channel space too large");
  std::vector<EdgeId> vulnerable_slots;  // positions within cut1
  for (std::size_t i = 0; i < cut1.size(); ++i)
    if (net.is_vulnerable(cut1[i])) vulnerable_slots.push_back(static_cast<EdgeId>(i));

  CutEvaluator ce(net, code, cut1);
  std::vector<std::vector<Output>> table(*inputs);
  Word y;
  for (std::uint64_t xi = 0; xi < *inputs; ++xi) {
    const Word x = word_at(xi, q, cut1.size());
    auto& fan = table[xi];
    for_each_error_pattern(vulnerable_slots, t, q, [&](std::span<const std::pair<EdgeId, Symbol>> err) {
      y = x;
      for (const auto& [slot, s] : err) y[static_cast<std::size_t>(slot)] = s;
      Output key = 0;
      for (EdgeId f : cut2) key = key * q + ce.value(f, y);
      fan.push_back(key);
    });
  }
  return Channel(*outputs, std::move(table));
}

}  // namespace advnet
