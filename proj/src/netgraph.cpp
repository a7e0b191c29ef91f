#include "advnet/netgraph.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <set>
#include <sstream>

#include "advnet/error.hpp"

namespace advnet {

EdgeSet make_edge_set(std::vector<EdgeId> ids) {
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  return ids;
}

std::optional<VertexId> Network::find(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == name) return static_cast<VertexId>(i);
  return std::nullopt;
}

VertexId Network::vertex(std::string_view name) const {
  if (auto v = find(name)) return *v;
  throw Error(Errc::UnknownVertex, std::string(name));
}

bool Network::is_terminal(VertexId v) const {
  return std::find(terminals_.begin(), terminals_.end(), v) != terminals_.end();
}

bool Network::is_vulnerable(EdgeId e) const {
  return e >= 0 && e < edge_count() && vulnerable_mask_[static_cast<std::size_t>(e)] != 0;
}

Network Network::with_vulnerable(EdgeSet vulnerable) const {
  Network copy = *this;
  copy.vulnerable_ = make_edge_set(std::move(vulnerable));
  copy.vulnerable_mask_.assign(edges_.size(), 0);
  for (EdgeId e : copy.vulnerable_) {
    if (e < 0 || e >= edge_count())
      throw Error(Errc::InvalidInput, "vulnerable edge id out of range: " + std::to_string(e));
    copy.vulnerable_mask_[static_cast<std::size_t>(e)] = 1;
  }
  return copy;
}

RawNetwork Network::to_raw() const {
  RawNetwork raw;
  raw.vertices = names_;
  for (const Edge& e : edges_) raw.edges.emplace_back(names_[e.tail], names_[e.head]);
  raw.source = names_[source_];
  for (VertexId t : terminals_) raw.terminals.push_back(names_[t]);
  raw.vulnerable = vulnerable_;
  return raw;
}

bool ValidatedNetwork::reordered() const {
  for (std::size_t i = 0; i < edge_map.size(); ++i)
    if (edge_map[i] != static_cast<EdgeId>(i)) return true;
  return false;
}

struct NetworkAssembler {
  static ValidatedNetwork run(const RawNetwork& raw);
};

namespace {

std::vector<char> reach_from(const std::vector<std::vector<int>>& adj, int start) {
  std::vector<char> seen(adj.size(), 0);
  std::vector<int> stack{start};
  seen[static_cast<std::size_t>(start)] = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int w : adj[static_cast<std::size_t>(v)])
      if (!seen[static_cast<std::size_t>(w)]) {
        seen[static_cast<std::size_t>(w)] = 1;
        stack.push_back(w);
      }
  }
  return seen;
}

}  // namespace

ValidatedNetwork NetworkAssembler::run(const RawNetwork& raw) {
  const int n = static_cast<int>(raw.vertices.size());
  std::map<std::string, VertexId> index;
  for (int i = 0; i < n; ++i) {
    if (!index.emplace(raw.vertices[static_cast<std::size_t>(i)], i).second)
      throw Error(Errc::InvalidInput, "duplicate vertex " + raw.vertices[static_cast<std::size_t>(i)]);
  }
  auto lookup = [&](const std::string& name) {
    auto it = index.find(name);
    if (it == index.end()) throw Error(Errc::UnknownVertex, name);
    return it->second;
  };

  if (raw.terminals.empty()) throw Error(Errc::EmptyTerminalSet, "no terminals given");
  const VertexId source = lookup(raw.source);
  std::vector<VertexId> terminals;
  for (const auto& t : raw.terminals) {
    VertexId v = lookup(t);
    if (v == source) throw Error(Errc::InvalidInput, "source listed as terminal");
    if (std::find(terminals.begin(), terminals.end(), v) == terminals.end()) terminals.push_back(v);
  }

  std::vector<Edge> raw_edges;
  for (const auto& [tail, head] : raw.edges) raw_edges.push_back({lookup(tail), lookup(head)});
  const int m = static_cast<int>(raw_edges.size());

  std::vector<std::vector<int>> succ(static_cast<std::size_t>(n)), pred(static_cast<std::size_t>(n));
  std::vector<std::vector<EdgeId>> raw_in(static_cast<std::size_t>(n));
  for (int e = 0; e < m; ++e) {
    const Edge& ed = raw_edges[static_cast<std::size_t>(e)];
    if (ed.tail == ed.head) throw Error(Errc::CyclicGraph, "self-loop at " + raw.vertices[ed.tail]);
    succ[static_cast<std::size_t>(ed.tail)].push_back(ed.head);
    pred[static_cast<std::size_t>(ed.head)].push_back(ed.tail);
    raw_in[static_cast<std::size_t>(ed.head)].push_back(e);
    if (ed.head == source) throw Error(Errc::SourceHasInEdges, "edge into source");
    if (std::find(terminals.begin(), terminals.end(), ed.tail) != terminals.end())
      throw Error(Errc::TerminalHasOutEdges, "edge out of terminal " + raw.vertices[ed.tail]);
  }

  // Kahn on vertices, lowest index first.
  std::vector<int> indeg(static_cast<std::size_t>(n), 0);
  for (const Edge& ed : raw_edges) ++indeg[static_cast<std::size_t>(ed.head)];
  std::priority_queue<int, std::vector<int>, std::greater<>> ready;
  for (int v = 0; v < n; ++v)
    if (indeg[static_cast<std::size_t>(v)] == 0) ready.push(v);
  std::vector<VertexId> topo;
  while (!ready.empty()) {
    int v = ready.top();
    ready.pop();
    topo.push_back(v);
    for (int w : succ[static_cast<std::size_t>(v)])
      if (--indeg[static_cast<std::size_t>(w)] == 0) ready.push(w);
  }
  if (static_cast<int>(topo.size()) != n) throw Error(Errc::CyclicGraph, "directed cycle present");

  const auto from_source = reach_from(succ, source);
  for (VertexId t : terminals)
    if (!from_source[static_cast<std::size_t>(t)])
      throw Error(Errc::UnreachableTerminal, raw.vertices[static_cast<std::size_t>(t)]);
  std::vector<char> to_terminal(static_cast<std::size_t>(n), 0);
  for (VertexId t : terminals) {
    auto r = reach_from(pred, t);
    for (int v = 0; v < n; ++v) to_terminal[static_cast<std::size_t>(v)] |= r[static_cast<std::size_t>(v)];
  }
  for (int v = 0; v < n; ++v) {
    const bool terminal = std::find(terminals.begin(), terminals.end(), v) != terminals.end();
    if (v == source || terminal) continue;
    if (!from_source[static_cast<std::size_t>(v)] || !to_terminal[static_cast<std::size_t>(v)])
      throw Error(Errc::DanglingIntermediate, raw.vertices[static_cast<std::size_t>(v)]);
  }

  // Stable topological order of the edges: an edge is ready once every edge into its tail is placed.
  std::vector<int> pending(static_cast<std::size_t>(n), 0);
  for (const Edge& ed : raw_edges) ++pending[static_cast<std::size_t>(ed.head)];
  std::priority_queue<int, std::vector<int>, std::greater<>> edge_ready;
  std::vector<std::vector<EdgeId>> raw_out(static_cast<std::size_t>(n));
  for (int e = 0; e < m; ++e) raw_out[static_cast<std::size_t>(raw_edges[static_cast<std::size_t>(e)].tail)].push_back(e);
  for (int v = 0; v < n; ++v)
    if (pending[static_cast<std::size_t>(v)] == 0)
      for (EdgeId e : raw_out[static_cast<std::size_t>(v)]) edge_ready.push(e);
  std::vector<EdgeId> order;
  while (!edge_ready.empty()) {
    EdgeId e = edge_ready.top();
    edge_ready.pop();
    order.push_back(e);
    VertexId h = raw_edges[static_cast<std::size_t>(e)].head;
    if (--pending[static_cast<std::size_t>(h)] == 0)
      for (EdgeId f : raw_out[static_cast<std::size_t>(h)]) edge_ready.push(f);
  }

  ValidatedNetwork out;
  out.edge_map.assign(static_cast<std::size_t>(m), 0);
  for (int pos = 0; pos < m; ++pos) out.edge_map[static_cast<std::size_t>(order[static_cast<std::size_t>(pos)])] = pos;

  Network& net = out.network;
  net.names_ = raw.vertices;
  net.source_ = source;
  net.terminals_ = terminals;
  net.in_.assign(static_cast<std::size_t>(n), {});
  net.out_.assign(static_cast<std::size_t>(n), {});
  for (int pos = 0; pos < m; ++pos) {
    const Edge& ed = raw_edges[static_cast<std::size_t>(order[static_cast<std::size_t>(pos)])];
    net.edges_.push_back(ed);
    net.out_[static_cast<std::size_t>(ed.tail)].push_back(pos);
    net.in_[static_cast<std::size_t>(ed.head)].push_back(pos);
  }
  for (VertexId v : topo)
    if (v != source && std::find(terminals.begin(), terminals.end(), v) == terminals.end())
      net.intermediates_.push_back(v);

  std::vector<EdgeId> vulnerable;
  for (EdgeId e : raw.vulnerable) {
    if (e < 0 || e >= m)
      throw Error(Errc::InvalidInput, "vulnerable edge id out of range: " + std::to_string(e));
    vulnerable.push_back(out.edge_map[static_cast<std::size_t>(e)]);
  }
  net = net.with_vulnerable(std::move(vulnerable));
  return out;
}

ValidatedNetwork validate(const RawNetwork& raw) { return NetworkAssembler::run(raw); }

Network make_network(std::vector<std::string> vertices,
                     std::vector<std::pair<std::string, std::string>> edges, std::string source,
                     std::vector<std::string> terminals, std::vector<EdgeId> vulnerable) {
  RawNetwork raw{std::move(vertices), std::move(edges), std::move(source), std::move(terminals),
                 std::move(vulnerable)};
  return validate(raw).network;
}

namespace {

// Vertices reachable from `start` when the edges in `removed` are deleted.
std::vector<char> reachable_without(const Network& net, VertexId start, const std::vector<char>& removed) {
  std::vector<char> seen(static_cast<std::size_t>(net.vertex_count()), 0);
  std::vector<VertexId> stack{start};
  seen[static_cast<std::size_t>(start)] = 1;
  while (!stack.empty()) {
    VertexId v = stack.back();
    stack.pop_back();
    for (EdgeId e : net.out_edges(v)) {
      if (!removed.empty() && removed[static_cast<std::size_t>(e)]) continue;
      VertexId w = net.edge(e).head;
      if (!seen[static_cast<std::size_t>(w)]) {
        seen[static_cast<std::size_t>(w)] = 1;
        stack.push_back(w);
      }
    }
  }
  return seen;
}

std::vector<char> mask_of(const Network& net, const EdgeSet& s) {
  std::vector<char> mask(static_cast<std::size_t>(net.edge_count()), 0);
  for (EdgeId e : s) mask.at(static_cast<std::size_t>(e)) = 1;
  return mask;
}

}  // namespace

int min_cut(const Network& net, VertexId from, VertexId to) {
  if (!reachable_without(net, from, {})[static_cast<std::size_t>(to)])
    throw Error(Errc::Unreachable, net.name(from) + " -> " + net.name(to));
  // Unit capacities: flow[e] in {0,1}; residual search over forward and backward edges.
  std::vector<char> flow(static_cast<std::size_t>(net.edge_count()), 0);
  int value = 0;
  for (;;) {
    std::vector<EdgeId> via(static_cast<std::size_t>(net.vertex_count()), -1);
    std::vector<char> seen(static_cast<std::size_t>(net.vertex_count()), 0);
    std::queue<VertexId> frontier;
    frontier.push(from);
    seen[static_cast<std::size_t>(from)] = 1;
    while (!frontier.empty() && !seen[static_cast<std::size_t>(to)]) {
      VertexId v = frontier.front();
      frontier.pop();
      for (EdgeId e : net.out_edges(v)) {
        VertexId w = net.edge(e).head;
        if (!flow[static_cast<std::size_t>(e)] && !seen[static_cast<std::size_t>(w)]) {
          seen[static_cast<std::size_t>(w)] = 1;
          via[static_cast<std::size_t>(w)] = e;
          frontier.push(w);
        }
      }
      for (EdgeId e : net.in_edges(v)) {
        VertexId w = net.edge(e).tail;
        if (flow[static_cast<std::size_t>(e)] && !seen[static_cast<std::size_t>(w)]) {
          seen[static_cast<std::size_t>(w)] = 1;
          via[static_cast<std::size_t>(w)] = e;
          frontier.push(w);
        }
      }
    }
    if (!seen[static_cast<std::size_t>(to)]) break;
    for (VertexId v = to; v != from;) {
      EdgeId e = via[static_cast<std::size_t>(v)];
      const Edge& ed = net.edge(e);
      if (ed.head == v) {
        flow[static_cast<std::size_t>(e)] = 1;
        v = ed.tail;
      } else {
        flow[static_cast<std::size_t>(e)] = 0;
        v = ed.head;
      }
    }
    ++value;
  }
  return value;
}

std::vector<EdgeSet> enumerate_minimal_cuts(const Network& net, VertexId terminal, int max_vertices) {
  if (!net.is_terminal(terminal)) throw Error(Errc::NotATerminal, net.name(terminal));
  if (net.vertex_count() > max_vertices)
    throw Error(Errc::TooManyVertices, std::to_string(net.vertex_count()) + " vertices exceed limit " +
                                           std::to_string(max_vertices));
  std::vector<VertexId> free_vertices;
  for (VertexId v = 0; v < net.vertex_count(); ++v)
    if (v != net.source() && v != terminal) free_vertices.push_back(v);

  std::set<EdgeSet> cuts;
  const std::size_t k = free_vertices.size();
  std::vector<char> in_w(static_cast<std::size_t>(net.vertex_count()), 0);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << k); ++mask) {
    std::fill(in_w.begin(), in_w.end(), 0);
    in_w[static_cast<std::size_t>(net.source())] = 1;
    for (std::size_t i = 0; i < k; ++i)
      if (mask >> i & 1) in_w[static_cast<std::size_t>(free_vertices[i])] = 1;
    EdgeSet cut;
    for (EdgeId e = 0; e < net.edge_count(); ++e) {
      const Edge& ed = net.edge(e);
      if (in_w[static_cast<std::size_t>(ed.tail)] && !in_w[static_cast<std::size_t>(ed.head)]) cut.push_back(e);
    }
    cuts.insert(std::move(cut));
  }

  std::vector<EdgeSet> all(cuts.begin(), cuts.end());
  std::vector<EdgeSet> minimal;
  for (const EdgeSet& c : all) {
    bool has_smaller = false;
    for (const EdgeSet& d : all) {
      if (d.size() >= c.size()) continue;
      if (std::includes(c.begin(), c.end(), d.begin(), d.end())) {
        has_smaller = true;
        break;
      }
    }
    if (!has_smaller) minimal.push_back(c);
  }
  std::stable_sort(minimal.begin(), minimal.end(),
                   [](const EdgeSet& x, const EdgeSet& y) { return x.size() < y.size(); });
  return minimal;
}

bool is_cut(const Network& net, const EdgeSet& cut, VertexId terminal) {
  return !reachable_without(net, net.source(), mask_of(net, cut))[static_cast<std::size_t>(terminal)];
}

bool precedes(const Network& net, EdgeId e, EdgeId f) {
  if (e == f) return true;
  auto seen = reachable_without(net, net.edge(e).head, {});
  return seen[static_cast<std::size_t>(net.edge(f).tail)] != 0;
}

EdgeSet immediate_predecessors(const Network& net, EdgeId f, const EdgeSet& cut1) {
  EdgeSet before;
  for (EdgeId e : cut1)
    if (precedes(net, e, f)) before.push_back(e);
  EdgeSet result;
  for (EdgeId e : before) {
    bool blocked = false;
    for (EdgeId mid : before)
      if (mid != e && precedes(net, e, mid)) {
        blocked = true;
        break;
      }
    if (!blocked) result.push_back(e);
  }
  return result;
}

bool cut_precedes(const Network& net, const EdgeSet& cut1, const EdgeSet& cut2) {
  auto seen = reachable_without(net, net.source(), mask_of(net, cut1));
  for (EdgeId f : cut2) {
    if (std::binary_search(cut1.begin(), cut1.end(), f)) continue;
    if (seen[static_cast<std::size_t>(net.edge(f).tail)]) return false;
  }
  return true;
}

IntMatrix::IntMatrix(int r, int c, std::vector<int> values) : rows(r), cols(c), data(std::move(values)) {
  if (static_cast<int>(data.size()) != r * c) throw Error(Errc::DimensionMismatch, "matrix data size");
}

std::optional<LevelMatrices> detect_levels(const Network& net) {
  const int n = net.vertex_count();
  std::vector<int> layer(static_cast<std::size_t>(n), -1);
  layer[static_cast<std::size_t>(net.source())] = 0;
  // Edges are topologically ordered, so every tail is labelled before its out-edges are seen.
  for (EdgeId e = 0; e < net.edge_count(); ++e) {
    const Edge& ed = net.edge(e);
    int want = layer[static_cast<std::size_t>(ed.tail)] + 1;
    int& have = layer[static_cast<std::size_t>(ed.head)];
    if (have == -1) have = want;
    else if (have != want) return std::nullopt;
  }
  int m = -1;
  for (VertexId t : net.terminals()) {
    int l = layer[static_cast<std::size_t>(t)];
    if (m == -1) m = l;
    else if (m != l) return std::nullopt;
  }
  for (VertexId v = 0; v < n; ++v)
    if (!net.is_terminal(v) && layer[static_cast<std::size_t>(v)] >= m) return std::nullopt;

  std::vector<std::vector<VertexId>> layers(static_cast<std::size_t>(m + 1));
  std::vector<int> position(static_cast<std::size_t>(n), 0);
  for (VertexId v = 0; v < n; ++v) {
    auto& l = layers[static_cast<std::size_t>(layer[static_cast<std::size_t>(v)])];
    position[static_cast<std::size_t>(v)] = static_cast<int>(l.size());
    l.push_back(v);
  }
  LevelMatrices lm;
  for (int k = 1; k <= m; ++k)
    lm.matrices.emplace_back(static_cast<int>(layers[static_cast<std::size_t>(k - 1)].size()),
                             static_cast<int>(layers[static_cast<std::size_t>(k)].size()));
  for (const Edge& ed : net.edges()) {
    int k = layer[static_cast<std::size_t>(ed.head)];
    ++lm.matrices[static_cast<std::size_t>(k - 1)](position[static_cast<std::size_t>(ed.tail)],
                                                   position[static_cast<std::size_t>(ed.head)]);
  }
  return lm;
}

Network from_level_matrices(const LevelMatrices& lm) {
  const int m = lm.levels();
  if (m < 1) throw Error(Errc::DimensionMismatch, "no levels");
  if (lm.matrices.front().rows != 1) throw Error(Errc::DimensionMismatch, "first matrix must have one row");
  for (int k = 0; k + 1 < m; ++k)
    if (lm.matrices[static_cast<std::size_t>(k)].cols != lm.matrices[static_cast<std::size_t>(k + 1)].rows)
      throw Error(Errc::DimensionMismatch, "level " + std::to_string(k + 1) + " columns vs level " +
                                               std::to_string(k + 2) + " rows");
  for (const auto& mat : lm.matrices)
    for (int v : mat.data)
      if (v < 0) throw Error(Errc::DimensionMismatch, "negative edge multiplicity");

  std::vector<std::vector<std::string>> names(static_cast<std::size_t>(m + 1));
  names[0] = {"S"};
  for (int k = 1; k <= m; ++k) {
    int count = lm.matrices[static_cast<std::size_t>(k - 1)].cols;
    for (int i = 1; i <= count; ++i) {
      std::string name;
      if (k == m) name = count == 1 ? "T" : "T" + std::to_string(i);
      else if (m == 2) name = "V" + std::to_string(i);
      else name = "V" + std::to_string(k) + "_" + std::to_string(i);
      names[static_cast<std::size_t>(k)].push_back(name);
    }
  }
  RawNetwork raw;
  for (const auto& layer : names) raw.vertices.insert(raw.vertices.end(), layer.begin(), layer.end());
  raw.source = "S";
  raw.terminals = names[static_cast<std::size_t>(m)];
  for (int k = 1; k <= m; ++k) {
    const IntMatrix& mat = lm.matrices[static_cast<std::size_t>(k - 1)];
    for (int i = 0; i < mat.rows; ++i)
      for (int j = 0; j < mat.cols; ++j)
        for (int c = 0; c < mat(i, j); ++c) {
          if (k == 1) raw.vulnerable.push_back(static_cast<EdgeId>(raw.edges.size()));
          raw.edges.emplace_back(names[static_cast<std::size_t>(k - 1)][static_cast<std::size_t>(i)],
                                 names[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)]);
        }
  }
  return validate(raw).network;
}

LevelMatrices two_level_matrices(std::span<const int> a, std::span<const int> b) {
  if (a.size() != b.size() || a.empty())
    throw Error(Errc::DimensionMismatch, "degree lists must be nonempty and of equal length");
  const int n = static_cast<int>(a.size());
  LevelMatrices lm;
  lm.matrices.emplace_back(1, n, std::vector<int>(a.begin(), a.end()));
  lm.matrices.emplace_back(n, 1, std::vector<int>(b.begin(), b.end()));
  return lm;
}

Network simple_two_level(std::span<const int> a, std::span<const int> b) {
  return from_level_matrices(two_level_matrices(a, b));
}

std::optional<TwoLevelDegrees> two_level_degrees(const Network& net) {
  if (net.terminals().size() != 1) return std::nullopt;
  auto lm = detect_levels(net);
  if (!lm || lm->levels() != 2) return std::nullopt;
  TwoLevelDegrees d;
  d.a = lm->matrices[0].data;
  d.b = lm->matrices[1].data;
  return d;
}

std::string format_edge_set(const EdgeSet& s) {
  std::ostringstream os;
  os << '{';
  for (std::size_t i = 0; i < s.size(); ++i) os << (i ? "," : "") << s[i];
  os << '}';
  return os.str();
}

}  // namespace advnet
