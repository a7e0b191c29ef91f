#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace advnet {

using VertexId = int;
using EdgeId = int;
// Sorted, duplicate-free list of edge ids.
using EdgeSet = std::vector<EdgeId>;

EdgeSet make_edge_set(std::vector<EdgeId> ids);

struct Edge {
  VertexId tail = 0;
  VertexId head = 0;
  friend bool operator==(const Edge&, const Edge&) = default;
};

// Unvalidated description, as read from an instance file. Edge ids are list indices.
struct RawNetwork {
  std::vector<std::string> vertices;
  std::vector<std::pair<std::string, std::string>> edges;
  std::string source;
  std::vector<std::string> terminals;
  std::vector<EdgeId> vulnerable;
};

// A validated single-source multicast network. Immutable; only `validate` builds one.
class Network {
 public:
  int vertex_count() const noexcept { return static_cast<int>(names_.size()); }
  int edge_count() const noexcept { return static_cast<int>(edges_.size()); }

  const std::string& name(VertexId v) const { return names_.at(static_cast<std::size_t>(v)); }
  const std::vector<std::string>& vertex_names() const noexcept { return names_; }
  std::optional<VertexId> find(std::string_view name) const;
  VertexId vertex(std::string_view name) const;  // throws UnknownVertex

  const Edge& edge(EdgeId e) const { return edges_.at(static_cast<std::size_t>(e)); }
  std::span<const Edge> edges() const noexcept { return edges_; }

  VertexId source() const noexcept { return source_; }
  std::span<const VertexId> terminals() const noexcept { return terminals_; }
  bool is_terminal(VertexId v) const;
  bool is_intermediate(VertexId v) const { return v != source_ && !is_terminal(v); }
  // Intermediate vertices in a topological order.
  std::span<const VertexId> intermediates() const noexcept { return intermediates_; }

  std::span<const EdgeId> in_edges(VertexId v) const { return in_.at(static_cast<std::size_t>(v)); }
  std::span<const EdgeId> out_edges(VertexId v) const { return out_.at(static_cast<std::size_t>(v)); }

  const EdgeSet& vulnerable() const noexcept { return vulnerable_; }
  bool is_vulnerable(EdgeId e) const;

  Network with_vulnerable(EdgeSet vulnerable) const;

  RawNetwork to_raw() const;

 private:
  friend struct NetworkAssembler;
  std::vector<std::string> names_;
  std::vector<Edge> edges_;
  VertexId source_ = 0;
  std::vector<VertexId> terminals_;
  std::vector<VertexId> intermediates_;
  std::vector<std::vector<EdgeId>> in_;
  std::vector<std::vector<EdgeId>> out_;
  EdgeSet vulnerable_;
  std::vector<char> vulnerable_mask_;
};

struct ValidatedNetwork {
  Network network;
  // edge_map[raw id] = id in the validated (topologically ordered) network.
  std::vector<EdgeId> edge_map;
  bool reordered() const;
};

ValidatedNetwork validate(const RawNetwork& raw);

// Convenience for hand-written networks: validates and drops the id map.
Network make_network(std::vector<std::string> vertices,
                     std::vector<std::pair<std::string, std::string>> edges, std::string source,
                     std::vector<std::string> terminals, std::vector<EdgeId> vulnerable);

int min_cut(const Network& net, VertexId from, VertexId to);

// Inclusion-minimal cuts delta(W) with source in W and terminal outside W.
std::vector<EdgeSet> enumerate_minimal_cuts(const Network& net, VertexId terminal,
                                            int max_vertices = 12);

bool is_cut(const Network& net, const EdgeSet& cut, VertexId terminal);

bool precedes(const Network& net, EdgeId e, EdgeId f);
EdgeSet immediate_predecessors(const Network& net, EdgeId f, const EdgeSet& cut1);
// Every path from the source that ends with an edge of cut2 contains an edge of cut1.
bool cut_precedes(const Network& net, const EdgeSet& cut1, const EdgeSet& cut2);

struct IntMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<int> data;

  IntMatrix() = default;
  IntMatrix(int r, int c) : rows(r), cols(c), data(static_cast<std::size_t>(r * c), 0) {}
  IntMatrix(int r, int c, std::vector<int> values);
  int& operator()(int i, int j) { return data[static_cast<std::size_t>(i * cols + j)]; }
  int operator()(int i, int j) const { return data[static_cast<std::size_t>(i * cols + j)]; }
  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;
};

struct LevelMatrices {
  std::vector<IntMatrix> matrices;
  int levels() const noexcept { return static_cast<int>(matrices.size()); }
  friend bool operator==(const LevelMatrices&, const LevelMatrices&) = default;
};

std::optional<LevelMatrices> detect_levels(const Network& net);
// Vertices are created layer by layer; the vulnerable set is the source's out-edges.
Network from_level_matrices(const LevelMatrices& lm);

// Simplified notation ([a_1..a_n],[b_1..b_n]) of a simple 2-level network.
LevelMatrices two_level_matrices(std::span<const int> a, std::span<const int> b);
Network simple_two_level(std::span<const int> a, std::span<const int> b);

struct TwoLevelDegrees {
  std::vector<int> a;  // in-degree of each intermediate node
  std::vector<int> b;  // out-degree of each intermediate node
};
// Degree lists of a simple 2-level network, if the network is one.
std::optional<TwoLevelDegrees> two_level_degrees(const Network& net);

std::string format_edge_set(const EdgeSet& s);  // "{0,4,9}", edge ids as stored

}  // namespace advnet
