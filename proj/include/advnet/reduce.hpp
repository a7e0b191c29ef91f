#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "advnet/bounds.hpp"
#include "advnet/netgraph.hpp"

namespace advnet {

struct CutPair {
  EdgeSet cut1;
  EdgeSet cut2;
  VertexId terminal = 0;
};

struct Induced3Level {
  Network network;
  EdgeSet cut1;       // E1 edges kept, one per layer-1 vertex
  EdgeSet cut2;       // E2 edges, one per layer-2 vertex
  EdgeSet dropped;    // E1 edges that precede no E2 edge
  EdgeSet discarded;  // vulnerable edges outside E1, whose errors the bound ignores
};

// Layer-1 vertices stand for E1 edges, layer-2 vertices for E2 edges, middle edges for
// immediate-predecessor pairs.
Induced3Level induce_3level(const Network& net, const CutPair& cuts);

struct Associated2Level {
  Network network;
  std::vector<int> a, b;
  std::vector<std::vector<int>> layer1;  // per component, layer-1 positions
  std::vector<std::vector<int>> layer2;  // per component, layer-2 positions
  bool full_vulnerable = false;          // every source edge vulnerable
};

Associated2Level associate_2level(const Network& n3);

struct ReductionStage {
  std::string tag;
  RawNetwork network;
  std::vector<std::pair<std::string, std::string>> mapping;  // new element -> origin
};

struct PairOutcome {
  CutPair pair;
  BoundReport bound;
  std::vector<int> a, b;
  EdgeSet discarded;
  std::vector<ReductionStage> chain;
};

struct DoubleCutResult {
  BoundReport best;
  std::optional<std::size_t> best_index;  // into pairs
  std::vector<PairOutcome> pairs;
};

// Upper bound for a simple 2-level network: the family rule if one applies, else Singleton.
BoundReport two_level_upper(const Associated2Level& n2, int t, unsigned q);

PairOutcome evaluate_cut_pair(const Network& net, const CutPair& pair, int t, unsigned q);
std::vector<CutPair> auto_cut_pairs(const Network& net, VertexId terminal, std::size_t max_pairs = 64);
DoubleCutResult double_cut_bound(const Network& net, int t, unsigned q, std::span<const CutPair> pairs);
DoubleCutResult double_cut_bound_auto(const Network& net, int t, unsigned q, std::size_t max_pairs = 64);

}  // namespace advnet
