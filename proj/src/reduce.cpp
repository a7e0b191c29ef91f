#include "advnet/reduce.hpp"

#include <algorithm>
#include <numeric>

#include "advnet/error.hpp"

namespace advnet {

namespace {

bool contains(const EdgeSet& s, EdgeId e) { return std::binary_search(s.begin(), s.end(), e); }

void check_pair(const Network& net, const CutPair& p) {
  auto in_range = [&](const EdgeSet& s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [&](EdgeId e) { return e >= 0 && e < net.edge_count(); });
  };
  if (p.terminal < 0 || p.terminal >= net.vertex_count() || !net.is_terminal(p.terminal))
    throw Error(Errc::InvalidCutPair, "terminal is not a terminal");
  if (!in_range(p.cut1) || !in_range(p.cut2)) throw Error(Errc::InvalidCutPair, "edge ids out of range or empty");
  if (!is_cut(net, p.cut1, p.terminal)) throw Error(Errc::InvalidCutPair, "first set is not a cut");
  if (!is_cut(net, p.cut2, p.terminal)) throw Error(Errc::InvalidCutPair, "second set is not a cut");
  if (!cut_precedes(net, p.cut1, p.cut2)) throw Error(Errc::InvalidCutPair, "first cut does not precede the second");
}

}  // namespace

Induced3Level induce_3level(const Network& net, const CutPair& cuts) {
  CutPair p{make_edge_set(cuts.cut1), make_edge_set(cuts.cut2), cuts.terminal};
  check_pair(net, p);
  std::vector<EdgeSet> preds;
  for (EdgeId f : p.cut2) {
    preds.push_back(immediate_predecessors(net, f, p.cut1));
    if (preds.back().empty()) throw Error(Errc::InvalidCutPair, "edge " + std::to_string(f) + " has no predecessor in E1");
  }
  Induced3Level out{Network{}, {}, p.cut2, {}, {}};
  for (EdgeId e : p.cut1) {
    bool used = std::any_of(preds.begin(), preds.end(), [&](const EdgeSet& s) { return contains(s, e); });
    (used ? out.cut1 : out.dropped).push_back(e);
  }
  for (EdgeId e : net.vulnerable())
    if (!contains(p.cut1, e)) out.discarded.push_back(e);

  RawNetwork raw;
  raw.source = "S";
  raw.terminals = {"T"};
  raw.vertices.push_back("S");
  for (EdgeId e : out.cut1) raw.vertices.push_back("E" + std::to_string(e));
  for (EdgeId f : out.cut2) raw.vertices.push_back("F" + std::to_string(f));
  raw.vertices.push_back("T");
  for (EdgeId e : out.cut1) {
    if (net.is_vulnerable(e)) raw.vulnerable.push_back(static_cast<EdgeId>(raw.edges.size()));
    raw.edges.emplace_back("S", "E" + std::to_string(e));
  }
  for (EdgeId e : out.cut1)
    for (std::size_t k = 0; k < out.cut2.size(); ++k)
      if (contains(preds[k], e)) raw.edges.emplace_back("E" + std::to_string(e), "F" + std::to_string(out.cut2[k]));
  for (EdgeId f : out.cut2) raw.edges.emplace_back("F" + std::to_string(f), "T");
  out.network = validate(raw).network;
  return out;
}

Associated2Level associate_2level(const Network& n3) {
  auto lm = detect_levels(n3);
  if (!lm || lm->levels() != 3 || n3.terminals().size() != 1) throw Error(Errc::NotSimple3Level, "not a 3-level network");
  const IntMatrix& m1 = lm->matrices[0];
  const IntMatrix& mid = lm->matrices[1];
  const IntMatrix& m3 = lm->matrices[2];
  if (!std::all_of(m1.data.begin(), m1.data.end(), [](int v) { return v == 1; }) ||
      !std::all_of(m3.data.begin(), m3.data.end(), [](int v) { return v == 1; }))
    throw Error(Errc::NotSimple3Level, "outer layers must be single edges");

  const int r = mid.rows, c = mid.cols;
  std::vector<int> parent(static_cast<std::size_t>(r + c));
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[static_cast<std::size_t>(x)] != x) x = parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
    return x;
  };
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j)
      if (mid(i, j) > 0) parent[static_cast<std::size_t>(find(i))] = find(r + j);

  Associated2Level out;
  std::vector<int> component_of_root(static_cast<std::size_t>(r + c), -1);
  for (int i = 0; i < r + c; ++i) {
    int root = find(i);
    int& comp = component_of_root[static_cast<std::size_t>(root)];
    if (comp < 0) {
      comp = static_cast<int>(out.layer1.size());
      out.layer1.emplace_back();
      out.layer2.emplace_back();
    }
    if (i < r) out.layer1[static_cast<std::size_t>(comp)].push_back(i);
    else out.layer2[static_cast<std::size_t>(comp)].push_back(i - r);
  }
  for (std::size_t k = 0; k < out.layer1.size(); ++k) {
    out.a.push_back(static_cast<int>(out.layer1[k].size()));
    out.b.push_back(static_cast<int>(out.layer2[k].size()));
  }

  // Source edge of each layer-1 vertex, vertices in id order (the order detect_levels uses).
  std::vector<std::pair<VertexId, EdgeId>> firsts;
  for (EdgeId e : n3.out_edges(n3.source())) firsts.emplace_back(n3.edge(e).head, e);
  std::sort(firsts.begin(), firsts.end());
  Network two = simple_two_level(out.a, out.b);
  EdgeSet vulnerable;
  out.full_vulnerable = true;
  for (std::size_t k = 0; k < out.layer1.size(); ++k) {
    auto ins = two.in_edges(two.vertex("V" + std::to_string(k + 1)));
    for (std::size_t j = 0; j < out.layer1[k].size(); ++j) {
      EdgeId old = firsts[static_cast<std::size_t>(out.layer1[k][j])].second;
      if (n3.is_vulnerable(old)) vulnerable.push_back(ins[j]);
      else out.full_vulnerable = false;
    }
  }
  out.network = two.with_vulnerable(vulnerable);
  return out;
}

BoundReport two_level_upper(const Associated2Level& n2, int t, unsigned q) {
  if (!n2.full_vulnerable) {
    // Each node is cut at its in-edges or its out-edges. best[k]: cheapest safe part with k
    // exposed vulnerable edges.
    const int big = 1 << 29;
    std::vector<int> best{0};
    for (std::size_t i = 0; i < n2.a.size(); ++i) {
      int exposed = 0;
      for (EdgeId e : n2.network.in_edges(n2.network.vertex("V" + std::to_string(i + 1))))
        exposed += n2.network.is_vulnerable(e) ? 1 : 0;
      const int safe = n2.a[i] - exposed;
      std::vector<int> next(best.size() + static_cast<std::size_t>(exposed), big);
      for (std::size_t k = 0; k < best.size(); ++k) {
        if (best[k] >= big) continue;
        next[k] = std::min(next[k], best[k] + n2.b[i]);
        next[k + static_cast<std::size_t>(exposed)] = std::min(next[k + static_cast<std::size_t>(exposed)], best[k] + safe);
      }
      best = std::move(next);
    }
    BoundReport r;
    r.name = "singleton";
    r.rule = "singleton (partial vulnerable set)";
    bool found = false;
    for (std::size_t k = 0; k < best.size(); ++k) {
      if (best[k] >= big) continue;
      const double v = best[k] + std::max(0, static_cast<int>(k) - 2 * t);
      if (!found || v < r.value) r.value = v;
      found = true;
    }
    return r;
  }
  BoundReport best = singleton_2level(n2.a, n2.b, t);
  for (const FamilyMember& m : match_family(n2.a, n2.b, t)) {
    BoundReport f = family_strict_upper(m, q);
    if (tighter(f, best)) best = f;
  }
  return best;
}

namespace {

std::string name_of_edge(const Network& net, EdgeId e) {
  return std::to_string(e) + ":" + net.name(net.edge(e).tail) + "->" + net.name(net.edge(e).head);
}

}  // namespace

PairOutcome evaluate_cut_pair(const Network& net, const CutPair& pair, int t, unsigned q) {
  Induced3Level n3 = induce_3level(net, pair);
  Associated2Level n2 = associate_2level(n3.network);
  PairOutcome out{{make_edge_set(pair.cut1), make_edge_set(pair.cut2), pair.terminal},
                  two_level_upper(n2, t, q), n2.a, n2.b, n3.discarded, {}};
  out.bound.terminal = pair.terminal;

  ReductionStage input{"input", net.to_raw(), {}};
  ReductionStage induced{"induced-3-level", n3.network.to_raw(), {}};
  for (EdgeId e : n3.cut1) induced.mapping.emplace_back("E" + std::to_string(e), name_of_edge(net, e));
  for (EdgeId f : n3.cut2) induced.mapping.emplace_back("F" + std::to_string(f), name_of_edge(net, f));
  for (EdgeId e : n3.dropped) induced.mapping.emplace_back("(dropped)", name_of_edge(net, e));
  for (EdgeId e : n3.discarded) induced.mapping.emplace_back("(errors ignored)", name_of_edge(net, e));
  ReductionStage assoc{"associated-2-level", n2.network.to_raw(), {}};
  for (std::size_t k = 0; k < n2.layer1.size(); ++k) {
    std::string members;
    for (int i : n2.layer1[k]) members += (members.empty() ? "E" : ",E") + std::to_string(n3.cut1[static_cast<std::size_t>(i)]);
    for (int j : n2.layer2[k]) members += ",F" + std::to_string(n3.cut2[static_cast<std::size_t>(j)]);
    assoc.mapping.emplace_back("V" + std::to_string(k + 1), members);
  }
  out.chain = {std::move(input), std::move(induced), std::move(assoc)};
  return out;
}

std::vector<CutPair> auto_cut_pairs(const Network& net, VertexId terminal, std::size_t max_pairs) {
  auto cuts = enumerate_minimal_cuts(net, terminal);
  std::vector<CutPair> pairs;
  for (const EdgeSet& c1 : cuts)
    for (const EdgeSet& c2 : cuts)
      if (cut_precedes(net, c1, c2)) pairs.push_back({c1, c2, terminal});
  std::sort(pairs.begin(), pairs.end(), [](const CutPair& x, const CutPair& y) {
    const std::size_t sx = x.cut1.size() + x.cut2.size(), sy = y.cut1.size() + y.cut2.size();
    if (sx != sy) return sx < sy;
    if (x.cut1 != y.cut1) return x.cut1 < y.cut1;
    return x.cut2 < y.cut2;
  });
  if (pairs.size() > max_pairs) pairs.resize(max_pairs);
  return pairs;
}

DoubleCutResult double_cut_bound(const Network& net, int t, unsigned q, std::span<const CutPair> pairs) {
  if (pairs.empty()) throw Error(Errc::InvalidCutPair, "no cut pairs");
  DoubleCutResult r;
  for (const CutPair& p : pairs) {
    r.pairs.push_back(evaluate_cut_pair(net, p, t, q));
    if (!r.best_index || tighter(r.pairs.back().bound, r.pairs[*r.best_index].bound)) r.best_index = r.pairs.size() - 1;
  }
  r.best = r.pairs[*r.best_index].bound;
  r.best.name = "double-cut";
  return r;
}

DoubleCutResult double_cut_bound_auto(const Network& net, int t, unsigned q, std::size_t max_pairs) {
  std::vector<CutPair> all;
  for (VertexId term : net.terminals()) {
    auto p = auto_cut_pairs(net, term, max_pairs);
    all.insert(all.end(), p.begin(), p.end());
  }
  return double_cut_bound(net, t, q, all);
}

}  // namespace advnet
