#include "advnet/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <sstream>
#include <unordered_set>

#include "advnet/error.hpp"

namespace advnet {

PartitionProfile partition_profile(std::span<const int> a, std::span<const int> b, int t) {
  if (a.size() != b.size()) throw Error(Errc::DimensionMismatch, "degree lists differ in length");
  if (t < 0) throw Error(Errc::ParameterOutOfRange, "negative adversary power");
  PartitionProfile p;
  int sum_a2 = 0;
  int sum_b3 = 0;
  int extra = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const int idx = static_cast<int>(i);
    if (a[i] >= b[i] + 2 * t) {
      p.i1.push_back(idx);
    } else if (a[i] <= b[i]) {
      p.i2.push_back(idx);
      sum_a2 += a[i];
    } else {
      p.i3.push_back(idx);
      sum_b3 += b[i];
      if (a[i] > 2 * t) {
        p.i3_tilde.push_back(idx);
        extra += a[i] - 2 * t;
      }
    }
  }
  p.x = extra + std::max(0, sum_a2 - 2 * t);
  p.y = std::max(0, sum_a2 + sum_b3 - 2 * t);
  return p;
}

std::string BoundReport::display() const {
  std::ostringstream os;
  os << (exact ? "= " : strict ? "< " : lower ? ">= " : "<= ");
  if (std::abs(value - std::round(value)) < 1e-12) os << static_cast<long long>(std::llround(value));
  else os << value;
  return os.str();
}

bool tighter(const BoundReport& x, const BoundReport& y) {
  if (x.value < y.value - 1e-12) return true;
  if (x.value > y.value + 1e-12) return false;
  return (x.strict && !y.strict) || (x.exact && !y.exact && !y.strict);
}

BoundReport singleton_bound(const Network& net, int t) {
  if (t < 0) throw Error(Errc::ParameterOutOfRange, "negative adversary power");
  BoundReport best;
  best.name = "singleton";
  best.rule = "min over cuts of |E'\\U| + max(0, |E'^U| - 2t)";
  bool found = false;
  for (VertexId term : net.terminals()) {
    for (const EdgeSet& cut : enumerate_minimal_cuts(net, term)) {
      int safe = 0;
      int exposed = 0;
      for (EdgeId e : cut) (net.is_vulnerable(e) ? exposed : safe)++;
      const double v = safe + std::max(0, exposed - 2 * t);
      if (!found || v < best.value) {
        found = true;
        best.value = v;
        best.cut = cut;
        best.terminal = term;
      }
    }
  }
  return best;
}

BoundReport singleton_2level(std::span<const int> a, std::span<const int> b, int t) {
  if (a.size() != b.size() || a.empty()) throw Error(Errc::DimensionMismatch, "degree lists");
  if (a.size() > 24) throw Error(Errc::DomainTooLarge, "too many nodes for partition enumeration");
  const std::size_t n = a.size();
  BoundReport r;
  r.name = "singleton-2level";
  r.rule = "min over P1 of sum_{P1} b_i + max(0, sum_{P2} a_i - 2t)";
  bool found = false;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    int kept = 0;
    int exposed = 0;
    for (std::size_t i = 0; i < n; ++i) (mask >> i & 1u ? kept += b[i] : exposed += a[i]);
    const double v = kept + std::max(0, exposed - 2 * t);
    if (!found || v < r.value) {
      found = true;
      r.value = v;
      std::vector<int> p1;
      for (std::size_t i = 0; i < n; ++i)
        if (mask >> i & 1u) p1.push_back(static_cast<int>(i));
      r.partition = p1;
    }
  }
  return r;
}

BoundReport lower_thm61(std::span<const int> a, std::span<const int> b, int t) {
  PartitionProfile p = partition_profile(a, b, t);
  BoundReport r;
  r.name = "thm61";
  r.lower = true;
  int base = 0;
  for (int i : p.i1) base += b[static_cast<std::size_t>(i)];
  r.value = base + std::max(p.x, p.y);
  r.rule = "sum_{I1} b_i + max(X, Y)";
  r.assumptions.push_back("alphabet is a field admitting the Reed-Solomon lengths used");
  r.profile = std::move(p);
  return r;
}

BoundReport lower_prop63(std::span<const int> a, std::span<const int> b, int t) {
  if (a.size() != b.size()) throw Error(Errc::DimensionMismatch, "degree lists");
  int sum = 0;
  for (std::size_t i = 0; i < a.size(); ++i) sum += std::min(a[i], b[i]);
  BoundReport r;
  r.name = "prop63";
  r.lower = true;
  r.value = std::max(0, sum - 2 * t);
  r.rule = "max(0, sum min(a_i, b_i) - 2t)";
  r.assumptions.push_back("alphabet is a field admitting the Reed-Solomon length used");
  return r;
}

BoundReport full_adversary_value(const Network& net, int t) {
  int mu = -1;
  VertexId arg = net.terminals().front();
  for (VertexId term : net.terminals()) {
    int c = min_cut(net, net.source(), term);
    if (mu < 0 || c < mu) {
      mu = c;
      arg = term;
    }
  }
  BoundReport r;
  r.name = "full-adversary";
  r.exact = true;
  r.value = std::max(0, mu - 2 * t);
  r.terminal = arg;
  r.rule = "max(0, mu - 2t), mu = min-cut";
  r.assumptions.push_back("every edge vulnerable");
  r.assumptions.push_back("alphabet sufficiently large");
  if (static_cast<int>(net.vulnerable().size()) != net.edge_count())
    r.assumptions.push_back("network's own vulnerable set is smaller; value is for the full adversary");
  return r;
}

char family_letter(Family f) { return static_cast<char>('A' + static_cast<int>(f)); }

Family parse_family(std::string_view text) {
  if (text.size() == 1) {
    char c = static_cast<char>(std::toupper(static_cast<unsigned char>(text[0])));
    if (c >= 'A' && c <= 'E') return static_cast<Family>(c - 'A');
  }
  throw Error(Errc::UnknownFamily, std::string(text));
}

TwoLevelDegrees family_degrees(FamilyMember m) {
  const int k = m.param;
  const int min_param = m.family == Family::C ? 2 : 1;
  if (k < min_param)
    throw Error(Errc::ParameterOutOfRange, std::string("family ") + family_letter(m.family) + " needs parameter >= " +
                                               std::to_string(min_param));
  switch (m.family) {
    case Family::A: return {{k, 2 * k}, {k, k}};
    case Family::B: return {{1, k + 1}, {1, k}};
    case Family::C: return {{k, k + 1}, {k, k}};
    case Family::D: return {{2 * k, 2 * k}, {1, 1}};
    case Family::E: return {{k, k + 1}, {1, 1}};
  }
  throw Error(Errc::UnknownFamily, "family");
}

int family_adversary(FamilyMember m) { return m.family == Family::B ? 1 : m.param; }

Network family_network(FamilyMember m) {
  auto d = family_degrees(m);
  return simple_two_level(d.a, d.b);
}

std::vector<FamilyMember> match_family(std::span<const int> a, std::span<const int> b, int t) {
  std::vector<FamilyMember> out;
  if (a.size() != 2 || b.size() != 2) return out;
  const int candidates[] = {t, a[0], a[1], b[0], b[1], a[0] / 2, a[1] - 1};
  for (int f = 0; f < 5; ++f) {
    for (int k : candidates) {
      FamilyMember m{static_cast<Family>(f), k};
      if (k < (m.family == Family::C ? 2 : 1)) continue;
      if (family_adversary(m) != t) continue;
      auto d = family_degrees(m);
      const bool same = d.a[0] == a[0] && d.a[1] == a[1] && d.b[0] == b[0] && d.b[1] == b[1];
      const bool swapped = d.a[0] == a[1] && d.a[1] == a[0] && d.b[0] == b[1] && d.b[1] == b[0];
      if ((same || swapped) && std::find(out.begin(), out.end(), m) == out.end()) out.push_back(m);
    }
  }
  return out;
}

BoundReport family_strict_upper(FamilyMember m, unsigned q) {
  if (q < 2) throw Error(Errc::ParameterOutOfRange, "alphabet size below 2");
  family_degrees(m);  // parameter check
  BoundReport r;
  r.name = std::string("family-") + family_letter(m.family) + std::to_string(m.param);
  const int k = m.param;
  const bool diamond = k == 1 && (m.family == Family::A || m.family == Family::B || m.family == Family::E);
  if (diamond) {
    r.exact = true;
    r.value = std::log(static_cast<double>(q - 1)) / std::log(static_cast<double>(q));
    r.rule = "diamond: log_q(q-1)";
    return r;
  }
  switch (m.family) {
    case Family::A:
      r.strict = true;
      r.value = k;
      r.rule = "strictly below t";
      break;
    case Family::B:
      r.strict = true;
      r.value = k;
      r.rule = "strictly below s";
      break;
    case Family::C:
    case Family::D:
      r.exact = true;
      r.value = 1;
      r.rule = "capacity one";
      break;
    case Family::E:
      r.strict = true;
      r.value = 1;
      r.rule = "strictly below one";
      break;
  }
  return r;
}

namespace {

struct TwoLevelView {
  std::vector<VertexId> nodes;               // V1..Vn by vertex id
  std::vector<std::vector<int>> positions;   // source-word positions read by each node
  std::vector<int> a, b;
};

TwoLevelView two_level_view(const Network& net) {
  auto d = two_level_degrees(net);
  if (!d) throw Error(Errc::NotTwoLevel, "packing checks need a simple 2-level network");
  TwoLevelView v;
  v.nodes.assign(net.intermediates().begin(), net.intermediates().end());
  std::sort(v.nodes.begin(), v.nodes.end());
  auto src = net.out_edges(net.source());
  for (VertexId node : v.nodes) {
    std::vector<int> pos;
    for (EdgeId e : net.in_edges(node))
      pos.push_back(static_cast<int>(std::find(src.begin(), src.end(), e) - src.begin()));
    v.positions.push_back(std::move(pos));
    v.a.push_back(static_cast<int>(net.in_edges(node).size()));
    v.b.push_back(static_cast<int>(net.out_edges(node).size()));
  }
  return v;
}

Word project(std::span<const Symbol> x, const std::vector<int>& pos) {
  Word w;
  w.reserve(pos.size());
  for (int p : pos) w.push_back(x[static_cast<std::size_t>(p)]);
  return w;
}

// Output indices of F over the Hamming ball of radius s around w.
std::unordered_set<std::uint64_t> ball_image(const NodeFunction& f, const Word& w, int s, unsigned q) {
  std::unordered_set<std::uint64_t> image;
  Word y(w.size());
  Word out(static_cast<std::size_t>(f.out_arity()));
  for_each_sparse_word(static_cast<int>(w.size()), s, q, true, [&](const Word& e, const std::vector<int>&) {
    for (std::size_t i = 0; i < w.size(); ++i) y[i] = static_cast<Symbol>((w[i] + e[i]) % q);
    f.apply(y, out);
    image.insert(word_index(out, q));
  });
  return image;
}

std::uint64_t preimage_count(const NodeFunction& f, const std::unordered_set<std::uint64_t>& image, unsigned q) {
  auto rows = word_space_size(q, static_cast<std::size_t>(f.in_arity()));
  if (!rows || *rows > (1u << 24)) throw Error(Errc::DomainTooLarge, "node domain too large for preimage count");
  std::uint64_t count = 0;
  Word out(static_cast<std::size_t>(f.out_arity()));
  for (std::uint64_t i = 0; i < *rows; ++i) {
    Word in = word_at(i, q, static_cast<std::size_t>(f.in_arity()));
    f.apply(in, out);
    count += image.count(word_index(out, q));
  }
  return count;
}

bool injective(const NodeFunction& f, unsigned q) {
  auto rows = word_space_size(q, static_cast<std::size_t>(f.in_arity()));
  if (!rows || *rows > (1u << 24)) throw Error(Errc::DomainTooLarge, "node domain too large");
  std::unordered_set<std::uint64_t> seen;
  Word out(static_cast<std::size_t>(f.out_arity()));
  for (std::uint64_t i = 0; i < *rows; ++i) {
    f.apply(word_at(i, q, static_cast<std::size_t>(f.in_arity())), out);
    if (!seen.insert(word_index(out, q)).second) return false;
  }
  return true;
}

double binom(int n, int k) {
  if (k < 0 || k > n) return 0;
  double r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

template <typename Factor>
PackingReport packing(const Network& net, const NetworkCode& code, std::span<const Word> outer, int t, int r,
                      bool use_b, Factor&& factor) {
  TwoLevelView v = two_level_view(net);
  const unsigned q = code.alphabet();
  const int n = static_cast<int>(v.nodes.size());
  if (r < 0 || r > n) throw Error(Errc::PreconditionViolated, "r out of range");
  if (t < 0) throw Error(Errc::ParameterOutOfRange, "negative adversary power");
  // Head nodes: the first r nodes with a_i <= b_i and an injective function; the rest form the tail.
  std::vector<std::size_t> head, tail;
  for (std::size_t i = 0; i < v.nodes.size(); ++i) {
    const bool eligible = static_cast<int>(head.size()) < r && v.a[i] <= v.b[i] && injective(code.at(v.nodes[i]), q);
    (eligible ? head : tail).push_back(i);
  }
  if (static_cast<int>(head.size()) < r)
    throw Error(Errc::PreconditionViolated,
                "only " + std::to_string(head.size()) + " nodes have a_i <= b_i and an injective function");
  int head_len = 0;
  for (std::size_t i : head) head_len += v.a[i];
  // g[s] = sum over codewords of the product of tail factors at radius s.
  std::vector<double> g(static_cast<std::size_t>(t + 1), 0);
  for (int s = 0; s <= t; ++s)
    for (const Word& x : outer) {
      double prod = 1;
      for (std::size_t j : tail)
        prod *= static_cast<double>(factor(code.at(v.nodes[j]), project(x, v.positions[j]), s, q));
      g[static_cast<std::size_t>(s)] += prod;
    }
  // Compositions (t_1..t_r) with sum k contribute binom(head_len, k) (q-1)^k in total.
  PackingReport rep;
  for (int k = 0; k <= t; ++k)
    rep.lhs += binom(head_len, k) * std::pow(static_cast<double>(q - 1), k) * g[static_cast<std::size_t>(t - k)];
  const auto& degrees = use_b ? v.b : v.a;
  rep.rhs = std::pow(static_cast<double>(q), std::accumulate(degrees.begin(), degrees.end(), 0));
  rep.holds = rep.lhs <= rep.rhs;
  return rep;
}

}  // namespace

PackingReport first_packing_check(const Network& net, const NetworkCode& code, std::span<const Word> outer, int t,
                                  int r) {
  return packing(net, code, outer, t, r, true, [](const NodeFunction& f, const Word& w, int s, unsigned q) {
    return ball_image(f, w, s, q).size();
  });
}

PackingReport second_packing_check(const Network& net, const NetworkCode& code, std::span<const Word> outer, int t,
                                   int r) {
  return packing(net, code, outer, t, r, false, [](const NodeFunction& f, const Word& w, int s, unsigned q) {
    return preimage_count(f, ball_image(f, w, s, q), q);
  });
}

std::uint64_t joint_preimage_size(const Network& net, const NetworkCode& code, std::span<const Symbol> x, int t) {
  TwoLevelView v = two_level_view(net);
  const unsigned q = code.alphabet();
  auto outputs = [&](std::span<const Symbol> w) {
    Word all;
    for (std::size_t j = 0; j < v.nodes.size(); ++j) {
      Word part = code.at(v.nodes[j])(project(w, v.positions[j]));
      all.insert(all.end(), part.begin(), part.end());
    }
    return word_index(all, q);
  };
  std::unordered_set<std::uint64_t> image;
  Word y(x.size());
  for_each_sparse_word(static_cast<int>(x.size()), t, q, true, [&](const Word& e, const std::vector<int>&) {
    for (std::size_t i = 0; i < x.size(); ++i) y[i] = static_cast<Symbol>((x[i] + e[i]) % q);
    image.insert(outputs(y));
  });
  auto total = word_space_size(q, x.size());
  if (!total || *total > (1u << 24)) throw Error(Errc::DomainTooLarge, "source space too large");
  std::uint64_t count = 0;
  for (std::uint64_t i = 0; i < *total; ++i) count += image.count(outputs(word_at(i, q, x.size())));
  return count;
}

std::uint64_t coordinate_preimage_product(const Network& net, const NetworkCode& code, std::span<const Symbol> x,
                                          int t) {
  TwoLevelView v = two_level_view(net);
  const unsigned q = code.alphabet();
  std::uint64_t prod = 1;
  for (std::size_t j = 0; j < v.nodes.size(); ++j) {
    const NodeFunction& f = code.at(v.nodes[j]);
    prod *= preimage_count(f, ball_image(f, project(x, v.positions[j]), std::min(t, v.a[j]), q), q);
  }
  return prod;
}

double binary_entropy(double p) {
  if (p <= 0 || p >= 1) return 0;
  return -p * std::log2(p) - (1 - p) * std::log2(1 - p);
}

double bsc_level_capacity(int generalization, int scenario, int n, double p) {
  if (!(p >= 0 && p <= 0.5)) throw Error(Errc::OutOfRange, "p must lie in [0, 0.5]");
  if ((generalization != 1 && generalization != 2) || (scenario != 1 && scenario != 2))
    throw Error(Errc::OutOfRange, "generalization and scenario must be 1 or 2");
  if (n < 2) throw Error(Errc::OutOfRange, "n must be at least 2");
  const double c = 1 - binary_entropy(p);
  const double nn = n;
  if (generalization == 1)
    return scenario == 1 ? std::min(nn - 1, nn * c) : c + std::min(nn - 2, (nn - 1) * c);
  return scenario == 1 ? std::min(2 * nn, 3 * nn * c) : nn * c + std::min(nn, 2 * nn * c);
}

std::vector<CurveRow> bsc_curves(int generalization, int n, double pstep) {
  if (!(pstep > 0 && pstep <= 0.5)) throw Error(Errc::OutOfRange, "p step must lie in (0, 0.5]");
  std::vector<CurveRow> rows;
  const auto steps = static_cast<long>(std::floor(0.5 / pstep + 1e-9));
  for (long i = 0; i <= steps; ++i) {
    const double p = std::min(0.5, static_cast<double>(i) * pstep);
    rows.push_back({p, bsc_level_capacity(generalization, 1, n, p), bsc_level_capacity(generalization, 2, n, p)});
  }
  return rows;
}

std::string curves_csv(std::span<const CurveRow> rows) {
  std::string out = "p,scenario1,scenario2,gap\n";
  char buf[128];
  for (const CurveRow& r : rows) {
    std::snprintf(buf, sizeof buf, "%.9f,%.9f,%.9f,%.9f\n", r.p, r.scenario1, r.scenario2, r.gap());
    out += buf;
  }
  return out;
}

}  // namespace advnet
