#include "advnet/search.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <mutex>
#include <thread>

namespace advnet {

double CapacityCertificate::rate() const {
  return std::log(static_cast<double>(max_code_size)) / std::log(static_cast<double>(q));
}

std::uint64_t restricted_growth_count(std::size_t length, unsigned q) {
  // Stirling numbers of the second kind, summed over k <= q.
  std::vector<std::vector<double>> s(length + 1, std::vector<double>(q + 1, 0));
  s[0][0] = 1;
  for (std::size_t n = 1; n <= length; ++n)
    for (unsigned k = 1; k <= q; ++k) s[n][k] = k * s[n - 1][k] + s[n - 1][k - 1];
  double total = 0;
  for (unsigned k = 0; k <= q; ++k) total += s[length][k];
  return total > 1.8e19 ? UINT64_MAX : static_cast<std::uint64_t>(total);
}

namespace {

// Candidate columns of one out-edge: values on that edge for every input row.
std::vector<Word> columns(std::size_t rows, unsigned q, bool canonical, std::uint64_t cap) {
  std::vector<Word> out;
  Word col(rows, 0);
  if (!canonical) {
    auto n = word_space_size(q, rows);
    if (!n || *n > cap) throw Error(Errc::BudgetExceeded, "too many node tables");
    for (std::uint64_t i = 0; i < *n; ++i) out.push_back(word_at(i, q, rows));
    return out;
  }
  if (restricted_growth_count(rows, q) > cap) throw Error(Errc::BudgetExceeded, "too many node tables");
  auto rec = [&](auto&& self, std::size_t pos, unsigned used) -> void {
    if (pos == rows) {
      out.push_back(col);
      return;
    }
    for (unsigned v = 0; v <= used && v < q; ++v) {
      col[pos] = static_cast<Symbol>(v);
      self(self, pos + 1, v == used ? used + 1 : used);
    }
  };
  if (rows == 0) out.push_back(col);
  else rec(rec, 0, 0);
  return out;
}

struct NodeSpace {
  VertexId v;
  int in, out;
  std::uint64_t radix = 1;  // number of functions at this node
  std::uint64_t column_count = 0;
};

std::uint64_t mul_cap(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > UINT64_MAX / a) return UINT64_MAX;
  return a * b;
}

std::vector<NodeSpace> node_spaces(const Network& net, unsigned q, bool linear, bool symmetry, std::uint64_t& total) {
  std::vector<NodeSpace> spaces;
  total = 1;
  for (VertexId v : net.intermediates()) {
    NodeSpace s{v, static_cast<int>(net.in_edges(v).size()), static_cast<int>(net.out_edges(v).size()), 1, 0};
    if (linear) {
      auto n = word_space_size(q, static_cast<std::size_t>(s.in * s.out));
      s.radix = n ? *n : UINT64_MAX;
    } else {
      auto rows = word_space_size(q, static_cast<std::size_t>(s.in));
      if (!rows || *rows > 64) {
        s.column_count = UINT64_MAX;
      } else {
        s.column_count = symmetry ? restricted_growth_count(*rows, q) : word_space_size(q, *rows).value_or(UINT64_MAX);
      }
      for (int j = 0; j < s.out; ++j) s.radix = mul_cap(s.radix, s.column_count);
    }
    total = mul_cap(total, s.radix);
    spaces.push_back(s);
  }
  return spaces;
}

struct Shared {
  std::atomic<std::uint64_t> next{0};
  std::atomic<std::uint64_t> examined{0};
  std::atomic<std::uint64_t> best{0};
  std::atomic<bool> stop{false};
  std::atomic<bool> timed_out{false};
  std::mutex mutex;
  CapacityCertificate cert;
};

std::vector<Word> code_words(const Network& net, unsigned q, const std::vector<std::size_t>& idx) {
  std::vector<Word> words;
  for (std::size_t i : idx) words.push_back(word_at(i, q, net.out_edges(net.source()).size()));
  return words;
}

CapacityCertificate run_search(const Network& net, unsigned q, int t, const SearchBudget& budget, bool linear) {
  if (q < 2 || q > 256) throw Error(Errc::InvalidInput, "alphabet size must be in [2,256]");
  if (t < 0) throw Error(Errc::ParameterOutOfRange, "negative adversary power");
  std::optional<Field> field;
  if (linear) field.emplace(q);
  const std::size_t src_len = net.out_edges(net.source()).size();
  auto inputs = word_space_size(q, src_len);
  if (!inputs || *inputs > budget.max_inputs)
    throw Error(Errc::DomainTooLarge, "source alphabet space exceeds the channel input limit");

  std::uint64_t total = 0;
  std::vector<NodeSpace> spaces = node_spaces(net, q, linear, budget.symmetry && !linear, total);
  std::vector<std::vector<Word>> cols(spaces.size());
  if (!linear)
    for (std::size_t k = 0; k < spaces.size(); ++k) {
      if (spaces[k].column_count > 50'000'000) throw BudgetExceededError("node table space too large", {});
      cols[k] = columns(*word_space_size(q, static_cast<std::size_t>(spaces[k].in)), q, budget.symmetry, 50'000'000);
    }

  std::uint64_t upper = *inputs;
  for (VertexId term : net.terminals())
    upper = std::min<std::uint64_t>(upper, word_space_size(q, static_cast<std::size_t>(min_cut(net, net.source(), term)))
                                               .value_or(UINT64_MAX));

  Shared shared;
  shared.cert.instance_key = instance_key(net, q, t, linear);
  shared.cert.q = q;
  shared.cert.t = t;
  shared.cert.linear = linear;
  shared.cert.codes_total = total;
  const std::uint64_t limit = std::min(total, budget.max_codes);
  const auto start = std::chrono::steady_clock::now();

  auto decode_index = [&](std::uint64_t index) {
    std::map<VertexId, NodeFunction> fns;
    for (std::size_t k = spaces.size(); k-- > 0;) {
      const NodeSpace& s = spaces[k];
      std::uint64_t local = index % s.radix;
      index /= s.radix;
      if (linear) {
        FieldMatrix m(s.out, s.in);
        Word digits = word_at(local, q, static_cast<std::size_t>(s.in * s.out));
        m.data.assign(digits.begin(), digits.end());
        fns.emplace(s.v, NodeFunction::linear(*field, std::move(m)));
      } else {
        const std::size_t rows = cols[k].front().size();
        std::vector<Symbol> entries(rows * static_cast<std::size_t>(s.out));
        for (int j = s.out; j-- > 0;) {
          const Word& c = cols[k][local % s.column_count];
          local /= s.column_count;
          for (std::size_t r = 0; r < rows; ++r) entries[r * static_cast<std::size_t>(s.out) + static_cast<std::size_t>(j)] = c[r];
        }
        fns.emplace(s.v, NodeFunction::table(s.in, s.out, q, std::move(entries)));
      }
    }
    return NetworkCode(net, q, std::move(fns));
  };

  auto worker = [&] {
    Word x(src_len);
    std::vector<std::vector<std::vector<Output>>> fan(net.terminals().size(),
                                                      std::vector<std::vector<Output>>(*inputs));
    constexpr std::uint64_t chunk = 64;
    for (;;) {
      if (shared.stop.load()) return;
      const std::uint64_t begin = shared.next.fetch_add(chunk);
      if (begin >= limit) return;
      const std::uint64_t end = std::min(limit, begin + chunk);
      for (std::uint64_t index = begin; index < end; ++index) {
        NetworkCode code = decode_index(index);
        Evaluator ev(net, code);
        for (std::uint64_t xi = 0; xi < *inputs; ++xi) {
          x = word_at(xi, q, src_len);
          auto f = induced_fanouts(ev, x, net.terminals(), t);
          for (std::size_t k = 0; k < f.size(); ++k) fan[k][xi] = std::move(f[k]);
        }
        Graph g(*inputs);
        for (const auto& per_terminal : fan) g.add_confusions(per_terminal);
        const std::uint64_t best = shared.best.load();
        auto mis = budget.greedy ? greedy_independent_set(g) : maximum_independent_set(g, best);
        shared.examined.fetch_add(1);
        if (mis.size() > best) {
          std::lock_guard lock(shared.mutex);
          if (mis.size() > shared.cert.max_code_size) {
            shared.cert.max_code_size = mis.size();
            shared.best.store(mis.size());
            shared.cert.tables.clear();
            for (const auto& [v, fn] : code.functions()) shared.cert.tables.emplace(v, fn.tabulate(q));
            shared.cert.outer = code_words(net, q, mis);
            if (mis.size() >= upper) shared.stop.store(true);
          }
        }
      }
      if (budget.time_limit_seconds > 0) {
        std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
        if (elapsed.count() > budget.time_limit_seconds) {
          shared.timed_out.store(true);
          shared.stop.store(true);
        }
      }
    }
  };

  unsigned threads = budget.threads ? budget.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, std::max<std::uint64_t>(1, limit / 64)));
  std::vector<std::thread> pool;
  for (unsigned i = 1; i < threads; ++i) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  CapacityCertificate cert = std::move(shared.cert);
  cert.codes_examined = shared.examined.load();
  const bool hit_upper = cert.max_code_size >= upper;
  cert.exhaustive = hit_upper || (!budget.greedy && !shared.timed_out.load() && limit == total);
  if (!cert.exhaustive && !(budget.greedy && limit == total))
    throw BudgetExceededError(shared.timed_out.load() ? "time limit reached" : "network-code budget exhausted", cert);
  return cert;
}

}  // namespace

std::uint64_t search_space_size(const Network& net, unsigned q, bool linear, bool symmetry) {
  std::uint64_t total = 0;
  node_spaces(net, q, linear, symmetry && !linear, total);
  return total;
}

CapacityCertificate exact_capacity(const Network& net, unsigned q, int t, const SearchBudget& budget) {
  return run_search(net, q, t, budget, false);
}

CapacityCertificate exact_linear_capacity(const Network& net, unsigned q, int t, const SearchBudget& budget) {
  return run_search(net, q, t, budget, true);
}

std::vector<Word> best_code_for(const Network& net, const NetworkCode& code, int t, std::size_t max_inputs,
                                bool greedy) {
  const std::size_t src_len = net.out_edges(net.source()).size();
  auto inputs = word_space_size(code.alphabet(), src_len);
  if (!inputs || *inputs > max_inputs) throw Error(Errc::BudgetExceeded, "source space exceeds the input limit");
  Evaluator ev(net, code);
  std::vector<std::vector<std::vector<Output>>> fan(net.terminals().size(), std::vector<std::vector<Output>>(*inputs));
  for (std::uint64_t xi = 0; xi < *inputs; ++xi) {
    auto f = induced_fanouts(ev, word_at(xi, code.alphabet(), src_len), net.terminals(), t);
    for (std::size_t k = 0; k < f.size(); ++k) fan[k][xi] = std::move(f[k]);
  }
  Graph g(*inputs);
  for (const auto& per_terminal : fan) g.add_confusions(per_terminal);
  auto idx = greedy ? greedy_independent_set(g) : maximum_independent_set(g);
  return code_words(net, code.alphabet(), idx);
}

NetworkCode certificate_code(const Network& net, const CapacityCertificate& cert) {
  std::map<VertexId, NodeFunction> fns;
  for (const auto& [v, table] : cert.tables)
    fns.emplace(v, NodeFunction::table(static_cast<int>(net.in_edges(v).size()),
                                       static_cast<int>(net.out_edges(v).size()), cert.q, table));
  return NetworkCode(net, cert.q, std::move(fns));
}

std::string instance_key(const Network& net, unsigned q, int t, bool linear) {
  std::string canon;
  for (const Edge& e : net.edges()) canon += net.name(e.tail) + ">" + net.name(e.head) + ";";
  canon += "|S=" + net.name(net.source()) + "|T=";
  for (VertexId v : net.terminals()) canon += net.name(v) + ",";
  canon += "|U=" + format_edge_set(net.vulnerable());
  canon += "|q=" + std::to_string(q) + "|t=" + std::to_string(t) + (linear ? "|linear" : "|general");
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : canon) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace advnet
