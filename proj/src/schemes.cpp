#include "advnet/schemes.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <unordered_map>
#include <unordered_set>

#include "advnet/bounds.hpp"
#include "advnet/error.hpp"

namespace advnet {

OuterCode OuterCode::listed(unsigned q, std::size_t length, std::vector<Word> words) {
  if (words.empty()) throw Error(Errc::InvalidInput, "outer code must be nonempty");
  std::unordered_set<std::uint64_t> seen;
  for (const Word& w : words) {
    if (w.size() != length) throw Error(Errc::LengthMismatch, "outer code word length");
    for (Symbol s : w)
      if (s >= q) throw Error(Errc::WordOutsideDomain, "outer code symbol outside alphabet");
    if (!seen.insert(word_index(w, q)).second) throw Error(Errc::InvalidInput, "repeated outer code word");
  }
  OuterCode c;
  c.q_ = q;
  c.length_ = length;
  c.size_ = words.size();
  c.listed_ = std::move(words);
  return c;
}

OuterCode OuterCode::product(const Field& field, std::size_t length, std::vector<Segment> segments) {
  OuterCode c;
  c.q_ = field.order();
  c.length_ = length;
  c.field_ = field;
  for (const Segment& s : segments) {
    if (static_cast<int>(s.positions.size()) != s.generator.cols)
      throw Error(Errc::DimensionMismatch, "segment generator width");
    c.dimension_ += s.generator.rows;
  }
  auto size = word_space_size(c.q_, static_cast<std::size_t>(c.dimension_));
  if (!size) throw Error(Errc::DomainTooLarge, "outer code size does not fit 64 bits");
  c.size_ = *size;
  c.segments_ = std::move(segments);
  if (c.segments_.empty()) c.listed_ = {Word(length, 0)};
  return c;
}

Word OuterCode::encode(std::span<const Symbol> message) const {
  if (static_cast<int>(message.size()) != dimension_) throw Error(Errc::LengthMismatch, "message length");
  Word w(length_, 0);
  std::size_t offset = 0;
  for (const Segment& s : segments_) {
    for (int col = 0; col < s.generator.cols; ++col) {
      Symbol acc = 0;
      for (int row = 0; row < s.generator.rows; ++row)
        acc = field_->add(acc, field_->mul(message[offset + static_cast<std::size_t>(row)], s.generator(row, col)));
      w[static_cast<std::size_t>(s.positions[static_cast<std::size_t>(col)])] = acc;
    }
    offset += static_cast<std::size_t>(s.generator.rows);
  }
  return w;
}

Word OuterCode::word(std::uint64_t i) const {
  if (i >= size_) throw Error(Errc::OutOfRange, "outer code index");
  if (segments_.empty()) return listed_.at(i);
  return encode(word_at(i, q_, static_cast<std::size_t>(dimension_)));
}

std::vector<Word> OuterCode::words(std::uint64_t limit) const {
  if (size_ > limit) throw Error(Errc::DomainTooLarge, "outer code has " + std::to_string(size_) + " words");
  if (segments_.empty()) return listed_;
  std::vector<Word> out;
  out.reserve(size_);
  for (std::uint64_t i = 0; i < size_; ++i) out.push_back(word(i));
  return out;
}

double Scheme::claimed_rate() const {
  return std::log(static_cast<double>(claimed_size)) / std::log(static_cast<double>(q));
}

namespace {

std::vector<Word> repetition_words(unsigned q, std::size_t length, unsigned first) {
  std::vector<Word> words;
  for (unsigned x = first; x < q; ++x) words.emplace_back(length, static_cast<Symbol>(x));
  return words;
}

NodeFunction agree_or_alarm(int in, int out) {
  return NodeFunction::callable(
      in, out,
      [](std::span<const Symbol> x, std::span<Symbol> y) {
        const bool same = std::all_of(x.begin(), x.end(), [&](Symbol s) { return s == x[0]; });
        std::fill(y.begin(), y.end(), same ? x[0] : Symbol{0});
      },
      "agree-or-alarm");
}

// Most frequent symbol if it is the unique maximum, otherwise 0.
NodeFunction plurality_or_alarm(int in, unsigned q) {
  return NodeFunction::callable(
      in, 1,
      [q](std::span<const Symbol> x, std::span<Symbol> y) {
        std::vector<int> count(q, 0);
        for (Symbol s : x) ++count[s];
        int best = 0;
        for (unsigned s = 1; s < q; ++s)
          if (count[s] > count[static_cast<std::size_t>(best)]) best = static_cast<int>(s);
        const int ties = static_cast<int>(std::count(count.begin(), count.end(), count[static_cast<std::size_t>(best)]));
        y[0] = ties == 1 ? static_cast<Symbol>(best) : Symbol{0};
      },
      "plurality-or-alarm");
}

Symbol majority(std::span<const Symbol> x, unsigned q) {
  std::vector<int> count(q, 0);
  for (Symbol s : x) ++count[s];
  return static_cast<Symbol>(std::max_element(count.begin(), count.end()) - count.begin());
}

VertexId node(const Network& net, int i) { return net.vertex("V" + std::to_string(i)); }

Symbol trust_unless_alarm(Symbol preferred, Symbol fallback) { return preferred != 0 ? preferred : fallback; }

}  // namespace

Scheme scheme_diamond(unsigned q) {
  if (q < 2) throw Error(Errc::ParameterOutOfRange, "alphabet size below 2");
  const int a[] = {1, 2}, b[] = {1, 1};
  Network net = simple_two_level(a, b);
  std::map<VertexId, NodeFunction> fns;
  fns.emplace(node(net, 1), NodeFunction::forward(1, 1));
  fns.emplace(node(net, 2), agree_or_alarm(2, 1));
  Scheme s{"diamond", net, q, 1, OuterCode::listed(q, 3, repetition_words(q, 3, 1)),
           NetworkCode(net, q, std::move(fns)), q - 1, {{"q", {static_cast<int>(q)}}}, {}, {}};
  s.decoder = [](VertexId, std::span<const Symbol> r) -> std::optional<Word> {
    return Word(3, trust_unless_alarm(r[1], r[0]));
  };
  return s;
}

Scheme scheme_mirrored_diamond(unsigned q) {
  if (q < 2) throw Error(Errc::ParameterOutOfRange, "alphabet size below 2");
  const int a[] = {2, 2}, b[] = {1, 1};
  Network net = simple_two_level(a, b);
  std::map<VertexId, NodeFunction> fns;
  fns.emplace(node(net, 1), agree_or_alarm(2, 1));
  fns.emplace(node(net, 2), agree_or_alarm(2, 1));
  Scheme s{"mirrored_diamond", net, q, 1, OuterCode::listed(q, 4, repetition_words(q, 4, 0)),
           NetworkCode(net, q, std::move(fns)), q, {{"q", {static_cast<int>(q)}}}, {}, {}};
  s.decoder = [](VertexId, std::span<const Symbol> r) -> std::optional<Word> {
    return Word(4, trust_unless_alarm(r[0], r[1]));
  };
  return s;
}

Scheme scheme_a2(unsigned q) {
  if (q < 2) throw Error(Errc::ParameterOutOfRange, "alphabet size below 2");
  const int a[] = {2, 4}, b[] = {2, 2};
  Network net = simple_two_level(a, b);
  std::map<VertexId, NodeFunction> fns;
  fns.emplace(node(net, 1), NodeFunction::forward(2, 2));
  fns.emplace(node(net, 2), NodeFunction::callable(
                                4, 2,
                                [q](std::span<const Symbol> x, std::span<Symbol> y) {
                                  std::vector<int> count(q, 0);
                                  for (Symbol s : x) ++count[s];
                                  for (unsigned s = 0; s < q; ++s)
                                    if (count[s] >= 3) {
                                      y[0] = y[1] = static_cast<Symbol>(s);
                                      return;
                                    }
                                  y[0] = 0;
                                  y[1] = 1;
                                },
                                "threshold-three"));
  Scheme s{"a2", net, q, 2, OuterCode::listed(q, 6, repetition_words(q, 6, 0)),
           NetworkCode(net, q, std::move(fns)), q, {{"q", {static_cast<int>(q)}}}, {}, {}};
  s.decoder = [](VertexId, std::span<const Symbol> r) -> std::optional<Word> {
    return Word(6, r[2] == r[3] ? r[2] : r[0]);
  };
  return s;
}

ShellLabel c_t_shell(unsigned q, int t, std::span<const Symbol> v2_input) {
  const int h = t / 2;
  std::vector<int> count(q, 0);
  for (Symbol s : v2_input) ++count[s];
  const int j = static_cast<int>(std::max_element(count.begin(), count.end()) - count.begin());
  const int dist = static_cast<int>(v2_input.size()) - count[static_cast<std::size_t>(j)];
  if (dist <= h) return {j, dist};
  return {-1, 0};
}

Scheme scheme_c_t(unsigned q, int t) {
  if (t < 2) throw Error(Errc::ParameterOutOfRange, "family C needs t >= 2");
  if (q < 2) throw Error(Errc::ParameterOutOfRange, "alphabet size below 2");
  const int h = t / 2;
  const bool table_case = q == 2 && t == 2;
  const auto label_space = word_space_size(q, static_cast<std::size_t>(t));
  const std::uint64_t labels_needed = static_cast<std::uint64_t>(q) * static_cast<std::uint64_t>(h + 1) + 1;
  if (!table_case && label_space && *label_space < labels_needed)
    throw Error(Errc::ParameterOutOfRange, "not enough labels for the shells");

  const int a[] = {t, t + 1}, b[] = {t, t};
  Network net = simple_two_level(a, b);
  std::map<VertexId, NodeFunction> fns;
  fns.emplace(node(net, 1), NodeFunction::forward(t, t));
  fns.emplace(node(net, 2), NodeFunction::callable(
                                t + 1, t,
                                [q, t, h, table_case](std::span<const Symbol> x, std::span<Symbol> y) {
                                  ShellLabel s = c_t_shell(q, t, x);
                                  if (table_case) {
                                    // Centre -> (j,j); radius-one shell -> (j, other).
                                    y[0] = static_cast<Symbol>(s.symbol);
                                    y[1] = static_cast<Symbol>(s.radius == 0 ? s.symbol : 1 - s.symbol);
                                    return;
                                  }
                                  const std::uint64_t label =
                                      s.symbol < 0 ? static_cast<std::uint64_t>(q) * static_cast<std::uint64_t>(h + 1)
                                                   : static_cast<std::uint64_t>(s.symbol) * static_cast<std::uint64_t>(h + 1) +
                                                         static_cast<std::uint64_t>(s.radius);
                                  Word w = word_at(label, q, static_cast<std::size_t>(t));
                                  std::copy(w.begin(), w.end(), y.begin());
                                },
                                "shell-label"));
  const auto n = static_cast<std::size_t>(2 * t + 1);
  Scheme s{"c_t", net, q, t, OuterCode::listed(q, n, repetition_words(q, n, 0)),
           NetworkCode(net, q, std::move(fns)), q,
           {{"q", {static_cast<int>(q)}}, {"t", {t}}}, {}, {}};
  s.decoder = [q, t, h, table_case, n](VertexId, std::span<const Symbol> r) -> std::optional<Word> {
    auto x = r.subspan(0, static_cast<std::size_t>(t));
    auto label = r.subspan(static_cast<std::size_t>(t));
    int j = -1;
    int i = 0;
    if (table_case) {
      j = label[0];
      i = label[0] == label[1] ? 0 : 1;
    } else {
      const std::uint64_t l = word_index(label, q);
      if (l < static_cast<std::uint64_t>(q) * static_cast<std::uint64_t>(h + 1)) {
        j = static_cast<int>(l / static_cast<std::uint64_t>(h + 1));
        i = static_cast<int>(l % static_cast<std::uint64_t>(h + 1));
      }
    }
    Symbol decoded;
    if (j < 0) decoded = majority(x, q);
    else if (i == 0) decoded = static_cast<Symbol>(j);
    else if (std::count(x.begin(), x.end(), static_cast<Symbol>(j)) >= i) decoded = static_cast<Symbol>(j);
    else decoded = majority(x, q);
    return Word(n, decoded);
  };
  return s;
}

Scheme scheme_d_t(unsigned q, int t) {
  if (t < 1) throw Error(Errc::ParameterOutOfRange, "family D needs t >= 1");
  if (q < 2) throw Error(Errc::ParameterOutOfRange, "alphabet size below 2");
  const int a[] = {2 * t, 2 * t}, b[] = {1, 1};
  Network net = simple_two_level(a, b);
  std::map<VertexId, NodeFunction> fns;
  fns.emplace(node(net, 1), plurality_or_alarm(2 * t, q));
  fns.emplace(node(net, 2), plurality_or_alarm(2 * t, q));
  const auto n = static_cast<std::size_t>(4 * t);
  Scheme s{"d_t", net, q, t, OuterCode::listed(q, n, repetition_words(q, n, 0)),
           NetworkCode(net, q, std::move(fns)), q,
           {{"q", {static_cast<int>(q)}}, {"t", {t}}}, {}, {}};
  s.decoder = [n](VertexId, std::span<const Symbol> r) -> std::optional<Word> {
    return Word(n, trust_unless_alarm(r[0], r[1]));
  };
  return s;
}

Scheme scheme_opening_network(unsigned q) {
  if (q < 2) throw Error(Errc::ParameterOutOfRange, "alphabet size below 2");
  Network net = make_network({"S", "V1", "V2", "V3", "V4", "T1", "T2"},
                             {{"S", "V1"}, {"S", "V1"}, {"S", "V2"}, {"S", "V2"}, {"V1", "T1"}, {"V1", "V3"},
                              {"V2", "V3"}, {"V2", "T2"}, {"V3", "V4"}, {"V4", "T1"}, {"V4", "T2"}},
                             "S", {"T1", "T2"}, {0, 1, 2, 3, 5, 6, 8});
  std::map<VertexId, NodeFunction> fns;
  fns.emplace(net.vertex("V1"), agree_or_alarm(2, 2));
  fns.emplace(net.vertex("V2"), agree_or_alarm(2, 2));
  fns.emplace(net.vertex("V3"), NodeFunction::callable(
                                    2, 1,
                                    [](std::span<const Symbol> x, std::span<Symbol> y) {
                                      if (x[0] == 0) y[0] = x[1];
                                      else if (x[1] == 0 || x[0] == x[1]) y[0] = x[0];
                                      else y[0] = 0;
                                    },
                                    "unique-non-alarm"));
  fns.emplace(net.vertex("V4"), NodeFunction::callable(
                                    1, 2, [](std::span<const Symbol> x, std::span<Symbol> y) { y[0] = y[1] = x[0]; },
                                    "duplicate"));
  Scheme s{"opening_network", net, q, 1, OuterCode::listed(q, 4, repetition_words(q, 4, 1)),
           NetworkCode(net, q, std::move(fns)), q - 1, {{"q", {static_cast<int>(q)}}}, {}, {}};
  s.decoder = [](VertexId, std::span<const Symbol> r) -> std::optional<Word> {
    return Word(4, trust_unless_alarm(r[0], r[1]));
  };
  return s;
}

namespace {

unsigned next_prime_power(unsigned n) {
  for (unsigned m = std::max(2u, n);; ++m)
    if (prime_power(m)) return m;
}

struct TwoLevelLayout {
  Network net;
  std::vector<VertexId> nodes;
  std::vector<std::vector<int>> positions;  // source-word positions per node
  std::vector<int> out_offset;              // offset of each node's outputs in in(T)
  std::size_t length = 0;
};

TwoLevelLayout layout(std::span<const int> a, std::span<const int> b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (i >= b.size() || a[i] < 1 || b[i] < 1) throw Error(Errc::NotTwoLevel, "degrees must be positive and paired");
  TwoLevelLayout l{simple_two_level(a, b), {}, {}, {}, 0};
  auto src = l.net.out_edges(l.net.source());
  l.length = src.size();
  int offset = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    VertexId v = node(l.net, static_cast<int>(i) + 1);
    l.nodes.push_back(v);
    std::vector<int> pos;
    for (EdgeId e : l.net.in_edges(v))
      pos.push_back(static_cast<int>(std::find(src.begin(), src.end(), e) - src.begin()));
    l.positions.push_back(std::move(pos));
    l.out_offset.push_back(offset);
    offset += b[i];
  }
  return l;
}

// A node that RS-decodes its first n inputs and emits the message padded with zeros.
NodeFunction decoding_node(int in, int out, std::shared_ptr<const SyndromeDecoder> dec) {
  const int n = dec->code().length();
  return NodeFunction::callable(
      in, out,
      [dec, n](std::span<const Symbol> x, std::span<Symbol> y) {
        std::fill(y.begin(), y.end(), Symbol{0});
        if (auto m = dec->decode(x.subspan(0, static_cast<std::size_t>(n)))) std::copy(m->begin(), m->end(), y.begin());
      },
      "rs-decode");
}

// Forwards the first `used` inputs; other outputs are zero.
NodeFunction forwarding_node(const Field& f, int in, int out, int used) {
  FieldMatrix m(out, in);
  for (int i = 0; i < used; ++i) m(i, i) = 1;
  return NodeFunction::linear(f, m);
}

std::vector<Word> block_words(const OuterCode::Segment& seg, const std::vector<int>& block_positions, const Field& f,
                              std::uint64_t limit) {
  auto count = word_space_size(f.order(), static_cast<std::size_t>(seg.generator.rows));
  if (!count || *count > limit) return {};
  std::vector<Word> words;
  for (std::uint64_t i = 0; i < *count; ++i) {
    Word m = word_at(i, f.order(), static_cast<std::size_t>(seg.generator.rows));
    Word w(block_positions.size(), 0);
    for (int col = 0; col < seg.generator.cols; ++col) {
      Symbol acc = 0;
      for (int row = 0; row < seg.generator.rows; ++row)
        acc = f.add(acc, f.mul(m[static_cast<std::size_t>(row)], seg.generator(row, col)));
      auto at = std::find(block_positions.begin(), block_positions.end(), seg.positions[static_cast<std::size_t>(col)]);
      w[static_cast<std::size_t>(at - block_positions.begin())] = acc;
    }
    words.push_back(std::move(w));
  }
  return words;
}

// Pieces shared by the two RS-based constructors.
struct ProductBuilder {
  const Field& field;
  TwoLevelLayout& l;
  int t;
  std::vector<OuterCode::Segment> segments;
  std::vector<VerificationBlock> blocks;
  std::map<VertexId, NodeFunction> fns;
  // Per segment, how the terminal recovers its message symbols.
  struct Recovery {
    std::vector<int> received;                    // positions in in(T)
    std::shared_ptr<const ReedSolomon> rs;        // null: symbols are the message itself
  };
  std::vector<Recovery> recoveries;

  static constexpr std::uint64_t kBlockWordLimit = 1u << 20;

  void decoding(std::size_t i, int n, int k, const std::string& label) {
    auto rs = std::make_shared<const ReedSolomon>(field, n, k);
    auto dec = std::make_shared<const SyndromeDecoder>(*rs, t);
    const auto& pos = l.positions[i];
    OuterCode::Segment seg{std::vector<int>(pos.begin(), pos.begin() + n), rs->generator()};
    const int out = static_cast<int>(l.net.out_edges(l.nodes[i]).size());
    fns.emplace(l.nodes[i], decoding_node(static_cast<int>(pos.size()), out, dec));
    blocks.push_back({label, {l.nodes[i]}, pos, block_words(seg, pos, field, kBlockWordLimit), dec});
    Recovery r;
    for (int j = 0; j < k; ++j) r.received.push_back(l.out_offset[i] + j);
    recoveries.push_back(std::move(r));
    segments.push_back(std::move(seg));
  }

  // Joint RS code over the first `used[i]` inputs of each listed node, forwarded unchanged.
  void forwarding(const std::vector<std::size_t>& members, const std::vector<int>& used, const std::string& label) {
    int n = 0;
    for (int u : used) n += u;
    const int k = n - 2 * t;
    VerificationBlock block{label, {}, {}, {}, nullptr};
    std::vector<int> seg_positions;
    Recovery r;
    for (std::size_t m = 0; m < members.size(); ++m) {
      const std::size_t i = members[m];
      const int in = static_cast<int>(l.positions[i].size());
      const int out = static_cast<int>(l.net.out_edges(l.nodes[i]).size());
      fns.emplace(l.nodes[i], forwarding_node(field, in, out, k > 0 ? used[m] : 0));
      block.nodes.push_back(l.nodes[i]);
      block.positions.insert(block.positions.end(), l.positions[i].begin(), l.positions[i].end());
      for (int j = 0; j < used[m]; ++j) {
        seg_positions.push_back(l.positions[i][static_cast<std::size_t>(j)]);
        r.received.push_back(l.out_offset[i] + j);
      }
    }
    if (k <= 0) {
      block.words = {Word(block.positions.size(), 0)};
      blocks.push_back(std::move(block));
      return;
    }
    auto rs = std::make_shared<const ReedSolomon>(field, n, k);
    OuterCode::Segment seg{seg_positions, rs->generator()};
    block.words = block_words(seg, block.positions, field, kBlockWordLimit);
    block.algebraic = std::make_shared<const SyndromeDecoder>(*rs, t);
    blocks.push_back(std::move(block));
    r.rs = rs;
    recoveries.push_back(std::move(r));
    segments.push_back(std::move(seg));
  }

  void idle(std::size_t i) {
    const int in = static_cast<int>(l.positions[i].size());
    const int out = static_cast<int>(l.net.out_edges(l.nodes[i]).size());
    fns.emplace(l.nodes[i], forwarding_node(field, in, out, 0));
    blocks.push_back({"idle V" + std::to_string(i + 1), {l.nodes[i]}, l.positions[i],
                      {Word(l.positions[i].size(), 0)}, nullptr});
  }

  TerminalDecoder decoder(const OuterCode& outer) const {
    auto recs = recoveries;
    return [recs, outer](VertexId, std::span<const Symbol> received) -> std::optional<Word> {
      Word message;
      for (const Recovery& r : recs) {
        Word part;
        for (int p : r.received) part.push_back(received[static_cast<std::size_t>(p)]);
        if (r.rs) {
          auto m = r.rs->decode(part);
          if (!m) return std::nullopt;
          part = *m;
        }
        message.insert(message.end(), part.begin(), part.end());
      }
      return outer.encode(message);
    };
  }
};

void require_lengths(unsigned q, int longest) {
  if (longest > static_cast<int>(q))
    throw FieldTooSmallError(q, next_prime_power(static_cast<unsigned>(longest)));
}

std::uint64_t checked_size(unsigned q, int k) {
  auto s = word_space_size(q, static_cast<std::size_t>(std::max(k, 0)));
  if (!s) throw Error(Errc::DomainTooLarge, "code size does not fit 64 bits");
  return *s;
}

}  // namespace

Scheme scheme_thm61(std::span<const int> a, std::span<const int> b, int t, unsigned q) {
  if (a.size() != b.size() || a.empty()) throw Error(Errc::NotTwoLevel, "degree lists");
  if (t < 0) throw Error(Errc::ParameterOutOfRange, "negative adversary power");
  TwoLevelLayout l = layout(a, b);
  PartitionProfile p = partition_profile(a, b, t);
  const bool branch_x = p.x >= p.y;

  auto member = [](const std::vector<int>& set, int i) { return std::find(set.begin(), set.end(), i) != set.end(); };
  std::vector<std::size_t> fw_nodes;
  std::vector<int> fw_used;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const int idx = static_cast<int>(i);
    if (member(p.i2, idx) || (!branch_x && member(p.i3, idx))) {
      fw_nodes.push_back(i);
      fw_used.push_back(member(p.i2, idx) ? a[i] : b[i]);
    }
  }
  int longest = 0;
  int fw_len = 0;
  for (int u : fw_used) fw_len += u;
  if (fw_len - 2 * t > 0) longest = fw_len;
  for (int i : p.i1) longest = std::max(longest, b[static_cast<std::size_t>(i)] + 2 * t);
  if (branch_x)
    for (int i : p.i3_tilde) longest = std::max(longest, a[static_cast<std::size_t>(i)]);
  if (!prime_power(q)) throw Error(Errc::NotPrimePower, std::to_string(q));
  require_lengths(q, longest);

  Field field(q);
  ProductBuilder pb{field, l, t, {}, {}, {}, {}};
  for (std::size_t i = 0; i < a.size(); ++i) {
    const int idx = static_cast<int>(i);
    const std::string tag = "V" + std::to_string(i + 1);
    if (member(p.i1, idx)) pb.decoding(i, b[i] + 2 * t, b[i], "I1 " + tag);
    else if (branch_x && member(p.i3_tilde, idx)) pb.decoding(i, a[i], a[i] - 2 * t, "I3~ " + tag);
    else if (!member(p.i2, idx) && branch_x) pb.idle(i);
  }
  if (!fw_nodes.empty()) pb.forwarding(fw_nodes, fw_used, branch_x ? "I2 forwarding" : "I2+I3 forwarding");

  OuterCode outer = OuterCode::product(field, l.length, pb.segments);
  const int k = outer.dimension();
  Scheme s{"thm61", l.net, q, t, outer, NetworkCode(l.net, q, std::move(pb.fns)), checked_size(q, k),
           {{"a", std::vector<int>(a.begin(), a.end())}, {"b", std::vector<int>(b.begin(), b.end())},
            {"t", {t}}, {"q", {static_cast<int>(q)}}},
           pb.decoder(outer), std::move(pb.blocks)};
  return s;
}

Scheme scheme_prop63(std::span<const int> a, std::span<const int> b, int t, unsigned q) {
  if (a.size() != b.size() || a.empty()) throw Error(Errc::NotTwoLevel, "degree lists");
  if (t < 0) throw Error(Errc::ParameterOutOfRange, "negative adversary power");
  TwoLevelLayout l = layout(a, b);
  std::vector<std::size_t> members;
  std::vector<int> used;
  int n = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    members.push_back(i);
    used.push_back(std::min(a[i], b[i]));
    n += used.back();
  }
  if (!prime_power(q)) throw Error(Errc::NotPrimePower, std::to_string(q));
  if (n - 2 * t > 0) require_lengths(q, n);
  Field field(q);
  ProductBuilder pb{field, l, t, {}, {}, {}, {}};
  pb.forwarding(members, used, "forwarding");
  // Keep the trimmed lines forwarding even when the rate is zero.
  if (n - 2 * t <= 0) {
    pb.fns.clear();
    for (std::size_t i = 0; i < a.size(); ++i)
      pb.fns.emplace(l.nodes[i], forwarding_node(field, a[i], b[i], used[i]));
  }
  OuterCode outer = OuterCode::product(field, l.length, pb.segments);
  Scheme s{"prop63", l.net, q, t, outer, NetworkCode(l.net, q, std::move(pb.fns)), checked_size(q, outer.dimension()),
           {{"a", std::vector<int>(a.begin(), a.end())}, {"b", std::vector<int>(b.begin(), b.end())},
            {"t", {t}}, {"q", {static_cast<int>(q)}}},
           pb.decoder(outer), std::move(pb.blocks)};
  return s;
}

std::vector<std::string> scheme_names() {
  return {"diamond", "mirrored_diamond", "a2", "c_t", "d_t", "thm61", "prop63", "opening_network"};
}

Scheme build_scheme(const std::string& name, const std::map<std::string, std::vector<int>>& params) {
  auto scalar = [&](const char* key, std::optional<int> fallback = std::nullopt) {
    auto it = params.find(key);
    if (it == params.end() || it->second.size() != 1) {
      if (fallback) return *fallback;
      throw Error(Errc::InvalidInput, std::string("scheme ") + name + " needs --" + key);
    }
    return it->second.front();
  };
  auto list = [&](const char* key) {
    auto it = params.find(key);
    if (it == params.end() || it->second.empty())
      throw Error(Errc::InvalidInput, std::string("scheme ") + name + " needs --" + key);
    return it->second;
  };
  auto alphabet = [&] {
    int q = scalar("q");
    if (q < 2 || q > 256) throw Error(Errc::ParameterOutOfRange, "alphabet size must be in [2,256]");
    return static_cast<unsigned>(q);
  };
  if (name == "diamond") return scheme_diamond(alphabet());
  if (name == "mirrored_diamond") return scheme_mirrored_diamond(alphabet());
  if (name == "a2") return scheme_a2(alphabet());
  if (name == "c_t") return scheme_c_t(alphabet(), scalar("t"));
  if (name == "d_t") return scheme_d_t(alphabet(), scalar("t"));
  if (name == "opening_network") return scheme_opening_network(alphabet());
  if (name == "thm61" || name == "prop63") {
    auto a = list("a"), b = list("b");
    const int t = scalar("t");
    return name == "thm61" ? scheme_thm61(a, b, t, alphabet()) : scheme_prop63(a, b, t, alphabet());
  }
  throw Error(Errc::InvalidInput, "unknown scheme '" + name + "'");
}

// ---------------------------------------------------------------------------------------------
// Verification

namespace {

struct StopEnumeration {};

// Owner table keyed by terminal output: dense when the output space is small.
class OwnerTable {
 public:
  static constexpr std::uint32_t kNone = 0xffffffffu;
  explicit OwnerTable(std::optional<std::uint64_t> outputs) {
    if (outputs && *outputs <= (std::uint64_t{1} << 26)) dense_.assign(*outputs, kNone);
  }
  // Previous owner, or kNone after recording `owner`.
  std::uint32_t claim(std::uint64_t key, std::uint32_t owner) {
    if (!dense_.empty()) {
      std::uint32_t& slot = dense_[key];
      if (slot == kNone || slot == owner) {
        slot = owner;
        return kNone;
      }
      return slot;
    }
    auto [it, fresh] = sparse_.try_emplace(key, owner);
    return fresh || it->second == owner ? kNone : it->second;
  }

 private:
  std::vector<std::uint32_t> dense_;
  std::unordered_map<std::uint64_t, std::uint32_t> sparse_;
};

ErrorPattern to_pattern(std::span<const std::pair<EdgeId, Symbol>> err) {
  return ErrorPattern{{err.begin(), err.end()}};
}

ErrorPattern find_pattern(const Scheme& s, int t, const Word& x, VertexId terminal, std::uint64_t key) {
  Evaluator ev(s.network, s.code);
  Word values(static_cast<std::size_t>(s.network.edge_count()));
  ErrorPattern found;
  try {
    for_each_error_pattern(s.network.vulnerable(), t, s.q, [&](std::span<const std::pair<EdgeId, Symbol>> err) {
      ev.run(x, err, values);
      if (ev.terminal_output(values, terminal) == key) {
        found = to_pattern(err);
        throw StopEnumeration{};
      }
    });
  } catch (const StopEnumeration&) {
  }
  return found;
}

Word received_at(const Network& net, std::span<const Symbol> values, VertexId terminal) {
  Word r;
  for (EdgeId e : net.in_edges(terminal)) r.push_back(values[static_cast<std::size_t>(e)]);
  return r;
}

void verify_exhaustive(const Scheme& s, int t, VerificationReport& rep) {
  const Network& net = s.network;
  rep.mode = "exhaustive";
  if (s.outer.size() >= OwnerTable::kNone) throw Error(Errc::DomainTooLarge, "outer code too large for exhaustive check");
  std::vector<OwnerTable> owners;
  for (VertexId term : net.terminals()) {
    auto outputs = word_space_size(s.q, net.in_edges(term).size());
    if (!outputs) throw Error(Errc::DomainTooLarge, "terminal output space does not fit 64 bits");
    owners.emplace_back(outputs);
  }
  Evaluator ev(net, s.code);
  Word values(static_cast<std::size_t>(net.edge_count()));
  bool decoder_ok = true;
  std::string decoder_note;
  try {
    for (std::uint64_t xi = 0; xi < s.outer.size(); ++xi) {
      const Word x = s.outer.word(xi);
      for_each_error_pattern(net.vulnerable(), t, s.q, [&](std::span<const std::pair<EdgeId, Symbol>> err) {
        ev.run(x, err, values);
        ++rep.evaluations;
        for (std::size_t k = 0; k < owners.size(); ++k) {
          const VertexId term = net.terminals()[k];
          const std::uint64_t key = ev.terminal_output(values, term);
          const std::uint32_t prev = owners[k].claim(key, static_cast<std::uint32_t>(xi));
          if (prev != OwnerTable::kNone) {
            Collision c;
            c.terminal = term;
            c.x = s.outer.word(prev);
            c.x_other = x;
            c.error = find_pattern(s, t, c.x, term, key);
            c.error_other = to_pattern(err);
            rep.witness = std::move(c);
            throw StopEnumeration{};
          }
          if (s.decoder && decoder_ok) {
            auto d = s.decoder(term, received_at(net, values, term));
            if (!d || *d != x) {
              decoder_ok = false;
              decoder_note = "decoder disagrees at " + net.name(term) + " for word " + word_string(x, s.q);
            }
          }
        }
      });
    }
  } catch (const StopEnumeration&) {
  }
  rep.decoder_checked = static_cast<bool>(s.decoder);
  rep.passed = !rep.witness && decoder_ok;
  if (!decoder_ok) rep.note = decoder_note;
}

template <typename Key, typename KeyFn>
bool join_block(const VerificationBlock& blk, const std::vector<int>& local_vulnerable, int t, unsigned q,
                KeyFn&& key_of, std::uint64_t& evaluations) {
  std::unordered_map<Key, std::uint32_t> owner;
  std::vector<std::pair<EdgeId, Symbol>> slots;
  Word y;
  bool ok = true;
  try {
    for (std::uint32_t wi = 0; wi < blk.words.size(); ++wi) {
      const Word& w = blk.words[wi];
      for_each_error_pattern(local_vulnerable, t, q, [&](std::span<const std::pair<EdgeId, Symbol>> err) {
        y = w;
        for (const auto& [pos, val] : err) y[static_cast<std::size_t>(pos)] = val;
        ++evaluations;
        auto [it, fresh] = owner.try_emplace(key_of(y), wi);
        if (!fresh && it->second != wi) {
          ok = false;
          throw StopEnumeration{};
        }
      });
    }
  } catch (const StopEnumeration&) {
  }
  return ok;
}

BlockOutcome verify_block(const Scheme& s, const VerificationBlock& blk, int t, const VerificationOptions& opt) {
  const Network& net = s.network;
  BlockOutcome out{blk.label, "", false, 0};
  auto src = net.out_edges(net.source());
  std::vector<int> local_vulnerable;
  for (std::size_t i = 0; i < blk.positions.size(); ++i)
    if (net.is_vulnerable(src[static_cast<std::size_t>(blk.positions[i])])) local_vulnerable.push_back(static_cast<int>(i));
  const std::uint64_t patterns = error_pattern_count(local_vulnerable.size(), t, s.q);
  const bool fits = !blk.words.empty() && blk.words.size() * patterns <= opt.block_budget;

  if (fits || !blk.algebraic) {
    out.mode = "exhaustive";
    if (blk.words.empty()) return out;
    // Node inputs as indices into the block-local word.
    std::vector<std::vector<int>> local_in;
    int out_len = 0;
    for (VertexId v : blk.nodes) {
      std::vector<int> li;
      for (EdgeId e : net.in_edges(v)) {
        const int pos = static_cast<int>(std::find(src.begin(), src.end(), e) - src.begin());
        li.push_back(static_cast<int>(std::find(blk.positions.begin(), blk.positions.end(), pos) - blk.positions.begin()));
      }
      local_in.push_back(std::move(li));
      out_len += s.code.at(v).out_arity();
    }
    Word in, outw, all;
    auto outputs = [&](const Word& y) -> const Word& {
      all.clear();
      for (std::size_t k = 0; k < blk.nodes.size(); ++k) {
        in.clear();
        for (int li : local_in[k]) in.push_back(y[static_cast<std::size_t>(li)]);
        const NodeFunction& f = s.code.at(blk.nodes[k]);
        outw.assign(static_cast<std::size_t>(f.out_arity()), 0);
        f.apply(in, outw);
        all.insert(all.end(), outw.begin(), outw.end());
      }
      return all;
    };
    if (word_space_size(s.q, static_cast<std::size_t>(out_len)))
      out.passed = join_block<std::uint64_t>(blk, local_vulnerable, t, s.q,
                                             [&](const Word& y) { return word_index(outputs(y), s.q); }, out.evaluations);
    else
      out.passed = join_block<std::string>(blk, local_vulnerable, t, s.q,
                                           [&](const Word& y) {
                                             const Word& o = outputs(y);
                                             return std::string(o.begin(), o.end());
                                           },
                                           out.evaluations);
    return out;
  }
  out.mode = "algebraic";
  out.passed = blk.algebraic->radius() >= t && blk.algebraic->injective();
  out.evaluations = blk.algebraic->leaders();
  return out;
}

bool blocks_applicable(const Scheme& s, std::string& why) {
  const Network& net = s.network;
  if (net.terminals().size() != 1) {
    why = "block mode needs a single terminal";
    return false;
  }
  auto src = net.out_edges(net.source());
  for (EdgeId e : net.vulnerable())
    if (std::find(src.begin(), src.end(), e) == src.end()) {
      why = "block mode needs errors confined to source edges";
      return false;
    }
  std::vector<VertexId> covered;
  for (const auto& b : s.blocks) covered.insert(covered.end(), b.nodes.begin(), b.nodes.end());
  std::sort(covered.begin(), covered.end());
  std::vector<VertexId> all(net.intermediates().begin(), net.intermediates().end());
  std::sort(all.begin(), all.end());
  if (covered != all) {
    why = "blocks do not partition the intermediate nodes";
    return false;
  }
  if (!s.decoder) {
    why = "block mode needs a terminal decoder for sampling";
    return false;
  }
  return true;
}

void verify_blocks(const Scheme& s, int t, const VerificationOptions& opt, VerificationReport& rep) {
  rep.mode = "blocks";
  std::string why;
  if (!blocks_applicable(s, why)) {
    rep.mode = "skipped";
    rep.note = why;
    return;
  }
  bool ok = true;
  for (const auto& blk : s.blocks) {
    rep.blocks.push_back(verify_block(s, blk, t, opt));
    rep.evaluations += rep.blocks.back().evaluations;
    ok = ok && rep.blocks.back().passed;
  }
  // Sampled end-to-end decoding, and a check that codewords project into the block word lists.
  const Network& net = s.network;
  std::mt19937_64 rng(opt.seed);
  std::vector<EdgeId> vul(net.vulnerable().begin(), net.vulnerable().end());
  Evaluator ev(net, s.code);
  Word values(static_cast<std::size_t>(net.edge_count()));
  std::vector<std::unordered_set<std::string>> listed(s.blocks.size());
  for (std::size_t b = 0; b < s.blocks.size(); ++b)
    for (const Word& w : s.blocks[b].words) listed[b].insert(std::string(w.begin(), w.end()));
  for (std::size_t k = 0; k < opt.samples && ok; ++k) {
    const std::uint64_t xi = std::uniform_int_distribution<std::uint64_t>(0, s.outer.size() - 1)(rng);
    const Word x = s.outer.word(xi);
    for (std::size_t b = 0; b < s.blocks.size(); ++b) {
      if (listed[b].empty()) continue;
      std::string proj;
      for (int p : s.blocks[b].positions) proj.push_back(static_cast<char>(x[static_cast<std::size_t>(p)]));
      if (!listed[b].count(proj)) {
        ok = false;
        rep.note = "codeword leaves the word list of block " + s.blocks[b].label;
      }
    }
    std::shuffle(vul.begin(), vul.end(), rng);
    const int weight = std::uniform_int_distribution<int>(0, std::min<int>(t, static_cast<int>(vul.size())))(rng);
    std::vector<std::pair<EdgeId, Symbol>> err;
    for (int i = 0; i < weight; ++i)
      err.emplace_back(vul[static_cast<std::size_t>(i)],
                       static_cast<Symbol>(std::uniform_int_distribution<unsigned>(0, s.q - 1)(rng)));
    std::sort(err.begin(), err.end());
    ev.run(x, err, values);
    ++rep.evaluations;
    const VertexId term = net.terminals().front();
    auto d = s.decoder(term, received_at(net, values, term));
    if (!d || *d != x) {
      ok = false;
      rep.note = "sampled decode failed for word " + word_string(x, s.q);
    }
  }
  rep.decoder_checked = true;
  rep.passed = ok;
}

}  // namespace

VerificationReport verify(const Scheme& s, const VerificationOptions& opt) {
  VerificationReport rep;
  rep.t = opt.t < 0 ? s.t : opt.t;
  rep.code_size = s.outer.size();
  rep.rate = std::log(static_cast<double>(rep.code_size)) / std::log(static_cast<double>(s.q));
  const std::uint64_t patterns = error_pattern_count(s.network.vulnerable().size(), rep.t, s.q);
  const bool small = s.outer.size() <= opt.exhaustive_budget / std::max<std::uint64_t>(patterns, 1);
  if (small && !opt.force_blocks) verify_exhaustive(s, rep.t, rep);
  else if (!s.blocks.empty()) verify_blocks(s, rep.t, opt, rep);
  else {
    rep.mode = "skipped";
    rep.note = "exhaustive check exceeds the budget and the scheme has no block structure";
  }
  return rep;
}

}  // namespace advnet
