#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "advnet/gf.hpp"
#include "advnet/netcode.hpp"
#include "advnet/netgraph.hpp"

namespace advnet {

// A set of source words, either listed or generated as a product of linear segments.
class OuterCode {
 public:
  // One linear piece: message symbols [offset, offset+k) encoded by `generator` (k x n)
  // onto source positions `positions`.
  struct Segment {
    std::vector<int> positions;
    FieldMatrix generator;
  };

  OuterCode() = default;
  static OuterCode listed(unsigned q, std::size_t length, std::vector<Word> words);
  static OuterCode product(const Field& field, std::size_t length, std::vector<Segment> segments);

  std::uint64_t size() const noexcept { return size_; }
  std::size_t length() const noexcept { return length_; }
  unsigned alphabet() const noexcept { return q_; }
  bool is_listed() const noexcept { return segments_.empty(); }
  const std::vector<Segment>& segments() const noexcept { return segments_; }
  int dimension() const noexcept { return dimension_; }

  Word word(std::uint64_t i) const;
  Word encode(std::span<const Symbol> message) const;
  // Listed form; throws DomainTooLarge above `limit` words.
  std::vector<Word> words(std::uint64_t limit = 1u << 20) const;

 private:
  unsigned q_ = 2;
  std::size_t length_ = 0;
  std::uint64_t size_ = 0;
  int dimension_ = 0;
  std::vector<Word> listed_;
  std::optional<Field> field_;
  std::vector<Segment> segments_;
};

// Part of a 2-level scheme that can be checked on its own: its nodes read only `positions`
// and every codeword restricted to `positions` lies in `words`.
struct VerificationBlock {
  std::string label;
  std::vector<VertexId> nodes;
  std::vector<int> positions;
  std::vector<Word> words;
  // When set, the block is correct whenever the leader table is injective on the radius.
  std::shared_ptr<const SyndromeDecoder> algebraic;
};

// Decoded source word at a terminal from the values on its in-edges.
using TerminalDecoder = std::function<std::optional<Word>(VertexId terminal, std::span<const Symbol> received)>;

struct Scheme {
  std::string name;
  Network network;
  unsigned q = 2;
  int t = 0;
  OuterCode outer;
  NetworkCode code;
  std::uint64_t claimed_size = 0;
  std::map<std::string, std::vector<int>> params;  // constructor arguments, for rebuilding
  TerminalDecoder decoder;
  std::vector<VerificationBlock> blocks;

  double claimed_rate() const;
};

Scheme scheme_diamond(unsigned q);
Scheme scheme_mirrored_diamond(unsigned q);
Scheme scheme_a2(unsigned q);
Scheme scheme_c_t(unsigned q, int t);
Scheme scheme_d_t(unsigned q, int t);
Scheme scheme_thm61(std::span<const int> a, std::span<const int> b, int t, unsigned q);
Scheme scheme_prop63(std::span<const int> a, std::span<const int> b, int t, unsigned q);
Scheme scheme_opening_network(unsigned q);

// Rebuilds a scheme from its name and constructor parameters.
Scheme build_scheme(const std::string& name, const std::map<std::string, std::vector<int>>& params);
std::vector<std::string> scheme_names();

// Terminal-side label of each shell of the wide relay in the C_t scheme.
struct ShellLabel {
  int symbol;  // j, or -1 for the leftover set
  int radius;  // i
};
ShellLabel c_t_shell(unsigned q, int t, std::span<const Symbol> v2_input);

struct Collision {
  VertexId terminal = 0;
  Word x, x_other;
  ErrorPattern error, error_other;
};

struct VerificationOptions {
  int t = -1;                               // -1: the scheme's own t
  std::uint64_t exhaustive_budget = 60'000'000;  // codewords x error patterns
  std::uint64_t block_budget = 20'000'000;
  std::size_t samples = 2000;              // end-to-end decode samples in block mode
  std::uint64_t seed = 1;
  bool force_blocks = false;
};

struct BlockOutcome {
  std::string label;
  std::string mode;  // "exhaustive" or "algebraic"
  bool passed = false;
  std::uint64_t evaluations = 0;
};

struct VerificationReport {
  bool passed = false;
  std::string mode;  // "exhaustive", "blocks" or "skipped"
  int t = 0;
  std::uint64_t code_size = 0;
  double rate = 0;
  std::uint64_t evaluations = 0;
  bool decoder_checked = false;
  std::optional<Collision> witness;
  std::vector<BlockOutcome> blocks;
  std::string note;
};

VerificationReport verify(const Scheme& s, const VerificationOptions& options = {});

}  // namespace advnet
