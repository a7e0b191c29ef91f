#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "advnet/error.hpp"
#include "advnet/netcode.hpp"
#include "advnet/netgraph.hpp"

namespace advnet {

struct SearchBudget {
  std::uint64_t max_codes = 5'000'000;  // network codes examined
  std::size_t max_inputs = 4096;         // source words per channel
  double time_limit_seconds = 0;         // 0: no limit
  bool symmetry = true;                  // canonical symbol labels on every edge out of a node
  unsigned threads = 0;                  // 0: hardware concurrency
  bool greedy = false;                   // greedy independent sets; the result is a lower bound only
};

struct CapacityCertificate {
  std::string instance_key;
  unsigned q = 2;
  int t = 0;
  bool linear = false;
  std::uint64_t max_code_size = 0;
  bool exhaustive = false;
  std::uint64_t codes_examined = 0;
  std::uint64_t codes_total = 0;  // size of the (reduced) enumeration space
  std::map<VertexId, std::vector<Symbol>> tables;  // witness network code, table form
  std::vector<Word> outer;                          // witness outer code
  double rate() const;
};

class BudgetExceededError : public Error {
 public:
  BudgetExceededError(const std::string& what, CapacityCertificate best)
      : Error(Errc::BudgetExceeded, what), best_(std::move(best)) {}
  const CapacityCertificate& best() const noexcept { return best_; }

 private:
  CapacityCertificate best_;
};

// Number of network codes the search would examine.
std::uint64_t search_space_size(const Network& net, unsigned q, bool linear, bool symmetry);

CapacityCertificate exact_capacity(const Network& net, unsigned q, int t, const SearchBudget& budget = {});
CapacityCertificate exact_linear_capacity(const Network& net, unsigned q, int t, const SearchBudget& budget = {});

// Largest outer code unambiguous at every terminal for a fixed network code.
std::vector<Word> best_code_for(const Network& net, const NetworkCode& code, int t, std::size_t max_inputs = 4096,
                                bool greedy = false);

NetworkCode certificate_code(const Network& net, const CapacityCertificate& cert);

// Stable hash of the instance (topology, vulnerable set, q, t, linear flag), as hex.
std::string instance_key(const Network& net, unsigned q, int t, bool linear);

// Number of restricted-growth strings of the given length over at most q symbols.
std::uint64_t restricted_growth_count(std::size_t length, unsigned q);

}  // namespace advnet
