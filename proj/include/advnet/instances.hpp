#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "advnet/bounds.hpp"
#include "advnet/netgraph.hpp"

namespace advnet {

// A network together with the alphabet size and adversary power it is studied at.
struct Instance {
  std::string name;
  RawNetwork raw;
  unsigned q = 2;
  int t = 0;
};

std::vector<std::string> instance_names();
Instance builtin_instance(std::string_view name);  // throws InvalidInput
Instance family_instance(FamilyMember m, unsigned q);
Instance two_level_instance(std::string name, std::span<const int> a, std::span<const int> b, int t, unsigned q);

}  // namespace advnet
