#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "advnet/netcode.hpp"
#include "advnet/netgraph.hpp"

namespace advnet {

// Node classes of a simple 2-level network under t errors on the source edges.
struct PartitionProfile {
  std::vector<int> i1;        // a_i >= b_i + 2t
  std::vector<int> i2;        // a_i <= b_i
  std::vector<int> i3;        // everything else
  std::vector<int> i3_tilde;  // members of i3 with a_i > 2t
  int x = 0;
  int y = 0;
};

PartitionProfile partition_profile(std::span<const int> a, std::span<const int> b, int t);

struct BoundReport {
  std::string name;
  double value = 0;     // rate in alphabet symbols
  bool strict = false;  // the capacity is strictly below `value`
  bool exact = false;   // the capacity equals `value`
  bool lower = false;   // a lower bound rather than an upper bound
  std::string rule;
  // Witness, whichever applies.
  std::optional<EdgeSet> cut;
  std::optional<VertexId> terminal;
  std::optional<std::vector<int>> partition;  // node indices contributing b_i
  std::optional<PartitionProfile> profile;
  std::vector<std::string> assumptions;

  std::string display() const;  // "< 3", "= 0.6309", "<= 7", ">= 2"
};

// True when `x` is a tighter upper bound than `y`.
bool tighter(const BoundReport& x, const BoundReport& y);

BoundReport singleton_bound(const Network& net, int t);
BoundReport singleton_2level(std::span<const int> a, std::span<const int> b, int t);
BoundReport lower_thm61(std::span<const int> a, std::span<const int> b, int t);
BoundReport lower_prop63(std::span<const int> a, std::span<const int> b, int t);
BoundReport full_adversary_value(const Network& net, int t);

enum class Family { A, B, C, D, E };

struct FamilyMember {
  Family family = Family::A;
  int param = 1;
  friend bool operator==(const FamilyMember&, const FamilyMember&) = default;
};

char family_letter(Family f);
Family parse_family(std::string_view text);  // throws UnknownFamily
TwoLevelDegrees family_degrees(FamilyMember m);  // throws ParameterOutOfRange
int family_adversary(FamilyMember m);           // the t the family is studied at
Network family_network(FamilyMember m);
// All family members with these degrees and adversary power (several for the Diamond).
std::vector<FamilyMember> match_family(std::span<const int> a, std::span<const int> b, int t);

BoundReport family_strict_upper(FamilyMember m, unsigned q);

struct PackingReport {
  double lhs = 0;
  double rhs = 0;
  bool holds = false;
};

// Both checks need a simple 2-level network. The head is the first r nodes (in intermediate
// order) with a_i <= b_i and an injective function; fewer than r such nodes throws.
// Only r = n-1 gives a necessary condition in general: a tail of two or more nodes shares one
// radius, which overcounts the image of the ball.
PackingReport first_packing_check(const Network& net, const NetworkCode& code, std::span<const Word> outer,
                                  int t, int r);
PackingReport second_packing_check(const Network& net, const NetworkCode& code, std::span<const Word> outer,
                                   int t, int r);

// |F^{-1}(F(B_t(x)))| for the whole 2-level code, and the product of the per-node factors.
std::uint64_t joint_preimage_size(const Network& net, const NetworkCode& code, std::span<const Symbol> x, int t);
std::uint64_t coordinate_preimage_product(const Network& net, const NetworkCode& code, std::span<const Symbol> x,
                                          int t);

double binary_entropy(double p);
// Random-noise level networks; generalization and scenario are 1 or 2.
double bsc_level_capacity(int generalization, int scenario, int n, double p);

struct CurveRow {
  double p;
  double scenario1;
  double scenario2;
  double gap() const { return scenario1 - scenario2; }
};
std::vector<CurveRow> bsc_curves(int generalization, int n, double pstep);
std::string curves_csv(std::span<const CurveRow> rows);

}  // namespace advnet
