#include "advnet/instances.hpp"

#include "advnet/error.hpp"

namespace advnet {

namespace {

RawNetwork opening_raw(std::vector<EdgeId> vulnerable) {
  return {{"S", "V1", "V2", "V3", "V4", "T1", "T2"},
          {{"S", "V1"}, {"S", "V1"}, {"S", "V2"}, {"S", "V2"}, {"V1", "T1"}, {"V1", "V3"},
           {"V2", "V3"}, {"V2", "T2"}, {"V3", "V4"}, {"V4", "T1"}, {"V4", "T2"}},
          "S",
          {"T1", "T2"},
          std::move(vulnerable)};
}

RawNetwork wide_relay_raw() {
  RawNetwork r{{"S", "V1", "V2", "V3", "V4", "T1", "T2"}, {}, "S", {"T1", "T2"}, {0, 6, 7, 8, 9}};
  auto add = [&](const char* tail, const char* head, int copies) {
    for (int i = 0; i < copies; ++i) r.edges.emplace_back(tail, head);
  };
  add("S", "T1", 1);
  add("S", "V1", 2);
  add("S", "V2", 2);
  add("S", "T2", 1);
  add("V1", "V3", 2);
  add("V2", "V3", 2);
  add("V3", "V4", 3);
  add("V4", "T1", 3);
  add("V4", "T2", 3);
  return r;
}

LevelMatrices hexagon_levels() {
  IntMatrix middle(6, 4);
  for (int i = 0; i < 4; ++i) middle(i, 0) = middle(i, 1) = 1;
  for (int i = 4; i < 6; ++i) middle(i, 2) = middle(i, 3) = 1;
  return {{IntMatrix(1, 6, std::vector<int>(6, 1)), middle, IntMatrix(4, 1, std::vector<int>(4, 1))}};
}

}  // namespace

std::vector<std::string> instance_names() {
  return {"opening",        "opening_all_vulnerable", "relay_bypass",        "diamond",
          "mirrored_diamond", "hexagon_3level",        "wide_relay",          "three_node_two_level",
          "five_node_two_level"};
}

Instance two_level_instance(std::string name, std::span<const int> a, std::span<const int> b, int t, unsigned q) {
  return {std::move(name), simple_two_level(a, b).to_raw(), q, t};
}

Instance family_instance(FamilyMember m, unsigned q) {
  auto d = family_degrees(m);
  return two_level_instance(std::string("family_") + family_letter(m.family) + std::to_string(m.param), d.a, d.b,
                            family_adversary(m), q);
}

Instance builtin_instance(std::string_view name) {
  if (name == "opening") return {"opening", opening_raw({0, 1, 2, 3, 5, 6, 8}), 3, 1};
  if (name == "opening_all_vulnerable")
    return {"opening_all_vulnerable", opening_raw({0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10}), 3, 1};
  if (name == "relay_bypass")
    return {"relay_bypass",
            {{"S", "V1", "V2", "T"}, {{"S", "V1"}, {"S", "T"}, {"S", "V2"}, {"V1", "T"}, {"V2", "T"}}, "S", {"T"}, {0, 1, 2}},
            2,
            1};
  if (name == "diamond") {
    const int a[] = {1, 2}, b[] = {1, 1};
    return two_level_instance("diamond", a, b, 1, 2);
  }
  if (name == "mirrored_diamond") {
    const int a[] = {2, 2}, b[] = {1, 1};
    return two_level_instance("mirrored_diamond", a, b, 1, 2);
  }
  if (name == "hexagon_3level") return {"hexagon_3level", from_level_matrices(hexagon_levels()).to_raw(), 2, 1};
  if (name == "wide_relay") return {"wide_relay", wide_relay_raw(), 3, 1};
  if (name == "three_node_two_level") {
    const int a[] = {2, 5, 6}, b[] = {2, 2, 2};
    return two_level_instance("three_node_two_level", a, b, 2, 11);
  }
  if (name == "five_node_two_level") {
    const int a[] = {12, 8, 2, 2, 1}, b[] = {5, 2, 4, 3, 1};
    return two_level_instance("five_node_two_level", a, b, 3, 11);
  }
  throw Error(Errc::InvalidInput, "unknown instance '" + std::string(name) + "'");
}

}  // namespace advnet
