#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include <json.hpp>

#include "advnet/bounds.hpp"
#include "advnet/instances.hpp"
#include "advnet/reduce.hpp"
#include "advnet/schemes.hpp"
#include "advnet/search.hpp"

namespace advnet {

using Json = nlohmann::ordered_json;

// Instance files: {alphabet, vertices, source, terminals, edges: [[tail, head]...], vulnerable, t}.
Instance parse_instance(const Json& j, std::string name = {});
Json instance_json(const Instance& inst);
Json raw_network_json(const RawNetwork& raw);
RawNetwork parse_raw_network(const Json& j);

Json read_json_file(const std::filesystem::path& path);  // throws InvalidInput
void write_json_file(const std::filesystem::path& path, const Json& j);

// An instance together with its validated network. Edge ids in files and on the command
// line are list indices of the raw description; the network may renumber them.
struct LoadedInstance {
  Instance instance;
  ValidatedNetwork validated;

  const Network& network() const noexcept { return validated.network; }
  EdgeSet to_network(const EdgeSet& raw_ids) const;
  EdgeSet to_raw(const EdgeSet& network_ids) const;
};

LoadedInstance load_instance(const Instance& inst);
LoadedInstance load_instance_file(const std::filesystem::path& path);

// {node: {input word: output word}}
Json network_code_json(const Network& net, const NetworkCode& code);
NetworkCode parse_network_code(const Network& net, unsigned q, const Json& j);

// Constructor parameters always; network-code tables and the outer-code list when both have at
// most `max_entries` rows.
Json scheme_certificate(const Scheme& s, std::uint64_t max_entries = 1u << 16);
// Table certificates rebuild exactly the stored code; parameter-only ones go through build_scheme.
Scheme scheme_from_certificate(const Json& j);

Json verification_json(const VerificationReport& r, const Network& net, unsigned q);
Json bound_json(const BoundReport& b, const LoadedInstance& li);
Json pair_outcome_json(const PairOutcome& p, const LoadedInstance& li);
Json capacity_json(const CapacityCertificate& c, const Network& net);
CapacityCertificate parse_capacity(const Json& j, const Network& net);

// Certificate cache under ADVNET_CACHE_DIR; disabled when the variable is unset.
std::optional<std::filesystem::path> cache_directory();
std::optional<CapacityCertificate> cache_lookup(const std::string& key, const Network& net);
void cache_store(const CapacityCertificate& c, const Network& net);

}  // namespace advnet
