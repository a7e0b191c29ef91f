#include "advnet/io.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>

#include "advnet/error.hpp"

namespace advnet {

namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(Errc::InvalidInput, what); }

template <typename T>
T field(const Json& j, const char* key) {
  if (!j.contains(key)) bad(std::string("missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    bad(std::string("field '") + key + "' has the wrong type");
  }
}

Json edge_list(const EdgeSet& s) { return Json(std::vector<int>(s.begin(), s.end())); }

std::string pattern_string(const ErrorPattern& p, const Network& net) {
  std::string out;
  for (const auto& [e, v] : p.assignments) {
    if (!out.empty()) out += ' ';
    out += std::to_string(e) + "(" + net.name(net.edge(e).tail) + ">" + net.name(net.edge(e).head) + ")=" +
           std::to_string(v);
  }
  return out.empty() ? "none" : out;
}

}  // namespace

RawNetwork parse_raw_network(const Json& j) {
  if (!j.is_object()) bad("network description must be a JSON object");
  RawNetwork raw;
  raw.vertices = field<std::vector<std::string>>(j, "vertices");
  raw.source = field<std::string>(j, "source");
  raw.terminals = field<std::vector<std::string>>(j, "terminals");
  for (const auto& e : field<std::vector<std::vector<std::string>>>(j, "edges")) {
    if (e.size() != 2) bad("each edge must be a [tail, head] pair");
    raw.edges.emplace_back(e[0], e[1]);
  }
  raw.vulnerable = field<std::vector<int>>(j, "vulnerable");
  for (int e : raw.vulnerable)
    if (e < 0 || e >= static_cast<int>(raw.edges.size())) bad("vulnerable edge id " + std::to_string(e) + " out of range");
  return raw;
}

Json raw_network_json(const RawNetwork& raw) {
  Json edges = Json::array();
  for (const auto& [tail, head] : raw.edges) edges.push_back({tail, head});
  return Json{{"vertices", raw.vertices},
              {"source", raw.source},
              {"terminals", raw.terminals},
              {"edges", edges},
              {"vulnerable", raw.vulnerable}};
}

Instance parse_instance(const Json& j, std::string name) {
  Instance inst;
  inst.raw = parse_raw_network(j);
  const int q = field<int>(j, "alphabet");
  if (q < 2 || q > 256) bad("alphabet must be in [2,256]");
  inst.q = static_cast<unsigned>(q);
  inst.t = field<int>(j, "t");
  if (inst.t < 0) bad("t must be non-negative");
  inst.name = j.contains("name") && j["name"].is_string() ? j["name"].get<std::string>() : std::move(name);
  return inst;
}

Json instance_json(const Instance& inst) {
  Json j{{"name", inst.name}, {"alphabet", inst.q}};
  const Json raw = raw_network_json(inst.raw);
  for (const auto& [k, v] : raw.items()) j[k] = v;
  j["t"] = inst.t;
  return j;
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) bad("cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    bad(path.string() + ": " + e.what());
  }
}

void write_json_file(const std::filesystem::path& path, const Json& j) {
  std::ofstream out(path);
  if (!out) bad("cannot write " + path.string());
  out << j.dump(2) << '\n';
}

EdgeSet LoadedInstance::to_network(const EdgeSet& raw_ids) const {
  std::vector<EdgeId> out;
  for (EdgeId e : raw_ids) {
    if (e < 0 || e >= static_cast<int>(validated.edge_map.size())) bad("edge id " + std::to_string(e) + " out of range");
    out.push_back(validated.edge_map[static_cast<std::size_t>(e)]);
  }
  return make_edge_set(std::move(out));
}

EdgeSet LoadedInstance::to_raw(const EdgeSet& network_ids) const {
  std::vector<EdgeId> out;
  for (EdgeId e : network_ids) {
    auto it = std::find(validated.edge_map.begin(), validated.edge_map.end(), e);
    out.push_back(static_cast<EdgeId>(it - validated.edge_map.begin()));
  }
  return make_edge_set(std::move(out));
}

LoadedInstance load_instance(const Instance& inst) { return {inst, validate(inst.raw)}; }

LoadedInstance load_instance_file(const std::filesystem::path& path) {
  return load_instance(parse_instance(read_json_file(path), path.stem().string()));
}

Json network_code_json(const Network& net, const NetworkCode& code) {
  const unsigned q = code.alphabet();
  Json j = Json::object();
  for (VertexId v : net.intermediates()) {
    const NodeFunction& f = code.at(v);
    const auto table = f.tabulate(q);
    const std::size_t in = static_cast<std::size_t>(f.in_arity());
    const std::size_t out = static_cast<std::size_t>(f.out_arity());
    Json node = Json::object();
    const std::size_t rows = out ? table.size() / out : *word_space_size(q, in);
    for (std::size_t r = 0; r < rows; ++r) {
      std::span<const Symbol> y(table.data() + r * out, out);
      node[word_string(word_at(r, q, in), q)] = word_string(y, q);
    }
    j[net.name(v)] = std::move(node);
  }
  return j;
}

NetworkCode parse_network_code(const Network& net, unsigned q, const Json& j) {
  if (!j.is_object()) bad("network code must be a JSON object");
  std::map<VertexId, NodeFunction> fns;
  for (VertexId v : net.intermediates()) {
    const std::string& name = net.name(v);
    if (!j.contains(name)) bad("network code lacks node " + name);
    const Json& node = j[name];
    const std::size_t in = net.in_edges(v).size(), out = net.out_edges(v).size();
    auto rows = word_space_size(q, in);
    if (!rows || *rows != node.size()) bad("node " + name + " table must list every input word");
    std::vector<Symbol> entries(*rows * out);
    for (const auto& [key, value] : node.items()) {
      Word x = parse_word(key, q);
      if (!value.is_string()) bad("node " + name + " outputs must be strings");
      Word y = parse_word(value.get<std::string>(), q);
      if (x.size() != in || y.size() != out) bad("node " + name + " entry " + key + " has the wrong length");
      std::copy(y.begin(), y.end(), entries.begin() + static_cast<std::ptrdiff_t>(word_index(x, q) * out));
    }
    fns.emplace(v, NodeFunction::table(static_cast<int>(in), static_cast<int>(out), q, std::move(entries)));
  }
  return NetworkCode(net, q, std::move(fns));
}

Json scheme_certificate(const Scheme& s, std::uint64_t max_entries) {
  Json params = Json::object();
  for (const auto& [k, v] : s.params) params[k] = v.size() == 1 && k != "a" && k != "b" ? Json(v.front()) : Json(v);
  Json j{{"scheme", s.name},
         {"params", params},
         {"alphabet", s.q},
         {"t", s.t},
         {"claimed_size", s.claimed_size},
         {"rate", s.claimed_rate()},
         {"network", raw_network_json(s.network.to_raw())}};
  bool small = s.outer.size() <= max_entries;
  for (VertexId v : s.network.intermediates()) {
    auto rows = word_space_size(s.q, s.network.in_edges(v).size());
    small = small && rows && *rows <= max_entries;
  }
  if (small) {
    j["network_code"] = network_code_json(s.network, s.code);
    Json outer = Json::array();
    for (const Word& w : s.outer.words()) outer.push_back(word_string(w, s.q));
    j["outer"] = outer;
  }
  return j;
}

Scheme scheme_from_certificate(const Json& j) {
  if (!j.is_object()) bad("certificate must be a JSON object");
  const std::string name = field<std::string>(j, "scheme");
  std::map<std::string, std::vector<int>> params;
  if (j.contains("params"))
    for (const auto& [k, v] : j["params"].items()) {
      try {
        params[k] = v.is_array() ? v.get<std::vector<int>>() : std::vector<int>{v.get<int>()};
      } catch (const nlohmann::json::exception&) {
        bad("parameter '" + k + "' must be an integer or integer list");
      }
    }
  if (!j.contains("network_code")) return build_scheme(name, params);

  const int q = field<int>(j, "alphabet");
  if (q < 2 || q > 256) bad("alphabet must be in [2,256]");
  const auto alphabet = static_cast<unsigned>(q);
  Network net = validate(parse_raw_network(field<Json>(j, "network"))).network;
  NetworkCode code = parse_network_code(net, alphabet, j["network_code"]);
  const std::size_t len = net.out_edges(net.source()).size();
  std::vector<Word> words;
  for (const auto& w : field<std::vector<std::string>>(j, "outer")) {
    words.push_back(parse_word(w, alphabet));
    if (words.back().size() != len) bad("outer codeword " + w + " has the wrong length");
  }
  OuterCode outer = OuterCode::listed(alphabet, len, std::move(words));
  const std::uint64_t claimed = j.value("claimed_size", outer.size());
  Scheme s{name, std::move(net), alphabet, field<int>(j, "t"), std::move(outer), std::move(code), claimed, params, {}, {}};
  return s;
}

Json verification_json(const VerificationReport& r, const Network& net, unsigned q) {
  Json j{{"passed", r.passed},     {"mode", r.mode},
         {"t", r.t},               {"code_size", r.code_size},
         {"rate", r.rate},         {"evaluations", r.evaluations},
         {"decoder_checked", r.decoder_checked}};
  if (!r.blocks.empty()) {
    Json blocks = Json::array();
    for (const auto& b : r.blocks)
      blocks.push_back({{"label", b.label}, {"mode", b.mode}, {"passed", b.passed}, {"evaluations", b.evaluations}});
    j["blocks"] = blocks;
  }
  if (r.witness)
    j["witness"] = {{"terminal", net.name(r.witness->terminal)},
                    {"x", word_string(r.witness->x, q)},
                    {"x_other", word_string(r.witness->x_other, q)},
                    {"error", pattern_string(r.witness->error, net)},
                    {"error_other", pattern_string(r.witness->error_other, net)}};
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

Json bound_json(const BoundReport& b, const LoadedInstance& li) {
  Json j{{"name", b.name},   {"value", b.value}, {"display", b.display()}, {"strict", b.strict},
         {"exact", b.exact}, {"lower", b.lower}, {"rule", b.rule}};
  if (b.cut) j["cut"] = edge_list(li.to_raw(*b.cut));
  if (b.terminal) j["terminal"] = li.network().name(*b.terminal);
  if (b.partition) j["partition"] = *b.partition;
  if (b.profile)
    j["profile"] = {{"i1", b.profile->i1}, {"i2", b.profile->i2}, {"i3", b.profile->i3},
                    {"i3_tilde", b.profile->i3_tilde}, {"x", b.profile->x}, {"y", b.profile->y}};
  if (!b.assumptions.empty()) j["assumptions"] = b.assumptions;
  return j;
}

Json pair_outcome_json(const PairOutcome& p, const LoadedInstance& li) {
  Json chain = Json::array();
  for (const auto& st : p.chain) {
    Json mapping = Json::array();
    for (const auto& [to, from] : st.mapping) mapping.push_back({to, from});
    chain.push_back({{"tag", st.tag}, {"network", raw_network_json(st.network)}, {"mapping", mapping}});
  }
  return Json{{"terminal", li.network().name(p.pair.terminal)},
              {"cut1", edge_list(li.to_raw(p.pair.cut1))},
              {"cut2", edge_list(li.to_raw(p.pair.cut2))},
              {"a", p.a},
              {"b", p.b},
              {"discarded", edge_list(li.to_raw(p.discarded))},
              {"bound", bound_json(p.bound, li)},
              {"chain", chain}};
}

Json capacity_json(const CapacityCertificate& c, const Network& net) {
  Json tables = Json::object();
  for (const auto& [v, table] : c.tables) {
    const std::size_t in = net.in_edges(v).size(), out = net.out_edges(v).size();
    Json node = Json::object();
    for (std::size_t r = 0; out && r < table.size() / out; ++r)
      node[word_string(word_at(r, c.q, in), c.q)] = word_string(std::span<const Symbol>(table.data() + r * out, out), c.q);
    tables[net.name(v)] = node;
  }
  Json outer = Json::array();
  for (const Word& w : c.outer) outer.push_back(word_string(w, c.q));
  return Json{{"instance_key", c.instance_key},
              {"alphabet", c.q},
              {"t", c.t},
              {"linear", c.linear},
              {"max_code_size", c.max_code_size},
              {"rate", c.max_code_size ? c.rate() : 0.0},
              {"exhaustive", c.exhaustive},
              {"codes_examined", c.codes_examined},
              {"codes_total", c.codes_total},
              {"network_code", tables},
              {"outer", outer}};
}

CapacityCertificate parse_capacity(const Json& j, const Network& net) {
  CapacityCertificate c;
  c.instance_key = field<std::string>(j, "instance_key");
  c.q = field<unsigned>(j, "alphabet");
  c.t = field<int>(j, "t");
  c.linear = field<bool>(j, "linear");
  c.max_code_size = field<std::uint64_t>(j, "max_code_size");
  c.exhaustive = field<bool>(j, "exhaustive");
  c.codes_examined = field<std::uint64_t>(j, "codes_examined");
  c.codes_total = field<std::uint64_t>(j, "codes_total");
  if (c.q < 2 || c.q > 256) bad("alphabet must be in [2,256]");
  if (j.contains("network_code") && !j["network_code"].empty()) {
    NetworkCode code = parse_network_code(net, c.q, j["network_code"]);
    for (const auto& [v, fn] : code.functions()) c.tables.emplace(v, fn.tabulate(c.q));
  }
  for (const auto& w : field<std::vector<std::string>>(j, "outer")) c.outer.push_back(parse_word(w, c.q));
  return c;
}

std::optional<std::filesystem::path> cache_directory() {
  const char* dir = std::getenv("ADVNET_CACHE_DIR");
  if (!dir || !*dir) return std::nullopt;
  return std::filesystem::path(dir);
}

std::optional<CapacityCertificate> cache_lookup(const std::string& key, const Network& net) {
  auto dir = cache_directory();
  if (!dir) return std::nullopt;
  const auto path = *dir / (key + ".json");
  if (!std::filesystem::exists(path)) return std::nullopt;
  try {
    auto c = parse_capacity(read_json_file(path), net);
    if (c.instance_key != key || !c.exhaustive) return std::nullopt;
    return c;
  } catch (const Error&) {
    return std::nullopt;
  }
}

void cache_store(const CapacityCertificate& c, const Network& net) {
  auto dir = cache_directory();
  if (!dir || !c.exhaustive) return;
  std::error_code ec;
  std::filesystem::create_directories(*dir, ec);
  if (ec) return;
  write_json_file(*dir / (c.instance_key + ".json"), capacity_json(c, net));
}

}  // namespace advnet
