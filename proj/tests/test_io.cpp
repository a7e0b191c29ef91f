#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "advnet/error.hpp"
#include "advnet/io.hpp"
#include "oracles.hpp"

using namespace advnet;

namespace {

std::filesystem::path scratch(const std::string& leaf) {
  auto dir = std::filesystem::temp_directory_path() / "advnet_io_tests";
  std::filesystem::create_directories(dir);
  return dir / leaf;
}

Errc error_of(const Json& j) {
  try {
    load_instance(parse_instance(j));
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return Errc::InvalidInput;
}

}  // namespace

TEST_SUITE("io") {
  TEST_CASE("instance round trip") {
    for (const auto& name : instance_names()) {
      Instance inst = builtin_instance(name);
      Json j = instance_json(inst);
      auto path = scratch(name + ".json");
      write_json_file(path, j);
      LoadedInstance back = load_instance_file(path);
      CHECK(back.instance.q == inst.q);
      CHECK(back.instance.t == inst.t);
      CHECK(instance_json(back.instance) == j);
      const Network& net = back.network();
      Network orig = validate(inst.raw).network;
      CHECK(net.edge_count() == orig.edge_count());
      CHECK(net.vulnerable() == orig.vulnerable());
    }
  }

  TEST_CASE("shipped instance files") {
    std::size_t seen = 0;
    for (const auto& entry : std::filesystem::directory_iterator(ADVNET_INSTANCE_DIR)) {
      LoadedInstance li = load_instance_file(entry.path());
      const std::string stem = entry.path().stem().string();
      if (stem.rfind("family_", 0) != 0) CHECK(instance_json(li.instance) == instance_json(builtin_instance(stem)));
      ++seen;
    }
    CHECK(seen >= instance_names().size());
  }

  TEST_CASE("raw edge ids map both ways") {
    LoadedInstance li = load_instance(builtin_instance("opening"));
    EdgeSet ids{0, 4, 9};
    CHECK(li.to_raw(li.to_network(ids)) == ids);
  }

  TEST_CASE("bad instance files") {
    Json good = instance_json(builtin_instance("relay_bypass"));
    Json j = good;
    j.erase("source");
    CHECK(error_of(j) == Errc::InvalidInput);
    j = good;
    j["edges"].push_back({"T", "S"});
    CHECK(error_of(j) != Errc::InvalidInput);
    j = good;
    j["vulnerable"] = {0, 17};
    CHECK(error_of(j) == Errc::InvalidInput);
    j = good;
    j["alphabet"] = 1;
    CHECK_THROWS_AS(load_instance(parse_instance(j)), Error);
    j = good;
    j["edges"][0] = {"S", "Nowhere"};
    CHECK(error_of(j) == Errc::UnknownVertex);

    auto path = scratch("broken.json");
    std::ofstream(path) << "{ not json";
    CHECK_THROWS_AS(read_json_file(path), Error);
    CHECK_THROWS_AS(read_json_file(scratch("missing_file.json")), Error);
  }

  TEST_CASE("network code round trip") {
    Scheme s = scheme_diamond(3);
    Json j = network_code_json(s.network, s.code);
    CHECK(j["V2"]["11"] == "1");
    NetworkCode back = parse_network_code(s.network, 3, j);
    for (const auto& [v, f] : s.code.functions()) CHECK(back.at(v).tabulate(3) == f.tabulate(3));
    j["V2"].erase("11");
    CHECK_THROWS_AS(parse_network_code(s.network, 3, j), Error);
  }

  TEST_CASE("scheme certificates re-verify") {
    for (const Scheme& s : {scheme_diamond(3), scheme_mirrored_diamond(2), scheme_a2(2), scheme_c_t(2, 2)}) {
      Json cert = scheme_certificate(s);
      auto path = scratch(s.name + "_cert.json");
      write_json_file(path, cert);
      Scheme back = scheme_from_certificate(read_json_file(path));
      CHECK(back.claimed_size == s.claimed_size);
      CHECK(back.outer.size() == s.outer.size());
      VerificationReport r = verify(back);
      CHECK(r.passed);
      CHECK(r.code_size == s.claimed_size);
    }
  }

  TEST_CASE("tampered certificate fails verification") {
    Json cert = scheme_certificate(scheme_diamond(3));
    cert["network_code"]["V2"]["22"] = "1";
    Scheme back = scheme_from_certificate(cert);
    VerificationReport r = verify(back);
    CHECK_FALSE(r.passed);
    REQUIRE(r.witness);
    CHECK(r.witness->x != r.witness->x_other);
  }

  TEST_CASE("parameter-only certificates rebuild the scheme") {
    Json cert = scheme_certificate(scheme_thm61(std::vector<int>{2, 5, 6}, std::vector<int>{2, 2, 2}, 2, 11));
    CHECK_FALSE(cert.contains("network_code"));
    Scheme back = scheme_from_certificate(cert);
    CHECK(back.claimed_size == 11u * 11u * 11u);
  }

  TEST_CASE("capacity certificates") {
    Network net = validate(builtin_instance("diamond").raw).network;
    CapacityCertificate c = exact_capacity(net, 3, 1);
    Json j = capacity_json(c, net);
    CapacityCertificate back = parse_capacity(j, net);
    CHECK(back.max_code_size == c.max_code_size);
    CHECK(back.instance_key == c.instance_key);
    CHECK(back.exhaustive == c.exhaustive);
    CHECK(oracle::unambiguous(net, oracle::node_map(certificate_code(net, back)), back.outer, 1, 3));
  }

  TEST_CASE("cache stays off without its variable") {
    unsetenv("ADVNET_CACHE_DIR");
    CHECK_FALSE(cache_directory());
    auto dir = scratch("cache");
    std::filesystem::remove_all(dir);
    setenv("ADVNET_CACHE_DIR", dir.c_str(), 1);
    REQUIRE(cache_directory());
    Network net = validate(builtin_instance("mirrored_diamond").raw).network;
    CapacityCertificate c = exact_capacity(net, 2, 1);
    CHECK_FALSE(cache_lookup(c.instance_key, net));
    cache_store(c, net);
    auto hit = cache_lookup(c.instance_key, net);
    REQUIRE(hit);
    CHECK(hit->max_code_size == c.max_code_size);
    unsetenv("ADVNET_CACHE_DIR");
  }
}
