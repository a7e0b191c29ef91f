#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "advnet/bounds.hpp"
#include "advnet/error.hpp"
#include "advnet/instances.hpp"
#include "advnet/io.hpp"
#include "advnet/reduce.hpp"
#include "advnet/schemes.hpp"
#include "advnet/search.hpp"

using namespace advnet;

namespace {

enum Exit { kOk = 0, kViolation = 1, kInvalid = 2, kBudget = 3 };

void emit(const Json& j) { std::cout << j.dump(2) << '\n'; }

std::string edges_text(const EdgeSet& s) { return format_edge_set(s); }

// A file path, a built-in instance name, or a family member such as "family:A3".
LoadedInstance resolve(const std::string& arg) {
  if (std::filesystem::exists(arg)) return load_instance_file(arg);
  if (arg.rfind("family:", 0) == 0 && arg.size() > 8) {
    FamilyMember m{parse_family(arg.substr(7, 1)), 0};
    try {
      m.param = std::stoi(arg.substr(8));
    } catch (const std::exception&) {
      throw Error(Errc::InvalidInput, "bad family parameter in '" + arg + "'");
    }
    return load_instance(family_instance(m, 3));
  }
  for (const auto& n : instance_names())
    if (n == arg) return load_instance(builtin_instance(arg));
  throw Error(Errc::InvalidInput, "no such file or built-in instance: " + arg);
}

EdgeSet parse_ids(const std::string& text) {
  std::vector<EdgeId> ids;
  std::string item;
  std::stringstream in(text);
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    try {
      std::size_t used = 0;
      ids.push_back(std::stoi(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw Error(Errc::InvalidInput, "bad edge id '" + item + "'");
    }
  }
  return make_edge_set(std::move(ids));
}

// ----------------------------------------------------------------------------------------------

int cmd_validate(const std::string& file, bool json) {
  LoadedInstance li = resolve(file);
  const Network& net = li.network();
  Json j{{"name", li.instance.name},
         {"alphabet", li.instance.q},
         {"t", li.instance.t},
         {"vertices", net.vertex_count()},
         {"edges", net.edge_count()},
         {"vulnerable", net.vulnerable().size()}};
  Json cuts = Json::object();
  for (VertexId term : net.terminals()) cuts[net.name(term)] = min_cut(net, net.source(), term);
  j["min_cuts"] = cuts;
  if (auto lv = detect_levels(net)) j["levels"] = lv->levels();
  if (auto d = two_level_degrees(net)) j["two_level"] = {{"a", d->a}, {"b", d->b}};
  if (li.validated.reordered()) j["edge_map"] = li.validated.edge_map;
  if (json) {
    emit(j);
    return kOk;
  }
  std::cout << "instance   " << li.instance.name << " (q=" << li.instance.q << ", t=" << li.instance.t << ")\n"
            << "vertices   " << net.vertex_count() << "\nedges      " << net.edge_count() << "\nvulnerable "
            << net.vulnerable().size() << ' ' << edges_text(li.to_raw(net.vulnerable())) << '\n';
  for (VertexId term : net.terminals())
    std::cout << "min-cut    " << net.name(term) << ": " << min_cut(net, net.source(), term) << '\n';
  if (j.contains("levels")) std::cout << "levels     " << j["levels"].get<int>() << '\n';
  if (auto d = two_level_degrees(net)) {
    std::cout << "2-level    ([";
    for (std::size_t i = 0; i < d->a.size(); ++i) std::cout << (i ? "," : "") << d->a[i];
    std::cout << "],[";
    for (std::size_t i = 0; i < d->b.size(); ++i) std::cout << (i ? "," : "") << d->b[i];
    std::cout << "])\n";
  }
  if (li.validated.reordered()) {
    std::cout << "edge ids were renumbered; file id -> internal id:";
    for (std::size_t i = 0; i < li.validated.edge_map.size(); ++i) std::cout << ' ' << i << "->" << li.validated.edge_map[i];
    std::cout << '\n';
  }
  return kOk;
}

int cmd_bound(const std::string& file, const std::string& which, bool json) {
  LoadedInstance li = resolve(file);
  const Network& net = li.network();
  const int t = li.instance.t;
  auto degrees = two_level_degrees(net);
  bool full_source = false;
  if (degrees) {
    auto src = net.out_edges(net.source());
    full_source = net.vulnerable() == make_edge_set({src.begin(), src.end()});
  }
  auto need_two_level = [&](const char* name) {
    if (!degrees || !full_source)
      throw Error(Errc::NotTwoLevel, std::string(name) + " needs a simple 2-level network with every source edge vulnerable");
  };
  std::vector<BoundReport> out;
  const bool all = which == "all";
  if (all || which == "singleton") out.push_back(singleton_bound(net, t));
  if (which == "thm61" || which == "prop63") need_two_level(which.c_str());
  if ((all && degrees && full_source) || which == "thm61") out.push_back(lower_thm61(degrees->a, degrees->b, t));
  if ((all && degrees && full_source) || which == "prop63") out.push_back(lower_prop63(degrees->a, degrees->b, t));
  if (all || which == "full") out.push_back(full_adversary_value(net, t));
  if (all && degrees && full_source)
    for (const FamilyMember& m : match_family(degrees->a, degrees->b, t)) out.push_back(family_strict_upper(m, li.instance.q));
  if (out.empty()) throw Error(Errc::InvalidInput, "unknown bound '" + which + "'");

  // A lower bound above an upper bound means an inconsistency.
  bool consistent = true;
  for (const auto& lo : out)
    for (const auto& up : out)
      if (lo.lower && !up.lower && up.name != "full-adversary" && lo.value > up.value + 1e-9) consistent = false;

  if (json) {
    Json arr = Json::array();
    for (const auto& b : out) arr.push_back(bound_json(b, li));
    emit({{"instance", li.instance.name}, {"t", t}, {"bounds", arr}, {"consistent", consistent}});
  } else {
    for (const auto& b : out) {
      std::printf("%-16s %-12s %s", b.name.c_str(), b.display().c_str(), b.rule.c_str());
      if (b.cut) std::printf("  cut %s", edges_text(li.to_raw(*b.cut)).c_str());
      if (b.terminal) std::printf("  at %s", net.name(*b.terminal).c_str());
      std::printf("\n");
      for (const auto& a : b.assumptions) std::printf("%16s assumes: %s\n", "", a.c_str());
    }
    if (!consistent) std::printf("inconsistent: a lower bound exceeds an upper bound\n");
  }
  return consistent ? kOk : kViolation;
}

struct SchemeArgs {
  std::string name;
  int q = -1, t = -1;
  std::vector<int> a, b;
  bool verify = false;
  std::string out, verify_file;
  std::uint64_t budget = 60'000'000;
  std::size_t samples = 2000;
  bool blocks = false;
  bool json = false;
};

int report_verification(const Scheme& s, const SchemeArgs& args, const std::string& origin) {
  VerificationOptions opt;
  opt.exhaustive_budget = args.budget;
  opt.samples = args.samples;
  opt.force_blocks = args.blocks;
  VerificationReport r = verify(s, opt);
  const bool skipped = r.mode == "skipped";
  if (args.json) {
    emit({{"scheme", s.name}, {"source", origin}, {"claimed_size", s.claimed_size}, {"verification", verification_json(r, s.network, s.q)}});
  } else {
    std::printf("scheme %s  q=%u t=%d  size %llu  rate %.6f\n", s.name.c_str(), s.q, r.t,
                static_cast<unsigned long long>(r.code_size), r.rate);
    std::printf("verification %s (%s, %llu evaluations%s)\n", skipped ? "SKIPPED" : r.passed ? "PASS" : "FAIL",
                r.mode.c_str(), static_cast<unsigned long long>(r.evaluations), r.decoder_checked ? ", decoder checked" : "");
    for (const auto& b : r.blocks)
      std::printf("  block %-24s %-10s %s\n", b.label.c_str(), b.mode.c_str(), b.passed ? "pass" : "fail");
    if (r.witness) {
      Json w = verification_json(r, s.network, s.q)["witness"];
      std::printf("  collision at %s: %s with %s vs %s with %s\n", w["terminal"].get<std::string>().c_str(),
                  w["x"].get<std::string>().c_str(), w["error"].get<std::string>().c_str(),
                  w["x_other"].get<std::string>().c_str(), w["error_other"].get<std::string>().c_str());
    }
    if (!r.note.empty()) std::printf("  %s\n", r.note.c_str());
  }
  if (skipped) return kBudget;
  return r.passed ? kOk : kViolation;
}

int cmd_scheme(const SchemeArgs& args) {
  if (!args.verify_file.empty()) {
    Scheme s = scheme_from_certificate(read_json_file(args.verify_file));
    return report_verification(s, args, args.verify_file);
  }
  if (args.name.empty()) throw Error(Errc::InvalidInput, "scheme needs a name or --verify-file");
  std::map<std::string, std::vector<int>> params;
  if (args.q >= 0) params["q"] = {args.q};
  if (args.t >= 0) params["t"] = {args.t};
  if (!args.a.empty()) params["a"] = args.a;
  if (!args.b.empty()) params["b"] = args.b;
  Scheme s = build_scheme(args.name, params);
  if (!args.out.empty()) write_json_file(args.out, scheme_certificate(s));
  if (args.verify) return report_verification(s, args, "constructor");
  if (args.json) {
    emit(scheme_certificate(s));
  } else {
    std::printf("scheme %s  q=%u t=%d  size %llu  rate %.6f\n", s.name.c_str(), s.q, s.t,
                static_cast<unsigned long long>(s.claimed_size), s.claimed_rate());
    if (!args.out.empty()) std::printf("certificate written to %s\n", args.out.c_str());
  }
  return kOk;
}

struct CapacityArgs {
  std::string file;
  bool linear = false;
  std::uint64_t budget = 5'000'000;
  bool greedy = false;
  bool no_cache = false;
  bool no_symmetry = false;
  unsigned threads = 0;
  double time_limit = 0;
  int q = -1, t = -1;
  std::string out;
  bool json = false;
};

void print_certificate(const CapacityCertificate& c, const Network& net, bool json, const std::string& note) {
  if (json) {
    Json j = capacity_json(c, net);
    if (!note.empty()) j["note"] = note;
    emit(j);
    return;
  }
  std::printf("%s capacity  q=%u t=%d\n", c.linear ? "linear" : "exact", c.q, c.t);
  std::printf("max code size %llu  rate %.6f  %s\n", static_cast<unsigned long long>(c.max_code_size),
              c.max_code_size ? c.rate() : 0.0, c.exhaustive ? "proved-optimal" : "lower bound only");
  std::printf("network codes examined %llu of %llu\n", static_cast<unsigned long long>(c.codes_examined),
              static_cast<unsigned long long>(c.codes_total));
  std::printf("outer code");
  for (const Word& w : c.outer) std::printf(" %s", word_string(w, c.q).c_str());
  std::printf("\n");
  if (!note.empty()) std::printf("%s\n", note.c_str());
}

// Re-checks a witness: the outer code must be unambiguous under the stored network code.
bool witness_holds(const Network& net, const CapacityCertificate& c) {
  if (c.outer.empty()) return c.max_code_size == 0;
  NetworkCode code = certificate_code(net, c);
  const std::size_t len = net.out_edges(net.source()).size();
  Scheme s{"witness", net, c.q, c.t, OuterCode::listed(c.q, len, c.outer), code, c.outer.size(), {}, {}, {}};
  return c.outer.size() == c.max_code_size && verify(s).passed;
}

int cmd_capacity(const CapacityArgs& args) {
  LoadedInstance li = resolve(args.file);
  const Network& net = li.network();
  const unsigned q = args.q > 0 ? static_cast<unsigned>(args.q) : li.instance.q;
  const int t = args.t >= 0 ? args.t : li.instance.t;
  SearchBudget budget;
  budget.max_codes = args.budget;
  budget.symmetry = !args.no_symmetry;
  budget.threads = args.threads;
  budget.time_limit_seconds = args.time_limit;
  budget.greedy = args.greedy;

  const std::string key = instance_key(net, q, t, args.linear);
  std::optional<CapacityCertificate> cert;
  std::string note;
  const bool use_cache = !args.no_cache && !args.greedy && budget.symmetry;
  if (use_cache) cert = cache_lookup(key, net);
  if (cert) note = "from cache";
  int status = kOk;
  if (!cert) {
    try {
      cert = args.linear ? exact_linear_capacity(net, q, t, budget) : exact_capacity(net, q, t, budget);
      if (use_cache) cache_store(*cert, net);
    } catch (const BudgetExceededError& e) {
      cert = e.best();
      note = std::string("budget exceeded: ") + e.what();
      status = kBudget;
    }
  }
  if (!witness_holds(net, *cert)) {
    note += note.empty() ? "" : "; ";
    note += "witness failed re-verification";
    status = kViolation;
  }
  // The certified size can never exceed the Singleton bound.
  const double singleton = singleton_bound(net, t).value;
  if (cert->max_code_size > 0 && cert->rate() > singleton + 1e-9) {
    note += note.empty() ? "" : "; ";
    note += "certificate exceeds the Singleton bound";
    status = kViolation;
  }
  if (!args.out.empty()) write_json_file(args.out, capacity_json(*cert, net));
  print_certificate(*cert, net, args.json, note);
  return status;
}

struct ReduceArgs {
  std::string file;
  std::string cut1, cut2, terminal;
  bool automatic = false;
  std::size_t max_pairs = 64;
  std::string emit_chain;
  bool json = false;
};

int cmd_reduce(const ReduceArgs& args) {
  LoadedInstance li = resolve(args.file);
  const Network& net = li.network();
  const int t = li.instance.t;
  const unsigned q = li.instance.q;
  DoubleCutResult result;
  if (args.automatic) {
    result = double_cut_bound_auto(net, t, q, args.max_pairs);
  } else {
    if (args.cut1.empty() || args.cut2.empty()) throw Error(Errc::InvalidInput, "reduce needs --cut1 and --cut2, or --auto");
    CutPair pair{li.to_network(parse_ids(args.cut1)), li.to_network(parse_ids(args.cut2)), 0};
    if (!args.terminal.empty()) {
      pair.terminal = net.vertex(args.terminal);
      if (!net.is_terminal(pair.terminal)) throw Error(Errc::NotATerminal, args.terminal + " is not a terminal");
    } else {
      bool found = false;
      for (VertexId term : net.terminals())
        if (is_cut(net, pair.cut2, term)) {
          pair.terminal = term;
          found = true;
          break;
        }
      if (!found) throw Error(Errc::InvalidCutPair, "--cut2 separates no terminal from the source");
    }
    const CutPair pairs[] = {pair};
    result = double_cut_bound(net, t, q, pairs);
  }
  if (!result.best_index) throw Error(Errc::InvalidCutPair, "no admissible cut pair");
  const PairOutcome& best = result.pairs[*result.best_index];

  Json chain = Json::array();
  for (const auto& p : result.pairs) chain.push_back(pair_outcome_json(p, li));
  if (!args.emit_chain.empty())
    write_json_file(args.emit_chain, {{"instance", li.instance.name}, {"t", t}, {"alphabet", q},
                                      {"best", bound_json(result.best, li)}, {"best_index", *result.best_index}, {"pairs", chain}});
  if (args.json) {
    emit({{"instance", li.instance.name},
          {"bound", bound_json(result.best, li)},
          {"pair", pair_outcome_json(best, li)},
          {"pairs_evaluated", result.pairs.size()}});
    return kOk;
  }
  std::printf("double-cut bound %s  (%s)\n", result.best.display().c_str(), result.best.rule.c_str());
  std::printf("terminal %s  cut1 %s  cut2 %s\n", net.name(best.pair.terminal).c_str(),
              edges_text(li.to_raw(best.pair.cut1)).c_str(), edges_text(li.to_raw(best.pair.cut2)).c_str());
  std::printf("2-level network ([");
  for (std::size_t i = 0; i < best.a.size(); ++i) std::printf("%s%d", i ? "," : "", best.a[i]);
  std::printf("],[");
  for (std::size_t i = 0; i < best.b.size(); ++i) std::printf("%s%d", i ? "," : "", best.b[i]);
  std::printf("])\n");
  if (!best.discarded.empty()) std::printf("errors ignored on %s\n", edges_text(li.to_raw(best.discarded)).c_str());
  std::printf("pairs evaluated %zu\n", result.pairs.size());
  return kOk;
}

int cmd_curves(int generalization, int n, double pstep, const std::string& out) {
  const std::string csv = curves_csv(bsc_curves(generalization, n, pstep));
  if (out.empty()) {
    std::cout << csv;
    return kOk;
  }
  std::ofstream f(out);
  if (!f) throw Error(Errc::InvalidInput, "cannot write " + out);
  f << csv;
  return kOk;
}

int cmd_instance(const std::string& name, const std::string& family, int q, const std::string& out, bool list) {
  if (list) {
    for (const auto& n : instance_names()) std::cout << n << '\n';
    return kOk;
  }
  Instance inst;
  if (!family.empty()) {
    if (family.size() < 2) throw Error(Errc::InvalidInput, "family needs a letter and a parameter, e.g. A3");
    FamilyMember m{parse_family(family.substr(0, 1)), 0};
    try {
      m.param = std::stoi(family.substr(1));
    } catch (const std::exception&) {
      throw Error(Errc::InvalidInput, "bad family parameter '" + family + "'");
    }
    inst = family_instance(m, q > 0 ? static_cast<unsigned>(q) : 3);
  } else {
    if (name.empty()) throw Error(Errc::InvalidInput, "instance needs a name, --family or --list");
    inst = builtin_instance(name);
    if (q > 0) inst.q = static_cast<unsigned>(q);
  }
  validate(inst.raw);
  const Json j = instance_json(inst);
  if (out.empty()) emit(j);
  else write_json_file(out, j);
  return kOk;
}

int exit_code_for(Errc c) {
  switch (c) {
    case Errc::BudgetExceeded:
    case Errc::DomainTooLarge:
      return kBudget;
    default:
      return kInvalid;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Adversarial network coding toolkit"};
  app.require_subcommand(1);
  bool json = false;
  app.add_flag("--json", json, "Machine-readable JSON output");

  std::string file;
  auto* validate_cmd = app.add_subcommand("validate", "Check an instance file and summarize the network");
  validate_cmd->add_option("file", file, "Instance file or built-in name")->required();
  validate_cmd->add_flag("--json", json);

  std::string which = "all";
  auto* bound_cmd = app.add_subcommand("bound", "Upper and lower bounds on the 1-shot capacity");
  bound_cmd->add_option("file", file, "Instance file or built-in name")->required();
  bound_cmd->add_option("--which", which, "singleton|thm61|prop63|full|all")
      ->check(CLI::IsMember({"singleton", "thm61", "prop63", "full", "all"}));
  bound_cmd->add_flag("--json", json);

  SchemeArgs sa;
  auto* scheme_cmd = app.add_subcommand("scheme", "Build and verify a coding scheme");
  scheme_cmd->add_option("name", sa.name, "diamond|mirrored_diamond|a2|c_t|d_t|thm61|prop63|opening_network");
  scheme_cmd->add_option("--q", sa.q, "Alphabet size");
  scheme_cmd->add_option("--t", sa.t, "Adversary power");
  scheme_cmd->add_option("--a", sa.a, "In-degrees of a simple 2-level network")->delimiter(',');
  scheme_cmd->add_option("--b", sa.b, "Out-degrees of a simple 2-level network")->delimiter(',');
  scheme_cmd->add_flag("--verify", sa.verify, "Verify unambiguous decodability");
  scheme_cmd->add_option("--out", sa.out, "Write the certificate here");
  scheme_cmd->add_option("--verify-file", sa.verify_file, "Verify a certificate file");
  scheme_cmd->add_option("--budget", sa.budget, "Largest exhaustive check (codewords x error patterns)");
  scheme_cmd->add_option("--samples", sa.samples, "End-to-end samples in block mode");
  scheme_cmd->add_flag("--blocks", sa.blocks, "Use block verification even when exhaustive fits");
  scheme_cmd->add_flag("--json", json);

  CapacityArgs ca;
  auto* capacity_cmd = app.add_subcommand("capacity", "Exact 1-shot capacity by exhaustive search");
  capacity_cmd->add_option("file", ca.file, "Instance file or built-in name")->required();
  bool exact_flag = false;
  capacity_cmd->add_flag("--exact", exact_flag, "Search all network codes (default)");
  capacity_cmd->add_flag("--linear", ca.linear, "Search linear network codes only");
  capacity_cmd->add_option("--budget", ca.budget, "Network codes to examine at most");
  capacity_cmd->add_flag("--greedy", ca.greedy, "Greedy outer codes; gives a lower bound");
  capacity_cmd->add_flag("--no-cache", ca.no_cache, "Ignore the certificate cache");
  capacity_cmd->add_flag("--no-symmetry", ca.no_symmetry, "Enumerate every node table");
  capacity_cmd->add_option("--threads", ca.threads, "Worker threads (0: all cores)");
  capacity_cmd->add_option("--time-limit", ca.time_limit, "Seconds");
  capacity_cmd->add_option("--q", ca.q, "Override the instance alphabet");
  capacity_cmd->add_option("--t", ca.t, "Override the instance adversary power");
  capacity_cmd->add_option("--out", ca.out, "Write the certificate here");
  capacity_cmd->add_flag("--json", json);

  ReduceArgs ra;
  auto* reduce_cmd = app.add_subcommand("reduce", "Double-cut upper bound through a 2-level reduction");
  reduce_cmd->add_option("file", ra.file, "Instance file or built-in name")->required();
  reduce_cmd->add_option("--cut1", ra.cut1, "Comma-separated edge ids");
  reduce_cmd->add_option("--cut2", ra.cut2, "Comma-separated edge ids");
  reduce_cmd->add_option("--terminal", ra.terminal, "Terminal separated by --cut2");
  reduce_cmd->add_flag("--auto", ra.automatic, "Try generated cut pairs");
  reduce_cmd->add_option("--max-pairs", ra.max_pairs, "Pairs per terminal in --auto mode");
  reduce_cmd->add_option("--emit-chain", ra.emit_chain, "Write the reduction chain as JSON");
  reduce_cmd->add_flag("--json", json);

  int generalization = 1, n = 3;
  double pstep = 0.01;
  std::string curves_out;
  auto* curves_cmd = app.add_subcommand("curves", "Capacity curves for random-noise level networks");
  curves_cmd->add_option("--generalization", generalization)->check(CLI::IsMember({1, 2}));
  curves_cmd->add_option("--n", n)->check(CLI::Range(2, 1000));
  curves_cmd->add_option("--pstep", pstep)->check(CLI::Range(1e-6, 0.5));
  curves_cmd->add_option("--out", curves_out, "CSV file (stdout if absent)");

  std::string inst_name, family, inst_out;
  int inst_q = -1;
  bool list = false;
  auto* instance_cmd = app.add_subcommand("instance", "Print a built-in instance as JSON");
  instance_cmd->add_option("name", inst_name);
  instance_cmd->add_option("--family", family, "Family member, e.g. A3 or B2");
  instance_cmd->add_option("--q", inst_q, "Alphabet size");
  instance_cmd->add_option("--out", inst_out, "Write to a file");
  instance_cmd->add_flag("--list", list, "List built-in names");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kInvalid;
  }

  try {
    if (*validate_cmd) return cmd_validate(file, json);
    if (*bound_cmd) return cmd_bound(file, which, json);
    if (*scheme_cmd) {
      sa.json = json;
      return cmd_scheme(sa);
    }
    if (*capacity_cmd) {
      if (exact_flag && ca.linear) throw Error(Errc::InvalidInput, "--exact and --linear are exclusive");
      ca.json = json;
      return cmd_capacity(ca);
    }
    if (*reduce_cmd) {
      ra.json = json;
      return cmd_reduce(ra);
    }
    if (*curves_cmd) return cmd_curves(generalization, n, pstep, curves_out);
    if (*instance_cmd) return cmd_instance(inst_name, family, inst_q, inst_out, list);
  } catch (const BudgetExceededError& e) {
    std::cerr << "budget exceeded: " << e.what() << '\n';
    return kBudget;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code_for(e.code());
  }
  return kInvalid;
}
