// quolat command-line driver.
#include <algorithm>
#include <chrono>
#include <fstream>
#include <iostream>
#include <iterator>
#include <mutex>
#include <filesystem>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"
#include "quolat/block_poset.hpp"
#include "quolat/builtin_certificates.hpp"
#include "quolat/certificate.hpp"
#include "quolat/closure.hpp"
#include "quolat/constructions.hpp"
#include "quolat/heartbeat.hpp"
#include "quolat/lattice.hpp"
#include "quolat/relation_io.hpp"
#include "quolat/search.hpp"
#include "quolat/term.hpp"

using nlohmann::json;
using namespace quolat;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailed = 1;
constexpr int kExitUsage = 2;

// Bad flags or inputs; reported with exit status 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_input(const std::string& path) {
  if (path == "-") {
    return std::string(std::istreambuf_iterator<char>(std::cin), {});
  }
  std::ifstream in(path);
  if (!in) {
    throw UsageError("cannot read " + path);
  }
  return std::string(std::istreambuf_iterator<char>(in), {});
}

json read_json(const std::string& path) {
  try {
    return json::parse(read_input(path));
  } catch (const json::parse_error& e) {
    throw UsageError(path + ": " + e.what());
  }
}

void print_json(const json& j) {
  std::cout << j.dump(2) << "\n";
}

// ------------------------------------------------------------- enumerate

struct EnumerateOpts {
  std::string kind;
  std::size_t n = 0;
  std::string emit = "count";
};

int cmd_enumerate(const EnumerateOpts& o) {
  const LatticeKind kind = lattice_kind_from_string(o.kind);
  const std::size_t cap = kind == LatticeKind::kQuo ? kMaxQuoN : kMaxEquN;
  if (o.n < 1 || o.n > cap) {
    throw UsageError("--n must lie in 1.." + std::to_string(cap) + " for " + o.kind);
  }
  const auto lat = kind == LatticeKind::kQuo ? enumerate_quo(o.n) : enumerate_equ(o.n);
  if (o.emit == "jsonl") {
    write_jsonl(std::cout, lat);
  } else {
    print_json({{"kind", o.kind}, {"n", o.n}, {"count", lat.size()}});
  }
  return kExitOk;
}

// ------------------------------------------------------------- construct

struct ConstructOpts {
  std::string family;
  std::string emit = "json";
};

json family_json(const GeneratorFamily& f) {
  json members = json::object();
  for (const auto& [name, r] : f.members) {
    members[name] = to_json(r);
  }
  json aux = json::object();
  for (const auto& [name, r] : f.auxiliaries) {
    aux[name] = to_json(r);
  }
  const auto gens = f.generators();
  return {{"name", f.name},
          {"ground", f.ground->labels()},
          {"members", members},
          {"auxiliaries", aux},
          {"comparable_pair", {f.comparable_pair.first, f.comparable_pair.second}},
          {"is_112", is_112_subset(gens)}};
}

GeneratorFamily family_or_usage(const std::string& name) {
  try {
    return family_by_name(name);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

int cmd_construct(const ConstructOpts& o) {
  const auto f = family_or_usage(o.family);
  if (o.emit == "json") {
    print_json(family_json(f));
  } else if (o.emit == "dot") {
    for (const auto& [name, r] : f.members) {
      std::cout << to_dot(induced_order(r), name);
    }
  } else {
    for (const auto& [name, r] : f.members) {
      std::cout << name << ":\n" << to_text(induced_order(r)) << "\n";
    }
    std::cout << "comparable pair: " << f.comparable_pair.first << " < "
              << f.comparable_pair.second << "\n";
  }
  return kExitOk;
}

// ---------------------------------------------------------------- verify

struct VerifyOpts {
  std::string name;
  std::string mode;
  std::size_t max_elements = 1'000'000;
};

std::optional<CiteMode> parse_mode(const std::string& m) {
  if (m.empty()) {
    return std::nullopt;
  }
  try {
    return cite_mode_from_string(m);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

json closure_report_json(const ClosureReport& r) {
  return {{"discovered", r.discovered},
          {"stop_reason", to_string(r.stop_reason)},
          {"atoms_found", r.atoms_found.size()},
          {"target_size", r.target_size},
          {"depth_reached", r.depth_reached},
          {"elapsed_seconds", r.elapsed_seconds}};
}

int verify_certificate(const std::string& name, std::optional<CiteMode> mode) {
  Certificate c = [&] {
    try {
      if (name.starts_with("odd:")) {
        return odd_certificate(std::stoul(name.substr(4)), mode);
      }
      if (name.starts_with("even:")) {
        return even_certificate(std::stoul(name.substr(5)), mode);
      }
      return builtin_certificate(name);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  }();
  json out{{"name", name}};
  bool ok = true;
  if (!name.starts_with("kulin:")) {
    const auto f = family_or_usage(name);
    out["is_112"] = is_112_subset(f.generators());
    out["comparable_pair"] = {f.comparable_pair.first, f.comparable_pair.second};
    ok = out["is_112"].get<bool>();
  }
  const CheckReport r = check_certificate(c);
  out["certificate"] = r.to_json();
  ok = ok && r.passed;
  out["passed"] = ok;
  print_json(out);
  return ok ? kExitOk : kExitFailed;
}

int cmd_verify(const VerifyOpts& o) {
  const std::string& name = o.name;
  const auto mode = parse_mode(o.mode);
  if (name == "table1") {
    const std::vector<std::size_t> quo_expected{1, 4, 29, 355, 6942, 209527};
    const std::vector<std::size_t> equ_expected{1, 2, 5, 15, 52, 203, 877};
    std::vector<std::size_t> quo;
    std::vector<std::size_t> equ;
    for (std::size_t n = 1; n <= quo_expected.size(); ++n) {
      heartbeat("table1: Quo " + std::to_string(n));
      quo.push_back(enumerate_quo(n).size());
    }
    for (std::size_t n = 1; n <= equ_expected.size(); ++n) {
      equ.push_back(enumerate_equ(n).size());
    }
    const bool ok = quo == quo_expected && equ == equ_expected;
    print_json({{"name", name},
                {"quo", quo},
                {"equ", equ},
                {"expected_quo", quo_expected},
                {"expected_equ", equ_expected},
                {"passed", ok}});
    return ok ? kExitOk : kExitFailed;
  }
  if (name == "quo3" || name == "equ6") {
    const auto f = family_or_usage(name);
    const auto gens = f.generators();
    const bool is112 = is_112_subset(gens);
    const GenerationResult g =
        name == "quo3" ? generates_quo(gens, o.max_elements) : generates_equ(gens, o.max_elements);
    json out{{"name", name},
             {"is_112", is112},
             {"comparable_pair", {f.comparable_pair.first, f.comparable_pair.second}},
             {"outcome", to_string(g.outcome)},
             {"closure", closure_report_json(g.report)}};
    bool ok = is112 && g.outcome == Generation::kGenerates;
    if (name == "quo3") {
      ClosureBudget b;
      b.max_elements = o.max_elements;
      const auto full = closure(gens, b);
      out["saturated_size"] = full.report.discovered;
      ok = ok && full.report.stop_reason == StopReason::kSaturated &&
           full.report.discovered == 29;
    }
    out["passed"] = ok;
    print_json(out);
    return ok ? kExitOk : kExitFailed;
  }
  if (name == "quo6" || name.starts_with("odd:") || name.starts_with("even:") ||
      name.starts_with("kulin:")) {
    return verify_certificate(name, mode);
  }
  throw UsageError("unknown verification target '" + name +
                   "' (expected quo3, quo6, equ6, odd:N, even:N, kulin:N or table1)");
}

// ------------------------------------------------------------------ cert

struct CertOpts {
  std::string file;
  std::string builtin;
  std::string emit = "json";
};

int cmd_cert(const CertOpts& o) {
  if (o.file.empty() == o.builtin.empty()) {
    throw UsageError("give exactly one of --cert FILE and --builtin NAME");
  }
  Certificate c = [&] {
    if (!o.builtin.empty()) {
      try {
        return builtin_certificate(o.builtin);
      } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
      }
    }
    try {
      return parse_certificate(read_input(o.file));
    } catch (const ParseError& e) {
      throw UsageError(o.file + ":" + e.what());
    }
  }();
  if (o.emit == "text") {
    std::cout << print_certificate(c);
    return kExitOk;
  }
  const CheckReport r = check_certificate(c);
  print_json(r.to_json());
  return r.passed ? kExitOk : kExitFailed;
}

// --------------------------------------------------------------- closure

struct ClosureOpts {
  std::string generators;
  std::size_t max_elements = 1'000'000;
  std::optional<std::size_t> max_depth;
  std::string target = "none";
  std::string schedule = "generator-first";
  std::string emit = "json";
};

int cmd_closure(const ClosureOpts& o) {
  std::vector<Relation> gens;
  try {
    gens = relations_from_json(read_json(o.generators));
  } catch (const std::invalid_argument& e) {
    throw UsageError(o.generators + ": " + e.what());
  }
  if (gens.empty()) {
    throw UsageError("no generators in " + o.generators);
  }
  for (auto& g : gens) {
    g = transitive_closure(g);
  }
  ClosureBudget b;
  b.max_elements = o.max_elements;
  b.max_depth = o.max_depth;
  b.schedule = o.schedule == "bfs" ? Schedule::kBreadthFirst : Schedule::kGeneratorFirst;
  const auto& ground = gens.front().ground();
  if (o.target == "quo") {
    b.target = q_atoms(ground);
  } else if (o.target == "equ") {
    b.target = e_atoms(ground);
  }
  const bool keep = o.emit == "jsonl";
  const auto result = closure(gens, b, keep);
  if (keep) {
    for (const auto& r : result.elements) {
      std::cout << to_json(r).dump() << "\n";
    }
  } else {
    print_json(closure_report_json(result.report));
  }
  return kExitOk;
}

// ---------------------------------------------------------------- search

struct SearchOpts {
  std::string lattice;
  std::size_t size = 4;
  std::string shape = "any";
  std::size_t shards = 1;
  std::optional<std::size_t> shard_index;
  std::string checkpoint;
  std::string findings;
  std::optional<std::uint64_t> max_candidates;
  bool no_orbit = false;
  unsigned jobs = 1;
  bool campaign = false;
};

int cmd_search(const SearchOpts& o) {
  SearchTask base;
  if (o.campaign) {
    base.kind = LatticeKind::kQuo;
    base.n = 4;
    base.subset_size = 4;
    base.shape = Shape::kAny;
  } else {
    const auto colon = o.lattice.find(':');
    if (colon == std::string::npos) {
      throw UsageError("--lattice takes KIND:N, for example quo:4");
    }
    try {
      base.kind = lattice_kind_from_string(o.lattice.substr(0, colon));
      base.n = std::stoul(o.lattice.substr(colon + 1));
      base.shape = shape_from_string(o.shape);
    } catch (const std::exception& e) {
      throw UsageError(std::string("bad search flags: ") + e.what());
    }
    base.subset_size = o.size;
  }
  base.orbit_reduction = !o.no_orbit;
  base.shard_count = o.shards;
  base.max_candidates = o.max_candidates;
  const std::size_t cap = base.kind == LatticeKind::kQuo ? kMaxQuoN : kMaxEquN;
  if (base.n < 1 || base.n > cap) {
    throw UsageError("lattice size out of range");
  }
  if (o.shards == 0 || (o.shard_index && *o.shard_index >= o.shards)) {
    throw UsageError("--shard-index must be below --shards");
  }
  if (base.shape == Shape::kOneOneTwo && base.subset_size != 4) {
    throw UsageError("--shape one-one-two needs --size 4");
  }
  if (base.subset_size == 0) {
    throw UsageError("--size must be positive");
  }

  IndexedLattice lat = base.kind == LatticeKind::kQuo ? enumerate_quo(base.n)
                                                      : enumerate_equ(base.n);
  try {
    lat.build_op_tables();
  } catch (const std::length_error& e) {
    throw UsageError(e.what());
  }

  std::ofstream findings;
  if (!o.findings.empty()) {
    findings.open(o.findings, std::ios::app);
    if (!findings) {
      throw UsageError("cannot open " + o.findings);
    }
  }
  std::mutex out_mu;
  auto last_beat = std::chrono::steady_clock::now();
  SearchSinks sinks;
  sinks.on_finding = [&](const IdTuple& ids) {
    std::lock_guard lock(out_mu);
    if (findings.is_open()) {
      findings << finding_json(lat, ids).dump() << "\n" << std::flush;
    }
  };
  sinks.on_progress = [&](const SearchReport& r) {
    std::lock_guard lock(out_mu);
    const auto now = std::chrono::steady_clock::now();
    if (now - last_beat >= std::chrono::seconds(5)) {
      last_beat = now;
      heartbeat("search: cursor " + std::to_string(r.cursor) + " of " +
                std::to_string(r.shard_end) + ", " +
                std::to_string(r.generating_sets_found.size()) + " found");
    }
  };

  std::vector<std::size_t> shard_ids;
  if (o.shard_index) {
    shard_ids.push_back(*o.shard_index);
  } else {
    for (std::size_t s = 0; s < o.shards; ++s) {
      shard_ids.push_back(s);
    }
  }
  std::vector<SearchTask> tasks;
  for (auto s : shard_ids) {
    SearchTask t = base;
    t.shard_index = s;
    if (!o.checkpoint.empty()) {
      // One file for a single shard, a directory of files otherwise.
      if (o.shard_index) {
        t.checkpoint_path = o.checkpoint;
      } else {
        std::filesystem::create_directories(o.checkpoint);
        t.checkpoint_path = o.checkpoint + "/shard-" + std::to_string(s) + ".json";
      }
    }
    tasks.push_back(std::move(t));
  }
  std::vector<SearchReport> reports(tasks.size());
  std::vector<std::string> errors(tasks.size());
  const unsigned jobs = std::max(1U, std::min<unsigned>(o.jobs, tasks.size()));
  std::size_t next = 0;
  std::mutex next_mu;
  auto worker = [&] {
    while (true) {
      std::size_t i;
      {
        std::lock_guard lock(next_mu);
        if (next == tasks.size()) {
          return;
        }
        i = next++;
      }
      try {
        reports[i] = run_search(lat, tasks[i], sinks);
      } catch (const std::exception& e) {
        errors[i] = e.what();
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned j = 1; j < jobs; ++j) {
    pool.emplace_back(worker);
  }
  worker();
  for (auto& t : pool) {
    t.join();
  }
  for (const auto& e : errors) {
    if (!e.empty()) {
      throw UsageError(e);
    }
  }
  json shards = json::array();
  json found = json::array();
  bool exhausted = true;
  std::uint64_t examined = 0;
  std::uint64_t pruned = 0;
  for (std::size_t i = 0; i < reports.size(); ++i) {
    json j = reports[i].to_json();
    j["shard_index"] = tasks[i].shard_index;
    shards.push_back(j);
    for (const auto& ids : reports[i].generating_sets_found) {
      found.push_back(finding_json(lat, ids));
    }
    exhausted = exhausted && reports[i].exhausted;
    examined += reports[i].candidates_examined;
    pruned += reports[i].candidates_pruned();
  }
  print_json({{"lattice", to_string(base.kind) + ":" + std::to_string(base.n)},
              {"size", base.subset_size},
              {"shape", to_string(base.shape)},
              {"orbit_reduction", base.orbit_reduction},
              {"total_candidates", binomial(lat.size(), base.subset_size)},
              {"candidates_examined", examined},
              {"candidates_pruned", pruned},
              {"exhausted", exhausted},
              {"findings", found},
              {"shards", shards}});
  return kExitOk;
}

// ---------------------------------------------------------------- render

struct RenderOpts {
  std::string relation;
  std::string name = "rho";
  std::string emit = "dot";
};

int cmd_render(const RenderOpts& o) {
  Relation r = [&] {
    try {
      return transitive_closure(relation_from_json(read_json(o.relation)));
    } catch (const std::invalid_argument& e) {
      throw UsageError(o.relation + ": " + e.what());
    }
  }();
  const BlockPoset p = induced_order(r);
  if (o.emit == "text") {
    std::cout << to_text(p) << "\n";
  } else {
    std::cout << to_dot(p, o.name);
  }
  return kExitOk;
}

// ------------------------------------------------------------------ eval

struct EvalOpts {
  std::string term;
  std::string family;
  std::string bindings;
  std::string ground;
  std::string emit = "json";
};

int cmd_eval(const EvalOpts& o) {
  if (static_cast<int>(!o.family.empty()) + static_cast<int>(!o.bindings.empty()) +
          static_cast<int>(!o.ground.empty()) !=
      1) {
    throw UsageError("give exactly one of --family, --generators and --ground");
  }
  Environment env;
  GroundPtr ground;
  if (!o.family.empty()) {
    const auto f = family_or_usage(o.family);
    ground = f.ground;
    for (const auto& [name, r] : f.members) {
      env.emplace(name, r);
    }
    for (const auto& [name, r] : f.auxiliaries) {
      env.emplace(name, r);
    }
  } else if (!o.bindings.empty()) {
    const json j = read_json(o.bindings);
    if (!j.is_object() || j.empty()) {
      throw UsageError("bindings must be a non-empty JSON object of relations");
    }
    try {
      for (const auto& [name, rel] : j.items()) {
        Relation r = transitive_closure(relation_from_json(rel, ground));
        if (!ground) {
          ground = r.ground();
        }
        env.emplace(name, std::move(r));
      }
    } catch (const std::invalid_argument& e) {
      throw UsageError(o.bindings + ": " + e.what());
    }
  } else {
    try {
      ground = make_ground(std::string_view(o.ground));
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  }
  Relation r = [&] {
    try {
      return eval_term(parse_term(o.term, ground.get()), env, ground);
    } catch (const ParseError& e) {
      throw UsageError(std::string("term:") + e.what());
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  }();
  const BlockPoset p = induced_order(r);
  if (o.emit == "dot") {
    std::cout << to_dot(p);
  } else if (o.emit == "text") {
    for (const auto& [x, y] : r.off_diagonal_pairs()) {
      std::cout << "(" << ground->label(x) << "," << ground->label(y) << ") ";
    }
    std::cout << "\n" << to_text(p) << "\n";
  } else {
    print_json({{"relation", to_json(r)}, {"diagram", to_text(p)}});
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"quolat: quasiorder lattice workbench"};
  app.require_subcommand(1);
  app.fallthrough();
  bool quiet = false;
  app.add_flag("--quiet", quiet, "Suppress progress lines on standard error");

  EnumerateOpts eo;
  auto* en = app.add_subcommand("enumerate", "Enumerate Quo n or Equ n");
  en->add_option("--kind", eo.kind, "quo or equ")->required()->check(CLI::IsMember({"quo", "equ"}));
  en->add_option("--n", eo.n, "Ground set size")->required();
  en->add_option("--emit", eo.emit, "count or jsonl")->check(CLI::IsMember({"count", "jsonl"}));

  ConstructOpts co;
  auto* cons = app.add_subcommand("construct", "Build a generator family");
  cons->add_option("--family", co.family, "quo6, quo3, equ6, odd:N, even:N")->required();
  cons->add_option("--emit", co.emit, "json, text or dot")
      ->check(CLI::IsMember({"json", "text", "dot"}));

  VerifyOpts vo;
  auto* ver = app.add_subcommand("verify", "Check a construction end to end");
  ver->add_option("name,--family", vo.name,
                  "quo3, quo6, equ6, odd:N, even:N, kulin:N or table1")
      ->required();
  ver->add_option("--mode", vo.mode, "Lemma check mode: exhaustive, small-k-validated, trusted");
  ver->add_option("--max-elements", vo.max_elements, "Closure budget");

  CertOpts ceo;
  auto* cert = app.add_subcommand("cert", "Check or print a certificate");
  cert->add_option("--cert", ceo.file, "Certificate file, - for stdin");
  cert->add_option("--builtin", ceo.builtin, "quo6, odd:N, even:N, kulin:N");
  cert->add_option("--emit", ceo.emit, "json report or certificate text")
      ->check(CLI::IsMember({"json", "text"}));

  ClosureOpts clo;
  auto* clos = app.add_subcommand("closure", "Sublattice closure of a generator set");
  clos->add_option("--generators", clo.generators, "JSON array of relations")->required();
  clos->add_option("--max-elements", clo.max_elements, "Element budget");
  clos->add_option("--max-depth", clo.max_depth, "Depth budget");
  clos->add_option("--target", clo.target, "quo, equ or none")
      ->check(CLI::IsMember({"quo", "equ", "none"}));
  clos->add_option("--schedule", clo.schedule, "generator-first or bfs")
      ->check(CLI::IsMember({"generator-first", "bfs"}));
  clos->add_option("--emit", clo.emit, "json report or jsonl elements")
      ->check(CLI::IsMember({"json", "jsonl"}));

  SearchOpts so;
  so.jobs = std::max(1U, std::thread::hardware_concurrency());
  auto* sea = app.add_subcommand("search", "Exhaustive search for generating subsets");
  sea->add_option("--lattice", so.lattice, "KIND:N, for example quo:4");
  sea->add_option("--size", so.size, "Subset size");
  sea->add_option("--shape", so.shape, "any, antichain or one-one-two");
  sea->add_option("--shards", so.shards, "Number of shards");
  sea->add_option("--shard-index", so.shard_index, "Run only this shard");
  sea->add_option("--checkpoint", so.checkpoint, "Checkpoint file (one shard) or directory");
  sea->add_option("--findings", so.findings, "Append findings as JSONL");
  sea->add_option("--max-candidates", so.max_candidates, "Stop each shard after this many");
  sea->add_flag("--no-orbit", so.no_orbit, "Disable symmetry reduction");
  sea->add_option("--jobs", so.jobs, "Worker threads");
  sea->add_flag("--campaign", so.campaign, "Four-subsets of Quo 4 with orbit reduction");

  RenderOpts ro;
  auto* ren = app.add_subcommand("render", "Block diagram of a relation");
  ren->add_option("relation,--relation", ro.relation, "Relation JSON file, - for stdin")
      ->required();
  ren->add_option("--name", ro.name, "Graph name");
  ren->add_option("--emit", ro.emit, "dot or text")->check(CLI::IsMember({"dot", "text"}));

  EvalOpts evo;
  auto* ev = app.add_subcommand("eval", "Evaluate a lattice term");
  ev->add_option("term", evo.term, "Term, for example 'beta & delta'")->required();
  ev->add_option("--family", evo.family, "Bind the members of a family");
  ev->add_option("--generators", evo.bindings, "JSON object name -> relation");
  ev->add_option("--ground", evo.ground, "Labels, for example 'a b c'");
  ev->add_option("--emit", evo.emit, "json, text or dot")
      ->check(CLI::IsMember({"json", "text", "dot"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }
  if (!quiet) {
    set_heartbeat([](const std::string& m) { std::cerr << "[quolat] " << m << std::endl; });
  }
  try {
    if (*en) {
      return cmd_enumerate(eo);
    }
    if (*cons) {
      return cmd_construct(co);
    }
    if (*ver) {
      return cmd_verify(vo);
    }
    if (*cert) {
      return cmd_cert(ceo);
    }
    if (*clos) {
      return cmd_closure(clo);
    }
    if (*sea) {
      return cmd_search(so);
    }
    if (*ren) {
      return cmd_render(ro);
    }
    if (*ev) {
      return cmd_eval(evo);
    }
  } catch (const UsageError& e) {
    std::cerr << "quolat: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "quolat: " << e.what() << "\n";
    return kExitFailed;
  }
  return kExitUsage;
}
