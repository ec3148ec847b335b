// End-to-end acceptance run: one PASS/FAIL line per criterion.
#include <chrono>
#include <filesystem>
#include <functional>
#include <iostream>
#include <sstream>

#include "invariants.hpp"
#include "oracle.hpp"
#include "properties.hpp"
#include "quolat/builtin_certificates.hpp"
#include "quolat/certificate.hpp"
#include "quolat/closure.hpp"
#include "quolat/constructions.hpp"
#include "quolat/lattice.hpp"
#include "quolat/search.hpp"
#include "quolat/table_closure.hpp"

using namespace quolat;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool ok = true;
  std::ostringstream note;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      note.str("");
      note << "failed: " << what;
    }
  }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

bool contains(const std::string& s, const std::string& part) {
  return s.find(part) != std::string::npos;
}

const StepOutcome* find_step(const CheckReport& r, const std::string& kind,
                             const std::string& text_part) {
  for (const auto& s : r.steps) {
    if (s.kind == kind && contains(s.text, text_part)) {
      return &s;
    }
  }
  return nullptr;
}

void table1(Outcome& o) {
  const std::vector<std::size_t> quo{1, 4, 29, 355, 6942, 209527};
  const std::vector<std::size_t> equ{1, 2, 5, 15, 52, 203, 877};
  double quo6_seconds = 0;
  for (std::size_t n = 1; n <= quo.size(); ++n) {
    const auto t0 = Clock::now();
    const auto size = enumerate_quo(n).size();
    if (n == 6) {
      quo6_seconds = seconds_since(t0);
    }
    o.require(size == quo[n - 1], "|Quo " + std::to_string(n) + "| = " + std::to_string(size));
    if (n <= 4) {
      o.require(size == oracle::all_quasiorders(n).size(), "brute-force count");
    }
  }
  for (std::size_t n = 1; n <= equ.size(); ++n) {
    const auto size = enumerate_equ(n).size();
    o.require(size == equ[n - 1], "|Equ " + std::to_string(n) + "| = " + std::to_string(size));
    o.require(size == oracle::bell(n), "Bell number");
  }
  o.require(quo6_seconds < 300, "Quo 6 enumeration time");
  if (o.ok) {
    o.note << "Quo 1..6 and Equ 1..7 exact; Quo 6 in " << quo6_seconds << " s";
  }
}

void quo6(Outcome& o) {
  const auto c = quo6_certificate();
  o.require(c.conclusion.closure_budget == std::optional<std::size_t>(300000),
            "closing closure budget");
  const auto r = check_certificate(c);
  o.require(r.passed, "certificate check");
  o.require(r.atom_steps == 25, "25 equation steps, got " + std::to_string(r.atom_steps));
  o.require(r.q_atoms_derived == 30, "all 30 q-atoms");
  o.require(c.conclusion.kind == Conclusion::Kind::kGeneratesQuo, "conclusion kind");
  if (o.ok) {
    o.note << "25 equation steps exact; " << r.conclusion_detail;
  }
}

void quo3(Outcome& o) {
  const auto gens = quo3_generators().generators();
  const auto cl = closure(gens, ClosureBudget{});
  o.require(cl.report.stop_reason == StopReason::kSaturated && cl.report.discovered == 29,
            "saturation at 29");
  o.require(generates_quo(gens).outcome == Generation::kGenerates, "generates_quo");
  auto q3 = enumerate_quo(3);
  q3.build_op_tables();
  o.require(refute_k_generation(q3, 3), "no generating triple");
  o.require(binomial(q3.size(), 3) == 3654, "3654 triples");
  std::vector<oracle::Matrix> el;
  for (IndexedLattice::Id i = 0; i < q3.size(); ++i) {
    el.push_back(oracle::of(q3.element(i)));
  }
  std::size_t generating = 0;
  for (std::size_t a = 0; a < el.size(); ++a) {
    for (std::size_t b = a + 1; b < el.size(); ++b) {
      for (std::size_t c = b + 1; c < el.size(); ++c) {
        generating += oracle::sublattice({el[a], el[b], el[c]}).size() == 29;
      }
    }
  }
  o.require(generating == 0, "naive sublattice check of all triples");
  if (o.ok) {
    o.note << "closure saturates at 29; all 3654 triples refuted (table and naive checks)";
  }
}

void equ(Outcome& o) {
  const auto g = generates_equ(equ6_generators().generators());
  o.require(g.outcome == Generation::kGenerates, "generates_equ on six points");
  SearchTask t;
  t.kind = LatticeKind::kEqu;
  t.n = 5;
  t.subset_size = 4;
  t.shape = Shape::kOneOneTwo;
  const auto r = run_search(t);
  o.require(r.exhausted, "search exhausted");
  o.require(r.generating_sets_found.empty(), "no generating one-one-two subset of Equ 5");
  t.orbit_reduction = false;
  const auto full = run_search(t);
  o.require(full.generating_sets_found.empty() && full.exhausted, "unreduced search");
  if (o.ok) {
    o.note << "Equ 6 generated after " << g.report.discovered << " elements; Equ 5 search over "
           << r.candidates_examined << " candidates found nothing";
  }
}

void odd11(Outcome& o) {
  const auto t0 = Clock::now();
  const auto r = check_certificate(odd_certificate(11));
  o.require(r.passed, "certificate check");
  const auto* blocks = find_step(r, "assert-blocks", "{a0 a1 a5 b0 b4} {a2 a4 b1 b3} {a3 b2}");
  o.require(blocks && blocks->passed, "block claim");
  const auto* eps = find_step(r, "assert-atom", "== e(a0,b0)");
  const auto* eta = find_step(r, "assert-atom", "== e(a5,b4)");
  o.require(eps && eps->passed && eta && eta->passed, "corner atom steps");
  const auto* cite = find_step(r, "cite", "zadori-3.2 k=5 mode=exhaustive");
  o.require(cite && cite->passed && contains(cite->detail, "closure confirms k=5"),
            "exhaustive lemma check");
  std::size_t derivation = 0;
  bool after_cite = false;
  for (const auto& s : r.steps) {
    after_cite = after_cite || &s == cite;
    if (after_cite && s.passed && (s.kind == "dpp" || s.kind == "assert-atom")) {
      ++derivation;
    }
  }
  o.require(derivation == 110, "110 derivation steps, got " + std::to_string(derivation));
  o.require(r.q_atoms_derived == 110 && r.e_atoms_derived == 55, "atom tallies");
  const double cert_seconds = seconds_since(t0);

  // The lemma instance once more, directly, under the Bell bound.
  const auto z = zadori(5);
  const std::uint64_t bound = oracle::bell(11);
  const auto g = generates_equ(z.generators(), bound);
  o.require(bound == 678570, "Bell(11)");
  o.require(g.outcome == Generation::kGenerates && g.report.atoms_found.size() == 55,
            "direct closure reaches all 55 e-atoms");
  o.require(cert_seconds < 1800, "runtime");
  if (o.ok) {
    o.note << "110 q-atom steps verified; lemma closure reached all 55 e-atoms after "
           << g.report.discovered << " of at most " << bound << " elements; certificate "
           << cert_seconds << " s";
  }
}

void even14(Outcome& o) {
  const auto t0 = Clock::now();
  const auto c = even_certificate(14);
  const auto r = check_certificate(c);
  o.require(r.passed, "certificate check");
  const auto* blocks = find_step(r, "assert-blocks", "{a4 b3 c}");
  o.require(blocks && blocks->passed, "block claim");
  const auto* eps = find_step(r, "assert-atom", "== e(a0,b0)");
  o.require(eps && eps->passed, "eps0 chain");
  const auto* bg = find_step(r, "let", "beta = (eps0 | alpha) & beta_sharp");
  const auto* gg = find_step(r, "let", "gamma = (eps0 | alpha) & gamma_sharp");
  o.require(bg && bg->passed && gg && gg->passed, "beta and gamma recovery");
  // The recovered values must equal the configuration's own beta and gamma.
  const auto direct = invariants::even_failures(14);
  o.require(direct.empty(), direct.empty() ? "" : direct.front());
  const auto* b1c = find_step(r, "assert-atom", "== e(b1,c)");
  const auto* b3c = find_step(r, "assert-atom", "== e(b3,c)");
  o.require(b1c && b1c->passed && b3c && b3c->passed, "e(b1,c) and e(b3,c)");
  std::size_t eq29 = 0;
  for (const auto& s : r.steps) {
    if (s.kind == "assert-atom" && s.passed && contains(s.text, "| e(b1,c)) & (")) {
      ++eq29;
    }
  }
  o.require(eq29 == 11, "eleven e(x,c) steps, got " + std::to_string(eq29));
  const auto* zc = find_step(r, "cite", "zadori-3.2 k=6 mode=small-k-validated");
  o.require(zc && zc->passed && contains(zc->detail, "closure confirms k=2..5"),
            "small-k validation");
  const auto* kc = find_step(r, "cite", "kulin-2.4");
  o.require(kc && kc->passed, "Kulin derivation replay");
  o.require(r.q_atoms_derived == 182, "all 182 q-atoms");
  const double secs = seconds_since(t0);
  o.require(secs < 900, "runtime");
  if (o.ok) {
    o.note << "all steps exact; " << kc->detail << "; " << secs << " s";
  }
}

void sweep(Outcome& o) {
  const auto t0 = Clock::now();
  std::vector<std::string> bad;
  for (std::size_t n : {11, 13, 15, 17, 19, 21}) {
    const auto b = invariants::odd_failures(n);
    bad.insert(bad.end(), b.begin(), b.end());
  }
  for (std::size_t n : {14, 16, 18, 20}) {
    const auto b = invariants::even_failures(n);
    bad.insert(bad.end(), b.begin(), b.end());
  }
  o.require(bad.empty(), bad.empty() ? "" : bad.front());
  o.require(seconds_since(t0) < 120, "runtime");
  if (o.ok) {
    o.note << "odd n = 11..21 and even n = 14..20 hold";
  }
}

void property_suites(Outcome& o) {
  std::size_t checks = 0;
  for (const auto& [name, run] :
       std::vector<std::pair<std::string, std::function<properties::Tally()>>>{
           {"lattice axioms", [] { return properties::lattice_axioms(); }},
           {"least join", [] { return properties::join_is_least(); }},
           {"atom round trip", [] { return properties::atom_round_trip(); }},
           {"automorphisms", [] { return properties::permutation_automorphisms(); }},
           {"dpp", [] { return properties::dpp_instances(1000); }}}) {
    const auto t = run();
    checks += t.checked;
    o.require(t.failures == 0, name + ": " + t.first_failure);
  }
  if (o.ok) {
    o.note << checks << " property checks, zero failures";
  }
}

std::vector<IdTuple> all_findings(const IndexedLattice& lat, SearchTask t) {
  const auto r = run_search(lat, t);
  return r.generating_sets_found;
}

void search_infra(Outcome& o) {
  // Sharding.
  auto e5 = enumerate_equ(5);
  e5.build_op_tables();
  SearchTask t;
  t.kind = LatticeKind::kEqu;
  t.n = 5;
  t.shape = Shape::kOneOneTwo;
  const auto whole = run_search(e5, t);
  std::vector<IdTuple> merged;
  std::uint64_t examined = 0;
  t.shard_count = 8;
  for (std::size_t i = 0; i < 8; ++i) {
    t.shard_index = i;
    const auto r = run_search(e5, t);
    examined += r.candidates_examined;
    merged.insert(merged.end(), r.generating_sets_found.begin(), r.generating_sets_found.end());
  }
  o.require(merged == whole.generating_sets_found && examined == whole.candidates_examined,
            "8 shards of Equ 5 match the unsharded run");

  // Orbit soundness and resume on Quo 3.
  auto q3 = enumerate_quo(3);
  q3.build_op_tables();
  const auto group = permutation_tables(q3);
  TableClosure tc(q3);
  for (std::size_t k : {3, 4}) {
    for (std::uint64_t rank = 0; rank < binomial(q3.size(), k); ++rank) {
      const auto s = colex_unrank(rank, k);
      if (tc.generates(s) != tc.generates(orbit_representative(s, group))) {
        o.require(false, "orbit soundness");
      }
    }
  }
  SearchTask q;
  q.kind = LatticeKind::kQuo;
  q.n = 3;
  q.orbit_reduction = false;
  const auto reference = all_findings(q3, q);
  const auto dir = fs::temp_directory_path() / "quolat-acceptance";
  fs::remove_all(dir);
  fs::create_directories(dir);
  q.checkpoint_path = (dir / "q3.json").string();
  q.max_candidates = 7000;
  std::vector<IdTuple> resumed;
  for (int i = 0; i < 10; ++i) {
    const auto r = run_search(q3, q);
    resumed.insert(resumed.end(), r.generating_sets_found.begin(), r.generating_sets_found.end());
    if (r.exhausted) {
      break;
    }
  }
  o.require(!reference.empty() && resumed == reference, "checkpoint resume on Quo 3");

  // Quo 4 campaign prefix.
  const auto straight = quo4_campaign(8, 1'000'000, std::nullopt);
  const auto first = quo4_campaign(8, 500'000, (dir / "quo4").string());
  const auto second = quo4_campaign(8, 500'000, (dir / "quo4").string());
  std::vector<IdTuple> split = first.generating_sets_found;
  split.insert(split.end(), second.generating_sets_found.begin(),
               second.generating_sets_found.end());
  o.require(first.cursor == 500'000 && second.cursor == 1'000'000, "campaign cursors");
  o.require(second.candidates_examined == straight.candidates_examined &&
                second.closures_run == straight.closures_run &&
                second.candidates_pruned() == straight.candidates_pruned() &&
                split == straight.generating_sets_found,
            "campaign resume matches the uninterrupted prefix");
  if (o.ok) {
    o.note << "shards, resume and orbit reduction verified; Quo 4 prefix of 10^6 candidates: "
           << straight.closures_run << " closures, " << straight.generating_sets_found.size()
           << " generating sets (outcome reported, not asserted)";
  }
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria{
      {"lattice sizes", table1},
      {"Quo 6 certificate", quo6},
      {"Quo 3 generation and three-generation refutation", quo3},
      {"Equ 6 positive, Equ 5 negative", equ},
      {"odd case n = 11", odd11},
      {"even case n = 14", even14},
      {"odd/even invariant sweep", sweep},
      {"property suites", property_suites},
      {"search infrastructure", search_infra},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    const auto t0 = Clock::now();
    try {
      criteria[i].second(o);
    } catch (const std::exception& e) {
      o.ok = false;
      o.note.str("");
      o.note << "exception: " << e.what();
    }
    failed += !o.ok;
    std::cout << "criterion " << i + 1 << " [" << (o.ok ? "PASS" : "FAIL") << "] "
              << criteria[i].first << " (" << seconds_since(t0) << " s): " << o.note.str()
              << std::endl;
  }
  return failed == 0 ? 0 : 1;
}
