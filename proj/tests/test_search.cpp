#include <filesystem>
#include <fstream>
#include <map>
#include <random>

#include "doctest.h"
#include "oracle.hpp"
#include "quolat/closure.hpp"
#include "quolat/constructions.hpp"
#include "quolat/search.hpp"
#include "quolat/table_closure.hpp"

using namespace quolat;
namespace fs = std::filesystem;

namespace {

using Id = IndexedLattice::Id;

IndexedLattice with_tables(LatticeKind kind, std::size_t n) {
  auto lat = kind == LatticeKind::kQuo ? enumerate_quo(n) : enumerate_equ(n);
  lat.build_op_tables();
  return lat;
}

SearchTask task(LatticeKind kind, std::size_t n, std::size_t size, Shape shape) {
  SearchTask t;
  t.kind = kind;
  t.n = n;
  t.subset_size = size;
  t.shape = shape;
  return t;
}

std::set<IdTuple> as_set(const std::vector<IdTuple>& v) {
  return {v.begin(), v.end()};
}

fs::path scratch_dir(const std::string& name) {
  const auto p = fs::temp_directory_path() / ("quolat-test-" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

// Every k-subset of 0..n-1 in colex order.
void for_each_subset(std::size_t n, std::size_t k, const std::function<void(const IdTuple&)>& f) {
  IdTuple s(k);
  std::iota(s.begin(), s.end(), 0);
  while (true) {
    f(s);
    std::size_t i = 0;
    while (i < k && s[i] + 1 == (i + 1 < k ? s[i + 1] : n)) {
      ++i;
    }
    if (i == k) {
      return;
    }
    ++s[i];
    for (std::size_t j = 0; j < i; ++j) {
      s[j] = static_cast<Id>(j);
    }
  }
}

}  // namespace

TEST_CASE("colex ranks and shards") {
  CHECK(binomial(355, 4) == 650635480ULL);
  CHECK(binomial(29, 4) == 23751);
  std::uint64_t expect = 0;
  for_each_subset(12, 4, [&](const IdTuple& s) {
    REQUIRE(colex_rank(s) == expect);
    REQUIRE(colex_unrank(expect, 4) == s);
    ++expect;
  });
  CHECK(expect == binomial(12, 4));
  for (std::size_t count : {1, 3, 8}) {
    std::uint64_t next = 0;
    for (std::size_t i = 0; i < count; ++i) {
      const auto [b, e] = shard_range(1001, i, count);
      CHECK(b == next);
      next = e;
    }
    CHECK(next == 1001);
  }
}

TEST_CASE("orbit representatives") {
  const auto q3 = with_tables(LatticeKind::kQuo, 3);
  const auto group = permutation_tables(q3);
  CHECK(group.size() == 6);
  const std::vector<IdTuple> identity_only{group.front()};
  const IdTuple s{9, 3, 17};
  CHECK(orbit_representative(s, identity_only) == IdTuple{3, 9, 17});

  const auto& g = q3.ground();
  const Id ab = q3.id_of(atom_q(g, 0, 1));
  const Id ba = q3.id_of(atom_q(g, 1, 0));
  const std::vector<IdTuple> swap{group.front(), [&] {
                                    IdTuple t(q3.size());
                                    const std::vector<std::size_t> p{1, 0, 2};
                                    for (Id i = 0; i < q3.size(); ++i) {
                                      t[i] = q3.id_of(apply_permutation(q3.element(i), p));
                                    }
                                    return t;
                                  }()};
  CHECK(orbit_representative(IdTuple{ab}, swap) == IdTuple{std::min(ab, ba)});

  // Orbit sizes of the distinct representatives add up to C(29,4).
  std::set<IdTuple> reps;
  for_each_subset(q3.size(), 4, [&](const IdTuple& t) { reps.insert(orbit_representative(t, group)); });
  std::uint64_t total = 0;
  for (const auto& r : reps) {
    std::set<IdTuple> orbit;
    for (const auto& p : group) {
      IdTuple img;
      for (auto id : r) {
        img.push_back(p[id]);
      }
      std::sort(img.begin(), img.end());
      orbit.insert(img);
    }
    REQUIRE(orbit_representative(r, group) == r);
    total += orbit.size();
  }
  CHECK(total == binomial(29, 4));
}

TEST_CASE("orbit reduction is sound on Quo 3") {
  auto q3 = with_tables(LatticeKind::kQuo, 3);
  const auto group = permutation_tables(q3);
  TableClosure tc(q3);
  for (std::size_t k : {3, 4}) {
    std::size_t generating = 0;
    for_each_subset(q3.size(), k, [&](const IdTuple& t) {
      const bool a = tc.generates(t);
      const bool b = tc.generates(orbit_representative(t, group));
      REQUIRE(a == b);
      generating += a;
    });
    CHECK((k == 3 ? generating == 0 : generating > 0));

    // The reduced search finds exactly the representatives of the full one.
    auto t = task(LatticeKind::kQuo, 3, k, Shape::kAny);
    const auto reduced = run_search(q3, t);
    t.orbit_reduction = false;
    const auto full = run_search(q3, t);
    std::set<IdTuple> reps;
    for (const auto& f : full.generating_sets_found) {
      reps.insert(orbit_representative(f, group));
    }
    CHECK(as_set(reduced.generating_sets_found) == reps);
  }
}

TEST_CASE("small searches") {
  const auto q2 = with_tables(LatticeKind::kQuo, 2);
  const auto r2 = run_search(q2, task(LatticeKind::kQuo, 2, 4, Shape::kOneOneTwo));
  CHECK(r2.candidates_examined == 1);
  CHECK(r2.pruned_shape == 1);
  CHECK(r2.closures_run == 0);

  const auto q3 = with_tables(LatticeKind::kQuo, 3);
  const auto group = permutation_tables(q3);
  const auto r3 = run_search(q3, task(LatticeKind::kQuo, 3, 4, Shape::kOneOneTwo));
  CHECK(r3.exhausted);
  IdTuple cor;
  for (const auto& r : quo3_generators().generators()) {
    cor.push_back(q3.id_of(Relation(q3.ground(), r.rows())));
  }
  const auto rep = orbit_representative(cor, group);
  CHECK(as_set(r3.generating_sets_found).count(rep) == 1);

  const auto e5 = with_tables(LatticeKind::kEqu, 5);
  const auto r5 = run_search(e5, task(LatticeKind::kEqu, 5, 4, Shape::kOneOneTwo));
  CHECK(r5.exhausted);
  CHECK(r5.generating_sets_found.empty());
  CHECK(r5.candidates_examined == binomial(52, 4));
}

TEST_CASE("shards partition the search") {
  for (auto [kind, n, shape] : {std::tuple{LatticeKind::kEqu, 5, Shape::kOneOneTwo},
                                std::tuple{LatticeKind::kQuo, 3, Shape::kAny}}) {
    const auto lat = with_tables(kind, n);
    auto t = task(kind, n, 4, shape);
    const auto whole = run_search(lat, t);
    std::vector<IdTuple> merged;
    std::uint64_t examined = 0;
    t.shard_count = 8;
    for (std::size_t i = 0; i < 8; ++i) {
      t.shard_index = i;
      const auto r = run_search(lat, t);
      CHECK(r.exhausted);
      examined += r.candidates_examined;
      merged.insert(merged.end(), r.generating_sets_found.begin(), r.generating_sets_found.end());
    }
    CHECK(merged == whole.generating_sets_found);
    CHECK(examined == whole.candidates_examined);
  }
}

TEST_CASE("checkpoint and resume") {
  const auto q3 = with_tables(LatticeKind::kQuo, 3);
  auto t = task(LatticeKind::kQuo, 3, 4, Shape::kAny);
  t.orbit_reduction = false;
  const auto whole = run_search(q3, t);
  REQUIRE(!whole.generating_sets_found.empty());

  const auto dir = scratch_dir("resume");
  t.checkpoint_path = (dir / "ck.json").string();
  t.checkpoint_every = 1000;
  t.max_candidates = 5000;
  std::vector<IdTuple> found;
  int calls = 0;
  while (true) {
    const auto r = run_search(q3, t);
    ++calls;
    found.insert(found.end(), r.generating_sets_found.begin(), r.generating_sets_found.end());
    if (r.exhausted) {
      CHECK(r.candidates_examined == whole.candidates_examined);
      CHECK(r.closures_run == whole.closures_run);
      break;
    }
    REQUIRE(calls < 100);
  }
  CHECK(calls == 5);
  CHECK(found == whole.generating_sets_found);

  // The checkpoint belongs to its task.
  auto other = t;
  other.shape = Shape::kOneOneTwo;
  CHECK_THROWS_AS(run_search(q3, other), std::invalid_argument);
}

TEST_CASE("argument validation") {
  const auto q3 = with_tables(LatticeKind::kQuo, 3);
  auto t = task(LatticeKind::kQuo, 3, 3, Shape::kOneOneTwo);
  CHECK_THROWS_AS(run_search(q3, t), std::invalid_argument);
  t = task(LatticeKind::kQuo, 3, 4, Shape::kAny);
  t.shard_count = 2;
  t.shard_index = 2;
  CHECK_THROWS_AS(run_search(q3, t), std::invalid_argument);
  const auto bare = enumerate_quo(3);
  CHECK_THROWS_AS(run_search(bare, task(LatticeKind::kQuo, 3, 4, Shape::kAny)),
                  std::invalid_argument);
}

TEST_CASE("pruned candidates never generate") {
  auto q4 = with_tables(LatticeKind::kQuo, 4);
  TableClosure tc(q4);
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<Id> pick(0, q4.size() - 1);
  std::size_t pruned = 0;
  std::size_t direct = 0;
  while (pruned < 100000) {
    std::set<Id> s;
    while (s.size() < 4) {
      s.insert(pick(rng));
    }
    const IdTuple t(s.begin(), s.end());
    if (tc.spans_top_and_bottom(t)) {
      continue;
    }
    ++pruned;
    REQUIRE_FALSE(tc.generates(t));
    if (direct < 200) {
      std::vector<Relation> gens;
      for (auto id : t) {
        gens.push_back(q4.element(id));
      }
      REQUIRE(generates_quo(gens).outcome == Generation::kDoesNotGenerate);
      ++direct;
    }
  }
}

TEST_CASE("Quo 4 campaign prefix with resume") {
  const auto dir = scratch_dir("campaign");
  const auto uninterrupted = quo4_campaign(8, 1'000'000, std::nullopt);
  CHECK(uninterrupted.cursor == 1'000'000);
  CHECK_FALSE(uninterrupted.exhausted);

  const auto first = quo4_campaign(8, 600'000, dir.string());
  CHECK(first.cursor == 600'000);
  CHECK(fs::exists(dir / "shard-0.json"));
  const auto second = quo4_campaign(8, 400'000, dir.string());
  CHECK(second.cursor == 1'000'000);
  CHECK(second.candidates_examined == uninterrupted.candidates_examined);
  CHECK(second.closures_run == uninterrupted.closures_run);
  CHECK(second.candidates_pruned() == uninterrupted.candidates_pruned());
  std::vector<IdTuple> resumed = first.generating_sets_found;
  resumed.insert(resumed.end(), second.generating_sets_found.begin(),
                 second.generating_sets_found.end());
  CHECK(resumed == uninterrupted.generating_sets_found);

  std::ifstream in(dir / "shard-0.json");
  const auto ck = nlohmann::json::parse(in);
  CHECK(ck["version"] == 1);
  CHECK(ck["cursor"] == 1'000'000);
}
