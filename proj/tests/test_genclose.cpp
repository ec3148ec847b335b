#include <random>

#include "doctest.h"
#include "oracle.hpp"
#include "quolat/closure.hpp"
#include "quolat/constructions.hpp"
#include "quolat/dpp.hpp"
#include "quolat/lattice.hpp"
#include "quolat/table_closure.hpp"

using namespace quolat;

namespace {

std::set<Rows> keys_of(const std::vector<Relation>& rs) {
  std::set<Rows> out;
  for (const auto& r : rs) {
    out.insert(r.rows());
  }
  return out;
}

std::set<Rows> keys_of(const std::set<oracle::Matrix>& ms, const GroundPtr& g) {
  std::set<Rows> out;
  for (const auto& m : ms) {
    out.insert(oracle::to_relation(g, m).rows());
  }
  return out;
}

ClosureResult saturate(std::span<const Relation> gens, Schedule s) {
  ClosureBudget b;
  b.schedule = s;
  return closure(gens, b, true);
}

}  // namespace

TEST_CASE("closure basics") {
  const auto g = make_ground(3);
  const std::vector<Relation> d{delta(g)};
  const auto r = closure(d, ClosureBudget{});
  CHECK(r.report.discovered == 1);
  CHECK(r.report.stop_reason == StopReason::kSaturated);

  const auto q3 = quo3_generators().generators();
  CHECK(closure(q3, ClosureBudget{}).report.discovered == 29);
  CHECK(generates_quo(q3).outcome == Generation::kGenerates);
  CHECK(generates_quo(d).outcome == Generation::kDoesNotGenerate);

  ClosureBudget b;
  b.target = q_atoms(quo6_generators().ground);
  const auto six = closure(quo6_generators().generators(), b);
  CHECK(six.report.stop_reason == StopReason::kTargetAtomsFound);
  CHECK(six.report.atoms_found.size() == 30);
  MESSAGE("six-element closure reached all q-atoms after " << six.report.discovered
                                                            << " elements");

  ClosureBudget tiny;
  tiny.max_elements = 10;
  CHECK(generates_quo(quo6_generators().generators(), 10).outcome ==
        Generation::kIndeterminate);
}

TEST_CASE("equivalence generation") {
  const auto g = make_ground("a b c");
  const std::vector<Relation> three{atom_e(g, "a", "b"), atom_e(g, "b", "c"),
                                    atom_e(g, "c", "a")};
  CHECK(generates_equ(three).outcome == Generation::kGenerates);
  CHECK(generates_equ(equ6_generators().generators()).outcome == Generation::kGenerates);
  const std::vector<Relation> d{delta(make_ground(4))};
  CHECK(generates_equ(d).outcome == Generation::kDoesNotGenerate);
}

TEST_CASE("closure agrees with the naive sublattice") {
  std::mt19937_64 rng(21);
  for (std::size_t n = 2; n <= 4; ++n) {
    const auto g = make_ground(n);
    for (int t = 0; t < 40; ++t) {
      std::vector<oracle::Matrix> ms;
      std::vector<Relation> gens;
      for (int i = 0; i < 3; ++i) {
        ms.push_back(oracle::random_quasiorder(n, rng));
        gens.push_back(oracle::to_relation(g, ms.back()));
      }
      const auto expect = keys_of(oracle::sublattice(ms), g);
      const auto a = saturate(gens, Schedule::kGeneratorFirst);
      const auto b = saturate(gens, Schedule::kBreadthFirst);
      REQUIRE(keys_of(a.elements) == expect);
      REQUIRE(keys_of(b.elements) == expect);
      for (const auto& x : gens) {
        REQUIRE(expect.count(x.rows()) == 1);
      }
    }
  }
}

TEST_CASE("generation is invariant under relabeling") {
  std::mt19937_64 rng(4);
  const auto gens = quo3_generators().generators();
  std::vector<std::size_t> p{0, 1, 2};
  do {
    std::vector<Relation> moved;
    for (const auto& r : gens) {
      moved.push_back(apply_permutation(r, p));
    }
    CHECK(generates_quo(moved).outcome == Generation::kGenerates);
  } while (std::next_permutation(p.begin(), p.end()));
}

TEST_CASE("disjoint paths principle") {
  const auto g = quo6_generators().ground;
  auto i = [&](const char* l) { return g->index_of(l); };
  using K = StepKind;
  const Path p1{{i("g"), i("f"), K::kQ}, {i("f"), i("a"), K::kE}};
  const Path p2{{i("g"), i("c"), K::kQ}, {i("c"), i("b"), K::kE}, {i("b"), i("a"), K::kQ}};
  const auto r = dpp(g, p1, p2);
  CHECK(r.meet == atom_q(g, "g", "a"));

  const Path f1{{i("f"), i("d"), K::kE}};
  const Path f2{{i("f"), i("a"), K::kQ}, {i("a"), i("d"), K::kQ}};
  CHECK(dpp(g, f1, f2).meet == atom_q(g, "f", "d"));

  const Path e2{{i("f"), i("a"), K::kE}, {i("a"), i("d"), K::kE}};
  try {
    dpp(g, f1, e2);
    FAIL("expected a hypothesis error");
  } catch (const DppHypothesisError& e) {
    CHECK(e.which() == DppViolation::kNoDirectedStep);
  }
  const Path shared{{i("f"), i("a"), K::kQ}, {i("a"), i("d"), K::kQ}};
  CHECK_THROWS_AS(dpp(g, f2, shared), DppHypothesisError);
}

TEST_CASE("k-generation refutation") {
  auto q3 = enumerate_quo(3);
  q3.build_op_tables();
  CHECK(refute_k_generation(q3, 3));
  CHECK_FALSE(refute_k_generation(q3, 4));
  auto q2 = enumerate_quo(2);
  q2.build_op_tables();
  CHECK(refute_k_generation(q2, 1));

  // Independent check of every triple of Quo 3 with the naive sublattice.
  std::vector<oracle::Matrix> el;
  for (IndexedLattice::Id i = 0; i < q3.size(); ++i) {
    el.push_back(oracle::of(q3.element(i)));
  }
  std::size_t triples = 0;
  for (std::size_t a = 0; a < el.size(); ++a) {
    for (std::size_t b = a + 1; b < el.size(); ++b) {
      for (std::size_t c = b + 1; c < el.size(); ++c) {
        ++triples;
        REQUIRE(oracle::sublattice({el[a], el[b], el[c]}).size() < 29);
      }
    }
  }
  CHECK(triples == 3654);
}
