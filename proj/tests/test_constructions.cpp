#include "doctest.h"
#include "invariants.hpp"
#include "quolat/block_poset.hpp"
#include "quolat/closure.hpp"
#include "quolat/constructions.hpp"
#include "quolat/lattice.hpp"

using namespace quolat;

namespace {

std::string blocks(const Relation& r) {
  return theta(r).to_string(true);
}

// Comparable pairs among the members, by inclusion tests.
std::vector<std::pair<std::string, std::string>> comparable_pairs(const GeneratorFamily& f) {
  std::vector<std::pair<std::string, std::string>> out;
  for (std::size_t i = 0; i < f.members.size(); ++i) {
    for (std::size_t j = 0; j < f.members.size(); ++j) {
      if (i != j && f.members[i].second.is_below(f.members[j].second)) {
        out.emplace_back(f.members[i].first, f.members[j].first);
      }
    }
  }
  return out;
}

}  // namespace

TEST_CASE("six-element family") {
  const auto f = quo6_generators();
  CHECK(f.ground->labels() == std::vector<std::string>{"a", "b", "c", "d", "f", "g"});
  CHECK(blocks(f.get("gamma")) == "{a b d} {c f}");
  CHECK(blocks(f.get("delta")) == "{a f} {b c g}");
  CHECK(blocks(f.get("alpha")) == "{d f g}");
  const auto cp = comparable_pairs(f);
  REQUIRE(cp.size() == 1);
  CHECK(cp[0] == std::pair<std::string, std::string>{"alpha", "beta"});
  CHECK(f.comparable_pair == cp[0]);
  CHECK(is_112_subset(f.generators()));
}

TEST_CASE("three-element family") {
  const auto f = quo3_generators();
  const auto& g = f.ground;
  CHECK(is_112_subset(f.generators()));
  CHECK(meet(atom_q(g, "a", "b"), atom_e(g, "b", "c")) == delta(g));
  CHECK(generates_quo(f.generators()).outcome == Generation::kGenerates);
  CHECK(comparable_pairs(f).size() == 1);
}

TEST_CASE("six-element equivalence family") {
  const auto f = equ6_generators();
  const auto q6 = quo6_generators();
  for (const auto& [name, r] : f.members) {
    CHECK(r.is_equivalence());
  }
  CHECK(f.get("beta_star") == join(q6.get("beta"), atom_q(q6.ground, "a", "b")));
  CHECK(is_112_subset(f.generators()));
  CHECK(comparable_pairs(f).size() == 1);
  CHECK(generates_equ(f.generators()).outcome == Generation::kGenerates);
}

TEST_CASE("Zadori configuration") {
  const auto z2 = zadori(2);
  CHECK(blocks(z2.beta) == "{a0 b0} {a1 b1}");
  const auto z5 = zadori(5);
  const Partition p5 = theta(z5.alpha);
  std::vector<std::size_t> sizes;
  for (const auto& b : p5.blocks()) {
    if (b.size() > 1) {
      sizes.push_back(b.size());
    }
  }
  std::sort(sizes.begin(), sizes.end());
  CHECK(sizes == std::vector<std::size_t>{5, 6});
  for (std::size_t k = 2; k <= 8; ++k) {
    const auto z = zadori(k);
    CHECK(z.eps0.is_below(z.beta));
    CHECK(z.eta.is_below(z.gamma));
  }
}

TEST_CASE("odd family at n = 11") {
  const auto f = odd_generators(11);
  const auto d = f.get("delta").off_diagonal_pairs();
  std::set<std::pair<std::string, std::string>> got;
  for (const auto& [x, y] : d) {
    got.emplace(f.ground->label(x), f.ground->label(y));
  }
  const std::set<std::pair<std::string, std::string>> want{
      {"a0", "a5"}, {"a5", "a0"}, {"b0", "b4"}, {"b4", "b0"}, {"b1", "b3"}};
  CHECK(got == want);
  CHECK(blocks(join(f.get("delta_plus"), f.get("gamma"))) ==
        "{a0 a1 a5 b0 b4} {a2 a4 b1 b3} {a3 b2}");
  CHECK(comparable_pairs(f).size() == 1);
  CHECK_THROWS_AS(odd_generators(12), std::invalid_argument);
  CHECK_THROWS_AS(odd_generators(9), std::invalid_argument);
}

TEST_CASE("even family at n = 14") {
  const auto f = even_generators(14);
  const auto& g = f.ground;
  const auto c = g->index_of("c");
  // beta# = beta | e(b1,c), so c joins the block of b1 and a1.
  std::vector<std::string> related;
  for (std::size_t x = 0; x < g->size(); ++x) {
    if (x != c && f.get("beta_sharp").contains(c, x)) {
      related.push_back(g->label(x));
    }
  }
  CHECK(related == std::vector<std::string>{"a1", "b1"});
  CHECK(f.get("beta_sharp") == join(f.get("beta"), atom_e(g, "b1", "c")));
  CHECK(f.get("gamma_sharp") == join(f.get("gamma"), atom_e(g, "b3", "c")));
  CHECK(blocks(join(f.get("delta_plus"), f.get("gamma_sharp"))).find("{a4 b3 c}") !=
        std::string::npos);
  CHECK(is_112_subset(f.generators()));
  CHECK(comparable_pairs(f).size() == 1);
  CHECK_THROWS_AS(even_generators(12), std::invalid_argument);
}

TEST_CASE("odd invariants for k = 5..10") {
  for (std::size_t n = 11; n <= 21; n += 2) {
    const auto bad = invariants::odd_failures(n);
    for (const auto& b : bad) {
      MESSAGE(b);
    }
    CHECK(bad.empty());
  }
}

TEST_CASE("even invariants for k = 6..10") {
  for (std::size_t n = 14; n <= 22; n += 2) {
    const auto bad = invariants::even_failures(n);
    for (const auto& b : bad) {
      MESSAGE(b);
    }
    CHECK(bad.empty());
  }
}

TEST_CASE("the unsharpened recovery of e(b1,c) collapses") {
  // With the plain beta and gamma the meet loses c entirely.
  const auto f = even_generators(14);
  const auto& g = f.ground;
  const auto bb = atom_e(g, "b1", "b3");
  CHECK(meet(f.get("beta"), join(bb, f.get("gamma"))) == delta(g));
  CHECK(meet(f.get("gamma"), join(bb, f.get("beta"))) == delta(g));
}
