#include "doctest.h"
#include "oracle.hpp"
#include "quolat/block_poset.hpp"
#include "quolat/constructions.hpp"
#include "quolat/relation.hpp"
#include "quolat/relation_io.hpp"

using namespace quolat;

namespace {

std::vector<std::size_t> random_perm(std::size_t n, std::mt19937_64& rng) {
  std::vector<std::size_t> p(n);
  std::iota(p.begin(), p.end(), 0);
  std::shuffle(p.begin(), p.end(), rng);
  return p;
}

}  // namespace

TEST_CASE("delta and nabla") {
  CHECK(delta(make_ground(1)).off_diagonal_pairs().empty());
  CHECK(nabla(make_ground(1)) == delta(make_ground(1)));
  const auto g3 = make_ground(3);
  CHECK(rows::count(delta(g3).rows()) == 3);
  CHECK(rows::count(nabla(make_ground(2)).rows()) == 4);

  // Delta on six points is the meet of all atom pairs.
  const auto g6 = make_ground(6);
  Relation acc = nabla(g6);
  for (std::size_t x = 0; x < 6; ++x) {
    for (std::size_t y = 0; y < 6; ++y) {
      if (x == y) {
        continue;
      }
      for (std::size_t u = 0; u < 6; ++u) {
        for (std::size_t v = 0; v < 6; ++v) {
          if (u != v && (u != x || v != y)) {
            acc = meet(acc, meet(atom_q(g6, x, y), atom_q(g6, u, v)));
          }
        }
      }
    }
  }
  CHECK(acc == delta(g6));

  Relation all = delta(g3);
  for (std::size_t x = 0; x < 3; ++x) {
    for (std::size_t y = 0; y < 3; ++y) {
      all = join(all, atom_q(g3, x, y));
    }
  }
  CHECK(all == nabla(g3));
}

TEST_CASE("atoms") {
  const auto g = make_ground("a b c");
  const auto q = atom_q(g, "a", "b");
  CHECK(rows::count(q.rows()) == 4);
  CHECK(q.contains(0, 1));
  CHECK(atom_e(g, "a", "b") == join(atom_q(g, "a", "b"), atom_q(g, "b", "a")));
  CHECK(atom_q(g, "a", "a") == delta(g));
  CHECK(atom_e(g, "c", "c") == delta(g));
}

TEST_CASE("meet and join on the six-element family") {
  const auto f = quo6_generators();
  const auto& g = f.ground;
  CHECK(meet(f.get("beta"), f.get("delta")) == atom_e(g, "b", "c"));
  CHECK(meet(f.get("beta"), f.get("gamma")) == atom_q(g, "b", "a"));
  CHECK(meet(f.get("beta"), f.get("beta")) == f.get("beta"));

  const auto alpha = join(atom_e(g, "d", "f"), atom_e(g, "f", "g"));
  const Partition p = theta(alpha);
  CHECK(p.to_string(true) == "{d f g}");
  CHECK(join(alpha, delta(g)) == alpha);

  const auto h = make_ground("a b c");
  const auto ac = join(atom_q(h, "a", "b"), atom_q(h, "b", "c"));
  CHECK(ac.contains(0, 2));
  CHECK(oracle::of(ac) == oracle::join(oracle::of(atom_q(h, "a", "b")),
                                       oracle::of(atom_q(h, "b", "c"))));
}

TEST_CASE("inverse") {
  const auto g = make_ground("a b c");
  CHECK(inverse(atom_q(g, "a", "b")) == atom_q(g, "b", "a"));
  CHECK(inverse(atom_e(g, "a", "b")) == atom_e(g, "a", "b"));
  std::mt19937_64 rng(7);
  const auto g6 = make_ground(6);
  for (int t = 0; t < 1000; ++t) {
    const auto r = oracle::to_relation(g6, oracle::random_quasiorder(6, rng));
    REQUIRE(inverse(inverse(r)) == r);
  }
}

TEST_CASE("theta and the induced order") {
  const auto g = make_ground("a b c");
  CHECK(theta(atom_q(g, "a", "b")).blocks().size() == 3);

  const auto f = quo6_generators();
  CHECK(theta(f.get("beta")).to_string() == "{a} {b c} {d f g}");
  const BlockPoset bp = induced_order(f.get("beta"));
  CHECK(to_text(bp) == "[a] [b,c] [d,f,g]\n[b,c] < [a]");
  CHECK(bp.visible_blocks().size() == 3);

  const BlockPoset d = induced_order(delta(f.ground));
  CHECK(d.visible_blocks().empty());
  CHECK(to_text(d).empty());

  const auto gc = join(atom_q(f.ground, "g", "c"), f.get("gamma"));
  CHECK(to_text(induced_order(gc)).find("[g] < [c,f]") != std::string::npos);

  // Theta(delta) is the partition of delta_star in the odd construction.
  for (std::size_t n : {11, 13, 15}) {
    const auto o = odd_generators(n);
    CHECK(theta(o.get("delta")) == theta(o.get("delta_star")));
    CHECK(o.get("delta_star").is_equivalence());
  }
}

TEST_CASE("theta is the largest equivalence below") {
  std::mt19937_64 rng(11);
  const auto g = make_ground(5);
  for (int t = 0; t < 300; ++t) {
    const auto m = oracle::random_quasiorder(5, rng);
    const auto r = oracle::to_relation(g, m);
    const Partition p = theta(r);
    for (std::size_t x = 0; x < 5; ++x) {
      for (std::size_t y = 0; y < 5; ++y) {
        REQUIRE((p.block_of(x) == p.block_of(y)) == (m[x][y] && m[y][x]));
      }
    }
  }
}

TEST_CASE("atom decomposition") {
  const auto g = make_ground("a b c");
  CHECK(atom_decomposition(delta(g)).empty());
  const auto d = atom_decomposition(atom_e(g, "a", "b"));
  REQUIRE(d.size() == 2);
  CHECK(std::find(d.begin(), d.end(), atom_q(g, "a", "b")) != d.end());
  CHECK(std::find(d.begin(), d.end(), atom_q(g, "b", "a")) != d.end());
  for (const auto& m : oracle::all_quasiorders(3)) {
    const auto r = oracle::to_relation(g, m);
    Relation acc = delta(g);
    for (const auto& a : atom_decomposition(r)) {
      acc = join(acc, a);
    }
    REQUIRE(acc == r);
  }
}

TEST_CASE("permutations") {
  const auto g = make_ground("a b c");
  const std::vector<std::size_t> id{0, 1, 2};
  const std::vector<std::size_t> swap{1, 0, 2};
  for (const auto& m : oracle::all_quasiorders(3)) {
    const auto r = oracle::to_relation(g, m);
    REQUIRE(apply_permutation(r, id) == r);
  }
  CHECK(apply_permutation(atom_q(g, "a", "b"), swap) == atom_q(g, "b", "a"));

  std::mt19937_64 rng(3);
  const auto g5 = make_ground(5);
  for (int t = 0; t < 500; ++t) {
    const auto r = oracle::to_relation(g5, oracle::random_quasiorder(5, rng));
    const auto s = oracle::to_relation(g5, oracle::random_quasiorder(5, rng));
    const auto p = random_perm(5, rng);
    REQUIRE(apply_permutation(join(r, s), p) ==
            join(apply_permutation(r, p), apply_permutation(s, p)));
  }
}

TEST_CASE("restriction") {
  const auto b = make_ground(7);
  const std::vector<std::size_t> a{0, 2, 3, 5, 6};
  const auto r0 = restrict(delta(b), a);
  CHECK(r0 == delta(r0.ground()));

  const auto o = odd_generators(11);
  std::vector<std::size_t> all(11);
  std::iota(all.begin(), all.end(), 0);
  const auto rd = restrict(o.get("delta"), all);
  CHECK(oracle::of(rd) == oracle::of(o.get("delta")));

  // Random members of Quo|_B A: pairs only inside A.
  std::mt19937_64 rng(5);
  auto inside = [&] {
    const auto m = oracle::random_quasiorder(5, rng);
    std::vector<ElementPair> pairs;
    for (std::size_t i = 0; i < 5; ++i) {
      for (std::size_t j = 0; j < 5; ++j) {
        if (i != j && m[i][j]) {
          pairs.emplace_back(a[i], a[j]);
        }
      }
    }
    return Relation::from_pairs(b, pairs);
  };
  for (int t = 0; t < 200; ++t) {
    const auto r = inside();
    const auto s = inside();
    REQUIRE(stays_inside(r, a));
    const auto lhs = restrict(join(r, s), a);
    const auto rhs = join(restrict(r, a), restrict(s, a));
    REQUIRE(oracle::of(lhs) == oracle::of(rhs));
  }
}

TEST_CASE("json round trip") {
  const auto f = quo6_generators();
  for (const auto& [name, r] : f.members) {
    const auto j = to_json(r);
    CHECK(relation_from_json(j) .key() == r.key());
    CHECK(j["n"] == 6);
  }
  CHECK_THROWS(relation_from_json(nlohmann::json{{"n", 2}, {"labels", {"a"}}, {"pairs", {}}}));
}
