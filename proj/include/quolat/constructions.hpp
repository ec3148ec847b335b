#ifndef QUOLAT_CONSTRUCTIONS_HPP
#define QUOLAT_CONSTRUCTIONS_HPP

#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "quolat/relation.hpp"

namespace quolat {

using NamedRelation = std::pair<std::string, Relation>;

// A four-element generating set together with the named auxiliary
// relations its correctness argument uses.
struct GeneratorFamily {
  std::string name;
  GroundPtr ground;
  // The four generators, in presentation order.
  std::vector<NamedRelation> members;
  std::vector<NamedRelation> auxiliaries;
  // Lower and upper member of the unique comparable pair, found by
  // inclusion tests.
  std::pair<std::string, std::string> comparable_pair;

  // Looks in members, then auxiliaries. Throws std::out_of_range.
  const Relation& get(std::string_view name) const;
  std::vector<Relation> generators() const;
};

// Two rows a_0..a_k and b_0..b_{k-1} with the horizontal (alpha), slope -1
// (beta) and slope +1 (gamma) equivalences and the corner atoms
// eps0 = e(a_0,b_0), eta = e(a_k,b_{k-1}).
struct ZadoriConfig {
  std::size_t k = 0;
  GroundPtr ground;
  std::vector<std::size_t> a;        // indices of a_0..a_k
  std::vector<std::size_t> b;        // indices of b_0..b_{k-1}
  std::vector<std::size_t> support;  // a then b
  std::vector<std::size_t> extra;    // ground elements outside the support
  Relation alpha;
  Relation beta;
  Relation gamma;
  Relation eps0;
  Relation eta;

  std::vector<Relation> generators() const { return {alpha, beta, gamma, eps0, eta}; }
};

// Ground set a_0..a_k, b_0..b_{k-1} followed by `extra`. Throws
// std::invalid_argument for k < 2.
ZadoriConfig zadori(std::size_t k, std::vector<std::string> extra = {});

// alpha, beta, gamma, delta on {a,b,c,d,f,g}; alpha < beta.
GeneratorFamily quo6_generators();
// q(a,b), e(a,b), e(b,c), e(c,a) on {a,b,c}.
GeneratorFamily quo3_generators();
// alpha, beta* = beta v q(a,b), gamma, delta; all equivalences.
GeneratorFamily equ6_generators();
// n = 2k+1 >= 11 on the support of a Zadori configuration; auxiliaries
// delta_star, delta_plus, eps0, eta.
GeneratorFamily odd_generators(std::size_t n);
// n = 2k+2 >= 14: support plus c; members alpha, beta_sharp, gamma_sharp,
// delta; auxiliaries beta, gamma, delta_star, delta_plus, eps0, eta.
GeneratorFamily even_generators(std::size_t n);

// "quo6", "quo3", "equ6", "odd:N", "even:N". Throws std::invalid_argument.
GeneratorFamily family_by_name(std::string_view name);

// Zadori k of an odd family size (n = 2k+1) or an even one (n = 2k+2).
std::size_t odd_k(std::size_t n);
std::size_t even_k(std::size_t n);

}  // namespace quolat

#endif  // QUOLAT_CONSTRUCTIONS_HPP
