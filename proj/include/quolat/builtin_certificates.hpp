#ifndef QUOLAT_BUILTIN_CERTIFICATES_HPP
#define QUOLAT_BUILTIN_CERTIFICATES_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "quolat/certificate.hpp"

namespace quolat {

// Derives every q-atom from the e-atoms and one non-symmetric member rho,
// arranged on a cycle a_0..a_{n-1} with (a_0,a_1) in rho and (a_1,a_0) not:
// one atom assertion for q(a_0,a_1), then dpp steps for the remaining edge
// directions and the non-adjacent pairs. `cycle` lists element indices; by
// default it starts at the first asymmetric pair of rho. Assumes all
// e-atoms already lie in S. Throws std::invalid_argument for n < 3, a
// symmetric rho or a bad cycle.
std::vector<Step> kulin_derivation(const GroundPtr& ground, const Relation& rho,
                                   const std::string& rho_name,
                                   std::optional<std::vector<std::size_t>> cycle = {});

// Six-element certificate: 25 atom steps and a closing closure for the
// remaining q-atoms.
Certificate quo6_certificate();
// n = 2k+1 >= 11 and n = 2k+2 >= 14. Lemma citation mode defaults to
// exhaustive for k <= 5 and small-k-validated above.
Certificate odd_certificate(std::size_t n, std::optional<CiteMode> mode = {});
Certificate even_certificate(std::size_t n, std::optional<CiteMode> mode = {});

// Ground x0..x{n-1} with every e-atom and rho = q(x0,x1) as generators,
// followed by the cycle derivation. n >= 3.
Certificate kulin_certificate(std::size_t n);

// "quo6", "odd:N", "even:N", "kulin:N". Throws std::invalid_argument.
Certificate builtin_certificate(std::string_view name);

// Largest k for which a Zadori configuration is checked by closure.
inline constexpr std::size_t kExhaustiveZadoriK = 5;

}  // namespace quolat

#endif  // QUOLAT_BUILTIN_CERTIFICATES_HPP
