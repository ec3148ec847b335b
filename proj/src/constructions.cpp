#include "quolat/constructions.hpp"

#include <charconv>
#include <stdexcept>

namespace quolat {

const Relation& GeneratorFamily::get(std::string_view name) const {
  for (const auto& [n, r] : members) {
    if (n == name) {
      return r;
    }
  }
  for (const auto& [n, r] : auxiliaries) {
    if (n == name) {
      return r;
    }
  }
  throw std::out_of_range("family " + this->name + " has no relation named '" +
                          std::string(name) + "'");
}

std::vector<Relation> GeneratorFamily::generators() const {
  std::vector<Relation> out;
  for (const auto& m : members) {
    out.push_back(m.second);
  }
  return out;
}

namespace {

Relation join_all(const GroundPtr& g, std::initializer_list<Relation> rs) {
  Relation acc = delta(g);
  for (const auto& r : rs) {
    acc = join(acc, r);
  }
  return acc;
}

// Finds the unique comparable pair among the members.
GeneratorFamily finish(std::string name, GroundPtr ground, std::vector<NamedRelation> members,
                       std::vector<NamedRelation> auxiliaries) {
  GeneratorFamily f{std::move(name), std::move(ground), std::move(members),
                    std::move(auxiliaries), {}};
  std::size_t found = 0;
  for (std::size_t i = 0; i < f.members.size(); ++i) {
    for (std::size_t j = 0; j < f.members.size(); ++j) {
      if (i == j) {
        continue;
      }
      const auto& [ni, ri] = f.members[i];
      const auto& [nj, rj] = f.members[j];
      if (ri.is_below(rj) && !(ri == rj)) {
        f.comparable_pair = {ni, nj};
        ++found;
      }
    }
  }
  if (found != 1) {
    throw std::logic_error("family " + f.name + " has " + std::to_string(found) +
                           " comparable member pairs, expected exactly one");
  }
  return f;
}

std::size_t parse_size(std::string_view digits, std::string_view whole) {
  std::size_t n = 0;
  auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), n);
  if (ec != std::errc() || ptr != digits.data() + digits.size() || digits.empty()) {
    throw std::invalid_argument("bad family size in '" + std::string(whole) + "'");
  }
  return n;
}

}  // namespace

ZadoriConfig zadori(std::size_t k, std::vector<std::string> extra) {
  if (k < 2) {
    throw std::invalid_argument("a Zadori configuration needs k >= 2");
  }
  std::vector<std::string> labels;
  for (std::size_t i = 0; i <= k; ++i) {
    labels.push_back("a" + std::to_string(i));
  }
  for (std::size_t i = 0; i < k; ++i) {
    labels.push_back("b" + std::to_string(i));
  }
  const std::size_t support_size = labels.size();
  for (auto& e : extra) {
    labels.push_back(std::move(e));
  }
  auto g = make_ground(std::move(labels));
  std::vector<std::size_t> a;
  std::vector<std::size_t> b;
  std::vector<std::size_t> extra_ids;
  for (std::size_t i = 0; i <= k; ++i) {
    a.push_back(i);
  }
  for (std::size_t i = 0; i < k; ++i) {
    b.push_back(k + 1 + i);
  }
  std::vector<std::size_t> support = a;
  support.insert(support.end(), b.begin(), b.end());
  for (std::size_t i = support_size; i < g->size(); ++i) {
    extra_ids.push_back(i);
  }

  Relation alpha = delta(g);
  for (std::size_t i = 1; i <= k; ++i) {
    alpha = join(alpha, atom_e(g, a[i - 1], a[i]));
  }
  for (std::size_t i = 1; i < k; ++i) {
    alpha = join(alpha, atom_e(g, b[i - 1], b[i]));
  }
  Relation beta = delta(g);
  for (std::size_t i = 0; i < k; ++i) {
    beta = join(beta, atom_e(g, a[i], b[i]));
  }
  Relation gamma = delta(g);
  for (std::size_t i = 1; i <= k; ++i) {
    gamma = join(gamma, atom_e(g, a[i], b[i - 1]));
  }
  Relation eps0 = atom_e(g, a[0], b[0]);
  Relation eta = atom_e(g, a[k], b[k - 1]);
  return ZadoriConfig{k,
                      std::move(g),
                      std::move(a),
                      std::move(b),
                      std::move(support),
                      std::move(extra_ids),
                      std::move(alpha),
                      std::move(beta),
                      std::move(gamma),
                      std::move(eps0),
                      std::move(eta)};
}

GeneratorFamily quo6_generators() {
  auto g = make_ground("a b c d f g");
  auto e = [&](const char* x, const char* y) { return atom_e(g, x, y); };
  Relation alpha = join(e("d", "f"), e("f", "g"));
  Relation beta = join_all(g, {alpha, e("b", "c"), atom_q(g, "b", "a")});
  Relation gamma = join_all(g, {e("a", "b"), e("a", "d"), e("c", "f")});
  Relation delta_ = join_all(g, {e("b", "c"), e("c", "g"), e("a", "f")});
  return finish("quo6", g,
                {{"alpha", alpha}, {"beta", beta}, {"gamma", gamma}, {"delta", delta_}}, {});
}

GeneratorFamily quo3_generators() {
  auto g = make_ground("a b c");
  return finish("quo3", g,
                {{"q_ab", atom_q(g, "a", "b")},
                 {"e_ab", atom_e(g, "a", "b")},
                 {"e_bc", atom_e(g, "b", "c")},
                 {"e_ca", atom_e(g, "c", "a")}},
                {});
}

GeneratorFamily equ6_generators() {
  const auto quo6 = quo6_generators();
  const auto& g = quo6.ground;
  Relation beta_star = join(quo6.get("beta"), atom_q(g, "a", "b"));
  return finish("equ6", g,
                {{"alpha", quo6.get("alpha")},
                 {"beta_star", beta_star},
                 {"gamma", quo6.get("gamma")},
                 {"delta", quo6.get("delta")}},
                {{"beta", quo6.get("beta")}});
}

std::size_t odd_k(std::size_t n) {
  if (n % 2 == 0 || n < 11) {
    throw std::invalid_argument("odd family needs an odd n >= 11, got " + std::to_string(n));
  }
  return (n - 1) / 2;
}

std::size_t even_k(std::size_t n) {
  if (n % 2 == 1 || n < 14) {
    throw std::invalid_argument("even family needs an even n >= 14, got " + std::to_string(n));
  }
  return (n - 2) / 2;
}

namespace {

struct DeltaParts {
  Relation star;
  Relation main;
  Relation plus;
};

DeltaParts delta_parts(const ZadoriConfig& z) {
  const auto& g = z.ground;
  const std::size_t k = z.k;
  Relation star = join(atom_e(g, z.a[0], z.a[k]), atom_e(g, z.b[0], z.b[k - 1]));
  Relation main = join(star, atom_q(g, z.b[1], z.b[k - 2]));
  Relation plus = join(star, atom_e(g, z.b[1], z.b[k - 2]));
  return {std::move(star), std::move(main), std::move(plus)};
}

}  // namespace

GeneratorFamily odd_generators(std::size_t n) {
  const std::size_t k = odd_k(n);
  const auto z = zadori(k);
  auto d = delta_parts(z);
  return finish("odd:" + std::to_string(n), z.ground,
                {{"alpha", z.alpha}, {"beta", z.beta}, {"gamma", z.gamma}, {"delta", d.main}},
                {{"delta_star", d.star}, {"delta_plus", d.plus}, {"eps0", z.eps0}, {"eta", z.eta}});
}

GeneratorFamily even_generators(std::size_t n) {
  const std::size_t k = even_k(n);
  const auto z = zadori(k, {"c"});
  const auto& g = z.ground;
  const std::size_t c = z.extra.front();
  auto d = delta_parts(z);
  Relation beta_sharp = join(z.beta, atom_e(g, z.b[1], c));
  Relation gamma_sharp = join(z.gamma, atom_e(g, z.b[k - 3], c));
  return finish("even:" + std::to_string(n), g,
                {{"alpha", z.alpha},
                 {"beta_sharp", beta_sharp},
                 {"gamma_sharp", gamma_sharp},
                 {"delta", d.main}},
                {{"beta", z.beta},
                 {"gamma", z.gamma},
                 {"delta_star", d.star},
                 {"delta_plus", d.plus},
                 {"eps0", z.eps0},
                 {"eta", z.eta}});
}

GeneratorFamily family_by_name(std::string_view name) {
  if (name == "quo6") {
    return quo6_generators();
  }
  if (name == "quo3") {
    return quo3_generators();
  }
  if (name == "equ6") {
    return equ6_generators();
  }
  if (name.starts_with("odd:")) {
    return odd_generators(parse_size(name.substr(4), name));
  }
  if (name.starts_with("even:")) {
    return even_generators(parse_size(name.substr(5), name));
  }
  throw std::invalid_argument("unknown family '" + std::string(name) + "'");
}

}  // namespace quolat
