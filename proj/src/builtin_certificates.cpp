#include "quolat/builtin_certificates.hpp"

#include <algorithm>
#include <charconv>
#include <stdexcept>

#include "quolat/constructions.hpp"

namespace quolat {

namespace {

AtomLiteral lit(StepKind kind, const GroundPtr& g, std::size_t x, std::size_t y) {
  return {kind, g->label(x), g->label(y)};
}

Term t(std::string_view text, const GroundPtr& g) {
  return parse_term(text, g.get());
}

AtomLiteral atom_lit(std::string_view text) {
  const Term a = parse_term(text);
  return {a.kind() == Term::Kind::kAtomQ ? StepKind::kQ : StepKind::kE, a.x(), a.y()};
}

std::vector<AtomLiteral> path(std::initializer_list<std::string_view> atoms) {
  std::vector<AtomLiteral> out;
  for (auto a : atoms) {
    out.push_back(atom_lit(a));
  }
  return out;
}

Step assert_atom(std::string_view lhs, std::string_view atom, const GroundPtr& g) {
  return {AssertAtomStatement{t(lhs, g), atom_lit(atom)}};
}

Step dpp_step(std::string_view target, std::vector<AtomLiteral> first,
              std::vector<AtomLiteral> second) {
  const AtomLiteral a = atom_lit(target);
  return {DppStatement{std::nullopt, a.x, a.y, std::move(first), std::move(second)}};
}

std::string a_(std::size_t i) {
  return "a" + std::to_string(i);
}
std::string b_(std::size_t i) {
  return "b" + std::to_string(i);
}

}  // namespace

std::vector<Step> kulin_derivation(const GroundPtr& ground, const Relation& rho,
                                   const std::string& rho_name,
                                   std::optional<std::vector<std::size_t>> cycle) {
  const std::size_t n = ground->size();
  if (n < 3) {
    throw std::invalid_argument("the cycle derivation needs at least 3 elements");
  }
  if (!same_ground(rho.ground(), ground)) {
    throw std::invalid_argument("rho lives on a different ground set");
  }
  if (!rho.is_quasiorder() || rho.is_symmetric()) {
    throw std::invalid_argument("rho must be a non-symmetric quasiorder");
  }
  std::vector<std::size_t> c;
  if (cycle) {
    c = *cycle;
    std::vector<std::size_t> sorted = c;
    std::sort(sorted.begin(), sorted.end());
    bool ok = sorted.size() == n;
    for (std::size_t i = 0; ok && i < n; ++i) {
      ok = sorted[i] == i;
    }
    if (!ok) {
      throw std::invalid_argument("cycle must list every element once");
    }
    if (!rho.contains(c[0], c[1]) || rho.contains(c[1], c[0])) {
      throw std::invalid_argument("(a_0,a_1) must lie in rho and (a_1,a_0) must not");
    }
  } else {
    std::optional<ElementPair> first;
    for (const auto& [x, y] : rho.off_diagonal_pairs()) {
      if (!rho.contains(y, x)) {
        first = ElementPair{x, y};
        break;
      }
    }
    c = {first->first, first->second};
    for (std::size_t i = 0; i < n; ++i) {
      if (i != first->first && i != first->second) {
        c.push_back(i);
      }
    }
  }
  auto at = [&](std::size_t i) { return c[i % n]; };
  // Path along the cycle from position `from` to `to`, stepping by +1
  // (dir = 1) or -1 (dir = n-1); the step leaving position `q_at` is a
  // q-step, or every step when q_at == n.
  auto walk = [&](std::size_t from, std::size_t to, std::size_t dir, std::size_t q_at) {
    std::vector<AtomLiteral> out;
    for (std::size_t i = from; i % n != to % n; i += dir) {
      const bool q = q_at == n || i % n == q_at;
      out.push_back(lit(q ? StepKind::kQ : StepKind::kE, ground, at(i), at(i + dir)));
    }
    return out;
  };
  auto dpp_of = [&](std::size_t x, std::size_t y, std::vector<AtomLiteral> p1,
                    std::vector<AtomLiteral> p2) {
    return Step{DppStatement{std::nullopt, ground->label(at(x)), ground->label(at(y)),
                             std::move(p1), std::move(p2)}};
  };
  const std::size_t back = n - 1;  // one step clockwise
  std::vector<Step> out;
  out.push_back(
      {AssertAtomStatement{Term::meet(Term::atom(StepKind::kE, ground->label(at(0)),
                                                 ground->label(at(1))),
                                      Term::symbol(rho_name)),
                           lit(StepKind::kQ, ground, at(0), at(1))}});
  // Clockwise edges i+1 -> i, the long way round uses q(a_0,a_1).
  for (std::size_t i = 1; i < n; ++i) {
    out.push_back(dpp_of(i + 1, i, {lit(StepKind::kE, ground, at(i + 1), at(i))},
                         walk(i + 1, i + n, 1, 0)));
  }
  // Counterclockwise edges i -> i+1, the long way round uses q(a_0,a_{n-1});
  // for the edge ending at a_0 it uses q(a_2,a_1).
  for (std::size_t i = 1; i < n; ++i) {
    const std::size_t q_at = i == n - 1 ? 2 : 0;
    out.push_back(dpp_of(i, i + 1, {lit(StepKind::kE, ground, at(i), at(i + 1))},
                         walk(i + n, i + 1, back, q_at)));
  }
  // The remaining edge direction a_1 -> a_0, using q(a_1,a_2).
  out.push_back(dpp_of(1, 0, {lit(StepKind::kE, ground, at(1), at(0))}, walk(1, n, 1, 1)));
  // Non-adjacent pairs: both ways round, all steps directed.
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const std::size_t d = (j + n - i) % n;
      if (d < 2 || d > n - 2) {
        continue;
      }
      out.push_back(dpp_of(i, j, walk(i, j, 1, n), walk(i + n, j, back, n)));
    }
  }
  return out;
}

Certificate quo6_certificate() {
  const auto fam = quo6_generators();
  const auto& g = fam.ground;
  Certificate c;
  c.ground = g;
  c.generators = {{"alpha", t("e(d,f) | e(f,g)", g)},
                  {"beta", t("alpha | e(b,c) | q(b,a)", g)},
                  {"gamma", t("e(a,b) | e(a,d) | e(c,f)", g)},
                  {"delta", t("e(b,c) | e(c,g) | e(a,f)", g)}};
  auto blocks = [&](std::string_view term, std::vector<std::vector<std::string>> bl,
                    std::optional<std::vector<std::pair<std::vector<std::string>,
                                                        std::vector<std::string>>>>
                        order = std::nullopt) {
    c.steps.push_back({AssertBlocksStatement{t(term, g), std::move(bl), std::move(order)}});
  };
  blocks("alpha", {{"d", "f", "g"}});
  blocks("beta", {{"b", "c"}, {"d", "f", "g"}}, {{{{"b", "c"}, {"a"}}}});
  blocks("gamma", {{"a", "b", "d"}, {"c", "f"}});
  blocks("delta", {{"a", "f"}, {"b", "c", "g"}});
  auto& s = c.steps;
  s.push_back(assert_atom("beta & delta", "e(b,c)", g));
  s.push_back(assert_atom("beta & gamma", "q(b,a)", g));
  s.push_back(assert_atom("alpha & (gamma | e(b,c))", "e(d,f)", g));
  s.push_back(assert_atom("alpha & (delta | q(b,a))", "q(g,f)", g));
  s.push_back(assert_atom("gamma & (e(d,f) | delta)", "e(a,d)", g));
  s.push_back(assert_atom("delta & (q(g,f) | gamma)", "q(g,c)", g));
  s.push_back(assert_atom("delta & (e(a,d) | e(d,f))", "e(a,f)", g));
  s.push_back(dpp_step("q(g,a)", path({"q(g,f)", "e(f,a)"}),
                       path({"q(g,c)", "e(c,b)", "q(b,a)"})));
  s.push_back(dpp_step("q(g,d)", path({"q(g,f)", "e(f,d)"}), path({"q(g,a)", "e(a,d)"})));
  blocks("delta | q(g,d)", {{"a", "f"}, {"b", "c", "g"}}, {{{{"b", "c", "g"}, {"d"}}}});
  s.push_back(assert_atom("(q(b,a) | e(a,d)) & (delta | q(g,d))", "q(b,d)", g));
  s.push_back(assert_atom("(q(g,c) | e(c,b)) & (q(g,d) | gamma)", "q(g,b)", g));
  s.push_back(dpp_step("q(b,f)", path({"q(b,a)", "e(a,f)"}), path({"q(b,d)", "e(d,f)"})));
  s.push_back(assert_atom("(e(c,b) | q(b,f)) & gamma", "q(c,f)", g));
  s.push_back(assert_atom("e(b,c) & (q(b,f) | gamma)", "q(b,c)", g));
  s.push_back(assert_atom("e(d,f) & (q(b,f) | gamma)", "q(d,f)", g));
  s.push_back(assert_atom("e(a,f) & (q(b,f) | gamma)", "q(a,f)", g));
  s.push_back(dpp_step("q(d,a)", path({"e(d,a)"}), path({"q(d,f)", "e(f,a)"})));
  s.push_back(dpp_step("q(f,a)", path({"e(f,a)"}), path({"e(f,d)", "q(d,a)"})));
  s.push_back(assert_atom("(q(b,f) | alpha) & delta", "q(b,g)", g));
  s.push_back(dpp_step("q(a,d)", path({"e(a,d)"}), path({"q(a,f)", "e(f,d)"})));
  s.push_back(dpp_step("q(f,d)", path({"e(f,d)"}), path({"q(f,a)", "q(a,d)"})));
  s.push_back(assert_atom("(e(c,b) | q(b,g)) & (q(c,f) | alpha)", "q(c,g)", g));
  s.push_back(dpp_step("q(c,b)", path({"q(c,g)", "q(g,b)"}), path({"e(c,b)"})));
  s.push_back(assert_atom("alpha & (gamma | q(c,g))", "q(f,g)", g));
  s.push_back(assert_atom("(q(a,f) | q(f,g) | q(g,b)) & gamma", "q(a,b)", g));
  c.conclusion = {Conclusion::Kind::kGeneratesQuo, {}, 300000};
  return c;
}

namespace {

using LabelBlock = std::vector<std::string>;

CiteMode default_mode(std::size_t k, std::optional<CiteMode> mode) {
  if (mode) {
    return *mode;
  }
  return k <= kExhaustiveZadoriK ? CiteMode::kExhaustive : CiteMode::kSmallKValidated;
}

// Shared opening of the odd and even certificates: generators, auxiliary
// deltas, and the block claim that isolates e(a_0,b_0).
void zadori_opening(Certificate& c, const GeneratorFamily& fam, std::size_t k, bool even) {
  const auto& g = fam.ground;
  c.ground = g;
  for (const auto& [name, rel] : fam.members) {
    if (name == "beta_sharp") {
      c.generators.emplace_back(name, Term::join(term_for(fam.get("beta")),
                                                 t("e(b1,c)", g)));
    } else if (name == "gamma_sharp") {
      c.generators.emplace_back(
          name, Term::join(term_for(fam.get("gamma")), t("e(" + b_(k - 3) + ",c)", g)));
    } else {
      c.generators.emplace_back(name, term_for(rel));
    }
  }
  const std::string ek = "e(" + a_(0) + "," + a_(k) + ") | e(" + b_(0) + "," + b_(k - 1) + ")";
  c.steps.push_back({AuxStatement{"delta_star", t(ek, g)}});
  c.steps.push_back(
      {AuxStatement{"delta_plus", t("delta_star | e(b1," + b_(k - 2) + ")", g)}});
  std::vector<LabelBlock> bl{{a_(0), a_(1), a_(k), b_(0), b_(k - 1)},
                             {a_(2), a_(k - 1), b_(1), b_(k - 2)}};
  const std::size_t last = even ? k - 3 : k - 2;
  if (even) {
    bl.push_back({a_(k - 2), b_(k - 3), "c"});
  }
  for (std::size_t i = 3; i <= last; ++i) {
    bl.push_back({a_(i), b_(i - 1)});
  }
  const std::string gname = even ? "gamma_sharp" : "gamma";
  const std::string bname = even ? "beta_sharp" : "beta";
  c.steps.push_back({AssertBlocksStatement{t("delta_plus | " + gname, g), bl, std::nullopt}});
  c.steps.push_back(
      {AssertEqStatement{t("e(" + a_(0) + "," + b_(0) + ")", g),
                         t(bname + " & (delta_plus | " + gname + ")", g)}});
  c.steps.push_back({LetStatement{"eps0", t(bname + " & (delta | " + gname + ")", g)}});
  c.steps.push_back(assert_atom("eps0", "e(" + a_(0) + "," + b_(0) + ")", g));
}

void zadori_middle(Certificate& c, std::size_t k, CiteMode mode) {
  const auto& g = c.ground;
  c.steps.push_back({LetStatement{"eta", t("gamma & (delta | beta)", g)}});
  c.steps.push_back(assert_atom("eta", "e(" + a_(k) + "," + b_(k - 1) + ")", g));
  c.steps.push_back({CiteStatement{"zadori-3.2", {{"k", std::to_string(k)}}, mode}});
}

}  // namespace

Certificate odd_certificate(std::size_t n, std::optional<CiteMode> mode) {
  const std::size_t k = odd_k(n);
  const auto fam = odd_generators(n);
  Certificate c;
  zadori_opening(c, fam, k, false);
  zadori_middle(c, k, default_mode(k, mode));
  for (auto& s : kulin_derivation(c.ground, fam.get("delta"), "delta")) {
    c.steps.push_back(std::move(s));
  }
  c.conclusion = {Conclusion::Kind::kGeneratesQuo, {}, std::nullopt};
  return c;
}

Certificate even_certificate(std::size_t n, std::optional<CiteMode> mode) {
  const std::size_t k = even_k(n);
  const auto fam = even_generators(n);
  Certificate c;
  zadori_opening(c, fam, k, true);
  const auto& g = c.ground;
  const std::string bk = b_(k - 3);
  c.steps.push_back({LetStatement{"beta", t("(eps0 | alpha) & beta_sharp", g)}});
  c.steps.push_back({LetStatement{"gamma", t("(eps0 | alpha) & gamma_sharp", g)}});
  zadori_middle(c, k, default_mode(k, mode));
  // The merged block through c comes from the sharp relations.
  std::vector<LabelBlock> bl{{a_(2), a_(k - 2), b_(1), bk, "c"}};
  for (std::size_t i = 1; i <= k; ++i) {
    if (i != 2 && i != k - 2) {
      bl.push_back({a_(i), b_(i - 1)});
    }
  }
  c.steps.push_back(
      {AssertBlocksStatement{t("e(b1," + bk + ") | gamma_sharp", g), bl, std::nullopt}});
  std::vector<LabelBlock> bl2{{a_(1), a_(k - 3), b_(1), bk, "c"}};
  for (std::size_t i = 0; i < k; ++i) {
    if (i != 1 && i != k - 3) {
      bl2.push_back({a_(i), b_(i)});
    }
  }
  c.steps.push_back(
      {AssertBlocksStatement{t("e(b1," + bk + ") | beta_sharp", g), bl2, std::nullopt}});
  c.steps.push_back(assert_atom("beta_sharp & (e(b1," + bk + ") | gamma_sharp)", "e(b1,c)", g));
  c.steps.push_back(
      assert_atom("gamma_sharp & (e(b1," + bk + ") | beta_sharp)", "e(" + bk + ",c)", g));
  const auto z = zadori(k, {"c"});
  for (auto x : z.support) {
    const std::string& xl = g->label(x);
    if (xl == "b1" || xl == bk) {
      continue;
    }
    c.steps.push_back(assert_atom("(e(" + xl + ",b1) | e(b1,c)) & (e(" + xl + "," + bk +
                                      ") | e(" + bk + ",c))",
                                  "e(" + xl + ",c)", g));
  }
  c.steps.push_back(
      {CiteStatement{"kulin-2.4", {{"rho", "delta"}}, CiteMode::kExhaustive}});
  c.conclusion = {Conclusion::Kind::kGeneratesQuo, {}, std::nullopt};
  return c;
}

Certificate kulin_certificate(std::size_t n) {
  if (n < 3 || n > kMaxGroundSize) {
    throw std::invalid_argument("kulin certificate needs 3 <= n <= 64, got " +
                                std::to_string(n));
  }
  Certificate c;
  c.ground = make_ground(n);
  const auto& g = c.ground;
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = x + 1; y < n; ++y) {
      c.generators.emplace_back("e_" + g->label(x) + "_" + g->label(y),
                                Term::atom(StepKind::kE, g->label(x), g->label(y)));
    }
  }
  c.generators.emplace_back("rho", Term::atom(StepKind::kQ, g->label(0), g->label(1)));
  c.steps = kulin_derivation(g, atom_q(g, 0, 1), "rho");
  c.conclusion = {Conclusion::Kind::kGeneratesQuo, {}, std::nullopt};
  return c;
}

Certificate builtin_certificate(std::string_view name) {
  if (name == "quo6") {
    return quo6_certificate();
  }
  auto size_of = [&](std::string_view digits) {
    std::size_t n = 0;
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), n);
    if (ec != std::errc() || ptr != digits.data() + digits.size() || digits.empty()) {
      throw std::invalid_argument("bad certificate size in '" + std::string(name) + "'");
    }
    return n;
  };
  if (name.starts_with("odd:")) {
    return odd_certificate(size_of(name.substr(4)));
  }
  if (name.starts_with("even:")) {
    return even_certificate(size_of(name.substr(5)));
  }
  if (name.starts_with("kulin:")) {
    return kulin_certificate(size_of(name.substr(6)));
  }
  throw std::invalid_argument("unknown certificate '" + std::string(name) + "'");
}

}  // namespace quolat
