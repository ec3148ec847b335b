#include "quolat/certificate.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <map>
#include <mutex>
#include <set>
#include <unordered_set>

#include "quolat/block_poset.hpp"
#include "quolat/builtin_certificates.hpp"
#include "quolat/closure.hpp"
#include "quolat/constructions.hpp"
#include "quolat/dpp.hpp"

namespace quolat {

std::string to_string(CiteMode m) {
  switch (m) {
    case CiteMode::kExhaustive:
      return "exhaustive";
    case CiteMode::kSmallKValidated:
      return "small-k-validated";
    case CiteMode::kTrusted:
      return "trusted";
  }
  return "?";
}

CiteMode cite_mode_from_string(std::string_view s) {
  if (s == "exhaustive") {
    return CiteMode::kExhaustive;
  }
  if (s == "small-k-validated") {
    return CiteMode::kSmallKValidated;
  }
  if (s == "trusted") {
    return CiteMode::kTrusted;
  }
  throw std::invalid_argument("unknown citation mode '" + std::string(s) + "'");
}

// ---------------------------------------------------------------- printing

namespace {

std::string atom_text(const AtomLiteral& a) {
  return std::string(a.kind == StepKind::kQ ? "q(" : "e(") + a.x + "," + a.y + ")";
}

std::string path_text(const std::vector<AtomLiteral>& path) {
  std::string out = "[";
  for (std::size_t i = 0; i < path.size(); ++i) {
    out += (i == 0 ? "" : ", ") + atom_text(path[i]);
  }
  return out + "]";
}

std::string block_text(const std::vector<std::string>& block) {
  std::string out = "{";
  for (std::size_t i = 0; i < block.size(); ++i) {
    out += (i == 0 ? "" : " ") + block[i];
  }
  return out + "}";
}

std::string conclusion_text(const Conclusion& c) {
  std::string out = "conclude ";
  switch (c.kind) {
    case Conclusion::Kind::kGeneratesQuo:
      out += "generates-quo";
      break;
    case Conclusion::Kind::kGeneratesEqu:
      out += "generates-equ";
      break;
    case Conclusion::Kind::kDerivesAtomSet:
      out += "derives-atom-set";
      for (const auto& a : c.atoms) {
        out += " " + atom_text(a);
      }
      break;
  }
  if (c.closure_budget) {
    out += " by closure max-elements=" + std::to_string(*c.closure_budget);
  }
  return out;
}

struct StatementPrinter {
  std::string operator()(const AuxStatement& s) const {
    return "aux " + s.name + " = " + to_string(s.term);
  }
  std::string operator()(const LetStatement& s) const {
    return "let " + s.name + " = " + to_string(s.term);
  }
  std::string operator()(const AssertEqStatement& s) const {
    return "assert " + to_string(s.lhs) + " == " + to_string(s.rhs);
  }
  std::string operator()(const AssertAtomStatement& s) const {
    return "assert " + to_string(s.lhs) + " == " + atom_text(s.atom);
  }
  std::string operator()(const AssertBlocksStatement& s) const {
    std::string out = "assert blocks(" + to_string(s.term) + ") ==";
    for (const auto& b : s.blocks) {
      out += " " + block_text(b);
    }
    if (s.order) {
      out += " order";
      for (std::size_t i = 0; i < s.order->size(); ++i) {
        const auto& [lo, hi] = (*s.order)[i];
        out += (i == 0 ? " " : ", ") + block_text(lo) + " < " + block_text(hi);
      }
    }
    return out;
  }
  std::string operator()(const DppStatement& s) const {
    std::string out = "dpp ";
    if (s.name) {
      out += *s.name + " = ";
    }
    return out + "q(" + s.x + "," + s.y + ") via " + path_text(s.first) + " and " +
           path_text(s.second);
  }
  std::string operator()(const CiteStatement& s) const {
    std::string out = "cite " + s.lemma;
    for (const auto& [k, v] : s.params) {
      out += " " + k + "=" + v;
    }
    return out + " mode=" + to_string(s.mode);
  }
};

}  // namespace

std::string print_statement(const Statement& s) {
  return std::visit(StatementPrinter{}, s);
}

std::string print_certificate(const Certificate& c) {
  std::string out = "ground";
  for (const auto& l : c.ground->labels()) {
    out += " " + l;
  }
  out += "\n";
  for (const auto& [name, term] : c.generators) {
    out += "gen " + name + " = " + to_string(term) + "\n";
  }
  for (const auto& step : c.steps) {
    out += print_statement(step.statement) + "\n";
  }
  out += conclusion_text(c.conclusion) + "\n";
  return out;
}

// ----------------------------------------------------------------- parsing

namespace {

bool is_word_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_' || c == '-' || c == '.';
}

// Cursor over one source line.
class LineParser {
 public:
  LineParser(std::string_view text, std::size_t line, const GroundSet* ground)
      : text_(text), line_(line), ground_(ground) {}

  [[noreturn]] void fail(const std::string& message) const { fail_at(pos_, message); }
  [[noreturn]] void fail_at(std::size_t pos, const std::string& message) const {
    throw ParseError(line_, pos + 1, message);
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])) != 0) {
      ++pos_;
    }
  }
  bool at_end() {
    skip_space();
    return pos_ >= text_.size();
  }
  void expect_end() {
    if (!at_end()) {
      fail("unexpected '" + std::string(text_.substr(pos_)) + "'");
    }
  }
  bool accept(std::string_view s) {
    skip_space();
    if (text_.substr(pos_).starts_with(s)) {
      pos_ += s.size();
      return true;
    }
    return false;
  }
  void expect(std::string_view s) {
    if (!accept(s)) {
      fail("expected '" + std::string(s) + "'");
    }
  }
  bool peek(std::string_view s) {
    skip_space();
    return text_.substr(pos_).starts_with(s);
  }
  std::string word() {
    skip_space();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && is_word_char(text_[pos_]) && text_[pos_] != '=') {
      ++pos_;
    }
    if (start == pos_) {
      fail(pos_ < text_.size() ? "unexpected '" + std::string(1, text_[pos_]) + "'"
                               : "unexpected end of line");
    }
    return std::string(text_.substr(start, pos_ - start));
  }
  std::string name() {
    skip_space();
    const std::size_t at = pos_;
    std::string w = word();
    for (char c : w) {
      if (c == '-' || c == '.') {
        fail_at(at, "bad name '" + w + "'");
      }
    }
    return w;
  }
  std::string label() {
    skip_space();
    const std::size_t at = pos_;
    std::string l = name();
    if (ground_ != nullptr && !ground_->contains(l)) {
      fail_at(at, "unknown label '" + l + "'");
    }
    return l;
  }
  AtomLiteral atom() {
    skip_space();
    AtomLiteral a;
    if (accept("q(")) {
      a.kind = StepKind::kQ;
    } else if (accept("e(")) {
      a.kind = StepKind::kE;
    } else {
      fail("expected an atom q(x,y) or e(x,y)");
    }
    a.x = label();
    expect(",");
    a.y = label();
    expect(")");
    return a;
  }
  std::vector<AtomLiteral> path() {
    expect("[");
    std::vector<AtomLiteral> out;
    if (accept("]")) {
      return out;
    }
    do {
      out.push_back(atom());
    } while (accept(","));
    expect("]");
    return out;
  }
  std::vector<std::string> block() {
    expect("{");
    std::vector<std::string> out;
    while (!accept("}")) {
      if (at_end()) {
        fail("unterminated block");
      }
      out.push_back(label());
    }
    return out;
  }
  // A term running up to `stop` (or the end of the line); `stop` is matched
  // outside parentheses only.
  Term term_until(std::string_view stop) {
    skip_space();
    const std::size_t start = pos_;
    std::size_t depth = 0;
    std::size_t end = text_.size();
    for (std::size_t i = start; i < text_.size(); ++i) {
      if (text_[i] == '(') {
        ++depth;
      } else if (text_[i] == ')') {
        if (depth == 0 && stop == ")") {
          end = i;
          break;
        }
        --depth;
      } else if (depth == 0 && !stop.empty() && stop != ")" &&
                 text_.substr(i).starts_with(stop)) {
        end = i;
        break;
      }
    }
    if (!stop.empty() && end == text_.size()) {
      fail("expected '" + std::string(stop) + "'");
    }
    try {
      Term t = parse_term(text_.substr(start, end - start), ground_);
      pos_ = end;
      return t;
    } catch (const ParseError& e) {
      throw ParseError(line_, start + e.column(), std::string(e.what()).substr(
                                                      std::string(e.what()).find(' ') + 1));
    }
  }
  std::size_t pos() const { return pos_; }

 private:
  std::string_view text_;
  std::size_t line_;
  const GroundSet* ground_;
  std::size_t pos_ = 0;
};

Statement parse_assert(LineParser& p) {
  if (p.accept("blocks(")) {
    AssertBlocksStatement s{p.term_until(")"), {}, std::nullopt};
    p.expect(")");
    p.expect("==");
    while (p.peek("{")) {
      s.blocks.push_back(p.block());
    }
    if (p.accept("order")) {
      s.order.emplace();
      do {
        auto lo = p.block();
        p.expect("<");
        auto hi = p.block();
        s.order->emplace_back(std::move(lo), std::move(hi));
      } while (p.accept(","));
    }
    p.expect_end();
    return s;
  }
  Term lhs = p.term_until("==");
  p.expect("==");
  Term rhs = p.term_until("");
  p.expect_end();
  if (rhs.is_atom()) {
    return AssertAtomStatement{
        std::move(lhs),
        AtomLiteral{rhs.kind() == Term::Kind::kAtomQ ? StepKind::kQ : StepKind::kE, rhs.x(),
                    rhs.y()}};
  }
  return AssertEqStatement{std::move(lhs), std::move(rhs)};
}

Statement parse_dpp(LineParser& p) {
  DppStatement s;
  if (!p.peek("q(")) {
    s.name = p.name();
    p.expect("=");
  }
  AtomLiteral target = p.atom();
  if (target.kind != StepKind::kQ) {
    p.fail("a dpp step derives a q-atom");
  }
  s.x = target.x;
  s.y = target.y;
  p.expect("via");
  s.first = p.path();
  p.expect("and");
  s.second = p.path();
  p.expect_end();
  return s;
}

Statement parse_cite(LineParser& p) {
  CiteStatement s;
  s.lemma = p.word();
  bool mode_seen = false;
  while (!p.at_end()) {
    const std::size_t at = p.pos();
    std::string key = p.word();
    p.expect("=");
    std::string value = p.word();
    if (key == "mode") {
      try {
        s.mode = cite_mode_from_string(value);
      } catch (const std::invalid_argument& e) {
        p.fail_at(at, e.what());
      }
      mode_seen = true;
    } else {
      s.params.emplace_back(std::move(key), std::move(value));
    }
  }
  if (!mode_seen) {
    p.fail("citation needs mode=exhaustive|small-k-validated|trusted");
  }
  return s;
}

Conclusion parse_conclusion(LineParser& p) {
  Conclusion c;
  const std::size_t at = p.pos();
  std::string kind = p.word();
  if (kind == "generates-quo") {
    c.kind = Conclusion::Kind::kGeneratesQuo;
  } else if (kind == "generates-equ") {
    c.kind = Conclusion::Kind::kGeneratesEqu;
  } else if (kind == "derives-atom-set") {
    c.kind = Conclusion::Kind::kDerivesAtomSet;
    while (p.peek("q(") || p.peek("e(")) {
      c.atoms.push_back(p.atom());
    }
  } else {
    p.fail_at(at, "unknown conclusion '" + kind + "'");
  }
  if (p.accept("by")) {
    p.expect("closure");
    p.expect("max-elements");
    p.expect("=");
    const std::size_t num_at = p.pos();
    std::string digits = p.word();
    std::size_t v = 0;
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), v);
    if (ec != std::errc() || ptr != digits.data() + digits.size()) {
      p.fail_at(num_at, "bad number '" + digits + "'");
    }
    c.closure_budget = v;
  }
  p.expect_end();
  return c;
}

}  // namespace

Certificate parse_certificate(std::string_view text) {
  Certificate cert;
  bool concluded = false;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) {
      end = text.size();
    }
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    LineParser p(line, line_no, cert.ground.get());
    if (p.at_end()) {
      continue;
    }
    const std::size_t kw_at = p.pos();
    const std::string keyword = p.word();
    if (!cert.ground && keyword != "ground") {
      p.fail_at(kw_at, "the first statement must be 'ground'");
    }
    if (concluded) {
      p.fail_at(kw_at, "nothing may follow the conclusion");
    }
    if (keyword == "ground") {
      if (cert.ground) {
        p.fail_at(kw_at, "ground declared twice");
      }
      std::vector<std::string> labels;
      while (!p.at_end()) {
        labels.push_back(p.name());
      }
      try {
        cert.ground = make_ground(std::move(labels));
      } catch (const std::invalid_argument& e) {
        p.fail_at(kw_at, e.what());
      }
    } else if (keyword == "gen") {
      std::string name = p.name();
      p.expect("=");
      Term t = p.term_until("");
      cert.generators.emplace_back(std::move(name), std::move(t));
    } else if (keyword == "aux" || keyword == "let") {
      std::string name = p.name();
      p.expect("=");
      Term t = p.term_until("");
      if (keyword == "aux") {
        cert.steps.push_back({AuxStatement{std::move(name), std::move(t)}, line_no});
      } else {
        cert.steps.push_back({LetStatement{std::move(name), std::move(t)}, line_no});
      }
    } else if (keyword == "assert") {
      cert.steps.push_back({parse_assert(p), line_no});
    } else if (keyword == "dpp") {
      cert.steps.push_back({parse_dpp(p), line_no});
    } else if (keyword == "cite") {
      cert.steps.push_back({parse_cite(p), line_no});
    } else if (keyword == "conclude") {
      cert.conclusion = parse_conclusion(p);
      concluded = true;
    } else {
      p.fail_at(kw_at, "unknown statement '" + keyword + "'");
    }
  }
  if (!cert.ground) {
    throw ParseError(line_no, 1, "missing 'ground' statement");
  }
  if (!concluded) {
    throw ParseError(line_no, 1, "missing 'conclude' statement");
  }
  return cert;
}

// ---------------------------------------------------------------- checking

nlohmann::json CheckReport::to_json() const {
  nlohmann::json steps_json = nlohmann::json::array();
  for (const auto& s : steps) {
    nlohmann::json j{{"index", s.index}, {"line", s.line},     {"kind", s.kind},
                     {"text", s.text},   {"passed", s.passed}, {"detail", s.detail}};
    if (s.diff) {
      j["diff"] = *s.diff;
    }
    steps_json.push_back(std::move(j));
  }
  nlohmann::json j{{"passed", passed},
                   {"steps", steps_json},
                   {"conclusion", conclusion},
                   {"conclusion_passed", conclusion_passed},
                   {"conclusion_detail", conclusion_detail},
                   {"q_atoms_derived", q_atoms_derived},
                   {"e_atoms_derived", e_atoms_derived},
                   {"atom_steps", atom_steps}};
  j["failed_step"] = failed_step ? nlohmann::json(*failed_step) : nlohmann::json(nullptr);
  return j;
}

namespace {

class StepFailure : public std::runtime_error {
 public:
  explicit StepFailure(const std::string& what, std::optional<nlohmann::json> diff = {})
      : std::runtime_error(what), diff(std::move(diff)) {}
  std::optional<nlohmann::json> diff;
};

nlohmann::json pair_diff(const Relation& left, const Relation& right) {
  const auto& g = left.ground();
  nlohmann::json lo = nlohmann::json::array();
  nlohmann::json ro = nlohmann::json::array();
  for (std::size_t i = 0; i < left.size(); ++i) {
    for (std::size_t j = 0; j < left.size(); ++j) {
      if (left.contains(i, j) && !right.contains(i, j)) {
        lo.push_back({g->label(i), g->label(j)});
      }
      if (right.contains(i, j) && !left.contains(i, j)) {
        ro.push_back({g->label(i), g->label(j)});
      }
    }
  }
  return {{"left_only", lo}, {"right_only", ro}};
}

std::uint64_t bell_number(std::size_t n) {
  // Bell triangle, saturating.
  std::vector<std::uint64_t> row{1};
  for (std::size_t i = 1; i <= n; ++i) {
    std::vector<std::uint64_t> next{row.back()};
    for (auto v : row) {
      const std::uint64_t s = next.back() + v;
      next.push_back(s < v ? UINT64_MAX : s);
    }
    row = std::move(next);
  }
  return row.front();
}

// Closure check of the Zadori configuration for one k, memoized.
Generation zadori_generates(std::size_t k) {
  static std::mutex mu;
  static std::map<std::size_t, Generation> memo;
  {
    std::lock_guard lock(mu);
    if (auto it = memo.find(k); it != memo.end()) {
      return it->second;
    }
  }
  const auto z = zadori(k);
  const auto gens = z.generators();
  const auto budget = static_cast<std::size_t>(
      std::min<std::uint64_t>(bell_number(2 * k + 1), std::numeric_limits<std::size_t>::max()));
  const auto result = generates_equ(gens, budget);
  std::lock_guard lock(mu);
  memo[k] = result.outcome;
  return result.outcome;
}

class Checker {
 public:
  explicit Checker(const Certificate& c) : cert_(c), g_(c.ground) {}

  CheckReport run() {
    CheckReport report;
    std::size_t index = 0;
    try {
      bind_generators();
    } catch (const std::exception& e) {
      report.conclusion_detail = std::string("generator: ") + e.what();
      finish(report);
      return report;
    }
    for (const auto& step : cert_.steps) {
      StepOutcome out;
      out.index = ++index;
      out.line = step.line;
      out.kind = kind_name(step.statement);
      out.text = print_statement(step.statement);
      try {
        out.detail = std::visit([this](const auto& s) { return apply(s); }, step.statement);
        out.passed = true;
        if (std::holds_alternative<AssertAtomStatement>(step.statement) ||
            std::holds_alternative<DppStatement>(step.statement)) {
          ++report.atom_steps;
        }
      } catch (const StepFailure& f) {
        out.detail = f.what();
        out.diff = f.diff;
      } catch (const std::exception& e) {
        out.detail = e.what();
      }
      report.steps.push_back(out);
      if (!out.passed) {
        report.failed_step = out.index;
        report.conclusion = conclusion_text(cert_.conclusion);
        report.conclusion_detail = "not reached";
        finish(report);
        return report;
      }
    }
    report.conclusion = conclusion_text(cert_.conclusion);
    try {
      report.conclusion_detail = conclude();
      report.conclusion_passed = true;
    } catch (const std::exception& e) {
      report.conclusion_detail = e.what();
    }
    report.passed = report.conclusion_passed;
    finish(report);
    return report;
  }

  // Used by the kulin citation to replay generated steps on a copy.
  void apply_step(const Statement& s) {
    std::visit([this](const auto& st) { return apply(st); }, s);
  }

 private:
  static std::string kind_name(const Statement& s) {
    static const char* names[] = {"aux",           "let", "assert-eq", "assert-atom",
                                  "assert-blocks", "dpp", "cite"};
    return names[s.index()];
  }

  void finish(CheckReport& report) const {
    for (std::size_t x = 0; x < g_->size(); ++x) {
      for (std::size_t y = 0; y < g_->size(); ++y) {
        if (x == y) {
          continue;
        }
        if (known(atom_q(g_, x, y))) {
          ++report.q_atoms_derived;
        }
        if (x < y && known(atom_e(g_, x, y))) {
          ++report.e_atoms_derived;
        }
      }
    }
  }

  void bind_generators() {
    for (const auto& [name, term] : cert_.generators) {
      if (env_.count(name) != 0) {
        throw std::invalid_argument("name '" + name + "' bound twice");
      }
      Relation r = eval_term(term, env_, g_);
      bind(name, r, true);
      generator_values_.push_back(r);
    }
  }

  void bind(const std::string& name, const Relation& r, bool in_s) {
    if (env_.count(name) != 0) {
      throw StepFailure("name '" + name + "' is already bound");
    }
    env_.emplace(name, r);
    in_s_[name] = in_s;
    if (in_s) {
      learn(r);
    }
  }

  void learn(const Relation& r) {
    if (known_keys_.insert(r.key()).second) {
      known_.push_back(r);
    }
  }

  bool known(const Relation& r) const { return known_keys_.count(r.key()) != 0; }

  Relation atom_value(const AtomLiteral& a) const {
    return a.kind == StepKind::kQ ? atom_q(g_, a.x, a.y) : atom_e(g_, a.x, a.y);
  }

  // First leaf of t not known to lie in S, if any.
  std::optional<std::string> outside_s(const Term& t) const {
    switch (t.kind()) {
      case Term::Kind::kSymbol: {
        auto it = in_s_.find(t.name());
        if (it == in_s_.end() || !it->second) {
          return t.name();
        }
        return std::nullopt;
      }
      case Term::Kind::kAtomQ:
      case Term::Kind::kAtomE: {
        const Relation a = t.kind() == Term::Kind::kAtomQ ? atom_q(g_, t.x(), t.y())
                                                          : atom_e(g_, t.x(), t.y());
        if (!known(a)) {
          return to_string(t);
        }
        return std::nullopt;
      }
      case Term::Kind::kMeet:
      case Term::Kind::kJoin:
        if (auto l = outside_s(t.lhs())) {
          return l;
        }
        return outside_s(t.rhs());
    }
    return std::nullopt;
  }

  void require_in_s(const Term& t) const {
    if (auto leaf = outside_s(t)) {
      throw StepFailure(*leaf + " is not known to lie in the generated sublattice");
    }
  }

  std::string apply(const AuxStatement& s) {
    bind(s.name, eval_term(s.term, env_, g_), false);
    return "defined";
  }

  std::string apply(const LetStatement& s) {
    require_in_s(s.term);
    bind(s.name, eval_term(s.term, env_, g_), true);
    return "defined in S";
  }

  std::string apply(const AssertEqStatement& s) {
    const Relation l = eval_term(s.lhs, env_, g_);
    const Relation r = eval_term(s.rhs, env_, g_);
    if (!(l == r)) {
      throw StepFailure("sides differ", pair_diff(l, r));
    }
    if (!outside_s(s.lhs) || !outside_s(s.rhs)) {
      learn(l);
    }
    return "equal";
  }

  std::string apply(const AssertAtomStatement& s) {
    const Relation l = eval_term(s.lhs, env_, g_);
    const Relation a = atom_value(s.atom);
    if (!(l == a)) {
      throw StepFailure("sides differ", pair_diff(l, a));
    }
    require_in_s(s.lhs);
    learn(a);
    return "atom " + atom_text(s.atom) + " derived";
  }

  std::string apply(const AssertBlocksStatement& s) {
    const Relation r = eval_term(s.term, env_, g_);
    std::vector<Block> claimed;
    for (const auto& b : s.blocks) {
      Block ids;
      for (const auto& l : b) {
        ids.push_back(g_->index_of(l));
      }
      claimed.push_back(std::move(ids));
    }
    const Partition want = Partition::with_implied_singletons(g_, claimed);
    const BlockPoset p = induced_order(r);
    if (!(p.partition == want)) {
      throw StepFailure("blocks are " + p.partition.to_string(true) + ", claimed " +
                        want.to_string(true));
    }
    if (s.order) {
      std::set<std::pair<std::size_t, std::size_t>> want_order;
      for (const auto& [lo, hi] : *s.order) {
        const std::size_t bl = p.partition.block_of(g_->index_of(lo.front()));
        const std::size_t bh = p.partition.block_of(g_->index_of(hi.front()));
        for (const auto* blk : {&lo, &hi}) {
          const std::size_t b = blk == &lo ? bl : bh;
          if (blk->size() != p.partition.blocks()[b].size()) {
            throw StepFailure(block_text(*blk) + " is not a block");
          }
          for (const auto& l : *blk) {
            if (p.partition.block_of(g_->index_of(l)) != b) {
              throw StepFailure(block_text(*blk) + " is not a block");
            }
          }
        }
        want_order.emplace(bl, bh);
      }
      const auto covers = p.covers();
      const std::set<std::pair<std::size_t, std::size_t>> have(covers.begin(), covers.end());
      if (have != want_order) {
        throw StepFailure("block order is\n" + to_text(p) + "claimed covering pairs differ");
      }
    }
    return "blocks match";
  }

  Path to_path(const std::vector<AtomLiteral>& lits) const {
    Path out;
    for (const auto& a : lits) {
      if (!known(atom_value(a))) {
        throw StepFailure(atom_text(a) + " is not known to lie in the generated sublattice");
      }
      out.push_back({g_->index_of(a.x), g_->index_of(a.y), a.kind});
    }
    return out;
  }

  std::string apply(const DppStatement& s) {
    const Path first = to_path(s.first);
    const Path second = to_path(s.second);
    DppResult r = [&] {
      try {
        return dpp(g_, first, second);
      } catch (const DppHypothesisError& e) {
        throw StepFailure("hypothesis fails: " + to_string(e.which()) + ": " + e.what());
      }
    }();
    if (r.x != g_->index_of(s.x) || r.y != g_->index_of(s.y)) {
      throw StepFailure("paths run from " + g_->label(r.x) + " to " + g_->label(r.y));
    }
    learn(r.meet);
    if (s.name) {
      bind(*s.name, r.meet, true);
    }
    return "q(" + s.x + "," + s.y + ") derived";
  }

  static const std::string& param(const CiteStatement& s, const std::string& key) {
    for (const auto& [k, v] : s.params) {
      if (k == key) {
        return v;
      }
    }
    throw StepFailure("citation of " + s.lemma + " needs parameter " + key);
  }

  std::string apply(const CiteStatement& s) {
    if (s.lemma == "zadori-3.2") {
      return cite_zadori(s);
    }
    if (s.lemma == "kulin-2.4") {
      return cite_kulin(s);
    }
    throw StepFailure("unknown lemma '" + s.lemma + "'");
  }

  std::string cite_zadori(const CiteStatement& s) {
    const std::string& kv = param(s, "k");
    std::size_t k = 0;
    auto [ptr, ec] = std::from_chars(kv.data(), kv.data() + kv.size(), k);
    if (ec != std::errc() || ptr != kv.data() + kv.size() || k < 2) {
      throw StepFailure("bad k '" + kv + "'");
    }
    std::vector<std::string> support_labels;
    for (std::size_t i = 0; i <= k; ++i) {
      support_labels.push_back("a" + std::to_string(i));
    }
    for (std::size_t i = 0; i < k; ++i) {
      support_labels.push_back("b" + std::to_string(i));
    }
    for (const auto& l : support_labels) {
      if (!g_->contains(l)) {
        throw StepFailure("ground set lacks " + l + " of the configuration");
      }
    }
    // The configuration, placed in this ground set by label.
    const auto z = zadori(k);
    std::vector<std::size_t> to_here;
    for (std::size_t i = 0; i < z.ground->size(); ++i) {
      to_here.push_back(g_->index_of(z.ground->label(i)));
    }
    auto place = [&](const Relation& r) {
      std::vector<ElementPair> pairs;
      for (const auto& [x, y] : r.off_diagonal_pairs()) {
        pairs.emplace_back(to_here[x], to_here[y]);
      }
      return Relation::from_pairs(g_, pairs);
    };
    const std::pair<const char*, const Relation*> hyps[] = {{"alpha", &z.alpha},
                                                            {"beta", &z.beta},
                                                            {"gamma", &z.gamma},
                                                            {"eps0", &z.eps0},
                                                            {"eta", &z.eta}};
    for (const auto& [name, rel] : hyps) {
      if (!known(place(*rel))) {
        throw StepFailure(std::string("configuration relation ") + name +
                          " is not known to lie in the generated sublattice");
      }
    }
    std::string detail;
    if (s.mode == CiteMode::kExhaustive) {
      const Generation g = zadori_generates(k);
      if (g != Generation::kGenerates) {
        throw StepFailure("closure check for k=" + std::to_string(k) + ": " + to_string(g));
      }
      detail = "closure confirms k=" + std::to_string(k);
    } else if (s.mode == CiteMode::kSmallKValidated) {
      const std::size_t top = std::min(k - 1, kExhaustiveZadoriK);
      if (top < 2) {
        throw StepFailure("no smaller configuration to validate against");
      }
      for (std::size_t j = 2; j <= top; ++j) {
        const Generation g = zadori_generates(j);
        if (g != Generation::kGenerates) {
          throw StepFailure("closure check for k=" + std::to_string(j) + ": " + to_string(g));
        }
      }
      detail = "instance k=" + std::to_string(k) + " recorded; closure confirms k=2.." +
               std::to_string(top);
    } else {
      detail = "instance k=" + std::to_string(k) + " trusted";
    }
    for (std::size_t i = 0; i < support_labels.size(); ++i) {
      for (std::size_t j = i + 1; j < support_labels.size(); ++j) {
        learn(atom_e(g_, support_labels[i], support_labels[j]));
      }
    }
    return detail + "; e-atoms of the support lie in S";
  }

  std::string cite_kulin(const CiteStatement& s) {
    const std::string& rho_name = param(s, "rho");
    auto it = env_.find(rho_name);
    if (it == env_.end() || !in_s_[rho_name]) {
      throw StepFailure("'" + rho_name + "' is not a member of the generated sublattice");
    }
    const Relation& rho = it->second;
    if (rho.is_symmetric()) {
      throw StepFailure("'" + rho_name + "' is symmetric");
    }
    for (const auto& e : e_atoms(g_)) {
      if (!known(e)) {
        throw StepFailure("not every e-atom is known to lie in the generated sublattice");
      }
    }
    std::string detail = "trusted";
    if (s.mode != CiteMode::kTrusted) {
      Checker sub = *this;
      const auto steps = kulin_derivation(g_, rho, rho_name);
      std::size_t i = 0;
      for (const auto& st : steps) {
        ++i;
        try {
          sub.apply_step(st.statement);
        } catch (const std::exception& e) {
          throw StepFailure("derivation step " + std::to_string(i) + " (" +
                            print_statement(st.statement) + "): " + e.what());
        }
      }
      detail = std::to_string(steps.size()) + " derivation steps verified";
    }
    for (const auto& q : q_atoms(g_)) {
      learn(q);
    }
    return detail + "; q-atoms lie in S";
  }

  std::string conclude() {
    std::vector<Relation> required;
    std::string what;
    switch (cert_.conclusion.kind) {
      case Conclusion::Kind::kGeneratesQuo:
        required = q_atoms(g_);
        what = "q-atoms";
        break;
      case Conclusion::Kind::kGeneratesEqu:
        for (const auto& r : generator_values_) {
          if (!r.is_equivalence()) {
            throw std::runtime_error("a generator is not an equivalence");
          }
        }
        required = e_atoms(g_);
        what = "e-atoms";
        break;
      case Conclusion::Kind::kDerivesAtomSet:
        for (const auto& a : cert_.conclusion.atoms) {
          required.push_back(atom_value(a));
        }
        what = "listed atoms";
        break;
    }
    std::size_t missing = 0;
    for (const auto& r : required) {
      missing += known(r) ? 0 : 1;
    }
    std::string detail;
    if (missing > 0 && cert_.conclusion.closure_budget) {
      ClosureBudget budget;
      budget.max_elements = std::max(*cert_.conclusion.closure_budget, known_.size());
      budget.target = required;
      const auto result = closure(known_, budget);
      if (result.report.stop_reason == StopReason::kTargetAtomsFound) {
        detail = "closure of " + std::to_string(known_.size()) + " known members found the " +
                 std::to_string(missing) + " missing " + what + " after " +
                 std::to_string(result.report.discovered) + " elements; ";
        for (const auto& r : required) {
          learn(r);
        }
        missing = 0;
      } else {
        throw std::runtime_error("closure stopped (" + to_string(result.report.stop_reason) +
                                 ") after " + std::to_string(result.report.discovered) +
                                 " elements with " + std::to_string(missing) + " " + what +
                                 " missing");
      }
    }
    if (missing > 0) {
      throw std::runtime_error(std::to_string(missing) + " of " +
                               std::to_string(required.size()) + " " + what +
                               " not derived");
    }
    return detail + "all " + std::to_string(required.size()) + " " + what + " lie in S";
  }

  const Certificate& cert_;
  GroundPtr g_;
  Environment env_;
  std::map<std::string, bool, std::less<>> in_s_;
  std::unordered_set<std::string> known_keys_;
  std::vector<Relation> known_;
  std::vector<Relation> generator_values_;
};

}  // namespace

CheckReport check_certificate(const Certificate& c) {
  return Checker(c).run();
}

}  // namespace quolat
