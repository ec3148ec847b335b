#include "quolat/term.hpp"

#include <cctype>
#include <optional>

#include "quolat/block_poset.hpp"

namespace quolat {

ParseError::ParseError(std::size_t line, std::size_t column, const std::string& message)
    : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
      line_(line),
      column_(column) {}

Term Term::symbol(std::string name) {
  return Term(std::make_shared<const Node>(Node{Kind::kSymbol, std::move(name), {}, {}, {}, {}}));
}

Term Term::atom(StepKind kind, std::string x, std::string y) {
  const Kind k = kind == StepKind::kQ ? Kind::kAtomQ : Kind::kAtomE;
  return Term(std::make_shared<const Node>(Node{k, {}, std::move(x), std::move(y), {}, {}}));
}

Term Term::meet(Term lhs, Term rhs) {
  return Term(std::make_shared<const Node>(Node{Kind::kMeet, {}, {}, {},
                                                std::make_shared<const Term>(std::move(lhs)),
                                                std::make_shared<const Term>(std::move(rhs))}));
}

Term Term::join(Term lhs, Term rhs) {
  return Term(std::make_shared<const Node>(Node{Kind::kJoin, {}, {}, {},
                                                std::make_shared<const Term>(std::move(lhs)),
                                                std::make_shared<const Term>(std::move(rhs))}));
}

bool operator==(const Term& a, const Term& b) {
  if (a.node_ == b.node_) {
    return true;
  }
  if (a.kind() != b.kind()) {
    return false;
  }
  switch (a.kind()) {
    case Term::Kind::kSymbol:
      return a.name() == b.name();
    case Term::Kind::kAtomQ:
    case Term::Kind::kAtomE:
      return a.x() == b.x() && a.y() == b.y();
    case Term::Kind::kMeet:
    case Term::Kind::kJoin:
      return a.lhs() == b.lhs() && a.rhs() == b.rhs();
  }
  return false;
}

namespace {

bool is_word_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_';
}

class TermParser {
 public:
  TermParser(std::string_view text, const GroundSet* ground) : text_(text), ground_(ground) {}

  Term parse_all() {
    Term t = expr();
    skip_space();
    if (pos_ < text_.size()) {
      fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    }
    return t;
  }

 private:
  [[noreturn]] void fail(const std::string& message) const {
    std::size_t line = 1;
    std::size_t col = 1;
    for (std::size_t i = 0; i < pos_ && i < text_.size(); ++i) {
      if (text_[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ParseError(line, col, message);
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])) != 0) {
      ++pos_;
    }
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) {
      fail(std::string("expected '") + c + "'");
    }
  }

  std::string word() {
    skip_space();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && is_word_char(text_[pos_])) {
      ++pos_;
    }
    if (start == pos_) {
      fail(pos_ < text_.size() ? "unexpected '" + std::string(1, text_[pos_]) + "'"
                               : "unexpected end of term");
    }
    return std::string(text_.substr(start, pos_ - start));
  }

  std::string label() {
    skip_space();
    const std::size_t at = pos_;
    std::string l = word();
    if (ground_ != nullptr && !ground_->contains(l)) {
      pos_ = at;
      fail("unknown label '" + l + "'");
    }
    return l;
  }

  Term expr() {
    Term t = conj();
    while (accept('|')) {
      t = Term::join(std::move(t), conj());
    }
    return t;
  }

  Term conj() {
    Term t = primary();
    while (accept('&')) {
      t = Term::meet(std::move(t), primary());
    }
    return t;
  }

  Term primary() {
    if (accept('(')) {
      Term t = expr();
      expect(')');
      return t;
    }
    std::string w = word();
    if (w == "q" || w == "e") {
      skip_space();
      if (pos_ < text_.size() && text_[pos_] == '(') {
        ++pos_;
        std::string x = label();
        expect(',');
        std::string y = label();
        expect(')');
        return Term::atom(w == "q" ? StepKind::kQ : StepKind::kE, std::move(x), std::move(y));
      }
    }
    return Term::symbol(std::move(w));
  }

  std::string_view text_;
  const GroundSet* ground_;
  std::size_t pos_ = 0;
};

void print(const Term& t, bool top, std::string& out) {
  switch (t.kind()) {
    case Term::Kind::kSymbol:
      out += t.name();
      return;
    case Term::Kind::kAtomQ:
    case Term::Kind::kAtomE:
      out += t.kind() == Term::Kind::kAtomQ ? "q(" : "e(";
      out += t.x();
      out += ',';
      out += t.y();
      out += ')';
      return;
    case Term::Kind::kMeet:
    case Term::Kind::kJoin:
      if (!top) {
        out += '(';
      }
      print(t.lhs(), false, out);
      out += t.kind() == Term::Kind::kMeet ? " & " : " | ";
      print(t.rhs(), false, out);
      if (!top) {
        out += ')';
      }
      return;
  }
}

}  // namespace

Term parse_term(std::string_view text, const GroundSet* ground) {
  return TermParser(text, ground).parse_all();
}

std::string to_string(const Term& t) {
  std::string out;
  print(t, true, out);
  return out;
}

Relation eval_term(const Term& t, const Environment& env, const GroundPtr& ground) {
  switch (t.kind()) {
    case Term::Kind::kSymbol: {
      auto it = env.find(t.name());
      if (it == env.end()) {
        throw std::invalid_argument("unbound name '" + t.name() + "'");
      }
      return it->second;
    }
    case Term::Kind::kAtomQ:
      return atom_q(ground, t.x(), t.y());
    case Term::Kind::kAtomE:
      return atom_e(ground, t.x(), t.y());
    case Term::Kind::kMeet:
      return meet(eval_term(t.lhs(), env, ground), eval_term(t.rhs(), env, ground));
    case Term::Kind::kJoin:
      return join(eval_term(t.lhs(), env, ground), eval_term(t.rhs(), env, ground));
  }
  throw std::logic_error("bad term kind");
}

Term term_for(const Relation& r) {
  const auto& g = r.ground();
  std::optional<Term> acc;
  auto add = [&](StepKind kind, std::size_t x, std::size_t y) {
    Term t = Term::atom(kind, g->label(x), g->label(y));
    acc = acc ? Term::join(std::move(*acc), std::move(t)) : std::move(t);
  };
  if (r.is_quasiorder()) {
    // Chain each block with e-atoms, then one q-atom per covering pair.
    const BlockPoset p = induced_order(r);
    const auto& blocks = p.partition.blocks();
    for (const auto& b : blocks) {
      for (std::size_t i = 1; i < b.size(); ++i) {
        add(StepKind::kE, b[i - 1], b[i]);
      }
    }
    for (const auto& [lo, hi] : p.covers()) {
      add(StepKind::kQ, blocks[lo].front(), blocks[hi].front());
    }
  } else {
    for (const auto& [x, y] : r.off_diagonal_pairs()) {
      add(StepKind::kQ, x, y);
    }
  }
  if (!acc) {
    return Term::atom(StepKind::kQ, g->label(0), g->label(0));
  }
  return *acc;
}

}  // namespace quolat
