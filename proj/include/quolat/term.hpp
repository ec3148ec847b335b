#ifndef QUOLAT_TERM_HPP
#define QUOLAT_TERM_HPP

#include <cstddef>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>

#include "quolat/dpp.hpp"
#include "quolat/relation.hpp"

namespace quolat {

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& message);
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

// Lattice term over named relations and atom literals. Immutable; copies
// share structure.
class Term {
 public:
  enum class Kind { kSymbol, kMeet, kJoin, kAtomQ, kAtomE };

  static Term symbol(std::string name);
  static Term atom(StepKind kind, std::string x, std::string y);
  static Term meet(Term lhs, Term rhs);
  static Term join(Term lhs, Term rhs);

  Kind kind() const noexcept { return node_->kind; }
  bool is_atom() const noexcept { return kind() == Kind::kAtomQ || kind() == Kind::kAtomE; }
  const std::string& name() const noexcept { return node_->name; }
  const std::string& x() const noexcept { return node_->x; }
  const std::string& y() const noexcept { return node_->y; }
  const Term& lhs() const { return *node_->lhs; }
  const Term& rhs() const { return *node_->rhs; }

  friend bool operator==(const Term& a, const Term& b);

 private:
  struct Node {
    Kind kind;
    std::string name;
    std::string x;
    std::string y;
    std::shared_ptr<const Term> lhs;
    std::shared_ptr<const Term> rhs;
  };
  explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  std::shared_ptr<const Node> node_;
};

// Grammar: expr := conj ('|' conj)* ; conj := primary ('&' primary)* ;
// primary := '(' expr ')' | q(l,l) | e(l,l) | name. '&' binds tighter;
// both associate to the left. When `ground` is given, atom labels must name
// its elements.
Term parse_term(std::string_view text, const GroundSet* ground = nullptr);

// Fully parenthesized except at the top: "beta & (delta | gamma)".
std::string to_string(const Term& t);

using Environment = std::map<std::string, Relation, std::less<>>;

// Bottom-up evaluation. Throws std::invalid_argument for an unbound symbol
// or an unknown label.
Relation eval_term(const Term& t, const Environment& env, const GroundPtr& ground);

// A join of atoms whose value is the transitive closure of r. Quasiorders
// come out as e-atom chains through each block plus one q-atom per covering
// pair of blocks; delta becomes q(x,x) of the first element.
Term term_for(const Relation& r);

}  // namespace quolat

#endif  // QUOLAT_TERM_HPP
