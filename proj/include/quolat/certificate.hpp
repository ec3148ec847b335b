#ifndef QUOLAT_CERTIFICATE_HPP
#define QUOLAT_CERTIFICATE_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "json.hpp"
#include "quolat/term.hpp"

namespace quolat {

// q(x,y) or e(x,y) by label.
struct AtomLiteral {
  StepKind kind = StepKind::kQ;
  std::string x;
  std::string y;
  friend bool operator==(const AtomLiteral&, const AtomLiteral&) = default;
};

// Relation used only in the argument; not claimed to lie in the sublattice.
struct AuxStatement {
  std::string name;
  Term term;
  friend bool operator==(const AuxStatement&, const AuxStatement&) = default;
};

// Names a member of the generated sublattice S. Every leaf of the term must
// already be known to lie in S.
struct LetStatement {
  std::string name;
  Term term;
  friend bool operator==(const LetStatement&, const LetStatement&) = default;
};

struct AssertEqStatement {
  Term lhs;
  Term rhs;
  friend bool operator==(const AssertEqStatement&, const AssertEqStatement&) = default;
};

// lhs == atom with lhs built from S; adds the atom to S.
struct AssertAtomStatement {
  Term lhs;
  AtomLiteral atom;
  friend bool operator==(const AssertAtomStatement&, const AssertAtomStatement&) = default;
};

// Theta-blocks of a relation (unlisted elements are singletons) and,
// optionally, the complete strict order on the listed blocks.
struct AssertBlocksStatement {
  using LabelBlock = std::vector<std::string>;
  Term term;
  std::vector<LabelBlock> blocks;
  std::optional<std::vector<std::pair<LabelBlock, LabelBlock>>> order;
  friend bool operator==(const AssertBlocksStatement&, const AssertBlocksStatement&) = default;
};

// q(x,y) as the meet of two path joins; every path atom must lie in S.
struct DppStatement {
  std::optional<std::string> name;
  std::string x;
  std::string y;
  std::vector<AtomLiteral> first;
  std::vector<AtomLiteral> second;
  friend bool operator==(const DppStatement&, const DppStatement&) = default;
};

enum class CiteMode { kExhaustive, kSmallKValidated, kTrusted };
std::string to_string(CiteMode m);
CiteMode cite_mode_from_string(std::string_view s);

// Known lemmas: "zadori-3.2" (parameter k) and "kulin-2.4" (parameter rho).
struct CiteStatement {
  std::string lemma;
  std::vector<std::pair<std::string, std::string>> params;
  CiteMode mode = CiteMode::kExhaustive;
  friend bool operator==(const CiteStatement&, const CiteStatement&) = default;
};

using Statement = std::variant<AuxStatement, LetStatement, AssertEqStatement,
                               AssertAtomStatement, AssertBlocksStatement, DppStatement,
                               CiteStatement>;

struct Step {
  Statement statement;
  std::size_t line = 0;  // source line, 0 when built in code
  friend bool operator==(const Step& a, const Step& b) { return a.statement == b.statement; }
};

struct Conclusion {
  enum class Kind { kGeneratesQuo, kGeneratesEqu, kDerivesAtomSet };
  Kind kind = Kind::kGeneratesQuo;
  std::vector<AtomLiteral> atoms;  // kDerivesAtomSet only
  // When set, atoms still missing after the steps are sought by a closure
  // seeded with every relation known to lie in S.
  std::optional<std::size_t> closure_budget;
  friend bool operator==(const Conclusion&, const Conclusion&) = default;
};

struct Certificate {
  GroundPtr ground;
  std::vector<std::pair<std::string, Term>> generators;
  std::vector<Step> steps;
  Conclusion conclusion;

  friend bool operator==(const Certificate& a, const Certificate& b) {
    return *a.ground == *b.ground && a.generators == b.generators && a.steps == b.steps &&
           a.conclusion == b.conclusion;
  }
};

// Line-oriented text form; throws ParseError with the line and column of
// the first problem.
Certificate parse_certificate(std::string_view text);
std::string print_certificate(const Certificate& c);
std::string print_statement(const Statement& s);

struct StepOutcome {
  std::size_t index = 0;  // 1-based
  std::size_t line = 0;
  std::string kind;
  std::string text;
  bool passed = false;
  std::string detail;
  // Pairs (as label pairs) on one side only, for failed relation equalities.
  std::optional<nlohmann::json> diff;
};

struct CheckReport {
  bool passed = false;
  std::vector<StepOutcome> steps;
  std::optional<std::size_t> failed_step;
  std::string conclusion;
  bool conclusion_passed = false;
  std::string conclusion_detail;
  std::size_t q_atoms_derived = 0;
  std::size_t e_atoms_derived = 0;
  std::size_t atom_steps = 0;  // passing assert-atom and dpp steps

  nlohmann::json to_json() const;
};

// Replays the certificate. Stops at the first failing step. Deterministic;
// lemma checks are memoized per process.
CheckReport check_certificate(const Certificate& c);

}  // namespace quolat

#endif  // QUOLAT_CERTIFICATE_HPP
