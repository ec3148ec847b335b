#ifndef QUOLAT_DPP_HPP
#define QUOLAT_DPP_HPP

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "quolat/relation.hpp"

namespace quolat {

enum class StepKind { kE, kQ };

// One edge of a path: q(from,to) or e(from,to).
struct PathStep {
  std::size_t from;
  std::size_t to;
  StepKind kind;

  friend bool operator==(const PathStep&, const PathStep&) = default;
};

using Path = std::vector<PathStep>;

enum class DppViolation {
  kEmptyPath,
  kBrokenPath,        // steps do not chain, or a step is a loop
  kEndpointMismatch,  // the paths do not share both endpoints
  kRepeatedVertex,    // a path visits some vertex twice
  kSharedInterior,    // an interior vertex lies on both paths
  kNoDirectedStep,    // every step is of kind e
};

std::string to_string(DppViolation v);

class DppHypothesisError : public std::invalid_argument {
 public:
  DppHypothesisError(DppViolation which, const std::string& what)
      : std::invalid_argument(what), which_(which) {}
  DppViolation which() const noexcept { return which_; }

 private:
  DppViolation which_;
};

struct DppResult {
  std::size_t x = 0;
  std::size_t y = 0;
  Relation first_join;
  Relation second_join;
  // first_join meet second_join; equals q(x,y).
  Relation meet;
};

Relation step_relation(const GroundPtr& ground, const PathStep& s);

// Joins the steps of a path.
Relation path_join(const GroundPtr& ground, const Path& path);

// Throws DppHypothesisError naming the failed hypothesis.
void check_dpp_hypotheses(const GroundPtr& ground, const Path& first, const Path& second);

// Disjoint paths principle: for two simple x -> y paths with disjoint
// interiors and at least one directed step, the meet of the two path joins
// is q(x,y). Checks the hypotheses, evaluates, and confirms the equality
// (std::logic_error if it fails).
DppResult dpp(const GroundPtr& ground, const Path& first, const Path& second);

}  // namespace quolat

#endif  // QUOLAT_DPP_HPP
