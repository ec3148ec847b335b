#ifndef QUOLAT_CLOSURE_HPP
#define QUOLAT_CLOSURE_HPP

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "quolat/relation.hpp"

namespace quolat {

enum class StopReason { kTargetAtomsFound, kBudgetExceeded, kSaturated };

// Order in which pairs are formed. Both are exhaustive and reach the same
// saturated set; they differ in how early target relations show up.
enum class Schedule {
  // Strictly by derivation depth.
  kBreadthFirst,
  // Every element is first combined with the generators (and with target
  // relations already found); the breadth-first pairing of arbitrary
  // elements advances one element at a time in between.
  kGeneratorFirst,
};

std::string to_string(StopReason r);

struct ClosureBudget {
  std::size_t max_elements = 1'000'000;
  std::optional<std::size_t> max_depth;
  // Relations whose joint presence ends the run early. Empty means full
  // saturation.
  std::vector<Relation> target;
  Schedule schedule = Schedule::kGeneratorFirst;
};

struct ClosureReport {
  std::size_t discovered = 0;
  StopReason stop_reason = StopReason::kSaturated;
  // Members of the target present when the run stopped.
  std::vector<Relation> atoms_found;
  std::size_t target_size = 0;
  std::size_t depth_reached = 0;
  double elapsed_seconds = 0.0;
};

struct ClosureResult {
  ClosureReport report;
  // Filled only on request; discovery order, generators first.
  std::vector<Relation> elements;
};

// Sublattice closure. Depth 0 holds the generators; an element derived from
// operands of depth at most d has depth d+1. Deduplicated by canonical key.
// Stops as soon as all target relations are present, the budget is
// exhausted, or nothing new appears. max_depth bounds the depth of the
// elements used as operands.
//
// Throws std::invalid_argument for an empty generator set, mixed ground
// sets, or max_elements below the number of distinct generators.
ClosureResult closure(std::span<const Relation> generators, const ClosureBudget& budget,
                      bool keep_elements = false);

// All n(n-1) atoms q(x,y) / all n(n-1)/2 atoms e(x,y), row-major order.
std::vector<Relation> q_atoms(const GroundPtr& ground);
std::vector<Relation> e_atoms(const GroundPtr& ground);

enum class Generation { kGenerates, kDoesNotGenerate, kIndeterminate };

std::string to_string(Generation g);

struct GenerationResult {
  Generation outcome = Generation::kIndeterminate;
  ClosureReport report;
};

// Reaching every q-atom means the closure is all of Quo n; saturating
// first means it is not. Running out of budget is reported as
// indeterminate.
GenerationResult generates_quo(std::span<const Relation> generators,
                               std::size_t max_elements = 1'000'000);

// Same test against the e-atoms. Every generator must be symmetric
// (std::invalid_argument otherwise).
GenerationResult generates_equ(std::span<const Relation> generators,
                               std::size_t max_elements = 1'000'000);

}  // namespace quolat

#endif  // QUOLAT_CLOSURE_HPP
