#ifndef QUOLAT_SEARCH_HPP
#define QUOLAT_SEARCH_HPP

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "quolat/lattice.hpp"

namespace quolat {

enum class Shape { kAny, kAntichain, kOneOneTwo };
std::string to_string(Shape s);
Shape shape_from_string(std::string_view s);

using IdTuple = std::vector<IndexedLattice::Id>;

struct SearchTask {
  LatticeKind kind = LatticeKind::kQuo;
  std::size_t n = 0;
  std::size_t subset_size = 4;
  Shape shape = Shape::kAny;
  bool orbit_reduction = true;
  // Contiguous slice of the colex candidate order.
  std::size_t shard_index = 0;
  std::size_t shard_count = 1;
  // Stop after this many candidates in this call; the cursor is saved.
  std::optional<std::uint64_t> max_candidates;
  // Read at start when present, rewritten every checkpoint_every candidates,
  // after each finding, and at the end.
  std::optional<std::string> checkpoint_path;
  std::uint64_t checkpoint_every = 1'000'000;
};

struct SearchReport {
  std::uint64_t shard_begin = 0;
  std::uint64_t shard_end = 0;
  // Cursor when this call began (after any checkpoint was loaded).
  std::uint64_t started_at = 0;
  // Next unexamined colex rank.
  std::uint64_t cursor = 0;
  // Counters include the work recorded in a loaded checkpoint; findings
  // are those of this call only.
  std::uint64_t candidates_examined = 0;
  std::uint64_t pruned_shape = 0;
  std::uint64_t pruned_orbit = 0;
  std::uint64_t pruned_bounds = 0;
  std::uint64_t closures_run = 0;
  std::vector<IdTuple> generating_sets_found;
  bool exhausted = false;
  double elapsed_seconds = 0.0;

  std::uint64_t candidates_pruned() const noexcept {
    return pruned_shape + pruned_orbit + pruned_bounds;
  }
  nlohmann::json to_json() const;
};

// Binomial coefficient, saturating at UINT64_MAX.
std::uint64_t binomial(std::uint64_t n, std::uint64_t k);

// Colexicographic rank of a sorted k-subset and its inverse.
std::uint64_t colex_rank(std::span<const IndexedLattice::Id> subset);
IdTuple colex_unrank(std::uint64_t rank, std::size_t k);

// [begin, end) ranks of shard `index` of `count` over `total` candidates.
std::pair<std::uint64_t, std::uint64_t> shard_range(std::uint64_t total, std::size_t index,
                                                    std::size_t count);

// One table per permutation of the ground set: table[id] is the id of the
// permuted element. The identity comes first.
std::vector<IdTuple> permutation_tables(const IndexedLattice& lattice);

// Lexicographically least sorted image of the subset under the group.
IdTuple orbit_representative(std::span<const IndexedLattice::Id> subset,
                             std::span<const IdTuple> group);

// Callbacks for streaming; both optional.
struct SearchSinks {
  std::function<void(const IdTuple&)> on_finding;
  std::function<void(const SearchReport&)> on_progress;
};

// Scans the shard in colex order: shape filter, orbit filter (keep only
// representatives), top/bottom pruning, then table closure with early exit.
// The lattice must carry op tables (std::invalid_argument otherwise).
// Throws std::invalid_argument for a bad shard, a checkpoint written for a
// different task, or shape one-one-two with subset_size != 4.
SearchReport run_search(const IndexedLattice& lattice, const SearchTask& task,
                        const SearchSinks& sinks = {});

// Builds the lattice with tables, then runs.
SearchReport run_search(const SearchTask& task, const SearchSinks& sinks = {});

// {"ids":[...], "relations":[...]}.
nlohmann::json finding_json(const IndexedLattice& lattice, const IdTuple& ids);

// Four-element subsets of Quo 4 under S_4 reduction, all shards in turn.
// Checkpoints go to <checkpoint_dir>/shard-<i>.json when a directory is
// given; `budget` caps the candidates examined by this call, and the run
// stops at the first shard it cannot start. The cursor is the global rank
// reached in the last shard visited.
SearchReport quo4_campaign(std::size_t shards, std::optional<std::uint64_t> budget,
                           const std::optional<std::string>& checkpoint_dir,
                           const SearchSinks& sinks = {});

}  // namespace quolat

#endif  // QUOLAT_SEARCH_HPP
