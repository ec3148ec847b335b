#ifndef QUOLAT_TABLE_CLOSURE_HPP
#define QUOLAT_TABLE_CLOSURE_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "quolat/lattice.hpp"

namespace quolat {

// Generation test inside an enumerated lattice with op tables. Buffers are
// reused across calls, so one instance serves a whole search; not
// thread-safe, use one per thread.
class TableClosure {
 public:
  using Id = IndexedLattice::Id;

  // Throws std::invalid_argument when the lattice has no op tables.
  explicit TableClosure(const IndexedLattice& lattice);

  // Join of all members is the top and meet of all members is the bottom;
  // necessary for generating the whole lattice.
  bool spans_top_and_bottom(std::span<const Id> generators) const;

  // Closure with early exit once every atom is present. True iff the
  // generators produce the whole lattice.
  bool generates(std::span<const Id> generators);

  // Elements reached by the last generates() call.
  std::size_t last_size() const noexcept { return members_.size(); }
  // Ids reached by the last call, discovery order.
  const std::vector<Id>& last_members() const noexcept { return members_; }

 private:
  bool add(Id id);

  const IndexedLattice* lattice_;
  std::vector<std::uint8_t> is_atom_;
  std::size_t atom_count_ = 0;
  std::vector<std::uint32_t> stamp_;
  std::uint32_t epoch_ = 0;
  std::vector<Id> members_;
  std::size_t atoms_seen_ = 0;
};

// True iff no k-subset generates the lattice (exhaustive over k-subsets in
// colexicographic order, pruning subsets that miss top or bottom). Requires
// op tables (std::invalid_argument otherwise).
bool refute_k_generation(const IndexedLattice& lattice, std::size_t k);

}  // namespace quolat

#endif  // QUOLAT_TABLE_CLOSURE_HPP
