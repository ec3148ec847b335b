#ifndef QUOLAT_RELATION_HPP
#define QUOLAT_RELATION_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <boost/container/small_vector.hpp>

#include "quolat/ground_set.hpp"

namespace quolat {

// Row i holds bit j iff <x_i, x_j> is in the relation. Sixteen rows live
// inline, larger ground sets spill to the heap.
using Rows = boost::container::small_vector<std::uint64_t, 16>;

// Word-level kernels shared by the relation type and the closure engines.
namespace rows {

Rows identity(std::size_t n);
Rows full(std::size_t n);

// Row-bitset Warshall: for each pivot k, every row containing k absorbs
// row k.
void close_transitively(Rows& r) noexcept;

void meet_into(const Rows& a, const Rows& b, Rows& out);
// Reflexive-transitive closure of the union; both inputs reflexive.
void join_into(const Rows& a, const Rows& b, Rows& out);
Rows transpose(const Rows& r);
bool leq(const Rows& a, const Rows& b) noexcept;
bool is_transitive(const Rows& r) noexcept;
bool is_symmetric(const Rows& r) noexcept;
std::size_t count(const Rows& r) noexcept;

struct Hash {
  std::size_t operator()(const Rows& r) const noexcept;
};

}  // namespace rows

using ElementPair = std::pair<std::size_t, std::size_t>;

// A reflexive binary relation on a ground set, stored as a bit matrix.
// Immutable after construction.
class Relation {
 public:
  // Throws std::invalid_argument when the row count differs from the ground
  // size or a diagonal bit is missing.
  Relation(GroundPtr ground, Rows rows);

  // Reflexive relation with the given off-diagonal pairs, not closed.
  static Relation from_pairs(GroundPtr ground, std::span<const ElementPair> pairs);

  const GroundPtr& ground() const noexcept { return ground_; }
  std::size_t size() const noexcept { return rows_.size(); }
  const Rows& rows() const noexcept { return rows_; }
  bool contains(std::size_t i, std::size_t j) const noexcept {
    return (rows_[i] >> j) & 1U;
  }

  // Off-diagonal pairs only.
  std::size_t pair_count() const noexcept;
  std::vector<ElementPair> off_diagonal_pairs() const;

  bool is_transitive() const noexcept { return rows::is_transitive(rows_); }
  bool is_symmetric() const noexcept { return rows::is_symmetric(rows_); }
  bool is_quasiorder() const noexcept { return is_transitive(); }
  bool is_equivalence() const noexcept {
    return is_transitive() && is_symmetric();
  }

  // Inclusion as sets of pairs; same ground set required.
  bool is_below(const Relation& other) const;

  // Row-major bit string, '1' per member pair.
  std::string key() const;

  friend bool operator==(const Relation& a, const Relation& b) noexcept {
    return same_ground(a.ground_, b.ground_) && a.rows_ == b.rows_;
  }

 private:
  GroundPtr ground_;
  Rows rows_;
};

// Identity relation (bottom of Quo and Equ).
Relation delta(const GroundPtr& ground);
// A x A (top).
Relation nabla(const GroundPtr& ground);

// q(x,y) = delta + (x,y); e(x,y) = delta + (x,y) + (y,x). x == y gives delta.
Relation atom_q(const GroundPtr& ground, std::size_t x, std::size_t y);
Relation atom_e(const GroundPtr& ground, std::size_t x, std::size_t y);
Relation atom_q(const GroundPtr& ground, std::string_view x, std::string_view y);
Relation atom_e(const GroundPtr& ground, std::string_view x, std::string_view y);

// Both throw std::invalid_argument on a ground set mismatch.
Relation meet(const Relation& r, const Relation& s);
Relation join(const Relation& r, const Relation& s);
Relation inverse(const Relation& r);

// Reflexive-transitive closure of an arbitrary reflexive relation.
Relation transitive_closure(const Relation& r);

// Decomposes a quasiorder into the q-atoms of its off-diagonal pairs.
std::vector<Relation> atom_decomposition(const Relation& r);

// perm[i] is the image of element i; relabels every pair (x,y) to
// (perm[x], perm[y]). Throws std::invalid_argument for a non-bijection.
Relation apply_permutation(const Relation& r, std::span<const std::size_t> perm);
bool is_permutation(std::span<const std::size_t> perm) noexcept;

// Intersection with sub x sub, as a relation on the labels of `sub`
// (in the given order). Every off-diagonal pair of r must stay inside sub.
Relation restrict(const Relation& r, std::span<const std::size_t> sub);

// True iff every off-diagonal pair of r has both ends in sub; membership in
// the restricted lattice Quo|_B A.
bool stays_inside(const Relation& r, std::span<const std::size_t> sub);

}  // namespace quolat

#endif  // QUOLAT_RELATION_HPP
