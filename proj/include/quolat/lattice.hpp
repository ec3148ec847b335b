#ifndef QUOLAT_LATTICE_HPP
#define QUOLAT_LATTICE_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "quolat/element_index.hpp"
#include "quolat/relation.hpp"

namespace quolat {

enum class LatticeKind { kQuo, kEqu };

std::string to_string(LatticeKind k);
// "quo" / "equ"; throws std::invalid_argument otherwise.
LatticeKind lattice_kind_from_string(std::string_view s);

// Enumeration caps. Quo 6 has 209527 elements, Equ 13 has 27644437.
inline constexpr std::size_t kMaxQuoN = 6;
inline constexpr std::size_t kMaxEquN = 13;
// Two dense id x id tables must fit in memory.
inline constexpr std::size_t kMaxTableElements = 20000;

// An enumerated Quo n or Equ n with dense ids.
class IndexedLattice {
 public:
  using Id = ElementIndex::Id;

  IndexedLattice(GroundPtr ground, LatticeKind kind, ElementIndex index);

  const GroundPtr& ground() const noexcept { return ground_; }
  LatticeKind kind() const noexcept { return kind_; }
  std::size_t size() const noexcept { return index_.size(); }

  const Rows& rows(Id id) const noexcept { return index_[id]; }
  Relation element(Id id) const { return Relation(ground_, index_[id]); }
  std::optional<Id> find(const Rows& r) const { return index_.find(r); }
  std::optional<Id> find(const Relation& r) const;
  // Throws std::invalid_argument when r is not an element.
  Id id_of(const Relation& r) const;

  Id bottom() const noexcept { return bottom_; }
  Id top() const noexcept { return top_; }

  // Dense meet/join tables. Throws std::length_error above
  // kMaxTableElements.
  void build_op_tables();
  bool has_tables() const noexcept { return !meet_.empty(); }
  Id meet(Id a, Id b) const noexcept { return meet_[a * size() + b]; }
  Id join(Id a, Id b) const noexcept { return join_[a * size() + b]; }
  bool leq(Id a, Id b) const noexcept { return rows::leq(index_[a], index_[b]); }

  // Ids of the lattice atoms: q-atoms for Quo, e-atoms for Equ.
  std::vector<Id> atom_ids() const;

 private:
  GroundPtr ground_;
  LatticeKind kind_;
  ElementIndex index_;
  Id bottom_ = 0;
  Id top_ = 0;
  std::vector<Id> meet_;
  std::vector<Id> join_;
};

// All quasiorders of an n-set: breadth-first saturation from delta by
// joining with the n(n-1) q-atoms in lexicographic order. Ids follow
// discovery order. Requires 1 <= n <= kMaxQuoN.
IndexedLattice enumerate_quo(std::size_t n);

// All equivalences, saturating with the e-atoms. 1 <= n <= kMaxEquN.
IndexedLattice enumerate_equ(std::size_t n);

// Saturation from delta with an arbitrary atom order.
IndexedLattice saturate_with_atoms(const GroundPtr& ground, LatticeKind kind,
                                   std::span<const Relation> atoms);

// Comparable under inclusion (either direction).
bool comparable(const Relation& r, const Relation& s);

// True iff exactly one of the six unordered pairs is comparable. Throws
// std::invalid_argument unless given four distinct relations.
bool is_112_subset(std::span<const Relation> four);

// One relation per line in the relation JSON format; line number = id.
void write_jsonl(std::ostream& out, const IndexedLattice& lattice);

}  // namespace quolat

#endif  // QUOLAT_LATTICE_HPP
