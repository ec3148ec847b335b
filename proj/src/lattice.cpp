#include "quolat/lattice.hpp"

#include <stdexcept>

#include "quolat/closure.hpp"
#include "quolat/heartbeat.hpp"
#include "quolat/relation_io.hpp"

namespace quolat {

std::string to_string(LatticeKind k) { return k == LatticeKind::kQuo ? "quo" : "equ"; }

LatticeKind lattice_kind_from_string(std::string_view s) {
  if (s == "quo") {
    return LatticeKind::kQuo;
  }
  if (s == "equ") {
    return LatticeKind::kEqu;
  }
  throw std::invalid_argument("lattice kind must be quo or equ, got '" + std::string(s) + "'");
}

IndexedLattice::IndexedLattice(GroundPtr ground, LatticeKind kind, ElementIndex index)
    : ground_(std::move(ground)), kind_(kind), index_(std::move(index)) {
  const auto bottom = index_.find(rows::identity(ground_->size()));
  const auto top = index_.find(rows::full(ground_->size()));
  if (!bottom || !top) {
    throw std::invalid_argument("lattice elements must include delta and nabla");
  }
  bottom_ = *bottom;
  top_ = *top;
}

std::optional<IndexedLattice::Id> IndexedLattice::find(const Relation& r) const {
  if (!same_ground(r.ground(), ground_)) {
    return std::nullopt;
  }
  return index_.find(r.rows());
}

IndexedLattice::Id IndexedLattice::id_of(const Relation& r) const {
  auto id = find(r);
  if (!id) {
    throw std::invalid_argument("relation is not an element of this lattice");
  }
  return *id;
}

void IndexedLattice::build_op_tables() {
  const std::size_t n = size();
  if (n > kMaxTableElements) {
    throw std::length_error("lattice has " + std::to_string(n) +
                            " elements, op tables are capped at " +
                            std::to_string(kMaxTableElements));
  }
  if (has_tables()) {
    return;
  }
  std::vector<Id> meet(n * n);
  std::vector<Id> join(n * n);
  Rows scratch;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a; b < n; ++b) {
      rows::meet_into(index_[a], index_[b], scratch);
      const auto m = index_.find(scratch);
      rows::join_into(index_[a], index_[b], scratch);
      const auto j = index_.find(scratch);
      if (!m || !j) {
        throw std::logic_error("lattice is not closed under meet and join");
      }
      meet[a * n + b] = meet[b * n + a] = *m;
      join[a * n + b] = join[b * n + a] = *j;
    }
  }
  meet_ = std::move(meet);
  join_ = std::move(join);
}

std::vector<IndexedLattice::Id> IndexedLattice::atom_ids() const {
  const auto atoms = kind_ == LatticeKind::kQuo ? q_atoms(ground_) : e_atoms(ground_);
  std::vector<Id> out;
  out.reserve(atoms.size());
  for (const auto& a : atoms) {
    out.push_back(id_of(a));
  }
  return out;
}

IndexedLattice saturate_with_atoms(const GroundPtr& ground, LatticeKind kind,
                                   std::span<const Relation> atoms) {
  ElementIndex index;
  index.insert(rows::identity(ground->size()));
  Rows scratch;
  const bool beat = heartbeat_enabled();
  for (std::size_t p = 0; p < index.size(); ++p) {
    for (const auto& atom : atoms) {
      rows::join_into(index[p], atom.rows(), scratch);
      index.insert(scratch);
    }
    if (beat && p % 1'000'000 == 999'999) {
      heartbeat("enumerate: " + std::to_string(p + 1) + " expanded, " +
                std::to_string(index.size()) + " found");
    }
  }
  return IndexedLattice(ground, kind, std::move(index));
}

IndexedLattice enumerate_quo(std::size_t n) {
  if (n < 1 || n > kMaxQuoN) {
    throw std::invalid_argument("enumerate_quo supports 1 <= n <= " + std::to_string(kMaxQuoN));
  }
  auto g = make_ground(n);
  const auto atoms = q_atoms(g);
  return saturate_with_atoms(g, LatticeKind::kQuo, atoms);
}

IndexedLattice enumerate_equ(std::size_t n) {
  if (n < 1 || n > kMaxEquN) {
    throw std::invalid_argument("enumerate_equ supports 1 <= n <= " + std::to_string(kMaxEquN));
  }
  auto g = make_ground(n);
  const auto atoms = e_atoms(g);
  return saturate_with_atoms(g, LatticeKind::kEqu, atoms);
}

bool comparable(const Relation& r, const Relation& s) { return r.is_below(s) || s.is_below(r); }

bool is_112_subset(std::span<const Relation> four) {
  if (four.size() != 4) {
    throw std::invalid_argument("a (1+1+2)-subset has exactly four members");
  }
  std::size_t comparable_pairs = 0;
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = i + 1; j < 4; ++j) {
      if (four[i] == four[j]) {
        throw std::invalid_argument("the four relations must be distinct");
      }
      comparable_pairs += comparable(four[i], four[j]) ? 1 : 0;
    }
  }
  return comparable_pairs == 1;
}

void write_jsonl(std::ostream& out, const IndexedLattice& lattice) {
  for (std::size_t id = 0; id < lattice.size(); ++id) {
    out << to_json(lattice.element(static_cast<IndexedLattice::Id>(id))).dump() << '\n';
  }
}

}  // namespace quolat
