#include "quolat/table_closure.hpp"

#include <numeric>
#include <stdexcept>

namespace quolat {

TableClosure::TableClosure(const IndexedLattice& lattice)
    : lattice_(&lattice), is_atom_(lattice.size(), 0), stamp_(lattice.size(), 0) {
  if (!lattice.has_tables()) {
    throw std::invalid_argument("table closure needs a lattice with op tables");
  }
  for (auto a : lattice.atom_ids()) {
    is_atom_[a] = 1;
    ++atom_count_;
  }
}

bool TableClosure::spans_top_and_bottom(std::span<const Id> generators) const {
  if (generators.empty()) {
    return false;
  }
  Id j = generators.front();
  Id m = generators.front();
  for (auto g : generators.subspan(1)) {
    j = lattice_->join(j, g);
    m = lattice_->meet(m, g);
  }
  return j == lattice_->top() && m == lattice_->bottom();
}

bool TableClosure::add(Id id) {
  if (stamp_[id] == epoch_) {
    return false;
  }
  stamp_[id] = epoch_;
  members_.push_back(id);
  atoms_seen_ += is_atom_[id];
  return true;
}

bool TableClosure::generates(std::span<const Id> generators) {
  if (++epoch_ == 0) {
    std::fill(stamp_.begin(), stamp_.end(), 0);
    epoch_ = 1;
  }
  members_.clear();
  atoms_seen_ = 0;
  for (auto g : generators) {
    add(g);
  }
  if (atoms_seen_ == atom_count_) {
    return !members_.empty();
  }
  for (std::size_t p = 0; p < members_.size(); ++p) {
    for (std::size_t j = 0; j < p; ++j) {
      const Id a = members_[p];
      const Id b = members_[j];
      add(lattice_->meet(a, b));
      add(lattice_->join(a, b));
      if (atoms_seen_ == atom_count_) {
        return true;
      }
    }
  }
  return false;
}

bool refute_k_generation(const IndexedLattice& lattice, std::size_t k) {
  if (!lattice.has_tables()) {
    throw std::invalid_argument("refute_k_generation needs op tables");
  }
  const std::size_t n = lattice.size();
  if (k == 0 || k > n) {
    return true;
  }
  TableClosure engine(lattice);
  std::vector<IndexedLattice::Id> subset(k);
  std::iota(subset.begin(), subset.end(), 0);
  while (true) {
    if (engine.spans_top_and_bottom(subset) && engine.generates(subset)) {
      return false;
    }
    // Next combination in colex order.
    std::size_t i = 0;
    while (i + 1 < k && subset[i] + 1 == subset[i + 1]) {
      subset[i] = static_cast<IndexedLattice::Id>(i);
      ++i;
    }
    if (subset[i] + 1 >= n) {
      return true;
    }
    ++subset[i];
  }
}

}  // namespace quolat
