#ifndef QUOLAT_ELEMENT_INDEX_HPP
#define QUOLAT_ELEMENT_INDEX_HPP

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include <absl/container/flat_hash_set.h>

#include "quolat/relation.hpp"

namespace quolat {

// Dense id assignment for bit-matrix keys. Ids follow insertion order. The
// hash set stores only ids and looks keys up through the element vector,
// which sits on the heap so the index stays valid across moves.
class ElementIndex {
 public:
  using Id = std::uint32_t;

  ElementIndex()
      : elements_(std::make_unique<std::vector<Rows>>()),
        ids_(0, IdHash{elements_.get()}, IdEq{elements_.get()}) {}
  ElementIndex(ElementIndex&&) noexcept = default;
  ElementIndex& operator=(ElementIndex&&) noexcept = default;

  std::size_t size() const noexcept { return elements_->size(); }
  const Rows& operator[](std::size_t id) const noexcept { return (*elements_)[id]; }
  const std::vector<Rows>& elements() const noexcept { return *elements_; }

  void reserve(std::size_t n) {
    elements_->reserve(n);
    ids_.reserve(n);
  }

  std::optional<Id> find(const Rows& r) const {
    auto it = ids_.find(r);
    if (it == ids_.end()) {
      return std::nullopt;
    }
    return *it;
  }

  bool contains(const Rows& r) const { return ids_.contains(r); }

  // Returns the id and whether the key was new.
  std::pair<Id, bool> insert(const Rows& r) {
    if (auto it = ids_.find(r); it != ids_.end()) {
      return {*it, false};
    }
    const auto id = static_cast<Id>(elements_->size());
    elements_->push_back(r);
    ids_.insert(id);
    return {id, true};
  }

 private:
  struct IdHash {
    using is_transparent = void;
    const std::vector<Rows>* elements;
    std::size_t operator()(Id id) const noexcept { return rows::Hash{}((*elements)[id]); }
    std::size_t operator()(const Rows& r) const noexcept { return rows::Hash{}(r); }
  };
  struct IdEq {
    using is_transparent = void;
    const std::vector<Rows>* elements;
    bool operator()(Id a, Id b) const noexcept { return a == b; }
    bool operator()(Id a, const Rows& b) const noexcept { return (*elements)[a] == b; }
    bool operator()(const Rows& a, Id b) const noexcept { return a == (*elements)[b]; }
  };

  std::unique_ptr<std::vector<Rows>> elements_;
  absl::flat_hash_set<Id, IdHash, IdEq> ids_;
};

}  // namespace quolat

#endif  // QUOLAT_ELEMENT_INDEX_HPP
