#ifndef QUOLAT_BLOCK_POSET_HPP
#define QUOLAT_BLOCK_POSET_HPP

#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "quolat/relation.hpp"

namespace quolat {

using Block = std::vector<std::size_t>;

// A partition of the ground set. Canonical form: elements sorted inside each
// block, blocks sorted by their least element, so equality is equality as
// sets of sets.
class Partition {
 public:
  // Validates disjointness and coverage, then canonicalizes.
  Partition(GroundPtr ground, std::vector<Block> blocks);

  // Listed blocks plus a singleton for every element not mentioned.
  static Partition with_implied_singletons(GroundPtr ground, std::vector<Block> blocks);

  const GroundPtr& ground() const noexcept { return ground_; }
  const std::vector<Block>& blocks() const noexcept { return blocks_; }
  std::size_t block_of(std::size_t x) const noexcept { return block_of_[x]; }

  // "{a b c} {d} ..." using ground labels.
  std::string to_string(bool skip_singletons = false) const;

  friend bool operator==(const Partition& a, const Partition& b) noexcept {
    return same_ground(a.ground_, b.ground_) && a.blocks_ == b.blocks_;
  }

 private:
  GroundPtr ground_;
  std::vector<Block> blocks_;
  std::vector<std::size_t> block_of_;
};

// The order a quasiorder induces on its Theta-blocks.
struct BlockPoset {
  Partition partition;
  // Strict order: (i, j) means block i lies below block j.
  std::vector<std::pair<std::size_t, std::size_t>> order;
  // Singleton blocks comparable to no other block; left out of diagrams.
  std::vector<bool> hidden;

  bool less(std::size_t i, std::size_t j) const;
  std::vector<std::pair<std::size_t, std::size_t>> covers() const;
  std::vector<std::size_t> visible_blocks() const;
};

// Theta(r) = r meet r^{-1}, the largest equivalence below r. Throws
// std::invalid_argument unless r is a quasiorder.
Partition theta(const Relation& r);

BlockPoset induced_order(const Relation& r);

// Block diagram as text: visible blocks on the first line, then one
// "lower < upper" line per covering pair. Empty when every block is hidden.
std::string to_text(const BlockPoset& p);

// Graphviz digraph with one node per visible block and one arc per covering
// pair, lower block to upper block. Node order follows block order.
std::string to_dot(const BlockPoset& p, std::string_view graph_name = "rho");

}  // namespace quolat

#endif  // QUOLAT_BLOCK_POSET_HPP
