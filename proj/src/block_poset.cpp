#include "quolat/block_poset.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace quolat {

namespace {

std::string block_label(const GroundSet& g, const Block& b, char open, char close,
                        std::string_view sep) {
  std::string s(1, open);
  for (std::size_t i = 0; i < b.size(); ++i) {
    if (i) {
      s += sep;
    }
    s += g.label(b[i]);
  }
  s += close;
  return s;
}

}  // namespace

Partition::Partition(GroundPtr ground, std::vector<Block> blocks)
    : ground_(std::move(ground)), blocks_(std::move(blocks)) {
  const std::size_t n = ground_->size();
  block_of_.assign(n, n);
  for (auto& b : blocks_) {
    if (b.empty()) {
      throw std::invalid_argument("partition has an empty block");
    }
    std::sort(b.begin(), b.end());
  }
  std::sort(blocks_.begin(), blocks_.end(),
            [](const Block& x, const Block& y) { return x.front() < y.front(); });
  for (std::size_t bi = 0; bi < blocks_.size(); ++bi) {
    for (auto x : blocks_[bi]) {
      if (x >= n) {
        throw std::invalid_argument("partition block names an element outside the ground set");
      }
      if (block_of_[x] != n) {
        throw std::invalid_argument("element " + ground_->label(x) +
                                    " appears in two partition blocks");
      }
      block_of_[x] = bi;
    }
  }
  for (std::size_t x = 0; x < n; ++x) {
    if (block_of_[x] == n) {
      throw std::invalid_argument("element " + ground_->label(x) + " is in no partition block");
    }
  }
}

Partition Partition::with_implied_singletons(GroundPtr ground, std::vector<Block> blocks) {
  std::vector<bool> seen(ground->size(), false);
  for (const auto& b : blocks) {
    for (auto x : b) {
      if (x < seen.size()) {
        seen[x] = true;
      }
    }
  }
  for (std::size_t x = 0; x < seen.size(); ++x) {
    if (!seen[x]) {
      blocks.push_back({x});
    }
  }
  return Partition(std::move(ground), std::move(blocks));
}

std::string Partition::to_string(bool skip_singletons) const {
  std::string s;
  for (const auto& b : blocks_) {
    if (skip_singletons && b.size() == 1) {
      continue;
    }
    if (!s.empty()) {
      s += ' ';
    }
    s += block_label(*ground_, b, '{', '}', " ");
  }
  return s;
}

bool BlockPoset::less(std::size_t i, std::size_t j) const {
  return std::find(order.begin(), order.end(), std::make_pair(i, j)) != order.end();
}

std::vector<std::pair<std::size_t, std::size_t>> BlockPoset::covers() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (auto [i, j] : order) {
    bool between = false;
    for (auto [a, b] : order) {
      if (a == i && b != j && less(b, j)) {
        between = true;
        break;
      }
    }
    if (!between) {
      out.emplace_back(i, j);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::size_t> BlockPoset::visible_blocks() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < hidden.size(); ++i) {
    if (!hidden[i]) {
      out.push_back(i);
    }
  }
  return out;
}

Partition theta(const Relation& r) {
  if (!r.is_quasiorder()) {
    throw std::invalid_argument("theta needs a quasiorder");
  }
  const Rows sym = [&] {
    Rows out;
    rows::meet_into(r.rows(), rows::transpose(r.rows()), out);
    return out;
  }();
  std::vector<Block> blocks;
  std::uint64_t assigned = 0;
  for (std::size_t x = 0; x < r.size(); ++x) {
    if ((assigned >> x) & 1U) {
      continue;
    }
    Block b;
    for (std::size_t y = 0; y < r.size(); ++y) {
      if ((sym[x] >> y) & 1U) {
        b.push_back(y);
      }
    }
    assigned |= sym[x];
    blocks.push_back(std::move(b));
  }
  return Partition(r.ground(), std::move(blocks));
}

BlockPoset induced_order(const Relation& r) {
  Partition p = theta(r);
  const auto& blocks = p.blocks();
  std::vector<std::pair<std::size_t, std::size_t>> order;
  std::vector<bool> hidden(blocks.size(), false);
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    for (std::size_t j = 0; j < blocks.size(); ++j) {
      if (i != j && r.contains(blocks[i].front(), blocks[j].front())) {
        order.emplace_back(i, j);
      }
    }
  }
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    if (blocks[i].size() != 1) {
      continue;
    }
    hidden[i] = std::none_of(order.begin(), order.end(),
                             [i](const auto& e) { return e.first == i || e.second == i; });
  }
  return BlockPoset{std::move(p), std::move(order), std::move(hidden)};
}

std::string to_text(const BlockPoset& p) {
  const GroundSet& g = *p.partition.ground();
  const auto& blocks = p.partition.blocks();
  std::string out;
  for (auto i : p.visible_blocks()) {
    if (!out.empty()) {
      out += ' ';
    }
    out += block_label(g, blocks[i], '[', ']', ",");
  }
  for (auto [i, j] : p.covers()) {
    out += '\n';
    out += block_label(g, blocks[i], '[', ']', ",");
    out += " < ";
    out += block_label(g, blocks[j], '[', ']', ",");
  }
  return out;
}

std::string to_dot(const BlockPoset& p, std::string_view graph_name) {
  const GroundSet& g = *p.partition.ground();
  const auto& blocks = p.partition.blocks();
  std::ostringstream out;
  out << "digraph \"" << graph_name << "\" {\n";
  for (auto i : p.visible_blocks()) {
    out << "  B" << i << " [shape=box, label=\"" << block_label(g, blocks[i], '{', '}', ",") << "\"];\n";
  }
  for (auto [i, j] : p.covers()) {
    out << "  B" << i << " -> B" << j << ";\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace quolat
