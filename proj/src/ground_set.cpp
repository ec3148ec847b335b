#include "quolat/ground_set.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

namespace quolat {

namespace {

void check_size(std::size_t n) {
  if (n == 0 || n > kMaxGroundSize) {
    throw std::invalid_argument("ground set size must be in 1.." +
                                std::to_string(kMaxGroundSize) + ", got " +
                                std::to_string(n));
  }
}

}  // namespace

GroundSet::GroundSet(std::size_t n) {
  check_size(n);
  labels_.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    labels_.push_back("x" + std::to_string(i));
  }
}

GroundSet::GroundSet(std::vector<std::string> labels) : labels_(std::move(labels)) {
  check_size(labels_.size());
  std::unordered_set<std::string> seen;
  for (const auto& l : labels_) {
    if (l.empty()) {
      throw std::invalid_argument("empty element label");
    }
    if (!seen.insert(l).second) {
      throw std::invalid_argument("duplicate element label '" + l + "'");
    }
  }
}

std::size_t GroundSet::index_of(std::string_view label) const {
  auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) {
    throw std::invalid_argument("unknown element label '" + std::string(label) + "'");
  }
  return static_cast<std::size_t>(it - labels_.begin());
}

bool GroundSet::contains(std::string_view label) const noexcept {
  return std::find(labels_.begin(), labels_.end(), label) != labels_.end();
}

GroundPtr make_ground(std::size_t n) { return std::make_shared<const GroundSet>(n); }

GroundPtr make_ground(std::vector<std::string> labels) {
  return std::make_shared<const GroundSet>(std::move(labels));
}

GroundPtr make_ground(std::string_view space_separated) {
  std::istringstream in{std::string(space_separated)};
  std::vector<std::string> labels;
  for (std::string tok; in >> tok;) {
    labels.push_back(tok);
  }
  return make_ground(std::move(labels));
}

bool same_ground(const GroundPtr& a, const GroundPtr& b) noexcept {
  if (a == b) {
    return true;
  }
  if (!a || !b) {
    return false;
  }
  return *a == *b;
}

}  // namespace quolat
