#ifndef QUOLAT_GROUND_SET_HPP
#define QUOLAT_GROUND_SET_HPP

#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace quolat {

// Largest ground set; one relation row fits one machine word.
inline constexpr std::size_t kMaxGroundSize = 64;

// A finite labeled set {x_0, ..., x_{n-1}}. Labels are presentation only,
// all algebra is done on indices.
class GroundSet {
 public:
  // Labels "x0".."x{n-1}".
  explicit GroundSet(std::size_t n);
  explicit GroundSet(std::vector<std::string> labels);

  std::size_t size() const noexcept { return labels_.size(); }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  const std::string& label(std::size_t i) const { return labels_.at(i); }

  // Throws std::invalid_argument for an unknown label.
  std::size_t index_of(std::string_view label) const;
  bool contains(std::string_view label) const noexcept;

  friend bool operator==(const GroundSet&, const GroundSet&) = default;

 private:
  std::vector<std::string> labels_;
};

using GroundPtr = std::shared_ptr<const GroundSet>;

GroundPtr make_ground(std::size_t n);
GroundPtr make_ground(std::vector<std::string> labels);
// Splits on whitespace: "a b c d f g".
GroundPtr make_ground(std::string_view space_separated);

// Same object or equal label lists.
bool same_ground(const GroundPtr& a, const GroundPtr& b) noexcept;

}  // namespace quolat

#endif  // QUOLAT_GROUND_SET_HPP
