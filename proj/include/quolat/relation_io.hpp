#ifndef QUOLAT_RELATION_IO_HPP
#define QUOLAT_RELATION_IO_HPP

#include <vector>

#include "json.hpp"
#include "quolat/relation.hpp"

namespace quolat {

// {"n": 3, "labels": ["a","b","c"], "pairs": [["a","b"]]}; off-diagonal
// pairs only, reflexive pairs implied.
nlohmann::json to_json(const Relation& r);

// Parses the format above. "labels" may be omitted (x0..x{n-1}). When
// `ground` is given, the labels must match it and the result shares it.
// Throws std::invalid_argument on malformed input.
Relation relation_from_json(const nlohmann::json& j, const GroundPtr& ground = nullptr);

// A single relation object or an array of them on one shared ground set.
std::vector<Relation> relations_from_json(const nlohmann::json& j);

}  // namespace quolat

#endif  // QUOLAT_RELATION_IO_HPP
