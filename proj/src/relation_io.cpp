#include "quolat/relation_io.hpp"

#include <stdexcept>
#include <string>

namespace quolat {

nlohmann::json to_json(const Relation& r) {
  const GroundSet& g = *r.ground();
  nlohmann::json pairs = nlohmann::json::array();
  for (auto [x, y] : r.off_diagonal_pairs()) {
    pairs.push_back({g.label(x), g.label(y)});
  }
  return {{"n", g.size()}, {"labels", g.labels()}, {"pairs", std::move(pairs)}};
}

Relation relation_from_json(const nlohmann::json& j, const GroundPtr& ground) {
  if (!j.is_object()) {
    throw std::invalid_argument("relation JSON must be an object");
  }
  if (!j.contains("n") || !j["n"].is_number_unsigned()) {
    throw std::invalid_argument("relation JSON needs a non-negative integer \"n\"");
  }
  const auto n = j["n"].get<std::size_t>();
  GroundPtr g;
  if (j.contains("labels")) {
    const auto& labels = j["labels"];
    if (!labels.is_array() || labels.size() != n) {
      throw std::invalid_argument("\"labels\" must be an array of n strings");
    }
    std::vector<std::string> names;
    for (const auto& l : labels) {
      if (!l.is_string()) {
        throw std::invalid_argument("\"labels\" must be an array of n strings");
      }
      names.push_back(l.get<std::string>());
    }
    g = make_ground(std::move(names));
  } else {
    g = make_ground(n);
  }
  if (ground) {
    if (!same_ground(g, ground)) {
      throw std::invalid_argument("relation labels differ from the shared ground set");
    }
    g = ground;
  }
  std::vector<ElementPair> pairs;
  if (j.contains("pairs")) {
    const auto& ps = j["pairs"];
    if (!ps.is_array()) {
      throw std::invalid_argument("\"pairs\" must be an array");
    }
    for (const auto& p : ps) {
      if (!p.is_array() || p.size() != 2 || !p[0].is_string() || !p[1].is_string()) {
        throw std::invalid_argument("each pair must be a two-element array of labels");
      }
      pairs.emplace_back(g->index_of(p[0].get<std::string>()),
                         g->index_of(p[1].get<std::string>()));
    }
  }
  return Relation::from_pairs(g, pairs);
}

std::vector<Relation> relations_from_json(const nlohmann::json& j) {
  std::vector<Relation> out;
  if (j.is_array()) {
    GroundPtr shared;
    for (const auto& item : j) {
      out.push_back(relation_from_json(item, shared));
      shared = out.back().ground();
    }
  } else {
    out.push_back(relation_from_json(j));
  }
  return out;
}

}  // namespace quolat
