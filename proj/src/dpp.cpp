#include "quolat/dpp.hpp"

#include <algorithm>
#include <set>

namespace quolat {

std::string to_string(DppViolation v) {
  switch (v) {
    case DppViolation::kEmptyPath:
      return "empty-path";
    case DppViolation::kBrokenPath:
      return "broken-path";
    case DppViolation::kEndpointMismatch:
      return "endpoint-mismatch";
    case DppViolation::kRepeatedVertex:
      return "repeated-vertex";
    case DppViolation::kSharedInterior:
      return "shared-interior";
    case DppViolation::kNoDirectedStep:
      return "no-directed-step";
  }
  return "unknown";
}

Relation step_relation(const GroundPtr& ground, const PathStep& s) {
  return s.kind == StepKind::kQ ? atom_q(ground, s.from, s.to) : atom_e(ground, s.from, s.to);
}

Relation path_join(const GroundPtr& ground, const Path& path) {
  Relation acc = delta(ground);
  for (const auto& s : path) {
    acc = join(acc, step_relation(ground, s));
  }
  return acc;
}

namespace {

// Vertices u_0..u_k of a chained path.
std::vector<std::size_t> vertices(const GroundPtr& ground, const Path& path, const char* which) {
  if (path.empty()) {
    throw DppHypothesisError(DppViolation::kEmptyPath, std::string(which) + " path is empty");
  }
  std::vector<std::size_t> vs{path.front().from};
  for (std::size_t i = 0; i < path.size(); ++i) {
    const auto& s = path[i];
    if (s.from >= ground->size() || s.to >= ground->size()) {
      throw std::invalid_argument("path step outside the ground set");
    }
    if (s.from != vs.back() || s.from == s.to) {
      throw DppHypothesisError(DppViolation::kBrokenPath,
                               std::string(which) + " path breaks at step " + std::to_string(i + 1));
    }
    vs.push_back(s.to);
  }
  std::set<std::size_t> seen(vs.begin(), vs.end());
  if (seen.size() != vs.size()) {
    throw DppHypothesisError(DppViolation::kRepeatedVertex,
                             std::string(which) + " path visits a vertex twice");
  }
  return vs;
}

}  // namespace

void check_dpp_hypotheses(const GroundPtr& ground, const Path& first, const Path& second) {
  const auto u = vertices(ground, first, "first");
  const auto v = vertices(ground, second, "second");
  if (u.front() != v.front() || u.back() != v.back()) {
    throw DppHypothesisError(DppViolation::kEndpointMismatch,
                             "the two paths do not run between the same endpoints");
  }
  const std::set<std::size_t> inner_u(u.begin() + 1, u.end() - 1);
  for (std::size_t i = 1; i + 1 < v.size(); ++i) {
    if (inner_u.contains(v[i])) {
      throw DppHypothesisError(DppViolation::kSharedInterior,
                               "interior vertex " + ground->label(v[i]) + " lies on both paths");
    }
  }
  auto directed = [](const PathStep& s) { return s.kind == StepKind::kQ; };
  if (std::none_of(first.begin(), first.end(), directed) &&
      std::none_of(second.begin(), second.end(), directed)) {
    throw DppHypothesisError(DppViolation::kNoDirectedStep,
                             "no step of kind q; the meet would be e(x,y)");
  }
}

DppResult dpp(const GroundPtr& ground, const Path& first, const Path& second) {
  check_dpp_hypotheses(ground, first, second);
  const std::size_t x = first.front().from;
  const std::size_t y = first.back().to;
  Relation left = path_join(ground, first);
  Relation right = path_join(ground, second);
  Relation m = meet(left, right);
  if (!(m == atom_q(ground, x, y))) {
    throw std::logic_error("disjoint paths meet differs from q(" + ground->label(x) + "," +
                           ground->label(y) + ")");
  }
  return DppResult{x, y, std::move(left), std::move(right), std::move(m)};
}

}  // namespace quolat
