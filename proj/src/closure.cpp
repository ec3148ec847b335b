#include "quolat/closure.hpp"

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <stdexcept>

#include <absl/container/flat_hash_map.h>
#include <absl/container/flat_hash_set.h>

#include "quolat/element_index.hpp"
#include "quolat/heartbeat.hpp"

namespace quolat {

std::string to_string(StopReason r) {
  switch (r) {
    case StopReason::kTargetAtomsFound:
      return "target-atoms-found";
    case StopReason::kBudgetExceeded:
      return "budget-exceeded";
    case StopReason::kSaturated:
      return "saturated";
  }
  return "unknown";
}

std::string to_string(Generation g) {
  switch (g) {
    case Generation::kGenerates:
      return "generates";
    case Generation::kDoesNotGenerate:
      return "does-not-generate";
    case Generation::kIndeterminate:
      return "indeterminate";
  }
  return "unknown";
}

ClosureResult closure(std::span<const Relation> generators, const ClosureBudget& budget,
                      bool keep_elements) {
  const auto start = std::chrono::steady_clock::now();
  if (generators.empty()) {
    throw std::invalid_argument("closure needs at least one generator");
  }
  const GroundPtr& ground = generators.front().ground();
  for (const auto& g : generators) {
    if (!same_ground(g.ground(), ground)) {
      throw std::invalid_argument("generators live on different ground sets");
    }
  }
  for (const auto& t : budget.target) {
    if (!same_ground(t.ground(), ground)) {
      throw std::invalid_argument("target relation on a different ground set");
    }
  }

  ElementIndex index;
  std::vector<std::uint32_t> depth;
  for (const auto& g : generators) {
    if (index.insert(g.rows()).second) {
      depth.push_back(0);
    }
  }
  if (budget.max_elements < index.size()) {
    throw std::invalid_argument("max_elements is below the number of generators");
  }

  absl::flat_hash_map<Rows, bool, rows::Hash> target;
  for (const auto& t : budget.target) {
    target.emplace(t.rows(), false);
  }
  std::size_t target_hits = 0;
  auto note_target = [&](const Rows& r) {
    if (target.empty()) {
      return;
    }
    auto it = target.find(r);
    if (it != target.end() && !it->second) {
      it->second = true;
      ++target_hits;
    }
  };
  for (std::size_t i = 0; i < index.size(); ++i) {
    note_target(index[i]);
  }

  ClosureReport report;
  report.target_size = target.size();
  auto finish = [&](StopReason why) {
    report.stop_reason = why;
    report.discovered = index.size();
    for (const auto& t : budget.target) {
      if (target.at(t.rows())) {
        report.atoms_found.push_back(t);
      }
    }
    report.elapsed_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    ClosureResult result{std::move(report), {}};
    if (keep_elements) {
      result.elements.reserve(index.size());
      for (std::size_t i = 0; i < index.size(); ++i) {
        result.elements.emplace_back(ground, index[i]);
      }
    }
    return result;
  };

  if (!target.empty() && target_hits == target.size()) {
    return finish(StopReason::kTargetAtomsFound);
  }

  Rows scratch;
  scratch.reserve(ground->size());
  const bool beat = heartbeat_enabled();
  bool depth_cut = false;
  std::optional<StopReason> stop;

  // Elements combined with every other element ahead of the general
  // pairing, each with its own cursor into the element list.
  std::vector<std::size_t> pool;
  std::vector<std::size_t> pool_cursor;
  const bool generator_first = budget.schedule == Schedule::kGeneratorFirst;
  if (generator_first) {
    for (std::size_t i = 0; i < index.size(); ++i) {
      pool.push_back(i);
      pool_cursor.push_back(0);
    }
  }

  auto combine = [&](std::size_t a, std::size_t b) {
    if (a == b) {
      return;
    }
    const std::uint32_t d = std::max(depth[a], depth[b]);
    if (budget.max_depth && d >= *budget.max_depth) {
      depth_cut = true;
      return;
    }
    if (rows::leq(index[a], index[b]) || rows::leq(index[b], index[a])) {
      return;
    }
    for (int op = 0; op < 2 && !stop; ++op) {
      if (op == 0) {
        rows::meet_into(index[a], index[b], scratch);
      } else {
        rows::join_into(index[a], index[b], scratch);
      }
      if (index.contains(scratch)) {
        continue;
      }
      if (index.size() >= budget.max_elements) {
        stop = StopReason::kBudgetExceeded;
        return;
      }
      const auto id = index.insert(scratch).first;
      if (beat && (id & 0x3FFFF) == 0) {
        heartbeat("closure: " + std::to_string(index.size()) + " elements, depth " +
                  std::to_string(report.depth_reached));
      }
      depth.push_back(d + 1);
      report.depth_reached = std::max<std::size_t>(report.depth_reached, d + 1);
      const std::size_t hits_before = target_hits;
      note_target(scratch);
      if (!target.empty() && target_hits == target.size()) {
        stop = StopReason::kTargetAtomsFound;
        return;
      }
      if (generator_first && target_hits != hits_before) {
        pool.push_back(id);
        pool_cursor.push_back(0);
      }
    }
  };

  // Pairs (p, j) with j < p for every p < full are done.
  std::size_t full = 0;
  while (!stop) {
    if (generator_first) {
      bool progress = true;
      while (progress && !stop) {
        progress = false;
        for (std::size_t m = 0; m < pool.size() && !stop; ++m) {
          if (pool_cursor[m] < index.size()) {
            combine(pool[m], pool_cursor[m]++);
            progress = true;
          }
        }
      }
      if (stop) {
        break;
      }
    }
    if (full == index.size()) {
      break;
    }
    for (std::size_t j = 0; j < full && !stop; ++j) {
      combine(full, j);
    }
    ++full;
  }
  if (stop) {
    return finish(*stop);
  }
  if (depth_cut) {
    return finish(StopReason::kBudgetExceeded);
  }
  return finish(StopReason::kSaturated);
}

std::vector<Relation> q_atoms(const GroundPtr& ground) {
  std::vector<Relation> out;
  for (std::size_t x = 0; x < ground->size(); ++x) {
    for (std::size_t y = 0; y < ground->size(); ++y) {
      if (x != y) {
        out.push_back(atom_q(ground, x, y));
      }
    }
  }
  return out;
}

std::vector<Relation> e_atoms(const GroundPtr& ground) {
  std::vector<Relation> out;
  for (std::size_t x = 0; x < ground->size(); ++x) {
    for (std::size_t y = x + 1; y < ground->size(); ++y) {
      out.push_back(atom_e(ground, x, y));
    }
  }
  return out;
}

namespace {

GenerationResult decide(std::span<const Relation> generators, std::vector<Relation> atoms,
                        std::size_t max_elements) {
  ClosureBudget budget;
  budget.max_elements = max_elements;
  budget.target = std::move(atoms);
  if (budget.target.empty()) {
    // Singleton ground set: the lattice is {delta}, generated by anything.
    budget.target.push_back(delta(generators.front().ground()));
  }
  GenerationResult result;
  result.report = closure(generators, budget).report;
  switch (result.report.stop_reason) {
    case StopReason::kTargetAtomsFound:
      result.outcome = Generation::kGenerates;
      break;
    case StopReason::kSaturated:
      result.outcome = Generation::kDoesNotGenerate;
      break;
    case StopReason::kBudgetExceeded:
      result.outcome = Generation::kIndeterminate;
      break;
  }
  return result;
}

}  // namespace

GenerationResult generates_quo(std::span<const Relation> generators, std::size_t max_elements) {
  if (generators.empty()) {
    throw std::invalid_argument("generation test needs at least one generator");
  }
  return decide(generators, q_atoms(generators.front().ground()), max_elements);
}

GenerationResult generates_equ(std::span<const Relation> generators, std::size_t max_elements) {
  if (generators.empty()) {
    throw std::invalid_argument("generation test needs at least one generator");
  }
  for (const auto& g : generators) {
    if (!g.is_equivalence()) {
      throw std::invalid_argument("generates_equ needs equivalence generators");
    }
  }
  return decide(generators, e_atoms(generators.front().ground()), max_elements);
}

}  // namespace quolat
