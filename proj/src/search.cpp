#include "quolat/search.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <stdexcept>

#include "quolat/relation_io.hpp"
#include "quolat/table_closure.hpp"

namespace quolat {

namespace {
constexpr int kCheckpointVersion = 1;
}

std::string to_string(Shape s) {
  switch (s) {
    case Shape::kAny:
      return "any";
    case Shape::kAntichain:
      return "antichain";
    case Shape::kOneOneTwo:
      return "one-one-two";
  }
  return "?";
}

Shape shape_from_string(std::string_view s) {
  if (s == "any") {
    return Shape::kAny;
  }
  if (s == "antichain") {
    return Shape::kAntichain;
  }
  if (s == "one-one-two") {
    return Shape::kOneOneTwo;
  }
  throw std::invalid_argument("unknown shape '" + std::string(s) + "'");
}

nlohmann::json SearchReport::to_json() const {
  nlohmann::json found = nlohmann::json::array();
  for (const auto& t : generating_sets_found) {
    found.push_back(t);
  }
  return {{"shard_begin", shard_begin},
          {"shard_end", shard_end},
          {"cursor", cursor},
          {"candidates_examined", candidates_examined},
          {"candidates_pruned", candidates_pruned()},
          {"pruned_shape", pruned_shape},
          {"pruned_orbit", pruned_orbit},
          {"pruned_bounds", pruned_bounds},
          {"closures_run", closures_run},
          {"generating_sets_found", found},
          {"exhausted", exhausted},
          {"elapsed_seconds", elapsed_seconds}};
}

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) {
    return 0;
  }
  k = std::min(k, n - k);
  unsigned __int128 acc = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    acc = acc * (n - k + i) / i;
    if (acc > UINT64_MAX) {
      return UINT64_MAX;
    }
  }
  return static_cast<std::uint64_t>(acc);
}

std::uint64_t colex_rank(std::span<const IndexedLattice::Id> subset) {
  std::uint64_t r = 0;
  for (std::size_t i = 0; i < subset.size(); ++i) {
    r += binomial(subset[i], i + 1);
  }
  return r;
}

IdTuple colex_unrank(std::uint64_t rank, std::size_t k) {
  IdTuple out(k);
  for (std::size_t i = k; i-- > 0;) {
    // Largest c with C(c, i+1) <= rank.
    std::uint64_t lo = i;
    std::uint64_t hi = i + 1;
    while (binomial(hi, i + 1) <= rank) {
      hi *= 2;
    }
    while (lo + 1 < hi) {
      const std::uint64_t mid = lo + (hi - lo) / 2;
      if (binomial(mid, i + 1) <= rank) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    out[i] = static_cast<IndexedLattice::Id>(lo);
    rank -= binomial(lo, i + 1);
  }
  return out;
}

std::pair<std::uint64_t, std::uint64_t> shard_range(std::uint64_t total, std::size_t index,
                                                    std::size_t count) {
  if (count == 0 || index >= count) {
    throw std::invalid_argument("shard index must be below the shard count");
  }
  auto edge = [&](std::size_t i) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(total) * i / count);
  };
  return {edge(index), edge(index + 1)};
}

std::vector<IdTuple> permutation_tables(const IndexedLattice& lattice) {
  const std::size_t n = lattice.ground()->size();
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<IdTuple> out;
  do {
    IdTuple table(lattice.size());
    for (IndexedLattice::Id id = 0; id < lattice.size(); ++id) {
      table[id] = lattice.id_of(apply_permutation(lattice.element(id), perm));
    }
    out.push_back(std::move(table));
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

IdTuple orbit_representative(std::span<const IndexedLattice::Id> subset,
                             std::span<const IdTuple> group) {
  IdTuple best(subset.begin(), subset.end());
  std::sort(best.begin(), best.end());
  IdTuple image(subset.size());
  for (const auto& table : group) {
    for (std::size_t i = 0; i < subset.size(); ++i) {
      image[i] = table[subset[i]];
    }
    std::sort(image.begin(), image.end());
    if (image < best) {
      best = image;
    }
  }
  return best;
}

nlohmann::json finding_json(const IndexedLattice& lattice, const IdTuple& ids) {
  nlohmann::json rels = nlohmann::json::array();
  for (auto id : ids) {
    rels.push_back(to_json(lattice.element(id)));
  }
  return {{"ids", ids}, {"relations", rels}};
}

namespace {

nlohmann::json task_json(const SearchTask& t) {
  return {{"kind", to_string(t.kind)},     {"n", t.n},
          {"size", t.subset_size},         {"shape", to_string(t.shape)},
          {"orbit", t.orbit_reduction},    {"shard_index", t.shard_index},
          {"shard_count", t.shard_count}};
}

void write_checkpoint(const std::string& path, const SearchTask& task, const SearchReport& r) {
  const nlohmann::json j{{"version", kCheckpointVersion},
                         {"cursor", r.cursor},
                         {"examined", r.candidates_examined},
                         {"pruned_shape", r.pruned_shape},
                         {"pruned_orbit", r.pruned_orbit},
                         {"pruned_bounds", r.pruned_bounds},
                         {"closures_run", r.closures_run},
                         {"task", task_json(task)}};
  // Write then rename, so a crash leaves the previous checkpoint intact.
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    out << j.dump() << "\n";
    if (!out) {
      throw std::runtime_error("cannot write checkpoint " + tmp);
    }
  }
  std::filesystem::rename(tmp, path);
}

bool read_checkpoint(const std::string& path, const SearchTask& task, SearchReport& r) {
  std::ifstream in(path);
  if (!in) {
    return false;
  }
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument("checkpoint " + path + " is not valid JSON: " + e.what());
  }
  if (j.value("version", 0) != kCheckpointVersion) {
    throw std::invalid_argument("checkpoint " + path + " has an unsupported version");
  }
  if (j.at("task") != task_json(task)) {
    throw std::invalid_argument("checkpoint " + path + " belongs to a different task");
  }
  r.cursor = j.at("cursor").get<std::uint64_t>();
  r.candidates_examined = j.at("examined").get<std::uint64_t>();
  r.pruned_shape = j.value("pruned_shape", std::uint64_t{0});
  r.pruned_orbit = j.value("pruned_orbit", std::uint64_t{0});
  r.pruned_bounds = j.value("pruned_bounds", std::uint64_t{0});
  r.closures_run = j.value("closures_run", std::uint64_t{0});
  if (r.cursor < r.shard_begin || r.cursor > r.shard_end) {
    throw std::invalid_argument("checkpoint cursor lies outside the shard");
  }
  return true;
}

std::size_t comparable_pairs(const IndexedLattice& lattice, const IdTuple& ids) {
  std::size_t c = 0;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    for (std::size_t j = i + 1; j < ids.size(); ++j) {
      if (lattice.leq(ids[i], ids[j]) || lattice.leq(ids[j], ids[i])) {
        ++c;
      }
    }
  }
  return c;
}

}  // namespace

SearchReport run_search(const IndexedLattice& lattice, const SearchTask& task,
                        const SearchSinks& sinks) {
  const auto t0 = std::chrono::steady_clock::now();
  if (!lattice.has_tables()) {
    throw std::invalid_argument("search needs a lattice with op tables");
  }
  if (task.shape == Shape::kOneOneTwo && task.subset_size != 4) {
    throw std::invalid_argument("shape one-one-two needs subset size 4");
  }
  const std::size_t k = task.subset_size;
  const std::uint64_t total = binomial(lattice.size(), k);
  SearchReport r;
  std::tie(r.shard_begin, r.shard_end) = shard_range(total, task.shard_index, task.shard_count);
  r.cursor = r.shard_begin;
  if (task.checkpoint_path) {
    read_checkpoint(*task.checkpoint_path, task, r);
  }
  r.started_at = r.cursor;
  std::vector<IdTuple> group;
  if (task.orbit_reduction) {
    group = permutation_tables(lattice);
    group.erase(group.begin());  // identity
  }
  TableClosure engine(lattice);
  const std::uint64_t stop =
      task.max_candidates ? std::min(r.shard_end, r.cursor + *task.max_candidates) : r.shard_end;
  auto save = [&] {
    r.elapsed_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (task.checkpoint_path) {
      write_checkpoint(*task.checkpoint_path, task, r);
    }
  };

  IdTuple subset = k > 0 && r.cursor < stop ? colex_unrank(r.cursor, k) : IdTuple{};
  IdTuple image(k);
  while (r.cursor < stop) {
    ++r.candidates_examined;
    bool keep = true;
    if (task.shape != Shape::kAny) {
      const std::size_t c = comparable_pairs(lattice, subset);
      keep = task.shape == Shape::kAntichain ? c == 0 : c == 1;
      if (!keep) {
        ++r.pruned_shape;
      }
    }
    if (keep && !group.empty()) {
      for (const auto& table : group) {
        for (std::size_t i = 0; i < k; ++i) {
          image[i] = table[subset[i]];
        }
        std::sort(image.begin(), image.end());
        if (image < subset) {
          keep = false;
          ++r.pruned_orbit;
          break;
        }
      }
    }
    if (keep && !engine.spans_top_and_bottom(subset)) {
      keep = false;
      ++r.pruned_bounds;
    }
    if (keep) {
      ++r.closures_run;
      if (engine.generates(subset)) {
        r.generating_sets_found.push_back(subset);
        if (sinks.on_finding) {
          sinks.on_finding(subset);
        }
        ++r.cursor;
        save();
        --r.cursor;
      }
    }
    ++r.cursor;
    if (r.cursor % task.checkpoint_every == 0) {
      save();
      if (sinks.on_progress) {
        sinks.on_progress(r);
      }
    }
    if (r.cursor < stop) {
      // Colex successor.
      std::size_t i = 0;
      while (i + 1 < k && subset[i] + 1 == subset[i + 1]) {
        subset[i] = static_cast<IndexedLattice::Id>(i);
        ++i;
      }
      ++subset[i];
    }
  }
  r.exhausted = r.cursor == r.shard_end;
  save();
  return r;
}

SearchReport run_search(const SearchTask& task, const SearchSinks& sinks) {
  IndexedLattice lattice =
      task.kind == LatticeKind::kQuo ? enumerate_quo(task.n) : enumerate_equ(task.n);
  lattice.build_op_tables();
  return run_search(lattice, task, sinks);
}

SearchReport quo4_campaign(std::size_t shards, std::optional<std::uint64_t> budget,
                           const std::optional<std::string>& checkpoint_dir,
                           const SearchSinks& sinks) {
  IndexedLattice lattice = enumerate_quo(4);
  lattice.build_op_tables();
  if (checkpoint_dir) {
    std::filesystem::create_directories(*checkpoint_dir);
  }
  SearchReport total;
  total.exhausted = true;
  std::optional<std::uint64_t> left = budget;
  const auto t0 = std::chrono::steady_clock::now();
  for (std::size_t s = 0; s < shards; ++s) {
    if (left && *left == 0) {
      total.exhausted = false;
      break;
    }
    SearchTask task;
    task.kind = LatticeKind::kQuo;
    task.n = 4;
    task.subset_size = 4;
    task.shape = Shape::kAny;
    task.orbit_reduction = true;
    task.shard_index = s;
    task.shard_count = shards;
    if (checkpoint_dir) {
      task.checkpoint_path = *checkpoint_dir + "/shard-" + std::to_string(s) + ".json";
    }
    task.max_candidates = left;
    const SearchReport r = run_search(lattice, task, sinks);
    if (s == 0) {
      total.shard_begin = r.shard_begin;
    }
    total.shard_end = r.shard_end;
    total.candidates_examined += r.candidates_examined;
    total.pruned_shape += r.pruned_shape;
    total.pruned_orbit += r.pruned_orbit;
    total.pruned_bounds += r.pruned_bounds;
    total.closures_run += r.closures_run;
    total.generating_sets_found.insert(total.generating_sets_found.end(),
                                       r.generating_sets_found.begin(),
                                       r.generating_sets_found.end());
    total.exhausted = total.exhausted && r.exhausted;
    total.cursor = r.cursor;
    if (left) {
      *left -= std::min(*left, r.cursor - r.started_at);
    }
  }
  total.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return total;
}

}  // namespace quolat
