#include "quolat/relation.hpp"

#include <bit>
#include <stdexcept>

namespace quolat {

namespace rows {

Rows identity(std::size_t n) {
  Rows r(n);
  for (std::size_t i = 0; i < n; ++i) {
    r[i] = std::uint64_t{1} << i;
  }
  return r;
}

Rows full(std::size_t n) {
  const std::uint64_t all = n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
  return Rows(n, all);
}

void close_transitively(Rows& r) noexcept {
  const std::size_t n = r.size();
  for (std::size_t k = 0; k < n; ++k) {
    const std::uint64_t bit = std::uint64_t{1} << k;
    const std::uint64_t row = r[k];
    for (std::size_t i = 0; i < n; ++i) {
      if (r[i] & bit) {
        r[i] |= row;
      }
    }
  }
}

void meet_into(const Rows& a, const Rows& b, Rows& out) {
  const std::size_t n = a.size();
  out.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = a[i] & b[i];
  }
}

void join_into(const Rows& a, const Rows& b, Rows& out) {
  const std::size_t n = a.size();
  out.resize(n);
  bool changed = false;
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = a[i] | b[i];
    changed |= out[i] != a[i];
  }
  if (changed) {
    close_transitively(out);
  }
}

Rows transpose(const Rows& r) {
  const std::size_t n = r.size();
  Rows t(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    std::uint64_t row = r[i];
    while (row) {
      const int j = std::countr_zero(row);
      t[static_cast<std::size_t>(j)] |= std::uint64_t{1} << i;
      row &= row - 1;
    }
  }
  return t;
}

bool leq(const Rows& a, const Rows& b) noexcept {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] & ~b[i]) {
      return false;
    }
  }
  return true;
}

bool is_transitive(const Rows& r) noexcept {
  // Transitive iff every row contains the rows of its members.
  const std::size_t n = r.size();
  for (std::size_t i = 0; i < n; ++i) {
    std::uint64_t row = r[i];
    std::uint64_t acc = row;
    while (row) {
      acc |= r[static_cast<std::size_t>(std::countr_zero(row))];
      row &= row - 1;
    }
    if (acc != r[i]) {
      return false;
    }
  }
  return true;
}

bool is_symmetric(const Rows& r) noexcept { return transpose(r) == r; }

std::size_t count(const Rows& r) noexcept {
  std::size_t c = 0;
  for (auto w : r) {
    c += static_cast<std::size_t>(std::popcount(w));
  }
  return c;
}

std::size_t Hash::operator()(const Rows& r) const noexcept {
  std::uint64_t h = 0x9e3779b97f4a7c15ULL ^ r.size();
  for (auto w : r) {
    h ^= w + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    h *= 0xbf58476d1ce4e5b9ULL;
    h ^= h >> 31;
  }
  return static_cast<std::size_t>(h);
}

}  // namespace rows

namespace {

void check_same(const Relation& r, const Relation& s) {
  if (!same_ground(r.ground(), s.ground())) {
    throw std::invalid_argument("relations live on different ground sets");
  }
}

void check_element(const GroundPtr& g, std::size_t x) {
  if (x >= g->size()) {
    throw std::invalid_argument("element index " + std::to_string(x) +
                                " outside ground set of size " +
                                std::to_string(g->size()));
  }
}

}  // namespace

Relation::Relation(GroundPtr ground, Rows rows)
    : ground_(std::move(ground)), rows_(std::move(rows)) {
  if (!ground_) {
    throw std::invalid_argument("relation without ground set");
  }
  if (rows_.size() != ground_->size()) {
    throw std::invalid_argument("relation has " + std::to_string(rows_.size()) +
                                " rows, ground set has " +
                                std::to_string(ground_->size()) + " elements");
  }
  const std::size_t n = rows_.size();
  const std::uint64_t mask = n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
  for (std::size_t i = 0; i < n; ++i) {
    if (!((rows_[i] >> i) & 1U)) {
      throw std::invalid_argument("relation is not reflexive at " + ground_->label(i));
    }
    if (rows_[i] & ~mask) {
      throw std::invalid_argument("relation row has bits outside the ground set");
    }
  }
}

Relation Relation::from_pairs(GroundPtr ground, std::span<const ElementPair> pairs) {
  Rows r = rows::identity(ground->size());
  for (auto [x, y] : pairs) {
    check_element(ground, x);
    check_element(ground, y);
    r[x] |= std::uint64_t{1} << y;
  }
  return Relation(std::move(ground), std::move(r));
}

std::size_t Relation::pair_count() const noexcept { return rows::count(rows_) - size(); }

std::vector<ElementPair> Relation::off_diagonal_pairs() const {
  std::vector<ElementPair> out;
  for (std::size_t i = 0; i < size(); ++i) {
    for (std::size_t j = 0; j < size(); ++j) {
      if (i != j && contains(i, j)) {
        out.emplace_back(i, j);
      }
    }
  }
  return out;
}

bool Relation::is_below(const Relation& other) const {
  check_same(*this, other);
  return rows::leq(rows_, other.rows_);
}

std::string Relation::key() const {
  std::string k;
  k.reserve(size() * size());
  for (std::size_t i = 0; i < size(); ++i) {
    for (std::size_t j = 0; j < size(); ++j) {
      k.push_back(contains(i, j) ? '1' : '0');
    }
  }
  return k;
}

Relation delta(const GroundPtr& ground) {
  return Relation(ground, rows::identity(ground->size()));
}

Relation nabla(const GroundPtr& ground) { return Relation(ground, rows::full(ground->size())); }

Relation atom_q(const GroundPtr& ground, std::size_t x, std::size_t y) {
  check_element(ground, x);
  check_element(ground, y);
  Rows r = rows::identity(ground->size());
  r[x] |= std::uint64_t{1} << y;
  return Relation(ground, std::move(r));
}

Relation atom_e(const GroundPtr& ground, std::size_t x, std::size_t y) {
  check_element(ground, x);
  check_element(ground, y);
  Rows r = rows::identity(ground->size());
  r[x] |= std::uint64_t{1} << y;
  r[y] |= std::uint64_t{1} << x;
  return Relation(ground, std::move(r));
}

Relation atom_q(const GroundPtr& ground, std::string_view x, std::string_view y) {
  return atom_q(ground, ground->index_of(x), ground->index_of(y));
}

Relation atom_e(const GroundPtr& ground, std::string_view x, std::string_view y) {
  return atom_e(ground, ground->index_of(x), ground->index_of(y));
}

Relation meet(const Relation& r, const Relation& s) {
  check_same(r, s);
  Rows out;
  rows::meet_into(r.rows(), s.rows(), out);
  return Relation(r.ground(), std::move(out));
}

Relation join(const Relation& r, const Relation& s) {
  check_same(r, s);
  Rows out;
  rows::join_into(r.rows(), s.rows(), out);
  return Relation(r.ground(), std::move(out));
}

Relation inverse(const Relation& r) { return Relation(r.ground(), rows::transpose(r.rows())); }

Relation transitive_closure(const Relation& r) {
  Rows out = r.rows();
  rows::close_transitively(out);
  return Relation(r.ground(), std::move(out));
}

std::vector<Relation> atom_decomposition(const Relation& r) {
  if (!r.is_quasiorder()) {
    throw std::invalid_argument("atom decomposition needs a quasiorder");
  }
  std::vector<Relation> atoms;
  for (auto [x, y] : r.off_diagonal_pairs()) {
    atoms.push_back(atom_q(r.ground(), x, y));
  }
  return atoms;
}

bool is_permutation(std::span<const std::size_t> perm) noexcept {
  std::vector<bool> seen(perm.size(), false);
  for (auto p : perm) {
    if (p >= perm.size() || seen[p]) {
      return false;
    }
    seen[p] = true;
  }
  return true;
}

Relation apply_permutation(const Relation& r, std::span<const std::size_t> perm) {
  if (perm.size() != r.size() || !is_permutation(perm)) {
    throw std::invalid_argument("not a bijection on the ground set");
  }
  Rows out(r.size(), 0);
  for (std::size_t i = 0; i < r.size(); ++i) {
    std::uint64_t row = r.rows()[i];
    std::uint64_t image = 0;
    while (row) {
      image |= std::uint64_t{1} << perm[static_cast<std::size_t>(std::countr_zero(row))];
      row &= row - 1;
    }
    out[perm[i]] = image;
  }
  return Relation(r.ground(), std::move(out));
}

bool stays_inside(const Relation& r, std::span<const std::size_t> sub) {
  std::uint64_t inside = 0;
  for (auto s : sub) {
    check_element(r.ground(), s);
    inside |= std::uint64_t{1} << s;
  }
  for (std::size_t i = 0; i < r.size(); ++i) {
    const std::uint64_t others = r.rows()[i] & ~(std::uint64_t{1} << i);
    if (others == 0) {
      continue;
    }
    if (!((inside >> i) & 1U) || (others & ~inside)) {
      return false;
    }
  }
  return true;
}

Relation restrict(const Relation& r, std::span<const std::size_t> sub) {
  if (!stays_inside(r, sub)) {
    throw std::invalid_argument("relation has an off-diagonal pair leaving the subset");
  }
  std::vector<std::string> labels;
  labels.reserve(sub.size());
  for (auto s : sub) {
    labels.push_back(r.ground()->label(s));
  }
  auto g = make_ground(std::move(labels));
  Rows out = rows::identity(sub.size());
  for (std::size_t i = 0; i < sub.size(); ++i) {
    for (std::size_t j = 0; j < sub.size(); ++j) {
      if (r.contains(sub[i], sub[j])) {
        out[i] |= std::uint64_t{1} << j;
      }
    }
  }
  return Relation(std::move(g), std::move(out));
}

}  // namespace quolat
