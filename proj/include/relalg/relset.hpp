#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "relalg/classify.hpp"
#include "relalg/error.hpp"

namespace relalg {

using PointId = std::uint32_t;

struct Universe {
  std::size_t size = 1;
};

// Finite binary relation kept as a sorted, duplicate-free list of pairs.
class BinRel {
 public:
  using Pair = std::pair<PointId, PointId>;

  BinRel() = default;
  BinRel(std::initializer_list<Pair> pairs) : BinRel(std::vector<Pair>(pairs)) {}
  explicit BinRel(std::vector<Pair> pairs) {
    keys_.reserve(pairs.size());
    for (const Pair& p : pairs) keys_.push_back(key(p));
    normalize();
  }
  static BinRel from_keys(std::vector<std::uint64_t> keys) {
    BinRel r;
    r.keys_ = std::move(keys);
    r.normalize();
    return r;
  }
  static BinRel square(std::size_t n) {
    BinRel r;
    for (PointId u = 0; u < n; ++u)
      for (PointId v = 0; v < n; ++v) r.keys_.push_back(key({u, v}));
    return r;
  }
  static BinRel identity(std::size_t n) {
    BinRel r;
    for (PointId u = 0; u < n; ++u) r.keys_.push_back(key({u, u}));
    return r;
  }

  std::size_t size() const { return keys_.size(); }
  bool empty() const { return keys_.empty(); }
  bool contains(Pair p) const { return std::binary_search(keys_.begin(), keys_.end(), key(p)); }
  std::vector<Pair> pairs() const {
    std::vector<Pair> out;
    out.reserve(keys_.size());
    for (std::uint64_t k : keys_) out.push_back(unkey(k));
    return out;
  }
  const std::vector<std::uint64_t>& keys() const { return keys_; }

  BinRel operator|(const BinRel& o) const { return merge(o, 0); }
  BinRel operator&(const BinRel& o) const { return merge(o, 1); }
  BinRel minus(const BinRel& o) const { return merge(o, 2); }
  bool subset_of(const BinRel& o) const {
    return std::includes(o.keys_.begin(), o.keys_.end(), keys_.begin(), keys_.end());
  }

  BinRel inverse() const {
    BinRel r;
    r.keys_.reserve(keys_.size());
    for (std::uint64_t k : keys_) {
      const Pair p = unkey(k);
      r.keys_.push_back(key({p.second, p.first}));
    }
    r.normalize();
    return r;
  }

  // Relational product R|S.
  BinRel compose(const BinRel& s) const {
    std::vector<std::uint64_t> out;
    for (std::uint64_t k : keys_) {
      const Pair p = unkey(k);
      auto lo = std::lower_bound(s.keys_.begin(), s.keys_.end(), key({p.second, 0}));
      for (auto it = lo; it != s.keys_.end() && unkey(*it).first == p.second; ++it)
        out.push_back(key({p.first, unkey(*it).second}));
    }
    return from_keys(std::move(out));
  }

  // Points occurring in some pair.
  std::vector<PointId> field() const {
    std::set<PointId> f;
    for (std::uint64_t k : keys_) {
      const Pair p = unkey(k);
      f.insert(p.first);
      f.insert(p.second);
    }
    return {f.begin(), f.end()};
  }

  // Successors of u.
  std::vector<PointId> image(PointId u) const {
    std::vector<PointId> out;
    for (auto it = std::lower_bound(keys_.begin(), keys_.end(), key({u, 0})); it != keys_.end() && unkey(*it).first == u; ++it)
      out.push_back(unkey(*it).second);
    return out;
  }

  std::string str() const {
    std::string s = "{";
    for (std::size_t i = 0; i < keys_.size(); ++i) {
      const Pair p = unkey(keys_[i]);
      if (i) s += ",";
      s += "(" + std::to_string(p.first) + "," + std::to_string(p.second) + ")";
    }
    return s + "}";
  }

  bool operator==(const BinRel&) const = default;
  auto operator<=>(const BinRel&) const = default;

  static constexpr std::uint64_t key(Pair p) { return (std::uint64_t{p.first} << 32) | p.second; }
  static constexpr Pair unkey(std::uint64_t k) {
    return {static_cast<PointId>(k >> 32), static_cast<PointId>(k & 0xffffffffU)};
  }

 private:
  void normalize() {
    std::sort(keys_.begin(), keys_.end());
    keys_.erase(std::unique(keys_.begin(), keys_.end()), keys_.end());
  }
  BinRel merge(const BinRel& o, int op) const {
    BinRel r;
    auto out = std::back_inserter(r.keys_);
    if (op == 0) std::set_union(keys_.begin(), keys_.end(), o.keys_.begin(), o.keys_.end(), out);
    if (op == 1) std::set_intersection(keys_.begin(), keys_.end(), o.keys_.begin(), o.keys_.end(), out);
    if (op == 2) std::set_difference(keys_.begin(), keys_.end(), o.keys_.begin(), o.keys_.end(), out);
    return r;
  }
  std::vector<std::uint64_t> keys_;
};

inline constexpr std::size_t kMaterializeMaxUniverse = 4;
inline constexpr std::size_t kSubalgebraMaxSize = std::size_t{1} << 16;

enum class Carrier { Implicit, Materialize };

// The algebra of relations below `unit` on a finite universe, with operations relativized to unit.
class ConcreteAlgebra {
 public:
  ConcreteAlgebra(Universe u, BinRel unit, std::optional<std::vector<BinRel>> carrier = std::nullopt)
      : universe_(u), unit_(std::move(unit)), carrier_(std::move(carrier)) {
    if (universe_.size == 0) throw PreconditionError("universe must be non-empty");
  }

  const Universe& universe() const { return universe_; }
  const BinRel& unit() const { return unit_; }
  const std::optional<std::vector<BinRel>>& carrier() const { return carrier_; }

  BinRel join(const BinRel& r, const BinRel& s) const { return (r | s) & unit_; }
  BinRel meet(const BinRel& r, const BinRel& s) const { return r & s & unit_; }
  BinRel complement(const BinRel& r) const { return unit_.minus(r); }
  BinRel compose(const BinRel& r, const BinRel& s) const { return r.compose(s) & unit_; }
  BinRel converse(const BinRel& r) const { return r.inverse() & unit_; }
  BinRel identity() const { return BinRel::identity(universe_.size) & unit_; }
  BinRel zero() const { return {}; }

 private:
  Universe universe_;
  BinRel unit_;
  std::optional<std::vector<BinRel>> carrier_;
};

namespace detail {

inline std::vector<BinRel> all_subrelations(const BinRel& unit) {
  const auto pairs = unit.pairs();
  if (pairs.size() > 16) throw BudgetError("carrier materialization limited to 16 pairs");
  std::vector<BinRel> out;
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << pairs.size()); ++m) {
    std::vector<BinRel::Pair> sel;
    for (std::size_t i = 0; i < pairs.size(); ++i)
      if ((m >> i) & 1U) sel.push_back(pairs[i]);
    out.emplace_back(std::move(sel));
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace detail

inline ConcreteAlgebra build_re(Universe u, Carrier c = Carrier::Implicit) {
  if (c == Carrier::Materialize && u.size > kMaterializeMaxUniverse)
    throw BudgetError("full carrier materialized only for universes of size <= " + std::to_string(kMaterializeMaxUniverse));
  BinRel unit = BinRel::square(u.size);
  if (c == Carrier::Implicit) return ConcreteAlgebra(u, std::move(unit));
  auto carrier = detail::all_subrelations(unit);
  return ConcreteAlgebra(u, std::move(unit), std::move(carrier));
}

inline bool in_universe(const BinRel& r, const Universe& u) {
  for (std::uint64_t k : r.keys()) {
    const auto p = BinRel::unkey(k);
    if (p.first >= u.size || p.second >= u.size) return false;
  }
  return true;
}

inline bool is_symmetric(const BinRel& e) { return e.inverse() == e; }

// Id on the field of E, restricted to E|E^-1 + E^-1|E, is contained in E.
inline bool is_reflexive_on_field(const BinRel& e) {
  std::vector<BinRel::Pair> id;
  for (PointId p : e.field()) id.emplace_back(p, p);
  const BinRel inv = e.inverse();
  const BinRel reach = e.compose(inv) | inv.compose(e);
  return (BinRel(std::move(id)) & reach).subset_of(e);
}

inline ConcreteAlgebra relativize(const ConcreteAlgebra& A, const BinRel& e) {
  if (!e.subset_of(A.unit())) throw PreconditionError("relativizing relation must lie below the unit");
  std::optional<std::vector<BinRel>> carrier;
  if (A.carrier()) {
    std::set<BinRel> c;
    for (const BinRel& r : *A.carrier()) c.insert(r & e);
    carrier.emplace(c.begin(), c.end());
  }
  return ConcreteAlgebra(A.universe(), e, std::move(carrier));
}

// Closure of gens under join, complement, relative product, converse and the identity constant.
inline std::vector<BinRel> generate_subalgebra(const ConcreteAlgebra& A, const std::vector<BinRel>& gens) {
  for (const BinRel& g : gens)
    if (!g.subset_of(A.unit())) throw PreconditionError("generator " + g.str() + " is not below the unit");
  std::vector<BinRel> items;
  std::set<BinRel> seen;
  auto add = [&](BinRel r) {
    if (seen.insert(r).second) {
      if (seen.size() > kSubalgebraMaxSize) throw BudgetError("subalgebra exceeds " + std::to_string(kSubalgebraMaxSize) + " relations");
      items.push_back(std::move(r));
    }
  };
  add(A.zero());
  add(A.identity());
  for (const BinRel& g : gens) add(g);
  std::size_t done = 0;
  while (done < items.size()) {
    const std::size_t i = done++;
    add(A.complement(items[i]));
    add(A.converse(items[i]));
    for (std::size_t j = 0; j <= i; ++j) {
      add(A.join(items[i], items[j]));
      add(A.compose(items[i], items[j]));
      add(A.compose(items[j], items[i]));
    }
  }
  return {seen.begin(), seen.end()};
}

// Atom structure of Rl_E Re(U): atoms are the pairs of E.
struct PairAtomStructure {
  std::vector<BinRel::Pair> atoms;
  std::optional<AtomStructure> structure;
};

inline PairAtomStructure pair_atom_structure(const BinRel& e) {
  PairAtomStructure out;
  out.atoms = e.pairs();
  if (out.atoms.empty()) return out;
  if (out.atoms.size() > kMaxAtoms) throw BudgetError("relativizing relation has more than 64 pairs");
  std::map<BinRel::Pair, AtomId> index;
  for (AtomId i = 0; i < out.atoms.size(); ++i) index[out.atoms[i]] = i;
  RawAtomStructure raw;
  raw.atom_count = out.atoms.size();
  raw.converse.resize(raw.atom_count);
  for (AtomId i = 0; i < out.atoms.size(); ++i) {
    const auto [u, v] = out.atoms[i];
    raw.names.push_back("(" + std::to_string(u) + "," + std::to_string(v) + ")");
    if (u == v) raw.identity.push_back(i);
    auto inv = index.find({v, u});
    if (inv == index.end()) throw PreconditionError("relativizing relation is not symmetric");
    raw.converse[i] = inv->second;
  }
  for (AtomId i = 0; i < out.atoms.size(); ++i)
    for (AtomId j = 0; j < out.atoms.size(); ++j) {
      if (out.atoms[i].second != out.atoms[j].first) continue;
      auto k = index.find({out.atoms[i].first, out.atoms[j].second});
      if (k != index.end()) raw.cycles.push_back({i, j, k->second});
    }
  out.structure = validate_atom_structure(raw, false);
  return out;
}

struct Th1Report {
  bool isWA = false;
  bool isSA = false;
  bool isRA = false;
  std::size_t atom_count = 0;
  // Set when E is empty: Rl_E Re(U) is the one-element algebra, where every equation holds.
  bool degenerate = false;
  std::optional<ClassReport> classification;
};

inline Th1Report check_th1(const Universe& u, const BinRel& e) {
  if (!in_universe(e, u)) throw PreconditionError("relation " + e.str() + " leaves the universe");
  if (!is_symmetric(e)) throw PreconditionError("E must be symmetric");
  if (!is_reflexive_on_field(e)) throw PreconditionError("E must be reflexive on its field");
  Th1Report rep;
  const PairAtomStructure pas = pair_atom_structure(e);
  rep.atom_count = pas.atoms.size();
  if (!pas.structure) {
    rep.degenerate = rep.isWA = rep.isSA = rep.isRA = true;
    return rep;
  }
  rep.classification = classify(*pas.structure);
  rep.isWA = rep.classification->isWA;
  rep.isSA = rep.classification->isSA;
  rep.isRA = rep.classification->isRA;
  return rep;
}

// Every relation below `unit` on a universe of the given size.
inline std::vector<BinRel> all_relations_below(const BinRel& unit) { return detail::all_subrelations(unit); }

}  // namespace relalg
