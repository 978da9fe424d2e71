#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "relalg/check_report.hpp"
#include "relalg/relset.hpp"
#include "relalg/suitable.hpp"

namespace relalg {

using Coord = std::uint8_t;

// <t0,k0,...,tn,kn>: nodes t0..tn index B, steps k0..k(n-1), pointer kn.
struct Trail {
  std::vector<std::uint32_t> nodes;
  std::vector<Coord> steps;
  Coord pointer = 0;

  std::size_t length() const { return nodes.size(); }
  std::uint32_t begin() const { return nodes.front(); }
  std::uint32_t end() const { return nodes.back(); }
  Trail repoint(Coord k) const {
    Trail p = *this;
    p.pointer = k;
    return p;
  }
  auto operator<=>(const Trail&) const = default;
};

inline Trail single_trail(std::uint32_t t, Coord k) { return Trail{{t}, {}, k}; }

inline bool is_valid_trail(const SuitableStructure& S, const Trail& p) {
  if (p.nodes.empty() || p.steps.size() + 1 != p.nodes.size() || p.pointer > 2) return false;
  for (std::uint32_t t : p.nodes)
    if (t >= S.size()) return false;
  for (std::size_t i = 0; i + 1 < p.nodes.size(); ++i) {
    if (p.steps[i] > 2 || p.nodes[i] == p.nodes[i + 1]) return false;
    if (!S.t_related(p.steps[i], p.nodes[i], p.nodes[i + 1])) return false;
  }
  return true;
}

inline std::string format_trail(const SuitableStructure& S, const Trail& p) {
  std::string s = "<";
  for (std::size_t i = 0; i < p.nodes.size(); ++i) {
    s += S.format(S.triple(p.nodes[i])) + ",";
    s += std::to_string(i + 1 < p.nodes.size() ? p.steps[i] : p.pointer);
    if (i + 1 < p.nodes.size()) s += ",";
  }
  return s + ">";
}

namespace detail {

inline bool e_related(const SuitableStructure& S, std::uint32_t t, Coord k, Coord l) { return S.in_E(t, k, l); }

inline Coord min_pointer(const SuitableStructure& S, std::uint32_t t, Coord k) {
  for (Coord l = 0; l < 3; ++l)
    if (e_related(S, t, k, l)) return l;
  return k;
}

// Some l != k with t in E_kl, if any.
inline std::optional<Coord> other_in_class(const SuitableStructure& S, std::uint32_t t, Coord k) {
  for (Coord l = 0; l < 3; ++l)
    if (l != k && e_related(S, t, k, l)) return l;
  return std::nullopt;
}

// Leftmost occurrence of <t,l,s,l,t>, as the index of its first node.
inline std::optional<std::size_t> find_round_trip(const Trail& p) {
  for (std::size_t i = 0; i + 2 < p.nodes.size(); ++i)
    if (p.nodes[i] == p.nodes[i + 2] && p.steps[i] == p.steps[i + 1]) return i;
  return std::nullopt;
}

inline void delete_round_trip(Trail& p, std::size_t i) {
  p.nodes.erase(p.nodes.begin() + static_cast<std::ptrdiff_t>(i) + 1, p.nodes.begin() + static_cast<std::ptrdiff_t>(i) + 3);
  p.steps.erase(p.steps.begin() + static_cast<std::ptrdiff_t>(i), p.steps.begin() + static_cast<std::ptrdiff_t>(i) + 2);
}

inline void delete_end(Trail& p) {
  p.nodes.pop_back();
  p.steps.pop_back();
}

}  // namespace detail

inline bool is_reduced(const SuitableStructure& S, const Trail& p) {
  const std::size_t n = p.length();
  if (n == 1) return detail::min_pointer(S, p.nodes[0], p.pointer) == p.pointer;
  if (p.steps.back() != p.pointer) return false;
  if (detail::other_in_class(S, p.end(), p.pointer)) return false;
  return !detail::find_round_trip(p).has_value();
}

// Round trips first, then end deletions with repointing, then the minimal pointer at length 1.
inline Trail reduce(const SuitableStructure& S, Trail p) {
  if (!is_valid_trail(S, p)) throw PreconditionError("invalid trail " + format_trail(S, p));
  while (auto i = detail::find_round_trip(p)) detail::delete_round_trip(p, *i);
  while (p.length() > 1) {
    const Coord last = p.steps.back();
    if (p.pointer == last) {
      const auto l = detail::other_in_class(S, p.end(), last);
      if (!l) break;
      p.pointer = *l;
    }
    detail::delete_end(p);
  }
  if (p.length() == 1) p.pointer = detail::min_pointer(S, p.nodes[0], p.pointer);
  return p;
}

// Applies uniformly chosen reductions until the trail is reduced; used to probe confluence.
inline Trail reduce_random_order(const SuitableStructure& S, Trail p, std::mt19937_64& rng, std::size_t max_moves = 100000) {
  if (!is_valid_trail(S, p)) throw PreconditionError("invalid trail " + format_trail(S, p));
  struct Move {
    int kind;
    std::size_t at;
  };
  std::vector<Move> moves;
  for (std::size_t step = 0; step < max_moves; ++step) {
    if (is_reduced(S, p)) return p;
    moves.clear();
    for (std::size_t i = 0; i + 2 < p.nodes.size(); ++i)
      if (p.nodes[i] == p.nodes[i + 2] && p.steps[i] == p.steps[i + 1]) moves.push_back({0, i});
    if (p.length() > 1 && p.steps.back() != p.pointer) moves.push_back({1, 0});
    for (Coord l = 0; l < 3; ++l)
      if (l != p.pointer && detail::e_related(S, p.end(), l, p.pointer)) moves.push_back({2, l});
    if (moves.empty()) throw InternalError("no reduction applies to unreduced trail " + format_trail(S, p));
    const Move m = moves[std::uniform_int_distribution<std::size_t>(0, moves.size() - 1)(rng)];
    if (m.kind == 0) detail::delete_round_trip(p, m.at);
    else if (m.kind == 1) detail::delete_end(p);
    else p.pointer = static_cast<Coord>(m.at);
  }
  throw InternalError("random reduction did not terminate on " + format_trail(S, p));
}

inline Trail trail_converse(const Trail& p) {
  Trail q;
  q.nodes.assign(p.nodes.rbegin(), p.nodes.rend());
  q.steps.assign(p.steps.rbegin(), p.steps.rend());
  q.pointer = p.pointer;
  return q;
}

inline std::optional<Trail> trail_concat(const Trail& p, const Trail& q) {
  if (p.end() != q.begin()) return std::nullopt;
  Trail r;
  r.nodes.assign(p.nodes.begin(), p.nodes.end() - 1);
  r.steps = p.steps;
  r.nodes.insert(r.nodes.end(), q.nodes.begin(), q.nodes.end());
  r.steps.insert(r.steps.end(), q.steps.begin(), q.steps.end());
  r.pointer = q.pointer;
  return r;
}

// q = <s0..sm>, p = <t0..tn>: q.p if q ends at t0, q~.p if q begins at t0, else p.
inline Trail apply_L(const Trail& q, const Trail& p) {
  if (q.end() == p.begin()) return *trail_concat(q, p);
  if (q.begin() == p.begin()) return *trail_concat(trail_converse(q), p);
  return p;
}

inline Trail random_trail(const SuitableStructure& S, std::size_t max_length, std::mt19937_64& rng) {
  if (S.size() == 0) throw PreconditionError("random_trail needs a non-empty B");
  Trail p;
  p.nodes.push_back(static_cast<std::uint32_t>(std::uniform_int_distribution<std::size_t>(0, S.size() - 1)(rng)));
  const std::size_t len = std::uniform_int_distribution<std::size_t>(1, max_length)(rng);
  std::vector<std::pair<Coord, std::uint32_t>> next;
  while (p.length() < len) {
    next.clear();
    for (Coord k = 0; k < 3; ++k) {
      const CylElement& cls = S.t_class(k, p.end());
      for (std::size_t s = cls.find_first(); s != CylElement::npos; s = cls.find_next(s))
        if (s != p.end()) next.emplace_back(k, static_cast<std::uint32_t>(s));
    }
    if (next.empty()) break;
    const auto [k, s] = next[std::uniform_int_distribution<std::size_t>(0, next.size() - 1)(rng)];
    p.steps.push_back(k);
    p.nodes.push_back(s);
  }
  p.pointer = static_cast<Coord>(std::uniform_int_distribution<int>(0, 2)(rng));
  return p;
}

// Calls f on every trail of length <= L without immediate round trips (pointer 0).
// Round trips leave the triple of a trail unchanged, so these trails carry all of V.
inline void for_each_pretrail(const SuitableStructure& S, std::size_t L, const std::function<void(const Trail&)>& f,
                              std::size_t budget = 5000000) {
  std::vector<Trail> level, next;
  for (std::uint32_t t = 0; t < S.size(); ++t) level.push_back(single_trail(t, 0));
  std::size_t seen = 0;
  for (std::size_t len = 1; len <= L && !level.empty(); ++len) {
    next.clear();
    for (const Trail& p : level) {
      if (++seen > budget) throw BudgetError("trail budget of " + std::to_string(budget) + " exceeded");
      f(p);
      if (len == L) continue;
      for (Coord k = 0; k < 3; ++k) {
        const CylElement& cls = S.t_class(k, p.end());
        for (std::size_t s = cls.find_first(); s != CylElement::npos; s = cls.find_next(s)) {
          if (s == p.end()) continue;
          if (p.length() >= 2 && s == p.nodes[p.length() - 2] && p.steps.back() == k) continue;
          Trail q = p;
          q.steps.push_back(k);
          q.nodes.push_back(static_cast<std::uint32_t>(s));
          next.push_back(std::move(q));
        }
      }
    }
    level.swap(next);
  }
}

using PointTriple = std::array<PointId, 3>;

struct VTriple {
  PointTriple u;
  std::uint32_t end;
  std::size_t min_length;
  Trail witness;  // a shortest trail with this triple
  bool end_conflict = false;
};

class BoundedUniverse {
 public:
  BoundedUniverse(const SuitableStructure& S, std::size_t L, std::size_t budget = 5000000) : S_(&S), L_(L) {
    if (L == 0) throw PreconditionError("length bound must be at least 1");
    by_end_.resize(S.size());
    for_each_pretrail(
        S, L,
        [&](const Trail& p) {
          PointTriple u;
          for (Coord k = 0; k < 3; ++k) u[k] = intern(reduce(S, p.repoint(k)));
          auto [it, fresh] = index_.try_emplace(u, static_cast<std::uint32_t>(triples_.size()));
          if (fresh) {
            triples_.push_back(VTriple{u, p.end(), p.length(), p});
            by_end_[p.end()].push_back(it->second);
          } else if (triples_[it->second].end != p.end()) {
            triples_[it->second].end_conflict = true;
          }
        },
        budget);
  }

  const SuitableStructure& structure() const { return *S_; }
  std::size_t bound() const { return L_; }
  std::size_t point_count() const { return points_.size(); }
  const Trail& canonical(PointId u) const { return points_[u]; }
  std::size_t length(PointId u) const { return points_[u].length(); }
  std::optional<PointId> find(const Trail& reduced) const {
    auto it = ids_.find(reduced);
    if (it == ids_.end()) return std::nullopt;
    return it->second;
  }
  // The point of any trail whose reduced form lies in the universe.
  PointId point_of(const Trail& p) const {
    const Trail r = reduce(*S_, p);
    if (auto id = find(r)) return *id;
    throw PreconditionError("trail " + format_trail(*S_, r) + " lies beyond the length bound " + std::to_string(L_));
  }
  PointId base_point(std::uint32_t t, Coord k) const { return point_of(single_trail(t, k)); }

  std::size_t triple_count() const { return triples_.size(); }
  const std::vector<VTriple>& triples() const { return triples_; }
  const VTriple& triple(std::size_t i) const { return triples_[i]; }
  std::optional<std::size_t> find_triple(const PointTriple& u) const {
    auto it = index_.find(u);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }
  bool contains(const PointTriple& u) const { return index_.count(u) > 0; }
  const std::vector<std::uint32_t>& ending_at(std::uint32_t t) const { return by_end_[t]; }
  // Triples with no witness shorter than the bound.
  bool frontier(std::size_t i) const { return triples_[i].min_length >= L_; }

  // l_q(u): the point of L_q applied to the reduced trail of u.
  PointId apply_lq(const Trail& q, PointId u) const {
    const Trail& p = points_[u];
    const bool joins = q.end() == p.begin() || q.begin() == p.begin();
    if (!joins) return u;
    if (q.length() + p.length() - 1 > L_)
      throw PreconditionError("l_q out of headroom: |q| + |u| - 1 = " + std::to_string(q.length() + p.length() - 1) + " > " +
                              std::to_string(L_));
    return point_of(apply_L(q, p));
  }
  bool lq_in_bounds(const Trail& q, PointId u) const {
    const Trail& p = points_[u];
    if (q.end() != p.begin() && q.begin() != p.begin()) return true;
    return q.length() + p.length() - 1 <= L_;
  }

 private:
  PointId intern(const Trail& r) {
    auto [it, fresh] = ids_.try_emplace(r, static_cast<PointId>(points_.size()));
    if (fresh) points_.push_back(r);
    return it->second;
  }

  const SuitableStructure* S_;
  std::size_t L_;
  std::vector<Trail> points_;
  std::map<Trail, PointId> ids_;
  std::vector<VTriple> triples_;
  std::map<PointTriple, std::uint32_t> index_;
  std::vector<std::vector<std::uint32_t>> by_end_;
};

inline BoundedUniverse build_universe(const SuitableStructure& S, std::size_t L, std::size_t budget = 5000000) {
  return BoundedUniverse(S, L, budget);
}

// Every triple ending at t is the image of the triple of <t> under l_p for a witness p, and l_{p~} undoes it.
inline CheckOutcome check_orbits(const BoundedUniverse& U) {
  CheckOutcome c{"orbits", true, {}, {}};
  const SuitableStructure& S = U.structure();
  std::size_t skipped = 0;
  for (const VTriple& v : U.triples()) {
    const Trail& p = v.witness;
    const Trail pc = trail_converse(p);
    for (Coord k = 0; k < 3; ++k) {
      const PointId base = U.base_point(v.end, k);
      if (U.apply_lq(p, base) != v.u[k]) c.fail("l_p<t," + std::to_string(k) + "> != (p" + std::to_string(k) + ") for p = " + format_trail(S, p));
      if (!U.lq_in_bounds(pc, v.u[k])) {
        ++skipped;
        continue;
      }
      if (U.apply_lq(pc, v.u[k]) != base) c.fail("l_{p~} does not invert l_p for p = " + format_trail(S, p));
    }
  }
  c.note = "inverse checks beyond headroom: " + std::to_string(skipped);
  return c;
}

inline CheckOutcome check_partition(const BoundedUniverse& U) {
  CheckOutcome c{"partition", true, {}, {}};
  const SuitableStructure& S = U.structure();
  std::size_t total = 0;
  for (std::uint32_t t = 0; t < S.size(); ++t) {
    if (U.ending_at(t).empty()) c.fail("R_t empty for t = " + S.format(S.triple(t)));
    total += U.ending_at(t).size();
  }
  for (const VTriple& v : U.triples())
    if (v.end_conflict) c.fail("triple of " + format_trail(S, v.witness) + " also arises from a trail with another end");
  if (total != U.triple_count()) c.fail("R_t sizes do not sum to |V|");
  return c;
}

inline constexpr std::size_t kConfluenceMaxLength = 8;

// Random trails: reduce is idempotent, never lengthens, yields a reduced trail, and every random rule order agrees with it.
inline CheckOutcome check_confluence(const SuitableStructure& S, std::size_t trails, std::size_t orders, std::uint64_t seed,
                                     std::size_t max_length = kConfluenceMaxLength) {
  CheckOutcome c{"confluence", true, {}, {}};
  if (S.size() == 0) return c;
  std::mt19937_64 rng(seed);
  std::size_t runs = 0;
  for (std::size_t i = 0; i < trails; ++i) {
    const Trail p = random_trail(S, max_length, rng);
    const Trail r = reduce(S, p);
    if (!is_reduced(S, r)) c.fail("reduce(" + format_trail(S, p) + ") = " + format_trail(S, r) + " is not reduced");
    if (reduce(S, r) != r) c.fail("reduce is not idempotent on " + format_trail(S, p));
    if (r.length() > p.length()) c.fail("reduce lengthens " + format_trail(S, p));
    for (std::size_t k = 0; k < orders; ++k, ++runs) {
      const Trail q = reduce_random_order(S, p, rng);
      if (q != r) c.fail(format_trail(S, p) + " reduces to " + format_trail(S, r) + " and to " + format_trail(S, q));
    }
  }
  c.note = std::to_string(trails) + " trails, " + std::to_string(runs) + " random-order reductions";
  return c;
}

}  // namespace relalg
