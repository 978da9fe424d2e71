#pragma once

#include <algorithm>
#include <array>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "relalg/check_report.hpp"
#include "relalg/cylindric.hpp"
#include "relalg/relset.hpp"

namespace relalg {

// Ra Cm B: x;y = c2(c1(d12.x).c0(d02.y)), x~ = c2(d20.c0(d01.c1(d12.x))), identity d01.
inline bool is_two_dimensional(const SuitableStructure& S, const CylElement& x) { return S.cyl(2, x) == x; }
inline CylElement ra_compose(const SuitableStructure& S, const CylElement& x, const CylElement& y) {
  return S.cyl(2, S.cyl(1, S.E(1, 2) & x) & S.cyl(0, S.E(0, 2) & y));
}
inline CylElement ra_converse(const SuitableStructure& S, const CylElement& x) {
  return S.cyl(2, S.E(2, 0) & S.cyl(0, S.E(0, 1) & S.cyl(1, S.E(1, 2) & x)));
}
inline const CylElement& ra_identity(const SuitableStructure& S) { return S.E(0, 1); }

// Nr2 Cm B: the unions of T2-classes.
inline std::vector<CylElement> nr2_elements(const SuitableStructure& S) {
  std::vector<CylElement> classes;
  std::vector<bool> seen(S.algebra().atom_count(), false);
  for (std::size_t i = 0; i < S.size(); ++i) {
    const AtomId a = S.triple(i)[2];
    if (seen[a]) continue;
    seen[a] = true;
    classes.push_back(S.t_class(2, i));
  }
  if (classes.size() > 16) throw BudgetError("Nr2 has more than 2^16 elements");
  std::vector<CylElement> out;
  for (std::uint64_t m = 0; m < (1ULL << classes.size()); ++m) {
    CylElement x = S.empty();
    for (std::size_t c = 0; c < classes.size(); ++c)
      if (m >> c & 1) x |= classes[c];
    out.push_back(x);
  }
  return out;
}

inline CheckOutcome check_nr2_closure(const SuitableStructure& S) {
  CheckOutcome c{"nr2.closure", true, {}, {}};
  const auto xs = nr2_elements(S);
  if (!is_two_dimensional(S, ra_identity(S))) c.fail("d01 is not 2-dimensional");
  for (const CylElement& x : xs) {
    if (!is_two_dimensional(S, ~x)) c.fail("complement leaves Nr2 at " + S.format(x));
    if (!is_two_dimensional(S, ra_converse(S, x))) c.fail("converse leaves Nr2 at " + S.format(x));
    for (const CylElement& y : xs) {
      if (!is_two_dimensional(S, x | y)) c.fail("join leaves Nr2");
      if (!is_two_dimensional(S, ra_compose(S, x, y))) c.fail("composition leaves Nr2 at " + S.format(x) + ", " + S.format(y));
    }
  }
  return c;
}

// phi(x) = {t in B : t2 <= x}.
inline CylElement phi(const SuitableStructure& S, Element x) {
  CylElement r = S.empty();
  for (std::size_t i = 0; i < S.size(); ++i)
    if (x.contains(S.triple(i)[2])) r.set(i);
  return r;
}

inline constexpr std::size_t kTh5ElementPairsMaxAtoms = 8;

inline CheckReport check_th5(const AtomStructure& A, const SuitableStructure& S) {
  CheckReport rep;
  const std::size_t n = A.atom_count();
  if (n > kTh5ElementPairsMaxAtoms) throw BudgetError("th5 check quantifies over all element pairs; at most 8 atoms");
  const std::uint64_t count = 1ULL << n;
  auto el = [](std::uint64_t b) { return Element::from_bits(b); };

  CheckOutcome bij{"th5.bijection", true, {}, {}};
  std::set<std::vector<std::size_t>> images;
  for (std::uint64_t b = 0; b < count; ++b) {
    const CylElement p = phi(S, el(b));
    if (!is_two_dimensional(S, p)) bij.fail("phi(" + A.format(el(b)) + ") is not 2-dimensional");
    std::vector<std::size_t> key;
    for (std::size_t i = p.find_first(); i != CylElement::npos; i = p.find_next(i)) key.push_back(i);
    images.insert(key);
  }
  if (images.size() != count) bij.fail("phi is not injective");
  if (nr2_elements(S).size() != count) bij.fail("|Nr2| = " + std::to_string(nr2_elements(S).size()) + " != |A| = " + std::to_string(count));
  rep.add(bij);

  CheckOutcome boolean{"th5.boolean", true, {}, {}}, ident{"th5.identity", true, {}, {}}, conv{"th5.converse", true, {}, {}},
      comp{"th5.compose", true, {}, {}};
  if (phi(S, A.top()) != S.full()) boolean.fail("phi(1) != B");
  if (phi(S, Element{}).any()) boolean.fail("phi(0) != 0");
  if (phi(S, A.identity()) != ra_identity(S)) ident.fail("phi(1') != d01");
  for (std::uint64_t xb = 0; xb < count; ++xb) {
    const Element x = el(xb);
    const CylElement px = phi(S, x);
    if (phi(S, A.complement(x)) != (S.full() - px)) boolean.fail("phi(-x) at x = " + A.format(x));
    if (phi(S, A.converse(x)) != ra_converse(S, px)) conv.fail("phi(x~) != phi(x)~ at x = " + A.format(x));
    for (std::uint64_t yb = 0; yb < count; ++yb) {
      const Element y = el(yb);
      const CylElement py = phi(S, y);
      if (phi(S, x | y) != (px | py)) boolean.fail("phi(x+y) at x = " + A.format(x) + ", y = " + A.format(y));
      if (phi(S, A.compose(x, y)) != ra_compose(S, px, py)) comp.fail("phi(x;y) at x = " + A.format(x) + ", y = " + A.format(y));
    }
  }
  for (auto* c : {&boolean, &ident, &conv, &comp}) rep.add(*c);
  rep.add(check_nr2_closure(S));
  return rep;
}

// Pair labels, the partition Id + Xi + B2 and the triple types on a bounded universe.
class PairStructure {
 public:
  using Pair = BinRel::Pair;

  explicit PairStructure(BoundedUniverse&&) = delete;
  explicit PairStructure(const BoundedUniverse& U) : U_(&U) {
    const SuitableStructure& S = U.structure();
    const AtomStructure& A = S.algebra();
    std::vector<Pair> v2;
    for (const VTriple& v : U.triples()) {
      const STriple& t = S.triple(v.end);
      const auto& u = v.u;
      const std::array<std::array<AtomId, 3>, 3> table{{
          {dom_atom(A, t[1]), t[2], t[1]},
          {A.converse(t[2]), rng_atom(A, t[2]), t[0]},
          {A.converse(t[1]), A.converse(t[0]), rng_atom(A, t[0])},
      }};
      if (dom_atom(A, t[1]) != dom_atom(A, t[2]) || rng_atom(A, t[2]) != dom_atom(A, t[0]) || rng_atom(A, t[0]) != rng_atom(A, t[1]))
        note_conflict("end " + S.format(t) + " has inconsistent domains and ranges");
      for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) {
          const Pair p{u[i], u[j]};
          v2.push_back(p);
          auto [it, fresh] = label_.try_emplace(BinRel::key(p), table[i][j]);
          if (!fresh && it->second != table[i][j])
            note_conflict("pair (" + std::to_string(u[i]) + "," + std::to_string(u[j]) + ") labelled " + A.name(it->second) + " and " +
                          A.name(table[i][j]) + " (trail " + format_trail(S, v.witness) + ")");
        }
    }
    v2_ = BinRel(v2);

    std::vector<Pair> ids, xis, bases;
    xi_.resize(U.point_count());
    for (PointId u = 0; u < U.point_count(); ++u) {
      ids.push_back({u, u});
      const Trail& p = U.canonical(u);
      if (p.length() == 1) continue;
      for (Coord l = 0; l < 3; ++l) {
        if (l == p.pointer) continue;
        const PointId w = U.point_of(p.repoint(l));
        if (std::find(xi_[u].begin(), xi_[u].end(), w) == xi_[u].end()) xi_[u].push_back(w);
        xis.push_back({u, w});
        xis.push_back({w, u});
      }
    }
    for (std::uint32_t t = 0; t < S.size(); ++t)
      for (Coord k = 0; k < 3; ++k)
        for (Coord l = 0; l < 3; ++l) {
          if (k == l) continue;
          if (A.is_identity(S.triple(t)[other_index(k, l)])) continue;
          bases.push_back({U.base_point(t, k), U.base_point(t, l)});
        }
    identity_ = BinRel(ids) & v2_;
    xi_pairs_ = BinRel(xis);
    base_ = BinRel(bases);
  }

  const BoundedUniverse& universe() const { return *U_; }
  const BinRel& v2() const { return v2_; }
  const BinRel& identity_pairs() const { return identity_; }
  const BinRel& xi_pairs() const { return xi_pairs_; }
  const BinRel& base_pairs() const { return base_; }
  const std::vector<PointId>& xi_of(PointId u) const { return xi_[u]; }
  const std::vector<std::string>& conflicts() const { return conflicts_; }
  std::optional<AtomId> label(PointId u, PointId v) const {
    auto it = label_.find(BinRel::key({u, v}));
    if (it == label_.end()) return std::nullopt;
    return it->second;
  }

  // 1..6 for the six triple types, 0 if none applies.
  int triple_type(const PointTriple& t) const {
    const PointId a = t[0], b = t[1], c = t[2];
    if (a == b && b == c) return 6;
    if (a == b || b == c || a == c) {
      const PointId u = a == b ? a : c, v = a == b ? c : (b == c ? a : b);
      if (xi_pairs_.contains({u, v})) return 4;
      if (base_.contains({u, v})) return 5;
      return 0;
    }
    const std::array<PointId, 3> pts{a, b, c};
    for (std::size_t i = 0; i < 3; ++i) {
      const PointId u = pts[i], v = pts[(i + 1) % 3], w = pts[(i + 2) % 3];
      const auto& x = xi_[u];
      const bool xi_uvw = x.size() == 2 && std::find(x.begin(), x.end(), v) != x.end() && std::find(x.begin(), x.end(), w) != x.end();
      if (!xi_uvw) continue;
      if (xi_pairs_.contains({v, w})) return 1;
      if (base_.contains({v, w})) return 2;
    }
    if (base_.contains({a, b}) && base_.contains({a, c}) && base_.contains({b, c})) return 3;
    return 0;
  }

 private:
  void note_conflict(std::string s) {
    if (conflicts_.size() < 8) conflicts_.push_back(std::move(s));
    else if (conflicts_.size() == 8) conflicts_.push_back("...");
  }

  const BoundedUniverse* U_;
  BinRel v2_, identity_, xi_pairs_, base_;
  std::map<std::uint64_t, AtomId> label_;
  std::vector<std::vector<PointId>> xi_;
  std::vector<std::string> conflicts_;
};

inline PairStructure build_pair_structure(const BoundedUniverse& U) { return PairStructure(U); }
PairStructure build_pair_structure(BoundedUniverse&&) = delete;

inline CheckReport check_pair_structure(const PairStructure& P) {
  CheckReport rep;
  const BoundedUniverse& U = P.universe();
  const AtomStructure& A = U.structure().algebra();

  CheckOutcome label{"pairs.label", true, {}, {}};
  if (!P.conflicts().empty()) label.fail(P.conflicts().front());
  rep.add(label);

  CheckOutcome key{"pairs.key", true, {}, {}};
  for (const VTriple& v : U.triples())
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j)
        for (std::size_t k = 0; k < 3; ++k) {
          const AtomId xy = *P.label(v.u[i], v.u[j]), yz = *P.label(v.u[j], v.u[k]), xz = *P.label(v.u[i], v.u[k]);
          if (!A.has_cycle(xy, yz, xz))
            key.fail("A(x,y);A(y,z) >= A(x,z) fails: " + A.name(xy) + ";" + A.name(yz) + " vs " + A.name(xz));
        }
  rep.add(key);

  CheckOutcome part{"pairs.partition", true, {}, {}};
  const BinRel& id = P.identity_pairs();
  const BinRel& xi = P.xi_pairs();
  const BinRel& base = P.base_pairs();
  if (!(id & xi).empty()) part.fail("identity and Xi pairs overlap: " + (id & xi).str());
  if (!(id & base).empty()) part.fail("identity and base pairs overlap: " + (id & base).str());
  if (!(xi & base).empty()) part.fail("Xi and base pairs overlap: " + (xi & base).str());
  const BinRel all = id | xi | base;
  if (all != P.v2()) {
    const BinRel miss = P.v2().minus(all), extra = all.minus(P.v2());
    part.fail("V2 differs from the union: missing " + miss.str() + ", extra " + extra.str());
  }
  part.note = "|V2| = " + std::to_string(P.v2().size()) + " = " + std::to_string(id.size()) + " + " + std::to_string(xi.size()) + " + " +
              std::to_string(base.size());
  rep.add(part);

  CheckOutcome asym{"pairs.xi-lengths", true, {}, {}};
  for (const auto& [v, w] : xi.pairs())
    if (U.length(v) == U.length(w)) asym.fail("Xi pair (" + std::to_string(v) + "," + std::to_string(w) + ") of equal lengths");
  rep.add(asym);

  CheckOutcome lem9{"lem9", true, {}, {}};
  std::array<std::size_t, 7> counts{};
  for (const VTriple& v : U.triples()) {
    const int t = P.triple_type(v.u);
    ++counts[t];
    if (t == 0) lem9.fail("triple of " + format_trail(U.structure(), v.witness) + " has none of the six types");
  }
  for (int t = 1; t <= 6; ++t) lem9.note += (t > 1 ? " " : "") + std::string("type") + std::to_string(t) + "=" + std::to_string(counts[t]);
  rep.add(lem9);
  return rep;
}

using CoordMap = std::array<Coord, 3>;

// [k/l]: k goes to l, the other coordinates stay.
inline CoordMap replacement(Coord k, Coord l) {
  CoordMap m{0, 1, 2};
  m[k] = l;
  return m;
}

inline PointTriple apply_map(const CoordMap& pi, const PointTriple& u) { return {u[pi[0]], u[pi[1]], u[pi[2]]}; }

// Every non-permutation with the fewest replacements needed to compose it.
inline std::vector<std::pair<CoordMap, std::size_t>> non_permutations() {
  std::map<CoordMap, std::size_t> depth;
  std::vector<CoordMap> frontier;
  for (Coord k = 0; k < 3; ++k)
    for (Coord l = 0; l < 3; ++l)
      if (k != l) {
        depth[replacement(k, l)] = 1;
        frontier.push_back(replacement(k, l));
      }
  for (std::size_t d = 2; !frontier.empty(); ++d) {
    std::vector<CoordMap> next;
    for (const CoordMap& m : frontier)
      for (Coord k = 0; k < 3; ++k)
        for (Coord l = 0; l < 3; ++l) {
          if (k == l) continue;
          // Applying m and then [k/l] reads coordinate m[r[i]].
          const CoordMap r = replacement(k, l);
          const CoordMap c{m[r[0]], m[r[1]], m[r[2]]};
          if (depth.try_emplace(c, d).second) next.push_back(c);
        }
    frontier.swap(next);
  }
  return {depth.begin(), depth.end()};
}

// The extension p . <a,k,s,0> realising [k/l]: s is the T_k-neighbour of a in E_kl.
inline STriple lem8_target(const AtomStructure& A, const STriple& a, Coord k, Coord l) {
  if (k == 0) return l == 1 ? STriple{{a[0], a[0], dom_atom(A, a[0])}} : STriple{{a[0], rng_atom(A, a[0]), A.converse(a[0])}};
  if (k == 1) return l == 0 ? STriple{{a[1], a[1], dom_atom(A, a[1])}} : STriple{{rng_atom(A, a[1]), a[1], a[1]}};
  return l == 0 ? STriple{{A.converse(a[2]), dom_atom(A, a[2]), a[2]}} : STriple{{rng_atom(A, a[2]), a[2], a[2]}};
}

inline CheckReport check_lem8(const BoundedUniverse& U) {
  CheckReport rep;
  const SuitableStructure& S = U.structure();
  const AtomStructure& A = S.algebra();
  const auto maps = non_permutations();

  CheckOutcome ext{"lem8.extensions", true, {}, {}};
  std::size_t ext_skipped = 0;
  for (const VTriple& v : U.triples()) {
    if (v.min_length + 1 > U.bound()) {
      ++ext_skipped;
      continue;
    }
    for (Coord k = 0; k < 3; ++k)
      for (Coord l = 0; l < 3; ++l) {
        if (k == l) continue;
        const auto s = S.index(lem8_target(A, S.triple(v.end), k, l));
        const PointTriple want = apply_map(replacement(k, l), v.u);
        if (!s) {
          ext.fail("extension target for [" + std::to_string(k) + "->" + std::to_string(l) + "] not in B");
          continue;
        }
        PointTriple got = v.u;
        if (*s != v.end) {
          Trail p = v.witness;
          p.steps.push_back(k);
          p.nodes.push_back(static_cast<std::uint32_t>(*s));
          for (Coord c = 0; c < 3; ++c) got[c] = U.point_of(p.repoint(c));
        }
        if (got != want) ext.fail("p_pi triple differs for [" + std::to_string(k) + "->" + std::to_string(l) + "] on " + format_trail(S, v.witness));
      }
  }
  ext.note = "triples without headroom: " + std::to_string(ext_skipped);
  rep.add(ext);

  CheckOutcome closure{"lem8.closure", true, {}, {}};
  std::size_t checked = 0, skipped = 0;
  for (const VTriple& v : U.triples())
    for (const auto& [pi, d] : maps) {
      if (v.min_length + d > U.bound()) {
        ++skipped;
        continue;
      }
      ++checked;
      if (!U.contains(apply_map(pi, v.u)))
        closure.fail("(" + std::to_string(pi[0]) + std::to_string(pi[1]) + std::to_string(pi[2]) + ")-image of the triple of " +
                     format_trail(S, v.witness) + " is not in V");
    }
  closure.note = "maps=" + std::to_string(maps.size()) + " checked=" + std::to_string(checked) + " excluded=" + std::to_string(skipped);
  rep.add(closure);
  return rep;
}

// Relation-algebra image of atom relations: atoms, cycles z <= x;y where (F(x)|F(y)) meets F(z), converse by inversion.
struct ImageCheck {
  bool ok = true;
  std::string witness;
  std::optional<AtomStructure> structure;
};

inline ImageCheck image_atom_structure(const AtomStructure& A, const std::vector<BinRel>& images, const BinRel& unit) {
  ImageCheck out;
  auto fail = [&](const std::string& w) {
    if (out.ok) out.witness = w;
    out.ok = false;
  };
  const std::size_t n = images.size();
  BinRel seen;
  for (AtomId a = 0; a < n; ++a) {
    if (images[a].empty()) fail("image of " + A.name(a) + " is empty");
    if (!(seen & images[a]).empty()) fail("image of " + A.name(a) + " overlaps another atom");
    seen = seen | images[a];
  }
  if (seen != unit) fail("atom images do not cover the unit");
  RawAtomStructure raw;
  raw.atom_count = n;
  raw.names = A.names();
  raw.converse.assign(n, 0);
  for (AtomId a = 0; a < n; ++a) {
    BinRel diag;
    {
      std::vector<BinRel::Pair> ps;
      for (const auto& [u, v] : images[a].pairs())
        if (u == v) ps.push_back({u, v});
      diag = BinRel(ps);
    }
    if (diag.size() == images[a].size()) raw.identity.push_back(a);
    else if (!diag.empty()) fail("image of " + A.name(a) + " is partly diagonal");
    const BinRel inv = images[a].inverse();
    bool found = false;
    for (AtomId b = 0; b < n; ++b)
      if (images[b] == inv) {
        raw.converse[a] = b;
        found = true;
      }
    if (!found) fail("inverse of the image of " + A.name(a) + " is not an atom image");
  }
  for (AtomId x = 0; x < n; ++x)
    for (AtomId y = 0; y < n; ++y) {
      const BinRel xy = images[x].compose(images[y]) & unit;
      for (AtomId z = 0; z < n; ++z)
        if (!(xy & images[z]).empty()) raw.cycles.push_back({x, y, z});
    }
  if (!out.ok) return out;
  try {
    out.structure = validate_atom_structure(raw, false);
  } catch (const Error& e) {
    fail(std::string("image is not an atom structure: ") + e.what());
  }
  return out;
}

// Image structure equals A under a -> image(a) and classifies as WA.
inline CheckOutcome check_image_embeds(const std::string& name, const AtomStructure& A, const std::vector<BinRel>& images, const BinRel& unit) {
  CheckOutcome c{name, true, {}, {}};
  const ImageCheck img = image_atom_structure(A, images, unit);
  if (!img.ok) {
    c.fail(img.witness);
    return c;
  }
  if (!classify(*img.structure).isWA) c.fail("image does not classify as WA");
  if (!(*img.structure == A)) {
    for (const CycleTriple& t : A.cycles())
      if (!img.structure->has_cycle(t.x, t.y, t.z)) {
        c.fail("cycle " + A.format(t) + " is not realised by the image");
        return c;
      }
    for (const CycleTriple& t : img.structure->cycles())
      if (!A.has_cycle(t.x, t.y, t.z)) {
        c.fail("image realises " + A.format(t) + " which A lacks");
        return c;
      }
    c.fail("identity or converse of the image differs from A");
  }
  return c;
}

// Steps the proof of the composition inclusion adds beyond a pair's witness: the extension p' and one replacement.
inline constexpr std::size_t kCompositionHeadroom = 2;

// Fewest replacements moving positions (i,j) of a triple to positions (0,1); 0 for (0,1) itself.
inline std::array<std::array<std::size_t, 3>, 3> pair_move_depths() {
  std::array<std::array<std::size_t, 3>, 3> d;
  for (auto& row : d) row.fill(std::numeric_limits<std::size_t>::max());
  d[0][1] = 0;
  for (const auto& [pi, depth] : non_permutations()) d[pi[0]][pi[1]] = std::min(d[pi[0]][pi[1]], depth);
  return d;
}

// S(B) over the closure of bounded V under the 21 non-permutations. Closure triples lie in the unbounded V by lem8,
// so S(B) is exactly symmetric and reflexive; raw triples keep their witness lengths for headroom decisions.
class FinalRepresentation {
 public:
  explicit FinalRepresentation(PairStructure&&) = delete;
  explicit FinalRepresentation(const PairStructure& P) : P_(&P) {
    const BoundedUniverse& U = P.universe();
    const std::size_t n = U.structure().algebra().atom_count();
    const auto maps = non_permutations();
    const auto moves = pair_move_depths();
    std::vector<BinRel::Pair> sb, raw;
    for (const VTriple& v : U.triples()) {
      closure_.insert(v.u);
      for (const auto& [pi, d] : maps) closure_.insert(apply_map(pi, v.u));
      raw.push_back({v.u[0], v.u[1]});
      for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) {
          const std::size_t len = v.min_length + moves[i][j];
          auto [it, fresh] = eff_len_.try_emplace(BinRel::key({v.u[i], v.u[j]}), len);
          if (!fresh) it->second = std::min(it->second, len);
        }
    }
    for (const PointTriple& t : closure_) sb.push_back({t[0], t[1]});
    sb_ = BinRel(sb);
    raw_ = BinRel(raw);
    std::vector<std::vector<BinRel::Pair>> atoms(n);
    for (const auto& p : sb_.pairs()) atoms[*P.label(p.first, p.second)].push_back(p);
    for (auto& a : atoms) atom_images_.emplace_back(std::move(a));
  }

  const PairStructure& pairs() const { return *P_; }
  const BinRel& unit() const { return sb_; }
  // Pairs (u0,u1) of bounded V itself, before closure.
  const BinRel& raw_unit() const { return raw_; }
  bool in_closure(const PointTriple& t) const { return closure_.count(t) > 0; }
  const std::set<PointTriple>& closure() const { return closure_; }
  const BinRel& atom_image(AtomId a) const { return atom_images_[a]; }
  const std::vector<BinRel>& atom_images() const { return atom_images_; }
  BinRel image(Element x) const {
    BinRel r;
    x.for_each([&](AtomId a) { r = r | atom_images_[a]; });
    return r;
  }
  // Shortest trail that places the pair at positions (0,1) of a triple, counting replacements as one step each.
  std::size_t pair_length(const BinRel::Pair& p) const {
    auto it = eff_len_.find(BinRel::key(p));
    return it == eff_len_.end() ? std::numeric_limits<std::size_t>::max() : it->second;
  }

 private:
  const PairStructure* P_;
  std::set<PointTriple> closure_;
  BinRel sb_, raw_;
  std::vector<BinRel> atom_images_;
  std::map<std::uint64_t, std::size_t> eff_len_;
};

inline CheckReport check_final_representation(const FinalRepresentation& G) {
  CheckReport rep;
  const PairStructure& P = G.pairs();
  const BoundedUniverse& U = P.universe();
  const SuitableStructure& S = U.structure();
  const AtomStructure& A = S.algebra();
  const BinRel& sb = G.unit();
  const std::size_t L = U.bound();
  const std::uint64_t count = 1ULL << A.atom_count();
  auto el = [](std::uint64_t b) { return Element::from_bits(b); };
  auto pair_str = [](const BinRel::Pair& p) { return "(" + std::to_string(p.first) + "," + std::to_string(p.second) + ")"; };
  auto has_room = [&](const BinRel::Pair& p, std::size_t extra) { return G.pair_length(p) + extra <= L; };

  CheckOutcome sym{"sb.symmetric", true, {}, {}}, refl{"sb.reflexive", true, {}, {}}, raw{"sb.raw", true, {}, {}};
  if (!is_symmetric(sb)) sym.fail(pair_str(sb.minus(sb.inverse()).pairs().front()) + " lacks its inverse");
  for (PointId u : sb.field())
    if (!sb.contains({u, u})) {
      refl.fail("(" + std::to_string(u) + "," + std::to_string(u) + ") missing");
      break;
    }
  if (sb != P.v2()) raw.fail("S(B) differs from V2");
  if (!G.raw_unit().subset_of(sb)) raw.fail("a pair of bounded V is missing from S(B)");
  std::size_t raw_excluded = 0;
  for (const auto& p : sb.minus(G.raw_unit()).pairs()) {
    if (!has_room(p, 0)) {
      ++raw_excluded;
      continue;
    }
    raw.fail("closure pair " + pair_str(p) + " has a witness within the bound but is not a pair of bounded V");
  }
  raw.note = "closure-only pairs beyond the bound: " + std::to_string(raw_excluded) + " of " + std::to_string(sb.size());
  for (auto* c : {&sym, &refl, &raw}) rep.add(*c);

  CheckOutcome boolean{"g.boolean", true, {}, {}}, ident{"g.identity", true, {}, {}}, conv{"g.converse", true, {}, {}};
  CheckOutcome sub{"g.compose.sub", true, {}, {}}, sup{"g.compose.sup", true, {}, {}};
  if (!G.image(Element{}).empty()) boolean.fail("G(0) != 0");
  if (G.image(A.top()) != sb) boolean.fail("G(1) != S(B)");
  for (AtomId a = 0; a < A.atom_count(); ++a)
    if (G.atom_image(a).empty()) boolean.fail("G(" + A.name(a) + ") is empty");
  {
    std::vector<BinRel::Pair> diag;
    for (const auto& p : sb.pairs())
      if (p.first == p.second) diag.push_back(p);
    if (G.image(A.identity()) != BinRel(diag)) ident.fail("G(1') differs from the identity pairs of S(B)");
  }
  std::set<std::uint64_t> excluded;
  for (std::uint64_t xb = 0; xb < count; ++xb) {
    const Element x = el(xb);
    const BinRel gx = G.image(x);
    if (G.image(A.complement(x)) != sb.minus(gx)) boolean.fail("G(-x) != S(B) - G(x) at x = " + A.format(x));
    if (G.image(A.converse(x)) != gx.inverse()) conv.fail("G(x~) != G(x)^-1 at x = " + A.format(x));
    for (std::uint64_t yb = 0; yb < count; ++yb) {
      const Element y = el(yb);
      const BinRel gy = G.image(y);
      if (G.image(x | y) != (gx | gy)) boolean.fail("G(x+y) at x = " + A.format(x) + ", y = " + A.format(y));
      const BinRel prod = gx.compose(gy) & sb, gxy = G.image(A.compose(x, y));
      if (!prod.subset_of(gxy))
        sub.fail("(G(x)|G(y)) n S(B) not below G(x;y) at x = " + A.format(x) + ", y = " + A.format(y) + ", pair " +
                 pair_str(prod.minus(gxy).pairs().front()));
      for (const auto& p : gxy.minus(prod).pairs()) {
        if (!has_room(p, kCompositionHeadroom)) {
          excluded.insert(BinRel::key(p));
          continue;
        }
        sup.fail("G(x;y) not below (G(x)|G(y)) n S(B) at x = " + A.format(x) + ", y = " + A.format(y) + ", pair " + pair_str(p));
      }
    }
  }
  std::size_t no_room = 0;
  for (const auto& p : sb.pairs()) no_room += !has_room(p, kCompositionHeadroom);
  sup.note = "pairs without headroom: " + std::to_string(no_room) + " of " + std::to_string(sb.size()) +
             "; excluded pairs lacking a product witness: " + std::to_string(excluded.size());
  for (auto* c : {&boolean, &ident, &conv, &sub, &sup}) rep.add(*c);

  // phi, then R, then C2, then f^-1: pairs (u0,u1) of bounded triples whose end has t2 = a.
  CheckOutcome chain{"chain", true, {}, {}};
  std::size_t chain_excluded = 0;
  {
    const RcAlgebra rc(U);
    for (AtomId a = 0; a < A.atom_count(); ++a) {
      std::vector<BinRel::Pair> via;
      const RcElement x = rc.image(phi(S, Element::atom(a)));
      for (std::size_t i = x.find_first(); i != RcElement::npos; i = x.find_next(i)) via.push_back({U.triple(i).u[0], U.triple(i).u[1]});
      const BinRel chained(via);
      if (!chained.subset_of(G.atom_image(a))) chain.fail("chain image of " + A.name(a) + " leaves G(" + A.name(a) + ")");
      for (const auto& p : G.atom_image(a).minus(chained).pairs()) {
        if (!has_room(p, 0)) {
          ++chain_excluded;
          continue;
        }
        chain.fail("pair " + pair_str(p) + " of G(" + A.name(a) + ") missing from the chain image");
      }
    }
  }
  chain.note = "excluded pairs: " + std::to_string(chain_excluded);
  rep.add(chain);

  // Pair forms of the two displayed inclusions for atoms x, y; X = triples whose (u0,u1) label is x.
  CheckOutcome tri{"th7.compose-pairs", true, {}, {}}, quad{"th7.converse-pairs", true, {}, {}};
  std::size_t tri_excluded = 0;
  auto in_x = [&](const PointTriple& u, AtomId x) { return G.in_closure(u) && P.label(u[0], u[1]) == x; };
  for (AtomId x = 0; x < A.atom_count(); ++x) {
    for (AtomId y = 0; y < A.atom_count(); ++y) {
      const BinRel lhs = G.atom_image(x).compose(G.atom_image(y)) & sb;
      std::vector<BinRel::Pair> rhs_pairs;
      for (const PointTriple& t : G.closure()) {
        const PointId a = t[0], c = t[1], b = t[2];
        if (in_x({a, b, b}, x) && in_x({b, c, b}, y)) rhs_pairs.push_back({a, c});
      }
      const BinRel rhs(rhs_pairs);
      if (!rhs.subset_of(lhs)) tri.fail("right side not below left side at x = " + A.name(x) + ", y = " + A.name(y));
      for (const auto& p : lhs.minus(rhs).pairs()) {
        if (!has_room(p, kCompositionHeadroom)) {
          ++tri_excluded;
          continue;
        }
        tri.fail("pair " + pair_str(p) + " of the left side missing on the right at x = " + A.name(x) + ", y = " + A.name(y));
      }
    }
    const BinRel lhs = G.atom_image(x).inverse() & sb;
    std::vector<BinRel::Pair> rhs_pairs;
    for (const auto& [u0, u1] : sb.pairs())
      if (G.in_closure({u0, u1, u0}) && G.in_closure({u1, u1, u0}) && in_x({u1, u0, u0}, x)) rhs_pairs.push_back({u0, u1});
    const BinRel rhs(rhs_pairs);
    if (rhs != lhs) {
      const BinRel diff = lhs.minus(rhs).empty() ? rhs.minus(lhs) : lhs.minus(rhs);
      quad.fail("sides differ at x = " + A.name(x) + ", pair " + pair_str(diff.pairs().front()));
    }
  }
  tri.note = "excluded pairs: " + std::to_string(tri_excluded);
  rep.add(tri);
  rep.add(quad);
  return rep;
}

}  // namespace relalg
