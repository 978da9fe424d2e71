#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "relalg/check_report.hpp"
#include "relalg/classify.hpp"
#include "relalg/relset.hpp"

namespace relalg {

struct LPoint {
  PointId id = 0;
  unsigned stage = 0;
};

struct LTriple {
  PointId u = 0;
  AtomId a = 0;
  PointId v = 0;
  unsigned stage = 0;
};

struct Flaw {
  PointId u = 0;
  AtomId a = 0;
  PointId v = 0;
  AtomId b = 0;
  AtomId c = 0;
  auto operator<=>(const Flaw&) const = default;
};

// Which of the labelling-system properties (i)-(v) failed, with a description of the witness.
struct PropertyViolation {
  std::string property;
  std::string witness;
};

inline constexpr std::size_t kDefaultPointBudget = 500000;

class LabellingSystem {
 public:
  explicit LabellingSystem(AtomStructure A, std::size_t point_budget = kDefaultPointBudget)
      : A_(std::move(A)), budget_(point_budget) {
    splits_.resize(A_.atom_count());
    for (AtomId a = 0; a < A_.atom_count(); ++a)
      for (AtomId b = 0; b < A_.atom_count(); ++b)
        for (AtomId c = 0; c < A_.atom_count(); ++c)
          if (A_.has_cycle(b, c, a)) splits_[a].emplace_back(b, c);
  }

  // Builds a system from explicit data; properties are not enforced (see check_properties).
  static LabellingSystem from_triples(AtomStructure A, std::size_t points, const std::vector<std::tuple<PointId, AtomId, PointId>>& triples,
                                      unsigned completed_passes = 0) {
    LabellingSystem ls(std::move(A));
    for (std::size_t i = 0; i < points; ++i) ls.add_point(0);
    for (const auto& [u, a, v] : triples) ls.insert(u, a, v, 0);
    ls.passes_ = completed_passes;
    return ls;
  }

  const AtomStructure& algebra() const { return A_; }
  std::size_t point_count() const { return stages_.size(); }
  unsigned stage(PointId p) const { return stages_[p]; }
  std::vector<LPoint> points() const {
    std::vector<LPoint> out;
    for (PointId p = 0; p < stages_.size(); ++p) out.push_back({p, stages_[p]});
    return out;
  }
  const std::vector<LTriple>& triples() const { return triples_; }
  std::size_t triple_count() const { return triples_.size(); }
  unsigned completed_passes() const { return passes_; }
  std::size_t point_budget() const { return budget_; }
  // Set when a triple conflicted with an existing label (property (i)).
  const std::optional<PropertyViolation>& conflict() const { return conflict_; }

  std::optional<AtomId> label(PointId u, PointId v) const {
    auto it = label_.find(BinRel::key({u, v}));
    if (it == label_.end()) return std::nullopt;
    return it->second;
  }
  bool has(PointId u, AtomId a, PointId v) const {
    auto l = label(u, v);
    return l && *l == a;
  }

  // Points w with <u,b,w> in T.
  const std::vector<PointId>& successors(PointId u, AtomId b) const { return lookup(out_, u, b); }
  // Points w with <w,c,v> in T.
  const std::vector<PointId>& predecessors(PointId v, AtomId c) const { return lookup(in_, v, c); }

  bool has_witness(PointId u, AtomId b, AtomId c, PointId v) const {
    const auto& s = successors(u, b);
    const auto& p = predecessors(v, c);
    if (s.size() <= p.size()) {
      for (PointId w : s)
        if (has(w, c, v)) return true;
    } else {
      for (PointId w : p)
        if (has(u, b, w)) return true;
    }
    return false;
  }

  bool is_flaw(const Flaw& f) const {
    return f.u < point_count() && f.v < point_count() && has(f.u, f.a, f.v) && A_.has_cycle(f.b, f.c, f.a) &&
           !has_witness(f.u, f.b, f.c, f.v);
  }

  std::vector<Flaw> find_flaws(unsigned scope) const {
    std::vector<std::pair<std::uint64_t, AtomId>> edges;
    for (const auto& [k, a] : label_) {
      const auto [u, v] = BinRel::unkey(k);
      if (stages_[u] < scope && stages_[v] < scope) edges.emplace_back(k, a);
    }
    std::sort(edges.begin(), edges.end());
    std::vector<Flaw> out;
    for (const auto& [k, a] : edges) {
      const auto [u, v] = BinRel::unkey(k);
      for (const auto& [b, c] : splits_[a])
        if (!has_witness(u, b, c, v)) out.push_back({u, a, v, b, c});
    }
    return out;
  }

  // Repair step: add a fresh point w of the given stage and the five triples.
  PointId repair(const Flaw& f, unsigned stage) {
    if (!is_flaw(f)) throw PreconditionError("not a flaw: " + describe(f));
    if (point_count() >= budget_) throw BudgetError("point budget of " + std::to_string(budget_) + " exceeded");
    const PointId w = add_point(stage);
    const AtomId rb = A_.rng(Element::atom(f.b)).lowest();
    insert(f.u, f.b, w, stage);
    insert(w, f.c, f.v, stage);
    insert(w, A_.converse(f.b), f.u, stage);
    insert(f.v, A_.converse(f.c), w, stage);
    insert(w, rb, w, stage);
    if (auto bad = check_around(w)) throw InternalError("repair broke property " + bad->property + ": " + bad->witness);
    if (is_flaw(f)) throw InternalError("flaw survived its repair: " + describe(f));
    return w;
  }

  // One saturation round: repair, in order, every flaw whose endpoints predate this round.
  std::size_t run_pass() {
    const unsigned k = passes_ + 1;
    std::size_t repaired = 0;
    for (const Flaw& f : find_flaws(k)) {
      if (!is_flaw(f)) continue;
      repair(f, k);
      ++repaired;
    }
    passes_ = k;
    return repaired;
  }

  std::optional<PropertyViolation> check_properties() const {
    if (conflict_) return conflict_;
    const std::size_t n = A_.atom_count();
    for (AtomId a = 0; a < n; ++a) {
      if (!A_.is_identity(a)) continue;
      bool found = false;
      for (const auto& [k, l] : label_) {
        const auto [u, v] = BinRel::unkey(k);
        if (u == v && l == a) found = true;
      }
      if (!found) return PropertyViolation{"ii", "identity atom " + A_.name(a) + " labels no loop"};
    }
    for (PointId u = 0; u < point_count(); ++u) {
      auto l = label(u, u);
      if (!l || !A_.is_identity(*l)) return PropertyViolation{"iii", "loop at " + std::to_string(u) + " not labelled by an identity atom"};
    }
    for (const auto& [k, a] : label_) {
      const auto [u, v] = BinRel::unkey(k);
      if (auto bad = check_edge(u, a, v)) return bad;
    }
    for (PointId v = 0; v < point_count(); ++v)
      if (auto bad = check_triangles_through(v)) return bad;
    return std::nullopt;
  }

  std::string describe(const Flaw& f) const {
    return "(" + std::to_string(f.u) + "," + A_.name(f.a) + "," + std::to_string(f.v) + "," + A_.name(f.b) + "," + A_.name(f.c) + ")";
  }

 private:
  using Index = std::unordered_map<std::uint64_t, std::vector<PointId>>;
  static std::uint64_t ikey(PointId p, AtomId a) { return (std::uint64_t{p} << 8) | a; }
  static const std::vector<PointId>& lookup(const Index& idx, PointId p, AtomId a) {
    static const std::vector<PointId> none;
    auto it = idx.find(ikey(p, a));
    return it == idx.end() ? none : it->second;
  }

  PointId add_point(unsigned stage) {
    stages_.push_back(stage);
    adj_out_.emplace_back();
    adj_in_.emplace_back();
    return static_cast<PointId>(stages_.size() - 1);
  }

  void insert(PointId u, AtomId a, PointId v, unsigned stage) {
    auto [it, fresh] = label_.emplace(BinRel::key({u, v}), a);
    if (!fresh) {
      if (it->second != a && !conflict_)
        conflict_ = PropertyViolation{"i", "pair (" + std::to_string(u) + "," + std::to_string(v) + ") labelled " +
                                               A_.name(it->second) + " and " + A_.name(a)};
      return;
    }
    triples_.push_back({u, a, v, stage});
    out_[ikey(u, a)].push_back(v);
    in_[ikey(v, a)].push_back(u);
    adj_out_[u].push_back(v);
    adj_in_[v].push_back(u);
  }

  // Properties (iii) and (iv) for one triple.
  std::optional<PropertyViolation> check_edge(PointId u, AtomId a, PointId v) const {
    if ((u == v) != A_.is_identity(a))
      return PropertyViolation{"iii", "(" + std::to_string(u) + "," + A_.name(a) + "," + std::to_string(v) + ")"};
    if (!has(v, A_.converse(a), u))
      return PropertyViolation{"iv", "(" + std::to_string(u) + "," + A_.name(a) + "," + std::to_string(v) + ") has no converse triple"};
    return std::nullopt;
  }

  std::optional<PropertyViolation> triangle(PointId u, PointId v, PointId w) const {
    auto a = label(u, v), b = label(v, w), c = label(u, w);
    if (!a || !b || !c || A_.has_cycle(*a, *b, *c)) return std::nullopt;
    return PropertyViolation{"v", "triangle " + std::to_string(u) + "," + std::to_string(v) + "," + std::to_string(w) + ": " +
                                      A_.name(*c) + " not below " + A_.name(*a) + ";" + A_.name(*b)};
  }

  // Property (v) for all triangles whose middle point is v.
  std::optional<PropertyViolation> check_triangles_through(PointId v) const {
    for (PointId u : adj_in_[v])
      for (PointId w : adj_out_[v])
        if (auto bad = triangle(u, v, w)) return bad;
    return std::nullopt;
  }

  // Properties (iii)-(v) for everything involving the fresh point w.
  std::optional<PropertyViolation> check_around(PointId w) const {
    if (conflict_) return conflict_;
    auto loop = label(w, w);
    if (!loop || !A_.is_identity(*loop)) return PropertyViolation{"iii", "fresh point has no identity loop"};
    for (PointId x : adj_out_[w])
      if (auto bad = check_edge(w, *label(w, x), x)) return bad;
    for (PointId x : adj_in_[w])
      if (auto bad = check_edge(x, *label(x, w), w)) return bad;
    if (auto bad = check_triangles_through(w)) return bad;
    for (PointId y : adj_out_[w])
      for (PointId z : adj_out_[y])
        if (auto bad = triangle(w, y, z)) return bad;
    for (PointId y : adj_in_[w])
      for (PointId x : adj_in_[y])
        if (auto bad = triangle(x, y, w)) return bad;
    return std::nullopt;
  }

  AtomStructure A_;
  std::size_t budget_;
  unsigned passes_ = 0;
  std::vector<unsigned> stages_;
  std::vector<LTriple> triples_;
  std::unordered_map<std::uint64_t, AtomId> label_;
  Index out_, in_;
  std::vector<std::vector<PointId>> adj_out_, adj_in_;
  std::vector<std::vector<std::pair<AtomId, AtomId>>> splits_;
  std::optional<PropertyViolation> conflict_;

  friend LabellingSystem initial_system(const AtomStructure& A, std::size_t point_budget);
};

inline LabellingSystem initial_system(const AtomStructure& A, std::size_t point_budget = kDefaultPointBudget) {
  if (A.identity().empty()) throw PreconditionError("labelling needs at least one identity atom");
  if (!classify(A).isWA) throw PreconditionError("labelling systems are built only for WA");
  LabellingSystem ls(A, point_budget);
  A.identity().for_each([&](AtomId a) {
    const PointId p = ls.add_point(0);
    ls.insert(p, a, p, 0);
  });
  return ls;
}

inline std::vector<Flaw> find_flaws(const LabellingSystem& ls, unsigned scope) { return ls.find_flaws(scope); }

inline LabellingSystem repair(LabellingSystem ls, const Flaw& f) {
  ls.repair(f, ls.completed_passes() + 1);
  return ls;
}

inline LabellingSystem saturate(LabellingSystem ls, unsigned passes) {
  for (unsigned i = 0; i < passes; ++i) ls.run_pass();
  return ls;
}

// F restricted to atoms; F(x) is the union over the atoms below x.
class Representation {
 public:
  explicit Representation(const LabellingSystem& ls) : n_(ls.point_count()) {
    std::vector<std::vector<BinRel::Pair>> per(ls.algebra().atom_count());
    for (const LTriple& t : ls.triples()) per[t.a].emplace_back(t.u, t.v);
    for (auto& ps : per) atoms_.emplace_back(std::move(ps));
    for (const BinRel& r : atoms_) unit_ = unit_ | r;
  }
  std::size_t point_count() const { return n_; }
  const BinRel& unit() const { return unit_; }
  const BinRel& atom_image(AtomId a) const { return atoms_[a]; }
  BinRel image(Element x) const {
    BinRel r;
    x.for_each([&](AtomId a) { r = r | atoms_[a]; });
    return r;
  }

 private:
  std::size_t n_;
  std::vector<BinRel> atoms_;
  BinRel unit_;
};

inline Representation build_representation(const LabellingSystem& ls) { return Representation(ls); }

using VerificationReport = CheckReport;

inline constexpr std::size_t kVerifyElementPairsMaxAtoms = 6;

inline VerificationReport verify_representation(const LabellingSystem& ls, unsigned stage_bound) {
  if (stage_bound > ls.completed_passes())
    throw PreconditionError("stage bound " + std::to_string(stage_bound) + " exceeds completed passes " +
                            std::to_string(ls.completed_passes()));
  const AtomStructure& A = ls.algebra();
  const Representation F(ls);
  const BinRel& E = F.unit();
  const std::size_t n = A.atom_count();
  const bool all_pairs = n <= kVerifyElementPairsMaxAtoms;
  std::vector<Element> elems;
  if (all_pairs) {
    elems = quantifier_range(A, Quantify::Elements);
  } else {
    elems.push_back(Element{});
    for (AtomId a = 0; a < n; ++a) elems.push_back(Element::atom(a));
    elems.push_back(A.top());
  }
  std::vector<BinRel> img;
  for (Element x : elems) img.push_back(F.image(x));
  const std::string scope = all_pairs ? "all elements" : "atoms, 0 and 1";
  VerificationReport rep;
  auto fail = [](CheckOutcome& c, const std::string& w) { c.fail(w); };
  auto fmt = [&](Element x) { return A.format(x); };

  CheckOutcome vii{"vii", true, {}, scope};
  CheckOutcome xi{"xi", true, {}, scope};
  CheckOutcome viii{"viii", true, {}, scope};
  for (std::size_t i = 0; i < elems.size(); ++i) {
    if (all_pairs && img[i].inverse() != F.image(A.converse(elems[i]))) fail(xi, "x=" + fmt(elems[i]));
    if (F.image(A.complement(elems[i])) != E.minus(img[i])) fail(viii, "x=" + fmt(elems[i]));
    for (std::size_t j = 0; j < elems.size() && vii.pass; ++j)
      if (F.image(elems[i] | elems[j]) != (img[i] | img[j])) fail(vii, "x=" + fmt(elems[i]) + ", y=" + fmt(elems[j]));
  }
  if (!all_pairs)
    for (AtomId a = 0; a < n; ++a)
      if (F.atom_image(a).inverse() != F.atom_image(A.converse(a))) fail(xi, "x=" + A.name(a));

  CheckOutcome ix{"ix", true, {}, "images of distinct atoms are distinct and non-empty"};
  {
    std::set<BinRel> seen;
    for (AtomId a = 0; a < n; ++a) {
      if (F.atom_image(a).empty()) fail(ix, "F(" + A.name(a) + ") is empty");
      for (AtomId b = 0; b < a; ++b)
        if (!(F.atom_image(a) & F.atom_image(b)).empty()) fail(ix, "F(" + A.name(a) + ") meets F(" + A.name(b) + ")");
    }
    if (all_pairs)
      for (const BinRel& r : img)
        if (!seen.insert(r).second) fail(ix, "two elements share the image " + r.str());
  }

  CheckOutcome x{"x", true, {}, {}};
  if (F.image(A.identity()) != BinRel::identity(ls.point_count())) fail(x, "F(1') = " + F.image(A.identity()).str());

  // (xii) via atom products: (F(x)|F(y)) & E is the union of the atom products below x and y.
  CheckOutcome sup{"xii.superset", true, {}, "exact"};
  CheckOutcome sub{"xii.subset", true, {}, "pairs with both stages < " + std::to_string(stage_bound)};
  std::vector<BinRel> prod(n * n);
  for (AtomId a = 0; a < n; ++a)
    for (AtomId b = 0; b < n; ++b) prod[a * n + b] = F.atom_image(a).compose(F.atom_image(b)) & E;
  auto staged = [&](const BinRel& r) {
    std::vector<std::uint64_t> keep;
    for (std::uint64_t k : r.keys()) {
      const auto [u, v] = BinRel::unkey(k);
      if (ls.stage(u) < stage_bound && ls.stage(v) < stage_bound) keep.push_back(k);
    }
    return BinRel::from_keys(std::move(keep));
  };
  for (Element ex : elems) {
    for (Element ey : elems) {
      BinRel lhs;
      ex.for_each([&](AtomId a) { ey.for_each([&](AtomId b) { lhs = lhs | prod[a * n + b]; }); });
      const BinRel f = F.image(A.compose(ex, ey));
      if (!lhs.subset_of(f) && sup.pass) {
        const auto extra = lhs.minus(f).pairs().front();
        fail(sup, "x=" + fmt(ex) + ", y=" + fmt(ey) + ", pair (" + std::to_string(extra.first) + "," + std::to_string(extra.second) + ")");
      }
      const BinRel fs = staged(f);
      if (!fs.subset_of(lhs) && sub.pass) {
        const auto miss = fs.minus(lhs).pairs().front();
        fail(sub, "x=" + fmt(ex) + ", y=" + fmt(ey) + ", pair (" + std::to_string(miss.first) + "," + std::to_string(miss.second) + ")");
      }
    }
  }
  rep.checks = {vii, viii, ix, x, xi, sup, sub};
  return rep;
}

}  // namespace relalg
