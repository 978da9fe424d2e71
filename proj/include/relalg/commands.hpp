#pragma once

#include <algorithm>
#include <map>
#include <mutex>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "relalg/enumerate.hpp"
#include "relalg/labelling.hpp"
#include "relalg/laws.hpp"
#include "relalg/reduct.hpp"
#include "relalg/report.hpp"

namespace relalg {

inline std::string yes_no(bool b) { return b ? "yes" : "no"; }

struct CheckOptions {
  bool elements_mode = false;
  bool laws = false;
};

inline Report cmd_check(const AtomStructure& A, const CheckOptions& opt = {}) {
  Report rep;
  rep.value("structure.atoms", A.atom_count());
  rep.value("structure.cycles", A.cycle_count());
  ClassReport cls;
  {
    StageTimer t(rep, "classify");
    ClassifyOptions co;
    co.elements_mode = opt.elements_mode;
    cls = classify(A, co);
  }
  rep.value("classify.WA", yes_no(cls.isWA));
  rep.value("classify.SA", yes_no(cls.isSA));
  rep.value("classify.RA", yes_no(cls.isRA));
  for (const AxiomResult& a : cls.axioms) {
    std::string v = (a.holds ? "holds (" : "fails (") + a.method + ")";
    if (!a.holds && !a.witness.empty()) v += " witness " + format_assignment(A, a.witness);
    rep.value("axiom." + a.name, v);
  }
  if (opt.laws) {
    StageTimer t(rep, "laws");
    LawSuiteOptions lo;
    lo.require_wa = false;
    if (!cls.isWA) rep.value("laws.scope", "not a WA; laws evaluated anyway");
    for (const LawResult& l : elementary_law_suite(A, lo).laws) {
      CheckOutcome c{l.name, l.holds, {}, l.skipped};
      if (!l.holds) c.witness = format_assignment(A, l.witness);
      rep.check("laws", c);
    }
  }
  return rep;
}

struct RepresentOptions {
  unsigned passes = 2;
  std::size_t depth = 3;
  std::uint64_t seed = 1;
  std::size_t confluence_trails = 1000;
  std::size_t confluence_orders = 10;
  bool emit_pairs = true;
};

inline void require_wa(const AtomStructure& A) {
  const ClassReport cls = classify(A);
  if (cls.isWA) return;
  std::string failed;
  for (const AxiomResult& a : cls.failures())
    if (a.name != "semi-assoc" && a.name != "assoc") failed += (failed.empty() ? "" : ", ") + a.name;
  throw PreconditionError("input is not a WA: " + failed + " fails");
}

// Suitable structure through Ra Cm B; no bounded universe involved.
inline void suitable_stages(Report& rep, const AtomStructure& A, const SuitableStructure& S, std::uint64_t seed) {
  {
    StageTimer t(rep, "suitable");
    rep.value("suitable.B", S.size());
    rep.check("suitable", check_suitable(S));
  }
  {
    StageTimer t(rep, "cylindric");
    const Na3Report na3 = check_na3(S, seed);
    rep.check("cylindric.na3", na3.axioms);
    rep.value("cylindric.na3.samples", na3.samples);
    rep.value("cylindric.C4", na3.c4.pass ? "holds (recorded only)" : "fails (recorded only): " + na3.c4.witness);
    rep.check("cylindric", check_mgr2(S, seed));
    rep.check("cylindric", check_functions(S));
  }
  StageTimer t(rep, "th5");
  if (A.atom_count() <= kTh5ElementPairsMaxAtoms) rep.check("reduct.th5", check_th5(A, S));
  else rep.value("reduct.th5", "skipped: more than " + std::to_string(kTh5ElementPairsMaxAtoms) + " atoms");
}

// Bounded universe through the final representation.
inline void bounded_stages(Report& rep, const AtomStructure& A, const SuitableStructure& S, const RepresentOptions& opt) {
  std::optional<BoundedUniverse> U;
  {
    StageTimer t(rep, "trails");
    U.emplace(S, opt.depth);
    rep.value("trails.bound", opt.depth);
    rep.value("trails.points", U->point_count());
    rep.value("trails.triples", U->triple_count());
    std::size_t frontier = 0;
    for (std::size_t i = 0; i < U->triple_count(); ++i) frontier += U->frontier(i);
    rep.value("trails.frontier", frontier);
    rep.check("trails", check_confluence(S, opt.confluence_trails, opt.confluence_orders, opt.seed));
    rep.check("trails", check_partition(*U));
    rep.check("trails", check_orbits(*U));
  }
  {
    StageTimer t(rep, "rc");
    const RcAlgebra rc(*U);
    rep.check("cylindric", check_th4_bounded(rc, opt.seed));
  }
  StageTimer t(rep, "reduct");
  const PairStructure P(*U);
  rep.check("reduct", check_pair_structure(P));
  rep.check("reduct", check_lem8(*U));
  const FinalRepresentation G(P);
  rep.value("reduct.S", G.unit().size());
  rep.check("reduct", check_final_representation(G));
  rep.check("reduct", check_image_embeds("image", A, G.atom_images(), G.unit()));
  if (opt.emit_pairs)
    for (AtomId a = 0; a < A.atom_count(); ++a) rep.value("reduct.G." + A.name(a), G.atom_image(a).str());
}

inline Report cmd_represent(const AtomStructure& A, const RepresentOptions& opt = {}) {
  require_wa(A);
  if (opt.depth == 0) throw PreconditionError("depth must be at least 1");
  Report rep;
  {
    StageTimer t(rep, "labelling");
    const LabellingSystem ls = saturate(initial_system(A), opt.passes);
    rep.value("labelling.passes", std::size_t{opt.passes});
    rep.value("labelling.points", ls.point_count());
    rep.check("labelling", verify_representation(ls, opt.passes));
    const Representation F(ls);
    std::vector<BinRel> images;
    for (AtomId a = 0; a < A.atom_count(); ++a) images.push_back(F.atom_image(a));
    rep.check("labelling", check_image_embeds("image", A, images, F.unit()));
    if (opt.emit_pairs)
      for (AtomId a = 0; a < A.atom_count(); ++a) rep.value("labelling.F." + A.name(a), F.atom_image(a).str());
  }
  const SuitableStructure S(A);
  suitable_stages(rep, A, S, opt.seed);
  bounded_stages(rep, A, S, opt);
  return rep;
}

struct EnumerateOptions {
  std::size_t atoms = 1;
  bool pipeline = false;
  bool classify_only = false;
  bool up_to_iso = false;
  std::optional<std::size_t> sample;
  std::uint64_t seed = 1;
  // Bound for the trail stages of --pipeline; none runs the unbounded stages only.
  std::optional<std::size_t> depth;
  unsigned threads = 0;
};

namespace detail {

// Per-check aggregate over many structures; keeps the witness of the first structure (by index) that fails.
struct Aggregate {
  std::size_t runs = 0, failures = 0;
  std::optional<std::size_t> first;
  std::string witness;

  void add(std::size_t index, bool pass, const std::string& w) {
    ++runs;
    if (pass) return;
    ++failures;
    if (!first || index < *first) {
      first = index;
      witness = w;
    }
  }
  void merge(const Aggregate& o) {
    runs += o.runs;
    failures += o.failures;
    if (o.first && (!first || *o.first < *first)) {
      first = o.first;
      witness = o.witness;
    }
  }
};

struct EnumerationTally {
  std::size_t structures = 0, wa = 0, sa = 0, ra = 0;
  std::set<std::tuple<std::uint64_t, std::uint64_t, std::uint64_t>> iso_wa, iso_sa, iso_ra, iso_all;
  std::map<std::string, Aggregate> checks;
  // Insertion order of check names, for a stable report.
  std::vector<std::string> order;

  Aggregate& at(const std::string& name) {
    auto [it, fresh] = checks.try_emplace(name);
    if (fresh) order.push_back(name);
    return it->second;
  }
  void merge(const EnumerationTally& o) {
    structures += o.structures;
    wa += o.wa;
    sa += o.sa;
    ra += o.ra;
    iso_wa.insert(o.iso_wa.begin(), o.iso_wa.end());
    iso_sa.insert(o.iso_sa.begin(), o.iso_sa.end());
    iso_ra.insert(o.iso_ra.begin(), o.iso_ra.end());
    iso_all.insert(o.iso_all.begin(), o.iso_all.end());
    for (const std::string& n : o.order) at(n).merge(o.checks.at(n));
  }
};

inline void tally_structure(EnumerationTally& t, std::size_t index, const AtomStructure& A, const EnumerateOptions& opt) {
  const ClassReport cls = classify(A);
  ++t.structures;
  t.wa += cls.isWA;
  t.sa += cls.isSA;
  t.ra += cls.isRA;
  const std::string tag = "structure #" + std::to_string(index);
  if (opt.up_to_iso) {
    const auto key = canonical_key(A);
    t.iso_all.insert(key);
    if (cls.isWA) t.iso_wa.insert(key);
    if (cls.isSA) t.iso_sa.insert(key);
    if (cls.isRA) t.iso_ra.insert(key);
  }
  const bool chain = (!cls.isRA || cls.isSA) && (!cls.isSA || cls.isWA);
  t.at("enumerate.chain").add(index, chain, tag + ": RA=" + yes_no(cls.isRA) + " SA=" + yes_no(cls.isSA) + " WA=" + yes_no(cls.isWA));
  if (opt.classify_only) return;

  if (A.atom_count() <= kElementModeMaxAtoms) {
    ClassifyOptions eo;
    eo.elements_mode = true;
    const ClassReport full = classify(A, eo);
    t.at("enumerate.ra4-oracle").add(index, full.holds("ra4") == cls.holds("ra4"),
                                     tag + ": identity-atom ra4 " + yes_no(cls.holds("ra4")) + ", element-mode " + yes_no(full.holds("ra4")));
  }
  if (!cls.isWA) return;
  for (const LawResult& l : elementary_law_suite(A).laws)
    t.at("enumerate.laws").add(index, l.holds, tag + ": " + l.name + " fails at " + format_assignment(A, l.witness));
  if (!opt.pipeline) return;

  Report rep;
  const SuitableStructure S(A);
  suitable_stages(rep, A, S, opt.seed);
  if (opt.depth) {
    RepresentOptions ro;
    ro.depth = *opt.depth;
    ro.seed = opt.seed;
    ro.confluence_trails = 100;
    ro.confluence_orders = 10;
    ro.emit_pairs = false;
    bounded_stages(rep, A, S, ro);
  }
  // Re-read the stage lines: "stage.check = pass|fail" followed by an optional witness.
  std::istringstream in(rep.str());
  std::string line, pending;
  bool pending_fail = false;
  auto flush = [&](const std::string& w) {
    if (!pending.empty()) t.at("pipeline." + pending).add(index, !pending_fail, tag + (w.empty() ? "" : ": " + w));
    pending.clear();
  };
  while (std::getline(in, line)) {
    const auto eq = line.find(" = ");
    if (eq != std::string::npos && line.rfind("  ", 0) != 0) {
      flush("");
      pending = line.substr(0, eq);
      pending_fail = line.substr(eq + 3) == "fail";
    } else if (line.rfind("  witness: ", 0) == 0) {
      flush(line.substr(11));
    }
  }
  flush("");
}

}  // namespace detail

inline Report cmd_enumerate(const EnumerateOptions& opt) {
  if (opt.atoms == 0 || opt.atoms > kEnumerateMaxAtoms)
    throw PreconditionError("enumerate supports 1.." + std::to_string(kEnumerateMaxAtoms) + " atoms");
  Report rep;
  detail::EnumerationTally total;
  {
    StageTimer timer(rep, "enumerate");
    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    const unsigned threads = opt.threads ? opt.threads : hw;
    const auto frames = enumeration_frames(opt.atoms);
    std::vector<std::pair<std::size_t, std::uint64_t>> offsets;
    std::size_t count = 0;
    for (std::size_t f = 0; f < frames.size(); ++f) {
      offsets.push_back({f, count});
      count += frames[f].family_count();
    }
    // Sampled runs draw structure indices up front, so the result does not depend on the thread count.
    std::vector<std::size_t> indices;
    if (opt.sample) {
      std::mt19937_64 rng(opt.seed);
      std::uniform_int_distribution<std::size_t> pick(0, count - 1);
      for (std::size_t i = 0; i < *opt.sample; ++i) indices.push_back(pick(rng));
    }
    const std::size_t jobs = opt.sample ? indices.size() : count;
    auto structure_at = [&](std::size_t idx) {
      auto it = std::upper_bound(offsets.begin(), offsets.end(), idx,
                                 [](std::size_t v, const std::pair<std::size_t, std::uint64_t>& o) { return v < o.second; });
      --it;
      return frames[it->first].build(idx - it->second);
    };
    std::vector<detail::EnumerationTally> parts(threads);
    std::vector<std::thread> pool;
    std::mutex err_mu;
    std::optional<std::string> err;
    for (unsigned w = 0; w < threads; ++w)
      pool.emplace_back([&, w] {
        try {
          for (std::size_t j = w; j < jobs; j += threads) {
            const std::size_t idx = opt.sample ? indices[j] : j;
            detail::tally_structure(parts[w], idx, structure_at(idx), opt);
          }
        } catch (const std::exception& e) {
          std::lock_guard<std::mutex> lock(err_mu);
          if (!err) err = e.what();
        }
      });
    for (auto& th : pool) th.join();
    if (err) throw Error(*err);
    for (const auto& p : parts) total.merge(p);
  }
  rep.value("enumerate.atoms", opt.atoms);
  rep.value("enumerate.mode", opt.sample ? "sampled " + std::to_string(*opt.sample) + " (seed " + std::to_string(opt.seed) + ")" : "exhaustive");
  rep.value("enumerate.structures", total.structures);
  rep.value("enumerate.WA", total.wa);
  rep.value("enumerate.SA", total.sa);
  rep.value("enumerate.RA", total.ra);
  if (opt.up_to_iso) {
    rep.value("enumerate.iso.structures", total.iso_all.size());
    rep.value("enumerate.iso.WA", total.iso_wa.size());
    rep.value("enumerate.iso.SA", total.iso_sa.size());
    rep.value("enumerate.iso.RA", total.iso_ra.size());
  }
  // Sorted by name: worker interleaving must not change the report.
  std::vector<std::string> names(total.order.begin(), total.order.end());
  std::sort(names.begin(), names.end());
  for (const std::string& n : names) {
    const detail::Aggregate& a = total.checks.at(n);
    const auto dot = n.find('.');
    CheckOutcome c{n.substr(dot + 1), a.failures == 0, a.witness,
                   std::to_string(a.runs) + " runs, " + std::to_string(a.failures) + " failures"};
    rep.check(n.substr(0, dot), c);
  }
  return rep;
}

}  // namespace relalg
