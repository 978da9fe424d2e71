#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include "relalg/classify.hpp"
#include "relalg/cylindric.hpp"
#include "relalg/enumerate.hpp"
#include "relalg/labelling.hpp"
#include "relalg/laws.hpp"
#include "relalg/reduct.hpp"
#include "relalg/relset.hpp"
#include "relalg/suitable.hpp"
#include "relalg/trails.hpp"

using namespace relalg;

namespace {

// Every criterion tolerates zero failures; only the runtime budgets differ.
constexpr std::size_t kMaxFailures = 0;
constexpr std::size_t kChainSamples4 = 10000;
constexpr std::uint64_t kSeed = 1;
constexpr unsigned kLemmaPasses = 3;
constexpr unsigned kStagedPasses = 2;
constexpr std::size_t kConfluenceTrails = 1000;
constexpr std::size_t kConfluenceOrders = 10;
constexpr std::size_t kPipelineDepth = 3;

class Criterion {
 public:
  Criterion(int id, std::string title, double budget_s) : id_(id), title_(std::move(title)), budget_(budget_s) {}

  void expect(bool ok, const std::function<std::string()>& witness) {
    ++checks_;
    if (ok) return;
    if (failures_++ == 0) witness_ = witness();
  }
  void expect(const CheckOutcome& c, const std::string& where) {
    expect(c.pass, [&] { return where + " " + c.name + ": " + c.witness; });
  }
  void expect(const CheckReport& r, const std::string& where) {
    for (const CheckOutcome& c : r.checks) expect(c, where);
  }
  void error(const std::string& where, const std::exception& e) {
    expect(false, [&] { return where + " raised: " + e.what(); });
  }
  void detail(const std::string& d) { details_.push_back(d); }

  bool finish() const {
    const double t = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0_).count();
    const bool ok = failures_ <= kMaxFailures && t < budget_ && checks_ > 0;
    std::printf("%s %2d %s: %zu checks, %zu failures, %.2f s (budget %.0f s)\n", ok ? "PASS" : "FAIL", id_, title_.c_str(), checks_,
                failures_, t, budget_);
    for (const auto& d : details_) std::printf("        %s\n", d.c_str());
    if (failures_) std::printf("        first failure: %s\n", witness_.c_str());
    return ok;
  }

 private:
  int id_;
  std::string title_;
  double budget_;
  std::chrono::steady_clock::time_point t0_ = std::chrono::steady_clock::now();
  std::size_t checks_ = 0, failures_ = 0;
  std::string witness_;
  std::vector<std::string> details_;
};

std::vector<AtomStructure> all_structures(std::size_t max_atoms) {
  std::vector<AtomStructure> out;
  for (std::size_t n = 1; n <= max_atoms; ++n) for_each_structure(n, [&](const AtomStructure& A) { out.push_back(A); });
  return out;
}

std::vector<AtomStructure> wa_only(const std::vector<AtomStructure>& all, std::size_t max_atoms) {
  std::vector<AtomStructure> out;
  for (const AtomStructure& A : all)
    if (A.atom_count() <= max_atoms && classify(A).isWA) out.push_back(A);
  return out;
}

std::string tag(const AtomStructure& A) {
  std::string s = std::to_string(A.atom_count()) + " atoms {";
  bool first = true;
  for (const CycleTriple& t : A.cycles()) {
    s += (first ? "" : ",") + A.format(t);
    first = false;
  }
  return s + "}";
}

AtomStructure a2() {
  RawAtomStructure raw;
  raw.atom_count = 2;
  raw.identity = {0};
  raw.cycles = {{0, 0, 0}, {1, 1, 0}, {1, 1, 1}};
  raw.names = {"e", "d"};
  return validate_atom_structure(raw, true);
}

bool c1() {
  Criterion c(1, "relativized set algebras are WA (|U| <= 3, all E)", 30);
  std::size_t units = 0;
  for (std::size_t n = 1; n <= 3; ++n)
    for (const BinRel& e : all_relations_below(BinRel::square(n))) {
      if (!is_symmetric(e) || !is_reflexive_on_field(e)) continue;
      ++units;
      c.expect(check_th1({n}, e).isWA, [&] { return "|U|=" + std::to_string(n) + " E=" + e.str(); });
    }
  c.detail("symmetric reflexive units: " + std::to_string(units));
  return c.finish();
}

bool c2(const std::vector<AtomStructure>& wa3) {
  Criterion c(2, "elementary law suite on every WA with <= 3 atoms", 120);
  for (const AtomStructure& A : wa3)
    for (const LawResult& l : elementary_law_suite(A).laws)
      c.expect(l.holds && l.skipped.empty(), [&] { return tag(A) + " " + l.name + " at " + format_assignment(A, l.witness); });
  c.detail("structures: " + std::to_string(wa3.size()) + ", laws: " + std::to_string(elementary_laws().size()));
  return c.finish();
}

bool c3(const std::vector<AtomStructure>& all3) {
  Criterion c(3, "classification chain RA => SA => WA", 300);
  auto chain = [&](const AtomStructure& A) {
    const ClassReport r = classify(A);
    c.expect((!r.isRA || r.isSA) && (!r.isSA || r.isWA), [&] { return tag(A); });
  };
  for (const AtomStructure& A : all3) chain(A);
  std::mt19937_64 rng(kSeed);
  for (std::size_t i = 0; i < kChainSamples4; ++i) chain(random_structure(4, rng));
  c.detail("exhaustive <= 3 atoms: " + std::to_string(all3.size()) + ", sampled 4 atoms: " + std::to_string(kChainSamples4) +
           " (seed " + std::to_string(kSeed) + ")");
  return c.finish();
}

bool c4(const std::vector<AtomStructure>& all3) {
  Criterion c(4, "ra4 identity-atom check agrees with element mode", 120);
  ClassifyOptions eo;
  eo.elements_mode = true;
  for (const AtomStructure& A : all3) {
    const bool fast = classify(A).holds("ra4"), full = classify(A, eo).holds("ra4");
    c.expect(fast == full, [&] { return tag(A) + " fast=" + std::to_string(fast) + " full=" + std::to_string(full); });
  }
  return c.finish();
}

bool c5(const std::vector<AtomStructure>& wa3) {
  Criterion c(5, "labelling invariants after every repair and pass (passes <= 3)", 120);
  std::size_t repairs = 0;
  for (const AtomStructure& A : wa3) {
    try {
      LabellingSystem ls = initial_system(A);
      c.expect(!ls.check_properties().has_value(), [&] { return tag(A) + " initial system: " + ls.check_properties()->witness; });
      for (unsigned k = 1; k <= kLemmaPasses; ++k) {
        // Replay the pass one repair at a time on a copy, then compare with run_pass.
        LabellingSystem step = ls;
        for (const Flaw& f : step.find_flaws(k)) {
          if (!step.is_flaw(f)) continue;
          step.repair(f, k);
          ++repairs;
          const auto bad = step.check_properties();
          c.expect(!bad.has_value(), [&] { return tag(A) + " after repair " + step.describe(f) + ": (" + bad->property + ") " + bad->witness; });
          c.expect(!step.is_flaw(f), [&] { return tag(A) + " flaw survived " + step.describe(f); });
        }
        ls.run_pass();
        c.expect(step.triple_count() == ls.triple_count() && step.point_count() == ls.point_count(),
                 [&] { return tag(A) + " replayed pass " + std::to_string(k) + " differs from run_pass"; });
        const auto bad = ls.check_properties();
        c.expect(!bad.has_value(), [&] { return tag(A) + " after pass " + std::to_string(k) + ": " + bad->witness; });
        c.expect(find_flaws(ls, k).empty(), [&] { return tag(A) + " flaw below stage " + std::to_string(k) + " after pass " + std::to_string(k); });
      }
    } catch (const std::exception& e) {
      c.error(tag(A), e);
    }
  }
  c.detail("structures: " + std::to_string(wa3.size()) + ", repairs checked: " + std::to_string(repairs));
  return c.finish();
}

bool c6(const std::vector<AtomStructure>& wa3) {
  Criterion c(6, "staged labelling representation at p = 2", 120);
  for (const AtomStructure& A : wa3) {
    try {
      const LabellingSystem ls = saturate(initial_system(A), kStagedPasses);
      const VerificationReport r = verify_representation(ls, kStagedPasses);
      for (const char* name : {"vii", "viii", "ix", "x", "xi", "xii.superset", "xii.subset"})
        c.expect(r.find(name) != nullptr, [&] { return tag(A) + " missing check " + name; });
      c.expect(r, tag(A));
    } catch (const std::exception& e) {
      c.error(tag(A), e);
    }
  }
  return c.finish();
}

bool c7(const std::vector<AtomStructure>& wa3) {
  Criterion c(7, "suitable structure, NA3 with C4*, MGR2, function identities", 120);
  std::size_t c4_fail = 0;
  for (const AtomStructure& A : wa3) {
    const SuitableStructure S = build_suitable(A);
    c.expect(check_suitable(S), tag(A));
    const Na3Report na3 = check_na3(S, kSeed);
    c.expect(na3.axioms.find("C4*") != nullptr, [&] { return tag(A) + " C4* not checked"; });
    c.expect(na3.axioms, tag(A));
    c4_fail += !na3.c4.pass;
    c.expect(check_mgr2(S, kSeed), tag(A));
    c.expect(check_functions(S), tag(A));
  }
  c.detail("full C4 (not required) fails on " + std::to_string(c4_fail) + " of " + std::to_string(wa3.size()));
  return c.finish();
}

bool c8(const std::vector<AtomStructure>& wa3) {
  Criterion c(8, "phi: A is isomorphic to Ra Cm B (all element pairs)", 120);
  for (const AtomStructure& A : wa3) c.expect(check_th5(A, build_suitable(A)), tag(A));
  return c.finish();
}

bool c9(const std::vector<AtomStructure>& wa3) {
  Criterion c(9, "trail reduction and bounded partition (L = 2, 3)", 300);
  std::size_t points = 0;
  for (const AtomStructure& A : wa3) {
    const SuitableStructure S = build_suitable(A);
    c.expect(check_confluence(S, kConfluenceTrails, kConfluenceOrders, kSeed), tag(A));
    for (std::size_t L : {2u, 3u}) {
      const BoundedUniverse U(S, L);
      points += U.point_count();
      c.expect(check_partition(U), tag(A) + " L=" + std::to_string(L));
    }
  }
  c.detail(std::to_string(kConfluenceTrails) + " trails x " + std::to_string(kConfluenceOrders) + " orders per structure; points over all runs: " +
           std::to_string(points));
  return c.finish();
}

// Extracts "note" text of a named check, for the exclusion summary.
std::string note_of(const CheckReport& r, const std::string& name) {
  const CheckOutcome* c = r.find(name);
  return c && !c->note.empty() ? c->note : "none";
}

bool c10(const std::vector<AtomStructure>& wa2) {
  Criterion c(10, "bounded pipeline at L = 3 on every WA with <= 2 atoms", 300);
  for (const AtomStructure& A : wa2) {
    try {
      const SuitableStructure S = build_suitable(A);
      const BoundedUniverse U(S, kPipelineDepth);
      c.expect(check_partition(U), tag(A));
      const PairStructure P(U);
      const CheckReport pairs = check_pair_structure(P);
      for (const char* name : {"pairs.partition", "lem9"})
        c.expect(pairs.find(name) != nullptr, [&] { return tag(A) + " missing " + name; });
      c.expect(pairs, tag(A));
      const CheckReport lem8 = check_lem8(U);
      c.expect(lem8, tag(A));
      const FinalRepresentation G(P);
      const CheckReport fin = check_final_representation(G);
      for (const char* name : {"sb.symmetric", "sb.reflexive", "g.boolean", "g.identity", "g.converse", "g.compose.sub", "g.compose.sup"})
        c.expect(fin.find(name) != nullptr, [&] { return tag(A) + " missing " + name; });
      c.expect(fin, tag(A));
      c.detail(tag(A) + ": |V| = " + std::to_string(U.point_count()) + "; lem8 " + note_of(lem8, "lem8.closure") + "; compose " +
               note_of(fin, "g.compose.sup"));
    } catch (const std::exception& e) {
      c.error(tag(A), e);
    }
  }
  return c.finish();
}

bool c11() {
  Criterion c(11, "A2: labelling image and bounded-pipeline image both embed A", 120);
  const AtomStructure A = a2();
  try {
    const LabellingSystem ls = saturate(initial_system(A), kStagedPasses);
    const Representation F(ls);
    std::vector<BinRel> f_images;
    for (AtomId a = 0; a < A.atom_count(); ++a) f_images.push_back(F.atom_image(a));
    c.expect(check_image_embeds("F-image", A, f_images, F.unit()), "A2");

    const SuitableStructure S = build_suitable(A);
    const BoundedUniverse U(S, kPipelineDepth);
    const PairStructure P(U);
    const FinalRepresentation G(P);
    c.expect(check_image_embeds("G-image", A, G.atom_images(), G.unit()), "A2");
    c.detail("F on " + std::to_string(F.point_count()) + " points, G on " + std::to_string(U.point_count()) + " points");
  } catch (const std::exception& e) {
    c.error("A2", e);
  }
  return c.finish();
}

}  // namespace

int main() {
  const std::vector<AtomStructure> all3 = all_structures(3);
  const std::vector<AtomStructure> wa3 = wa_only(all3, 3);
  const std::vector<AtomStructure> wa2 = wa_only(all3, 2);
  std::printf("structures with <= 3 atoms: %zu, WA: %zu, WA with <= 2 atoms: %zu\n", all3.size(), wa3.size(), wa2.size());
  const bool ok[] = {c1(), c2(wa3), c3(all3), c4(all3), c5(wa3), c6(wa3), c7(wa3), c8(wa3), c9(wa3), c10(wa2), c11()};
  std::size_t failed = 0;
  for (bool b : ok) failed += !b;
  std::printf("%s: %zu of %zu criteria pass\n", failed ? "FAIL" : "PASS", std::size(ok) - failed, std::size(ok));
  return failed ? 1 : 0;
}
