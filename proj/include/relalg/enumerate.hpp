#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <tuple>
#include <vector>

#include "relalg/atom_structure.hpp"

namespace relalg {

inline constexpr std::size_t kEnumerateMaxAtoms = 4;

// One (identity, converse) choice together with the Peircean orbits it induces on At^3.
struct EnumerationFrame {
  std::size_t atoms = 0;
  std::size_t identity_count = 0;
  std::vector<AtomId> converse;
  std::vector<std::vector<CycleTriple>> orbits;

  AtomStructure build(std::uint64_t orbit_mask) const {
    RawAtomStructure raw;
    raw.atom_count = atoms;
    for (AtomId a = 0; a < identity_count; ++a) raw.identity.push_back(a);
    raw.converse = converse;
    for (std::size_t i = 0; i < orbits.size(); ++i)
      if ((orbit_mask >> i) & 1U) raw.cycles.insert(raw.cycles.end(), orbits[i].begin(), orbits[i].end());
    for (AtomId a = 0; a < atoms; ++a) raw.names.push_back(default_atom_name(a));
    return validate_atom_structure(raw, false);
  }
  std::uint64_t family_count() const { return std::uint64_t{1} << orbits.size(); }
};

namespace detail {

// Involutions of atoms [from, n), in lexicographic order; atoms below `from` are fixed.
inline std::vector<std::vector<AtomId>> involutions(std::size_t n, std::size_t from) {
  std::vector<AtomId> p(n);
  std::iota(p.begin(), p.end(), AtomId{0});
  std::vector<std::vector<AtomId>> out;
  do {
    bool inv = true;
    for (std::size_t i = from; i < n; ++i) inv = inv && p[p[i]] == i;
    if (inv) out.push_back(p);
  } while (std::next_permutation(p.begin() + static_cast<std::ptrdiff_t>(from), p.end()));
  return out;
}

}  // namespace detail

// Identity atoms come first (a0..a(k-1), self-converse); converse ranges over involutions of the rest.
inline std::vector<EnumerationFrame> enumeration_frames(std::size_t n) {
  if (n == 0 || n > kEnumerateMaxAtoms)
    throw PreconditionError("enumeration supports 1.." + std::to_string(kEnumerateMaxAtoms) + " atoms");
  std::vector<EnumerationFrame> frames;
  for (std::size_t k = 0; k <= n; ++k) {
    for (const auto& c : detail::involutions(n, k)) {
      EnumerationFrame f;
      f.atoms = n;
      f.identity_count = k;
      f.converse = c;
      std::vector<bool> seen(n * n * n, false);
      auto idx = [n](const CycleTriple& t) { return (t.x * n + t.y) * n + t.z; };
      for (AtomId x = 0; x < n; ++x)
        for (AtomId y = 0; y < n; ++y)
          for (AtomId z = 0; z < n; ++z) {
            const CycleTriple t{x, y, z};
            if (seen[idx(t)]) continue;
            std::vector<CycleTriple> orbit{t}, work{t};
            seen[idx(t)] = true;
            while (!work.empty()) {
              CycleTriple u = work.back();
              work.pop_back();
              for (const CycleTriple& v : peircean_transforms(u, [&](AtomId a) { return c[a]; })) {
                if (seen[idx(v)]) continue;
                seen[idx(v)] = true;
                orbit.push_back(v);
                work.push_back(v);
              }
            }
            std::sort(orbit.begin(), orbit.end());
            f.orbits.push_back(std::move(orbit));
          }
      frames.push_back(std::move(f));
    }
  }
  return frames;
}

// Visits every validated structure with n atoms under the fixed labelling scheme.
template <class F>
void for_each_structure(std::size_t n, F&& f) {
  for (const EnumerationFrame& frame : enumeration_frames(n))
    for (std::uint64_t m = 0; m < frame.family_count(); ++m) f(frame.build(m));
}

inline std::uint64_t structure_count(std::size_t n) {
  std::uint64_t total = 0;
  for (const EnumerationFrame& frame : enumeration_frames(n)) total += frame.family_count();
  return total;
}

// Uniform over (frame, orbit family) pairs weighted by family count.
inline AtomStructure random_structure(std::size_t n, std::mt19937_64& rng) {
  static thread_local std::vector<std::vector<EnumerationFrame>> cache(kEnumerateMaxAtoms + 1);
  if (n == 0 || n > kEnumerateMaxAtoms) throw PreconditionError("random_structure supports 1..4 atoms");
  if (cache[n].empty()) cache[n] = enumeration_frames(n);
  const auto& frames = cache[n];
  std::uint64_t total = 0;
  for (const auto& fr : frames) total += fr.family_count();
  std::uint64_t pick = std::uniform_int_distribution<std::uint64_t>(0, total - 1)(rng);
  for (const auto& fr : frames) {
    if (pick < fr.family_count()) return fr.build(pick);
    pick -= fr.family_count();
  }
  return frames.back().build(0);
}

// Isomorphism-invariant key for structures with at most 4 atoms.
inline std::tuple<std::uint64_t, std::uint64_t, std::uint64_t> canonical_key(const AtomStructure& A) {
  const std::size_t n = A.atom_count();
  if (n > kEnumerateMaxAtoms) throw PreconditionError("canonical_key supports at most 4 atoms");
  std::vector<AtomId> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::tuple<std::uint64_t, std::uint64_t, std::uint64_t> best{~0ULL, ~0ULL, ~0ULL};
  do {
    std::uint64_t id = 0, conv = 0, cyc = 0;
    for (AtomId a = 0; a < n; ++a) {
      if (A.is_identity(a)) id |= std::uint64_t{1} << perm[a];
      conv |= static_cast<std::uint64_t>(perm[A.converse(a)]) << (2 * perm[a]);
    }
    for (const CycleTriple& t : A.cycles())
      cyc |= std::uint64_t{1} << ((perm[t.x] * n + perm[t.y]) * n + perm[t.z]);
    best = std::min(best, std::tuple{id, conv, cyc});
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

}  // namespace relalg
