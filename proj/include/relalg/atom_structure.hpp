#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "relalg/element.hpp"
#include "relalg/error.hpp"

namespace relalg {

// (x, y, z) means z <= x ; y.
struct CycleTriple {
  AtomId x = 0;
  AtomId y = 0;
  AtomId z = 0;
  auto operator<=>(const CycleTriple&) const = default;
};

// Unvalidated input to validate_atom_structure.
struct RawAtomStructure {
  std::size_t atom_count = 0;
  std::vector<AtomId> identity;
  // Empty means every atom is self-converse.
  std::vector<AtomId> converse;
  std::vector<CycleTriple> cycles;
  // Optional symbol names, one per atom.
  std::vector<std::string> names;
};

// The six images of (x,y,z) under the Peircean transforms, given a converse map.
template <class Conv>
std::array<CycleTriple, 6> peircean_transforms(const CycleTriple& t, Conv&& conv) {
  const AtomId x = t.x, y = t.y, z = t.z;
  return {{{conv(x), z, y},
           {y, conv(z), conv(x)},
           {conv(y), conv(x), conv(z)},
           {conv(z), x, conv(y)},
           {z, conv(y), x},
           {x, y, z}}};
}

class AtomStructure {
 public:
  std::size_t atom_count() const { return n_; }
  Element identity() const { return identity_; }
  Element diversity() const { return top().minus(identity_); }
  Element top() const { return Element::first(n_); }
  AtomId converse(AtomId a) const { return conv_[a]; }
  bool is_identity(AtomId a) const { return identity_.contains(a); }
  bool has_cycle(AtomId x, AtomId y, AtomId z) const { return comp_[x * n_ + y].contains(z); }
  // Atoms below x ; y for atoms x, y.
  Element product(AtomId x, AtomId y) const { return comp_[x * n_ + y]; }

  std::vector<CycleTriple> cycles() const {
    std::vector<CycleTriple> out;
    for (AtomId x = 0; x < n_; ++x)
      for (AtomId y = 0; y < n_; ++y) product(x, y).for_each([&](AtomId z) { out.push_back({x, y, z}); });
    return out;
  }
  std::size_t cycle_count() const {
    std::size_t c = 0;
    for (Element e : comp_) c += e.count();
    return c;
  }

  const std::string& name(AtomId a) const { return names_[a]; }
  const std::vector<std::string>& names() const { return names_; }
  std::optional<AtomId> find(const std::string& name) const {
    auto it = std::find(names_.begin(), names_.end(), name);
    if (it == names_.end()) return std::nullopt;
    return static_cast<AtomId>(it - names_.begin());
  }

  Element compose(Element x, Element y) const {
    Element r;
    x.for_each([&](AtomId a) { y.for_each([&](AtomId b) { r |= comp_[a * n_ + b]; }); });
    return r;
  }
  Element converse(Element x) const {
    Element r;
    x.for_each([&](AtomId a) { r |= Element::atom(conv_[a]); });
    return r;
  }
  Element complement(Element x) const { return top().minus(x); }
  Element dom(Element x) const { return compose(x, converse(x)) & identity_; }
  Element rng(Element x) const { return compose(converse(x), x) & identity_; }

  std::string format(Element x) const {
    std::ostringstream os;
    os << '{';
    bool first = true;
    x.for_each([&](AtomId a) {
      if (!first) os << ',';
      first = false;
      os << names_[a];
    });
    os << '}';
    return os.str();
  }
  std::string format(const CycleTriple& t) const {
    return "(" + names_[t.x] + "," + names_[t.y] + "," + names_[t.z] + ")";
  }

  bool operator==(const AtomStructure& o) const {
    return n_ == o.n_ && identity_ == o.identity_ && conv_ == o.conv_ && comp_ == o.comp_;
  }

  friend AtomStructure validate_atom_structure(const RawAtomStructure& raw, bool auto_close);

 private:
  std::size_t n_ = 0;
  Element identity_;
  std::vector<AtomId> conv_;
  std::vector<Element> comp_;
  std::vector<std::string> names_;
};

inline std::string default_atom_name(AtomId a) { return "a" + std::to_string(a); }

inline AtomStructure validate_atom_structure(const RawAtomStructure& raw, bool auto_close) {
  const std::size_t n = raw.atom_count;
  if (n == 0) throw ValidationError("atom structure needs at least one atom");
  if (n > kMaxAtoms) throw ValidationError("at most " + std::to_string(kMaxAtoms) + " atoms are supported");

  AtomStructure s;
  s.n_ = n;
  if (!raw.names.empty() && raw.names.size() != n) throw ValidationError("atom name count does not match atom count");
  for (AtomId a = 0; a < n; ++a) s.names_.push_back(raw.names.empty() ? default_atom_name(a) : raw.names[a]);

  auto in_range = [&](AtomId a, const char* what) {
    if (a >= n) throw ValidationError(std::string(what) + " refers to atom index " + std::to_string(a) + " out of range");
  };
  for (AtomId a : raw.identity) {
    in_range(a, "identity set");
    s.identity_ |= Element::atom(a);
  }

  if (raw.converse.empty()) {
    for (AtomId a = 0; a < n; ++a) s.conv_.push_back(a);
  } else {
    if (raw.converse.size() != n) throw ValidationError("converse map must list every atom");
    for (AtomId a : raw.converse) in_range(a, "converse map");
    s.conv_ = raw.converse;
  }
  for (AtomId a = 0; a < n; ++a) {
    if (s.conv_[s.conv_[a]] != a)
      throw ValidationError("converse is not an involution at atom " + s.names_[a]);
    if (s.identity_.contains(a) && s.conv_[a] != a)
      throw ValidationError("identity atom " + s.names_[a] + " is not self-converse");
  }

  s.comp_.assign(n * n, Element{});
  std::vector<CycleTriple> work;
  auto conv = [&](AtomId a) { return s.conv_[a]; };
  auto add = [&](const CycleTriple& t) {
    Element& cell = s.comp_[t.x * n + t.y];
    if (cell.contains(t.z)) return false;
    cell |= Element::atom(t.z);
    return true;
  };
  for (const CycleTriple& t : raw.cycles) {
    in_range(t.x, "cycle");
    in_range(t.y, "cycle");
    in_range(t.z, "cycle");
    if (add(t)) work.push_back(t);
  }

  if (auto_close) {
    while (!work.empty()) {
      CycleTriple t = work.back();
      work.pop_back();
      for (const CycleTriple& u : peircean_transforms(t, conv))
        if (add(u)) work.push_back(u);
    }
  } else {
    for (const CycleTriple& t : s.cycles()) {
      for (const CycleTriple& u : peircean_transforms(t, conv)) {
        if (!s.has_cycle(u.x, u.y, u.z))
          throw ValidationError("cycles not closed: " + s.format(t) + " present but " + s.format(u) + " missing");
      }
    }
  }
  return s;
}

}  // namespace relalg
