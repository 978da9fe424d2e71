#pragma once

#include "relalg/atom_structure.hpp"

namespace fixtures {

inline relalg::AtomStructure a1() {
  relalg::RawAtomStructure raw;
  raw.atom_count = 1;
  raw.identity = {0};
  raw.cycles = {{0, 0, 0}};
  raw.names = {"e"};
  return relalg::validate_atom_structure(raw, false);
}

// e = identity, d = diversity with d;d = 1.
inline relalg::AtomStructure a2() {
  relalg::RawAtomStructure raw;
  raw.atom_count = 2;
  raw.identity = {0};
  raw.cycles = {{0, 0, 0}, {1, 1, 0}, {1, 1, 1}};
  raw.names = {"e", "d"};
  return relalg::validate_atom_structure(raw, true);
}

// Single diversity atom, no identity atoms.
inline relalg::AtomStructure no_identity() {
  relalg::RawAtomStructure raw;
  raw.atom_count = 1;
  raw.cycles = {{0, 0, 0}};
  raw.names = {"d"};
  return relalg::validate_atom_structure(raw, false);
}

inline relalg::Element el(const relalg::AtomStructure& A, std::initializer_list<const char*> names) {
  relalg::Element e;
  for (const char* n : names) e |= relalg::Element::atom(*A.find(n));
  return e;
}

}  // namespace fixtures
