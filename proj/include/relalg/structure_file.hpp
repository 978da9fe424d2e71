#pragma once

#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "relalg/atom_structure.hpp"

namespace relalg {

// Line-oriented atom structure file:
//   [atoms]     symbols separated by whitespace
//   [identity]  identity atoms
//   [converse]  "a b" pairs; unlisted atoms are self-converse
//   [facts]     "z <= x ; y"
//   [options]   "autoclose = true|false"
// '#' starts a comment.
namespace detail {

inline std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

inline std::vector<std::string> words(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

}  // namespace detail

inline AtomStructure parse_structure(const std::string& text) {
  enum class Section { None, Atoms, Identity, Converse, Facts, Options };
  Section section = Section::None;
  std::vector<std::string> names;
  std::map<std::string, AtomId> ids;
  std::set<std::string> seen_sections;
  RawAtomStructure raw;
  std::vector<std::pair<std::size_t, std::pair<std::string, std::string>>> converse_lines;
  bool autoclose = false;

  auto atom = [&](const std::string& w, std::size_t line) {
    auto it = ids.find(w);
    if (it == ids.end()) throw ParseError(line, "unknown atom '" + w + "'");
    return it->second;
  };

  std::istringstream in(text);
  std::string raw_line;
  for (std::size_t line = 1; std::getline(in, raw_line); ++line) {
    const std::string s = detail::trim(raw_line.substr(0, raw_line.find('#')));
    if (s.empty()) continue;
    if (s.front() == '[') {
      if (s.back() != ']') throw ParseError(line, "unterminated section header");
      const std::string name = detail::trim(s.substr(1, s.size() - 2));
      static const std::map<std::string, Section> sections{{"atoms", Section::Atoms},       {"identity", Section::Identity},
                                                           {"converse", Section::Converse}, {"facts", Section::Facts},
                                                           {"options", Section::Options}};
      auto it = sections.find(name);
      if (it == sections.end()) throw ParseError(line, "unknown section [" + name + "]");
      if (!seen_sections.insert(name).second) throw ParseError(line, "duplicate section [" + name + "]");
      if (it->second != Section::Atoms && !seen_sections.count("atoms")) throw ParseError(line, "[atoms] must come first");
      section = it->second;
      continue;
    }
    switch (section) {
      case Section::None:
        throw ParseError(line, "content outside a section");
      case Section::Atoms:
        for (const std::string& w : detail::words(s)) {
          if (!ids.emplace(w, static_cast<AtomId>(names.size())).second) throw ParseError(line, "duplicate atom '" + w + "'");
          names.push_back(w);
        }
        break;
      case Section::Identity:
        for (const std::string& w : detail::words(s)) raw.identity.push_back(atom(w, line));
        break;
      case Section::Converse: {
        const auto ws = detail::words(s);
        if (ws.size() != 2) throw ParseError(line, "converse lines are 'a b'");
        converse_lines.push_back({line, {ws[0], ws[1]}});
        break;
      }
      case Section::Facts: {
        const auto le = s.find("<=");
        const auto semi = s.find(';');
        if (le == std::string::npos || semi == std::string::npos || semi < le) throw ParseError(line, "facts are 'z <= x ; y'");
        const auto z = detail::words(s.substr(0, le)), x = detail::words(s.substr(le + 2, semi - le - 2)),
                   y = detail::words(s.substr(semi + 1));
        if (z.size() != 1 || x.size() != 1 || y.size() != 1) throw ParseError(line, "facts are 'z <= x ; y'");
        raw.cycles.push_back({atom(x[0], line), atom(y[0], line), atom(z[0], line)});
        break;
      }
      case Section::Options: {
        const auto eq = s.find('=');
        if (eq == std::string::npos) throw ParseError(line, "options are 'key = value'");
        const std::string key = detail::trim(s.substr(0, eq)), value = detail::trim(s.substr(eq + 1));
        if (key != "autoclose") throw ParseError(line, "unknown option '" + key + "'");
        if (value != "true" && value != "false") throw ParseError(line, "autoclose is true or false");
        autoclose = value == "true";
        break;
      }
    }
  }
  if (names.empty()) throw ParseError(1, "no atoms declared");
  raw.atom_count = names.size();
  raw.names = names;
  if (!converse_lines.empty()) {
    std::vector<bool> set(names.size(), false);
    raw.converse.resize(names.size());
    for (AtomId a = 0; a < names.size(); ++a) raw.converse[a] = a;
    for (const auto& [line, p] : converse_lines) {
      const AtomId a = atom(p.first, line), b = atom(p.second, line);
      if ((set[a] && raw.converse[a] != b) || (set[b] && raw.converse[b] != a))
        throw ParseError(line, "conflicting converse for '" + p.first + "' or '" + p.second + "'");
      raw.converse[a] = b;
      raw.converse[b] = a;
      set[a] = set[b] = true;
    }
  }
  return validate_atom_structure(raw, autoclose);
}

inline AtomStructure load_structure(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_structure(ss.str());
}

inline std::string format_structure(const AtomStructure& A) {
  std::ostringstream out;
  out << "[atoms]\n";
  for (AtomId a = 0; a < A.atom_count(); ++a) out << (a ? " " : "") << A.name(a);
  out << "\n[identity]\n";
  bool first = true;
  for (AtomId a = 0; a < A.atom_count(); ++a)
    if (A.is_identity(a)) {
      out << (first ? "" : " ") << A.name(a);
      first = false;
    }
  out << "\n[converse]\n";
  for (AtomId a = 0; a < A.atom_count(); ++a)
    if (A.converse(a) > a) out << A.name(a) << " " << A.name(A.converse(a)) << "\n";
  out << "[facts]\n";
  for (const CycleTriple& t : A.cycles()) out << A.name(t.z) << " <= " << A.name(t.x) << " ; " << A.name(t.y) << "\n";
  return out.str();
}

}  // namespace relalg
