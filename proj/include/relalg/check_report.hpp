#pragma once

#include <string>
#include <vector>

namespace relalg {

struct CheckOutcome {
  std::string name;
  bool pass = true;
  std::string witness;
  std::string note;

  // Records the first failure only, so witnesses stay minimal.
  void fail(const std::string& w) {
    if (pass) witness = w;
    pass = false;
  }
};

struct CheckReport {
  std::vector<CheckOutcome> checks;

  bool all_pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
  const CheckOutcome* find(const std::string& name) const {
    for (const auto& c : checks)
      if (c.name == name) return &c;
    return nullptr;
  }
  bool passed(const std::string& name) const {
    const CheckOutcome* c = find(name);
    return c != nullptr && c->pass;
  }
  void add(CheckOutcome c) { checks.push_back(std::move(c)); }
};

}  // namespace relalg
