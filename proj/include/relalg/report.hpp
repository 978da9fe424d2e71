#pragma once

#include <chrono>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "relalg/check_report.hpp"

namespace relalg {

// Line-oriented report: "stage.check = pass|fail" for checks, "stage.key: value" for data,
// with "witness: ..." and "note: ..." lines under a check.
class Report {
 public:
  void check(const std::string& stage, const CheckOutcome& c) {
    lines_.push_back(stage + "." + c.name + " = " + (c.pass ? "pass" : "fail"));
    if (!c.pass) {
      failed_ = true;
      if (!c.witness.empty()) lines_.push_back("  witness: " + c.witness);
    }
    if (!c.note.empty()) lines_.push_back("  note: " + c.note);
  }
  void check(const std::string& stage, const CheckReport& r) {
    for (const auto& c : r.checks) check(stage, c);
  }
  void value(const std::string& key, const std::string& v) { lines_.push_back(key + ": " + v); }
  void value(const std::string& key, std::size_t v) { value(key, std::to_string(v)); }
  void timing(const std::string& stage, double seconds) {
    std::ostringstream s;
    s.precision(3);
    s << std::fixed << seconds;
    timings_.push_back("time." + stage + ": " + s.str() + " s");
  }

  bool all_pass() const { return !failed_; }
  void write(std::ostream& out, bool with_timings) const {
    for (const auto& l : lines_) out << l << "\n";
    if (with_timings)
      for (const auto& l : timings_) out << l << "\n";
  }
  std::string str(bool with_timings = false) const {
    std::ostringstream s;
    write(s, with_timings);
    return s.str();
  }

 private:
  std::vector<std::string> lines_;
  std::vector<std::string> timings_;
  bool failed_ = false;
};

class StageTimer {
 public:
  StageTimer(Report& r, std::string stage) : r_(r), stage_(std::move(stage)), t0_(std::chrono::steady_clock::now()) {}
  ~StageTimer() { r_.timing(stage_, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0_).count()); }
  StageTimer(const StageTimer&) = delete;
  StageTimer& operator=(const StageTimer&) = delete;

 private:
  Report& r_;
  std::string stage_;
  std::chrono::steady_clock::time_point t0_;
};

}  // namespace relalg
