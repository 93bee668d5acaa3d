#pragma once

#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace gaplab {

struct CheckLine {
  std::string name;
  bool pass = false;
  std::string detail;
};

// Line-oriented verification outcome: one PASS/FAIL entry per identity.
struct CheckReport {
  std::vector<CheckLine> lines;

  void add(std::string name, bool pass, std::string detail = "") {
    lines.push_back({std::move(name), pass, std::move(detail)});
  }

  void merge(const CheckReport& o) {
    lines.insert(lines.end(), o.lines.begin(), o.lines.end());
  }

  bool all_pass() const {
    for (const CheckLine& l : lines)
      if (!l.pass) return false;
    return true;
  }

  const CheckLine* first_failure() const {
    for (const CheckLine& l : lines)
      if (!l.pass) return &l;
    return nullptr;
  }

  void print(std::ostream& os) const {
    for (const CheckLine& l : lines) {
      os << (l.pass ? "PASS " : "FAIL ") << l.name;
      if (!l.detail.empty()) os << ": " << l.detail;
      os << '\n';
    }
  }
};

}  // namespace gaplab
