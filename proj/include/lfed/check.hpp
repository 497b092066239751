#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lfed/bipoly.hpp"

namespace lfed {

enum class Status { Pass, Fail, Inconclusive };

inline const char* toString(Status s) {
  switch (s) {
    case Status::Pass:
      return "pass";
    case Status::Fail:
      return "fail";
    case Status::Inconclusive:
      return "inconclusive";
  }
  return "?";
}

/// One verified statement, with an optional polynomial witness.
struct Check {
  std::string id;
  Status status = Status::Pass;
  std::optional<BiPoly> witness;
  std::string detail;
};

inline bool allPassed(const std::vector<Check>& checks) {
  for (const auto& c : checks)
    if (c.status != Status::Pass) return false;
  return true;
}

}  // namespace lfed
