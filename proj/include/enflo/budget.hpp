#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace enflo {

// Guards in front of every exhaustive loop. Exceeding a budget throws
// budget_error, which the CLI maps to exit code 2 (usage/limits), as opposed
// to exit code 1 (a verification actually failed).
struct Budget {
  std::int64_t maxPoints = 100000;
  std::int64_t maxPairs = 100000000;
  std::int64_t maxGroup = 10000;
};

class budget_error : public std::runtime_error {
 public:
  explicit budget_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace enflo
