#pragma once

#include <stdexcept>
#include <string>

namespace cipherlab {

// Enumeration work whose size exceeds the caller-supplied budget. Surfaced
// as its own type so the CLI can map it to a dedicated exit code.
class BudgetError : public std::runtime_error {
 public:
  BudgetError(const std::string& op, double required, std::uint64_t budget)
      : std::runtime_error(op + ": enumeration size " +
                           std::to_string(required) + " exceeds budget " +
                           std::to_string(budget)),
        op_(op) {}
  const std::string& op() const { return op_; }

 private:
  std::string op_;
};

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace cipherlab
