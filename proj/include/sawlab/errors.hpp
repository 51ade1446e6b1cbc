#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace sawlab {

/// Malformed or invalid user input (documents, identifiers, parameters).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A configured vertex or node budget was exhausted.
class BudgetExceeded : public std::runtime_error {
 public:
  BudgetExceeded(const std::string& what, std::uint64_t high_water)
      : std::runtime_error(what), high_water_(high_water) {}
  std::uint64_t high_water() const { return high_water_; }

 private:
  std::uint64_t high_water_;
};

/// A construction that has no answer for this input (e.g. no height function
/// found by the periodic solver).
class NoSolution : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace sawlab
