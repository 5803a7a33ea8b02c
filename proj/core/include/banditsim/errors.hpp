#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace banditsim {

// A required CSV column is absent, or a mapping/config document is malformed.
class SchemaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A categorical cell held a value its column's value map does not cover, or a
// required cell was missing under the error missing-data policy.
class ValueError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A (context, arm) cell was requested from an outcome model that never saw
// data for it.
class MissingCellError : public std::runtime_error {
 public:
  MissingCellError(std::size_t context, std::size_t arm)
      : std::runtime_error("no outcome data for context " + std::to_string(context) +
                           ", arm " + std::to_string(arm)),
        context_(context),
        arm_(arm) {}

  std::size_t context() const noexcept { return context_; }
  std::size_t arm() const noexcept { return arm_; }

 private:
  std::size_t context_;
  std::size_t arm_;
};

}  // namespace banditsim
