#pragma once

#include <stdexcept>
#include <string>

namespace bellrobust {

/// An index or parameter lies outside its admissible range.
class RangeError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// A problem is too large for the configured limits.
class SizeError : public std::length_error {
 public:
  explicit SizeError(const std::string& what, std::size_t limit = 0)
      : std::length_error(what), limit_(limit) {}
  std::size_t limit() const noexcept { return limit_; }

 private:
  std::size_t limit_;
};

/// Operands have incompatible dimensions.
class ShapeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Input data violates a documented precondition.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An iterative routine exhausted its budget.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace bellrobust
