#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace smcc {

/// Raised when a caller violates an operation's input contract
/// (length mismatch, empty vector, out-of-range parameter).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised by a filter update that would produce a non-finite weight.
/// The filter state is left at its last finite value.
class DivergenceError : public std::runtime_error {
 public:
  explicit DivergenceError(std::size_t iteration)
      : std::runtime_error("filter diverged at iteration " +
                           std::to_string(iteration)),
        iteration_(iteration) {}

  /// 1-based index of the update that failed.
  std::size_t iteration() const noexcept { return iteration_; }

 private:
  std::size_t iteration_;
};

}  // namespace smcc
