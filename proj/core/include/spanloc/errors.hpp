#pragma once

#include <stdexcept>
#include <string>

namespace spanloc {

struct CospanMismatch : std::runtime_error {
  explicit CospanMismatch(const std::string& what) : std::runtime_error(what) {}
};

struct BudgetExceeded : std::runtime_error {
  long long estimate;
  BudgetExceeded(long long est, const std::string& what)
      : std::runtime_error(what), estimate(est) {}
};

struct NonMonotone : std::runtime_error {
  explicit NonMonotone(const std::string& what) : std::runtime_error(what) {}
};

struct MissingPullback : std::runtime_error {
  std::string cospan;
  MissingPullback(std::string cospan_, const std::string& what)
      : std::runtime_error(what), cospan(std::move(cospan_)) {}
};

struct NotCartesian : std::runtime_error {
  explicit NotCartesian(const std::string& what) : std::runtime_error(what) {}
};

struct IllDefinedComposition : std::runtime_error {
  explicit IllDefinedComposition(const std::string& what) : std::runtime_error(what) {}
};

struct DimensionBoundTooLow : std::runtime_error {
  explicit DimensionBoundTooLow(const std::string& what) : std::runtime_error(what) {}
};

struct ParseError : std::runtime_error {
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace spanloc
