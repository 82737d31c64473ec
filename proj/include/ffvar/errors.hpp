#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace ffvar {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An input violated an operation's documented precondition.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// A computation would exceed one of the desk-scale budgets in budget.hpp.
class BudgetError : public Error {
 public:
  using Error::Error;
};

/// An internal cross-check failed. Always indicates a bug, never bad input.
class InvariantError : public Error {
 public:
  using Error::Error;
};

namespace budget {

inline constexpr std::uint64_t kMaxFieldOrder = std::uint64_t{1} << 20;
inline constexpr std::uint64_t kMaxEnumeration = 100'000'000;
inline constexpr std::uint64_t kMaxUnitGroupOrder = 1'000'000;
inline constexpr std::uint64_t kMaxResidueTable = std::uint64_t{1} << 26;
inline constexpr std::uint64_t kMaxDirectWork = 100'000'000;

}  // namespace budget

}  // namespace ffvar
