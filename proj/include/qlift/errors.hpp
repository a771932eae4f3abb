#pragma once

#include <stdexcept>
#include <string>

namespace qlift {

enum class Errc {
  ZeroMass,
  DuplicateInputs,
  EnumerationTooLarge,
  UnsupportedKind,
  ArityMismatch,
  LayoutMismatch,
  SlotOccupied,
  DuplicateClassicalQuery,
  ControlFull,
  MemoryCapExceeded,
  CellCapExceeded,
  ShapeMismatch,
  BudgetMismatch,
  BudgetExceedsDomain,
  IndivisibleBudget,
  DomainExhausted,
  UnsupportedRelation,
  UsageError,
  BadFormat,
};

/// Single exception type for all domain errors; `code` identifies the
/// contract that was violated.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Errc code() const { return code_; }

 private:
  Errc code_;
};

inline void require(bool cond, Errc code, const std::string& what) {
  if (!cond) throw Error(code, what);
}

}  // namespace qlift
