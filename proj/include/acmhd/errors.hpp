#pragma once

#include <atomic>
#include <stdexcept>
#include <string>

namespace acmhd {

// misuse of an interface contract (wrong representation, mismatched grids)
struct ContractError : std::logic_error {
  using std::logic_error::logic_error;
};

// invalid user-facing parameter (bad grid size, alpha out of range, ...)
struct ParamError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// numerical abort: stability bound violated or non-finite values detected
struct SolverAbort : std::runtime_error {
  double cfl;
  SolverAbort(const std::string& msg, double cfl_measured)
      : std::runtime_error(msg), cfl(cfl_measured) {}
};

struct IoError : std::runtime_error {
  enum class Kind { bad_magic, truncated, mismatch, system };
  Kind kind;
  IoError(Kind k, const std::string& msg) : std::runtime_error(msg), kind(k) {}
};

// process-wide counters for silent-but-notable events
struct Warnings {
  std::atomic<long> zero_mode_projected{0};
};

Warnings& warnings();

}  // namespace acmhd
