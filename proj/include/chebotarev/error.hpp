#pragma once

#include <stdexcept>
#include <string>

namespace chebotarev {

// Malformed input: bad files, out-of-range indices, mismatched degrees.
class InputError : public std::invalid_argument {
 public:
  explicit InputError(const std::string& what) : std::invalid_argument(what) {}
};

// A configured size limit (group order, DP table, search budget) was hit.
class CapExceeded : public std::runtime_error {
 public:
  explicit CapExceeded(const std::string& what) : std::runtime_error(what) {}
};

// A mathematical precondition failed (not a subgroup, not surjective, ...).
class PreconditionError : public std::logic_error {
 public:
  explicit PreconditionError(const std::string& what) : std::logic_error(what) {}
};

// A check that ran to completion and found the input wanting (a realization
// check that fails, a verification mismatch).
class VerificationError : public std::runtime_error {
 public:
  explicit VerificationError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace chebotarev
