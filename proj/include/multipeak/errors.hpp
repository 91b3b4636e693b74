#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace multipeak {

/// Input violates a documented precondition (malformed file, inconsistent
/// parameters, infeasible construction). Maps to CLI exit code 2.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A peak family that was assumed pairwise-bounded turned out not to be:
/// some set is simultaneously close to two peaks. Maps to CLI exit code 1.
class FamilyIntegrityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An enumeration would exceed its node budget. Maps to CLI exit code 3.
class GuardExceededError : public std::runtime_error {
 public:
  GuardExceededError(const std::string& what, std::uint64_t needed,
                     std::uint64_t limit)
      : std::runtime_error(what), needed_(needed), limit_(limit) {}

  std::uint64_t needed() const { return needed_; }
  std::uint64_t limit() const { return limit_; }

 private:
  std::uint64_t needed_;
  std::uint64_t limit_;
};

}  // namespace multipeak
