#pragma once

#include <stdexcept>
#include <string>

namespace icb {

/// Malformed input: bad labels, width mismatches, violated preconditions.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A configured size cap (dense enumeration, search, branch-and-bound) was exceeded.
class CapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An operation is not defined for this kind of input (e.g. alpha of a hypergraph instance).
class Unsupported : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A certificate failed exact verification. `coordinate` names the first offending subset.
class VerificationError : public std::runtime_error {
 public:
  VerificationError(const std::string& what, std::string coordinate = {})
      : std::runtime_error(what), coordinate_(std::move(coordinate)) {}

  const std::string& coordinate() const noexcept { return coordinate_; }

 private:
  std::string coordinate_;
};

/// Something that should be impossible happened (solver or construction bug).
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace icb
