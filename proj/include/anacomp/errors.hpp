#pragma once

#include <stdexcept>
#include <string>

namespace anacomp {

// Caller supplied something outside an operation's contract.
class InvalidInput : public std::invalid_argument {
 public:
  explicit InvalidInput(const std::string& what) : std::invalid_argument(what) {}
};

// The requested depth or magnitude is not representable at the active precision.
class PrecisionError : public std::runtime_error {
 public:
  explicit PrecisionError(const std::string& what) : std::runtime_error(what) {}
};

// Argument lies outside the set an embedding is defined on.
class DomainError : public std::domain_error {
 public:
  explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

// A mathematical guarantee the code relies on was observed to fail.
class InternalInconsistency : public std::logic_error {
 public:
  explicit InternalInconsistency(const std::string& what) : std::logic_error(what) {}
};

}  // namespace anacomp
