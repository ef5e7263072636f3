#pragma once

#include <stdexcept>
#include <string>

namespace graphce {

/** Malformed or inconsistent input (dimension mismatch, out-of-range item, ...). */
class InvalidInput : public std::invalid_argument {
  public:
    explicit InvalidInput(const std::string& what) : std::invalid_argument(what) {}
};

/** A documented precondition of an operation does not hold for the given data. */
class PreconditionError : public std::invalid_argument {
  public:
    explicit PreconditionError(const std::string& what) : std::invalid_argument(what) {}
};

/** An exhaustive enumeration would exceed its configured size cap. */
class CapExceeded : public std::runtime_error {
  public:
    explicit CapExceeded(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace graphce
