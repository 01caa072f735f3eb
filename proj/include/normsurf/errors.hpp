#pragma once

#include <stdexcept>
#include <string>

#include "normsurf/rat.hpp"

namespace normsurf {

/// Caller broke a documented precondition (bad ids, wrong shape, invalid model).
class ContractViolation : public std::invalid_argument {
public:
    explicit ContractViolation(const std::string& what) : std::invalid_argument(what) {}
};

/// Malformed input document (JSON schema violation, bad rational literal, ...).
/// The message names the offending field.
class ParseError : public std::runtime_error {
public:
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

/// A linear system turned out singular. Carries a nonzero kernel vector as
/// evidence; kernel() is exact and satisfies m * kernel = 0.
class SingularSystem : public std::runtime_error {
public:
    SingularSystem(const std::string& what, QVec kernel)
        : std::runtime_error(what), kernel_(std::move(kernel)) {}
    const QVec& kernel() const { return kernel_; }

private:
    QVec kernel_;
};

} // namespace normsurf
