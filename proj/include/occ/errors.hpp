#pragma once

#include <stdexcept>
#include <string>

namespace occ {

/// Invalid parameters or a request outside the mathematical domain
/// (bad set sizes, degenerate sigma, unsupported order, ...).
/// CLI maps this family to exit code 2.
class DomainError : public std::invalid_argument {
public:
    explicit DomainError(const std::string& what) : std::invalid_argument(what) {}
};

/// Work refused because it would exceed a configured size/cost cap.
/// CLI maps this family to exit code 3.
class ResourceError : public std::runtime_error {
public:
    explicit ResourceError(const std::string& what) : std::runtime_error(what) {}
};

/// Adaptive refinement exhausted its budget before meeting the tolerance.
class ToleranceError : public ResourceError {
public:
    ToleranceError(const std::string& what, double achieved)
        : ResourceError(what), achieved_(achieved) {}
    double achieved() const { return achieved_; }

private:
    double achieved_;
};

/// An internal cross-check failed; the result would be wrong. Never downgraded
/// to a warning. CLI maps this to exit code 3.
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace occ
