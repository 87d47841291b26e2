#pragma once

#include <stdexcept>
#include <string>

namespace cheese {

/// Evaluation requested at (or too near) a pole of a rational function.
class PoleError : public std::runtime_error {
public:
    explicit PoleError(const std::string& what) : std::runtime_error(what) {}
};

/// Input outside the domain a routine's certificate covers.
class DomainError : public std::runtime_error {
public:
    explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

/// A budget inequality that must hold by construction failed to verify.
class BudgetError : public std::runtime_error {
public:
    explicit BudgetError(const std::string& what) : std::runtime_error(what) {}
};

/// A requested build exceeds a configured resource cap.
class ResourceError : public std::runtime_error {
public:
    explicit ResourceError(const std::string& what) : std::runtime_error(what) {}
};

/// Geometric degeneracy (zero distance, zero radius) invalidates a formula.
class DegenerateError : public std::runtime_error {
public:
    explicit DegenerateError(const std::string& what) : std::runtime_error(what) {}
};

/// A denominator zero lies on the integration contour.
class PoleOnContourError : public PoleError {
public:
    explicit PoleOnContourError(const std::string& what) : PoleError(what) {}
};

/// A denominator zero lies inside the set where a sup norm was requested.
class PoleInXError : public PoleError {
public:
    explicit PoleInXError(const std::string& what) : PoleError(what) {}
};

/// The witness search hit its enumeration cap without a usable disc.
class SearchExhausted : public std::runtime_error {
public:
    explicit SearchExhausted(const std::string& what) : std::runtime_error(what) {}
};

} // namespace cheese
