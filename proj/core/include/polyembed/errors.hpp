#pragma once

#include <stdexcept>
#include <string>

namespace polyembed {

/// A construction was requested outside the parameter range where it is valid
/// (e.g. a radius below 1/3 for the ball-into-surface embedding).
class HypothesisViolation : public std::invalid_argument {
public:
    explicit HypothesisViolation(const std::string& what) : std::invalid_argument(what) {}
};

class DimensionMismatch : public std::invalid_argument {
public:
    explicit DimensionMismatch(const std::string& what) : std::invalid_argument(what) {}
};

/// Volume or sampling requested on a shape with an unbounded (full plane) factor.
class UnboundedShape : public std::domain_error {
public:
    explicit UnboundedShape(const std::string& what) : std::domain_error(what) {}
};

/// Consecutive maps in a composition do not chain (target of one is not
/// inside the domain of the next).
class ShapeChainError : public std::invalid_argument {
public:
    explicit ShapeChainError(const std::string& what) : std::invalid_argument(what) {}
};

class ParseError : public std::runtime_error {
public:
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

class SingularDifferential : public std::domain_error {
public:
    explicit SingularDifferential(const std::string& what) : std::domain_error(what) {}
};

}  // namespace polyembed
