#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace setpair {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An argument lies outside the mathematical domain of an operation.
class DomainError : public Error {
public:
    using Error::Error;
};

/// A pair makes a binomial denominator vanish. `index` is 1-based.
class DegeneratePairError : public Error {
public:
    DegeneratePairError(std::size_t index, const std::string& why)
        : Error("degenerate pair " + std::to_string(index) + ": " + why), index_(index) {}

    std::size_t index() const noexcept { return index_; }

private:
    std::size_t index_;
};

/// The input does not satisfy the hypothesis an operation relies on.
class HypothesisError : public Error {
public:
    using Error::Error;
};

/// Subspaces or systems living in different ambient spaces were combined.
class AmbientMismatch : public Error {
public:
    using Error::Error;
};

/// A randomized construction did not verify within its retry budget.
class ConstructionFailure : public Error {
public:
    ConstructionFailure(const std::string& what, int attempts)
        : Error(what + " (after " + std::to_string(attempts) + " attempts)"), attempts_(attempts) {}

    int attempts() const noexcept { return attempts_; }

private:
    int attempts_;
};

/// Ground set too large for the chosen set representation.
class CapacityError : public Error {
public:
    using Error::Error;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    using Error::Error;
};

}  // namespace setpair
