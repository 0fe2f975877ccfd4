#ifndef FLIESS_ERRORS_HPP
#define FLIESS_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace fliess {

/// Base class for all library errors.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Coefficient query for a word whose degree exceeds the series cap.
struct QueryBeyondCap : Error {
    explicit QueryBeyondCap(const std::string& what) : Error(what) {}
};

/// Binary operation on series over different alphabets.
struct AlphabetMismatch : Error {
    explicit AlphabetMismatch(const std::string& what) : Error(what) {}
};

/// Shuffle inverse of a series with vanishing constant term.
struct NotInvertible : Error {
    explicit NotInvertible(const std::string& what) : Error(what) {}
};

/// Toeplitz/tuple operation on operands of different shape.
struct ShapeMismatch : Error {
    explicit ShapeMismatch(const std::string& what) : Error(what) {}
};

/// Polynomial substitution missing a generator assignment.
struct UnboundGenerator : Error {
    explicit UnboundGenerator(const std::string& what) : Error(what) {}
};

/// Time query outside the sampled grid.
struct OutOfGrid : Error {
    explicit OutOfGrid(const std::string& what) : Error(what) {}
};

/// ODE trajectory exceeded the configured escape bound.
struct Blowup : Error {
    explicit Blowup(const std::string& what) : Error(what) {}
};

/// Feedback transform denominator 1 - r*E_{x1}[u] fell below the safety margin.
struct DenominatorVanished : Error {
    explicit DenominatorVanished(const std::string& what) : Error(what) {}
};

/// A check was invoked on inputs violating its stated precondition.
struct PreconditionFailed : Error {
    explicit PreconditionFailed(const std::string& what) : Error(what) {}
};

} // namespace fliess

#endif
