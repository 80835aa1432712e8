#ifndef LIEDERIV_ERRORS_HPP
#define LIEDERIV_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace liederiv {

// Base class for everything this library throws.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed textual input.
struct ParseError : Error {
    using Error::Error;
};

// Operands built over different variable counts.
struct DimensionError : Error {
    using Error::Error;
};

// Division by zero, slice of the zero derivation, and similar domain misuse.
struct DomainError : Error {
    using Error::Error;
};

// An input fails one of the structural hypotheses a computation requires
// (not nilpotent, wrong rank, corank too large, constants field too big).
// The CLI maps this to exit status 3.
struct HypothesisError : Error {
    using Error::Error;
};

// A machine-checked conclusion failed to verify; indicates a bug in the
// caller or in this library, never a property of valid input.
// The CLI maps this to exit status 4.
struct InvariantError : Error {
    using Error::Error;
};

// Bracket closure exceeded the dimension cap.
struct ClosureOverflowError : Error {
    using Error::Error;
};

} // namespace liederiv

#endif
