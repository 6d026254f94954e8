#pragma once

#include <stdexcept>
#include <string>

namespace privcap {

/// Argument outside the mathematical domain of an operation
/// (negative photon number, eta outside [0,1], non-square matrix, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// An iterative routine failed to converge, or a computed quantity violated
/// an invariant that holds in exact arithmetic by more than its tolerance.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input document (matrix file, spectrum, ensemble spec).
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace privcap
