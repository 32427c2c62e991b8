#pragma once

#include <stdexcept>
#include <string>

namespace qrep {

// Broken precondition or invariant on a value passed across an API boundary.
struct ContractViolation : std::logic_error {
    using std::logic_error::logic_error;
};

// Argument outside the mathematical domain of an operation.
struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

// Quadrature or optimizer failure.
struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Physically or logically impossible configuration (e.g. filter wider than source).
struct InfeasibleError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed or incomplete scenario file.
struct ScenarioError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace qrep
