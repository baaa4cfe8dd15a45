#pragma once

#include <stdexcept>
#include <string>

namespace bdwork {

/// Malformed or inconsistent measurement input. The CLI maps this to exit code 2.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A computation could not be carried out on otherwise well-formed input
/// (too few points for a method, no overlap between curves, ...). Exit code 3.
class ComputeError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class FitError : public ComputeError {
public:
    using ComputeError::ComputeError;
};

class OverlapError : public ComputeError {
public:
    using ComputeError::ComputeError;
};

// Evaluation or integration requested outside the interpolant's breakpoint hull.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

}  // namespace bdwork
