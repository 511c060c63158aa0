#pragma once

#include <stdexcept>
#include <string>

namespace simplexgeo {

// Argument outside the mathematical domain of a formula (k > d, p <= -1, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Input data that fails a structural check (non-symmetric shape, non-orthogonal frame).
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Rank-deficient input where a full-rank one is required.
class DegenerateInputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace simplexgeo
