#pragma once

#include <stdexcept>
#include <string>

namespace ck {

/// Malformed or out-of-contract input. CLI exit code 2.
struct InvalidInput : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Input outside the range where a dimension formula is known. CLI exit code 3.
struct UncoveredRange : std::domain_error {
    using std::domain_error::domain_error;
};

/// An identity that must hold exactly did not. CLI exit code 4.
struct IdentityFailure : std::logic_error {
    using std::logic_error::logic_error;
};

/// Internal bookkeeping went wrong (e.g. a remainder that cannot be decomposed).
struct InconsistencyError : IdentityFailure {
    using IdentityFailure::IdentityFailure;
};

/// A lookup table does not cover a requested key.
struct CoverageError : InvalidInput {
    using InvalidInput::InvalidInput;
};

}  // namespace ck
