#pragma once

#include <stdexcept>
#include <string>

namespace homeolab {

/// Base class for everything this library throws on purpose.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Malformed input text (JSON, rational strings, CSV).
struct ParseError : Error {
    using Error::Error;
};

/// Structurally well-formed input that violates a type invariant
/// (non-monotone breakpoints, x_0 != 0, bad lift normalization, ...).
struct InvariantError : Error {
    using Error::Error;
};

/// Argument outside an operation's stated domain (x out of [0,1],
/// division by zero, word mismatch handed to build_conjugator, ...).
struct DomainError : Error {
    using Error::Error;
};

/// A piece-count ceiling was hit. Carries how far a scan got so callers
/// can report "ceiling exceeded at q = ...".
struct ResourceLimitError : Error {
    explicit ResourceLimitError(const std::string& what, int progress = -1)
        : Error(what), progress_at_failure(progress) {}
    int progress_at_failure;
};

}  // namespace homeolab
