#pragma once

#include <stdexcept>
#include <string>

namespace tqa {

// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Bad configuration: missing files, malformed dictionaries, bad flags.
struct ConfigError : Error {
    using Error::Error;
};

// Malformed data file; the message carries file name and line numbers.
struct ParseError : Error {
    using Error::Error;
};

// A signal word splits the question but no tokens follow it.
struct EmptyConstraint : Error {
    using Error::Error;
};

// The pivot signal word is not present in the signal dictionary.
struct UnmappedSignal : Error {
    using Error::Error;
};

// Normalization requested for a span that has no interval semantics
// (durations and periodic sets without an anchor).
struct UnnormalizableExpression : Error {
    using Error::Error;
};

// A temporal sub-question produced no dates to build a constraint from.
struct EmptyTemporalResult : Error {
    using Error::Error;
};

// Allen classification needs closed, non-degenerate intervals.
struct DegenerateInterval : Error {
    using Error::Error;
};

// Ordinal selection over a candidate that has no time scope.
struct UnscopedCandidate : Error {
    using Error::Error;
};

}  // namespace tqa
