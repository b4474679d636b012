#pragma once

#include <stdexcept>
#include <string>

namespace htriv {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input text (JSON syntax, wrong field types, non-integers).
class ParseError : public Error {
public:
    using Error::Error;
};

/// Input parsed but violates a structural invariant, e.g. an unpaired facet.
class ValidationError : public Error {
public:
    using Error::Error;
};

/// A computation hit a cap or an input that breaks finiteness assumptions.
class ComputationError : public Error {
public:
    using Error::Error;
};

/// Arguments outside an operation's contract (wrong lengths, bad psi, ...).
class PreconditionError : public Error {
public:
    using Error::Error;
};

}  // namespace htriv
