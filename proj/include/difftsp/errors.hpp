#pragma once

#include <stdexcept>
#include <string>

namespace difftsp {

/// Base class of every error the library throws deliberately.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Input data violates a documented shape requirement (bad vertex index,
/// asymmetric weights, unparsable file, ...).
class MalformedInputError : public Error {
public:
    using Error::Error;
};

/// A documented precondition of an operation does not hold.
class PreconditionError : public Error {
public:
    using Error::Error;
};

/// The requested combinatorial object does not exist (no perfect matching,
/// contradictory factor spec, ...).
class InfeasibleError : public Error {
public:
    using Error::Error;
};

/// Integer arithmetic would overflow. Never silently wraps.
class OverflowError : public Error {
public:
    using Error::Error;
};

/// A steering request is inconsistent with the state of the round it applies
/// to. The message names the round.
class SteeringError : public Error {
public:
    using Error::Error;
};

/// An internal invariant failed. This signals a bug in this library, not bad
/// input; the message carries a witness.
class InternalInvariantError : public Error {
public:
    using Error::Error;
};

/// A size/memory guard tripped (e.g. exact DP beyond the configured cap).
class ResourceGuardError : public Error {
public:
    using Error::Error;
};

}  // namespace difftsp
