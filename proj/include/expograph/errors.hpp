#pragma once

#include <stdexcept>
#include <string>

namespace expograph {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class NonFiniteInput : public Error {
public:
    using Error::Error;
};

/// The denominator of an iteration step is exactly zero.
class SingularDenominator : public Error {
public:
    using Error::Error;
};

class NonFiniteResult : public Error {
public:
    using Error::Error;
};

class InvalidParameter : public Error {
public:
    using Error::Error;
};

/// The simultaneous root finder hit its sweep cap with a residual above threshold.
class NoConvergence : public Error {
public:
    using Error::Error;
};

class IoFailure : public Error {
public:
    using Error::Error;
};

/// Scene documents fail either structurally (bad JSON, unknown keys, wrong
/// types) or by violating a numeric constraint. The service maps these to
/// 400 and 422 respectively.
class SceneError : public Error {
public:
    enum class Kind { Malformed, Constraint };

    SceneError(Kind kind, const std::string& what) : Error(what), kind_(kind) {}

    Kind kind() const noexcept { return kind_; }

private:
    Kind kind_;
};

} // namespace expograph
