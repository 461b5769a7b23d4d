#pragma once

#include <stdexcept>
#include <string>

namespace plq {

/// Base class for all errors thrown by this library.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// A builder or check was handed parameters outside its domain
/// (zero rate where a nonzero one is required, non-skew J, size mismatch...).
struct InvalidParameter : Error {
    using Error::Error;
};

/// Evaluation hit a variable with no binding.
struct UnboundVariable : Error {
    using Error::Error;
};

/// Substitution into an exponential slot with something that is not affine,
/// which would leave the exponential-polynomial class.
struct NonAffineExpSubstitution : Error {
    using Error::Error;
};

/// An operator manipulation produced something outside the phased-operator
/// class (point map not invertible by triangular solve, prefactor not a
/// single positive term, ...).
struct OperatorClassEscape : Error {
    using Error::Error;
};

/// A cobracket restricted to a subalgebra takes values outside sub (x) sub.
struct RestrictionEscapesSubalgebra : Error {
    using Error::Error;
};

/// A group-law candidate failed the associativity / identity / inverse check.
struct AssociativityFailure : Error {
    using Error::Error;
};

/// A candidate group 1-cocycle failed its defining identity or dF_0 test.
struct CocycleConditionFailure : Error {
    using Error::Error;
};

/// Bad run configuration (unknown key, wrong type, inconsistent values).
struct ConfigError : Error {
    using Error::Error;
};

/// Malformed config file or malformed rational/matrix literal.
struct ParseError : Error {
    using Error::Error;
};

} // namespace plq
