#pragma once

#include <stdexcept>

namespace schucode {

/// Invalid user-supplied parameters (bad tuple, non-prime-power order, ...).
/// The CLI maps this to exit code 2.
class BadInput : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// An instance exceeds a configured enumeration/scan cap. Exit code 3.
class CapExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A broken internal invariant; always a bug, never a usage error. Exit code 4.
class InternalError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

} // namespace schucode
