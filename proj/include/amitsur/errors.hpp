#pragma once

#include <stdexcept>
#include <string>

namespace amitsur {

// An enumeration or construction would exceed the configured size cap.
class RingTooLarge : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Input violates an operation's precondition (wrong ring, non-unit, bad index...).
class InvalidInput : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Two independent computations of the same quantity disagree.
class InternalInconsistency : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

}  // namespace amitsur
