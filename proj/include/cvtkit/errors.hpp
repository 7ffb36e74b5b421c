#pragma once

#include <stdexcept>

namespace cvtkit {

// A computed result contradicts an internal oracle (e.g. a recurrence trace
// whose final value differs from direct addition). Signals an implementation
// bug, never bad user input. The CLI maps this to exit code 3.
class InvariantViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

}  // namespace cvtkit
