#pragma once

#include <stdexcept>
#include <string>

namespace hk {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Operands belong to different field specs.
struct FieldMismatchError : Error {
    using Error::Error;
};

struct DivisionByZeroError : Error {
    DivisionByZeroError() : Error("division by zero in finite field") {}
};

// Malformed polynomial / point / field literal text.
struct ParseError : Error {
    using Error::Error;
};

// A documented operation precondition was violated by the caller.
struct PreconditionError : Error {
    using Error::Error;
};

// Buchberger exceeded its degree cap; the caller must quarantine, never
// treat the candidate as classified.
struct DegreeCapError : Error {
    int cap;
    int reached;
    DegreeCapError(int cap_, int reached_)
        : Error("Groebner degree cap " + std::to_string(cap_) +
                " exceeded (S-polynomial of degree " + std::to_string(reached_) + ")"),
          cap(cap_), reached(reached_) {}
};

// Checkpoint file does not match the job (fingerprint/cursor problems).
struct CheckpointError : Error {
    using Error::Error;
};

} // namespace hk
