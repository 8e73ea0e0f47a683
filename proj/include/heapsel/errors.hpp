#pragma once

#include <stdexcept>
#include <string>

namespace heapsel {

// Base for everything this library throws on purpose.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A usage error: bad arguments, malformed plan, invalid generator parameter.
struct InvalidParam : Error {
    using Error::Error;
};

// Model violations: the tree (or a caller) broke a contract the algorithms
// rely on. These carry enough context to reproduce the offending run.
struct ModelViolation : Error {
    using Error::Error;
};

struct MoveUpAtRoot : ModelViolation {
    MoveUpAtRoot() : ModelViolation("move_up at subtree root") {}
};

struct HeapViolation : ModelViolation {
    using ModelViolation::ModelViolation;
};

struct DuplicateKey : ModelViolation {
    using ModelViolation::ModelViolation;
};

struct TargetNotFound : ModelViolation {
    using ModelViolation::ModelViolation;
};

// Raised by assertion-mode checks inside the algorithms (entry conditions,
// loop invariants). Seeing one of these means a bug, not a bad input.
struct PreconditionViolated : ModelViolation {
    using ModelViolation::ModelViolation;
};

struct ParseError : Error {
    using Error::Error;
};

}  // namespace heapsel
