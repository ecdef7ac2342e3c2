#pragma once

#include <stdexcept>
#include <string>

namespace quadtor {

// Caller passed something outside an operation's domain (zero input,
// singular model, point at infinity where affine required, ...).
struct DomainError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// A computed value violates a structural guarantee (torsion group outside
// the classification tables, Tate relations failing after a successful
// reduction, ...). Always indicates a bug, never bad input.
struct ConsistencyError : std::logic_error {
    using std::logic_error::logic_error;
};

// Requested tower generator is multiplicatively dependent on the existing
// ones; surfaced instead of silently reducing the tower.
struct DependencyError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Fixture / CLI input could not be parsed.
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace quadtor
