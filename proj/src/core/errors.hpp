#pragma once

#include <stdexcept>
#include <string>

namespace pherm {

// Malformed user input: expression syntax, unknown registry names, bad
// configuration values.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// The geometry cannot be built at a point: singular level set, Levi form
// not positive definite, no admissible chart, degenerate linear system.
class GeometryError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A guard on a sign or normalization convention tripped.
class ConventionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace pherm
