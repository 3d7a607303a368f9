#pragma once

#include <stdexcept>
#include <string>

namespace invlim {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Evaluation at (or too near) the pole of a rational map.
struct PoleError : Error {
    double pole;
    explicit PoleError(double pole_location)
        : Error("evaluation at pole x = " + std::to_string(pole_location)), pole(pole_location) {}
};

// Composition collapsed to a numerically singular transform.
struct SingularComposition : Error {
    SingularComposition() : Error("composition is numerically singular (|det| < 1e-14)") {}
};

// A named parameter constraint failed during validation.
struct ConstraintError : Error {
    std::string constraint;
    explicit ConstraintError(const std::string& name)
        : Error("constraint violated: " + name), constraint(name) {}
};

// Requested inverse-branch value lies outside the branch image.
struct ImageError : Error {
    int branch;
    double value;
    int step;  // backward-orbit step when raised during decoding, -1 otherwise
    ImageError(int b, double y, int k = -1)
        : Error("value " + std::to_string(y) + " outside image of branch " + std::to_string(b) +
                (k >= 0 ? " at step " + std::to_string(k) : "")),
          branch(b), value(y), step(k) {}
};

struct DomainError : Error {
    using Error::Error;
};

// Operation requires a different dynamical case (e.g. a 2-cycle only exists when rho < rho1).
struct CaseError : Error {
    using Error::Error;
};

// Coordinate outside the range covered by the precomputed chart tables.
struct RangeError : Error {
    using Error::Error;
};

// unshift on a thread with no remaining entries.
struct DepthError : Error {
    DepthError() : Error("thread depth exhausted") {}
};

}  // namespace invlim
