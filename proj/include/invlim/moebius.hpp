#pragma once

#include <vector>

#include "invlim/errors.hpp"

namespace invlim {

// Real Moebius transform x |-> (a x + b) / (c x + d), stored with the
// largest-magnitude coefficient scaled to absolute value 1 so trace and
// determinant thresholds are scale-free.
struct MoebiusTransform {
    double a = 1.0, b = 0.0, c = 0.0, d = 1.0;
};

inline constexpr double kPoleEps = 1e-14;

MoebiusTransform make_moebius(double a, double b, double c, double d);
MoebiusTransform moebius_identity();

double determinant(const MoebiusTransform& m);
double trace(const MoebiusTransform& m);
bool is_identity(const MoebiusTransform& m, double tol = 1e-12);

// Matrix product; realizes pointwise composition m1(m2(x)).
MoebiusTransform compose(const MoebiusTransform& m1, const MoebiusTransform& m2);

double evaluate(const MoebiusTransform& m, double x);

// Adjugate; compose(m, invert(m)) is the identity up to normalization.
MoebiusTransform invert(const MoebiusTransform& m);

// (ad - bc) / (cx + d)^2
double derivative_at(const MoebiusTransform& m, double x);

struct FixedPointResult {
    bool all_points_fixed = false;  // the transform is the identity
    std::vector<double> roots;      // ascending, empty/one/two entries
};

FixedPointResult fixed_points(const MoebiusTransform& m);

// Trace-zero test in normalized scale: true iff m composed with itself is the
// identity.  Detects the symmetric left branch and the period-four case.
bool is_involution(const MoebiusTransform& m, double tol);

}  // namespace invlim
