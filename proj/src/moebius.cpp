#include "invlim/moebius.hpp"

#include <algorithm>
#include <cmath>

namespace invlim {

namespace {

MoebiusTransform normalize(MoebiusTransform m) {
    double s = std::max(std::max(std::fabs(m.a), std::fabs(m.b)),
                        std::max(std::fabs(m.c), std::fabs(m.d)));
    if (s == 0.0) throw SingularComposition();
    m.a /= s;
    m.b /= s;
    m.c /= s;
    m.d /= s;
    return m;
}

}  // namespace

MoebiusTransform make_moebius(double a, double b, double c, double d) {
    MoebiusTransform m = normalize({a, b, c, d});
    if (std::fabs(determinant(m)) < kPoleEps) throw SingularComposition();
    return m;
}

MoebiusTransform moebius_identity() { return {1.0, 0.0, 0.0, 1.0}; }

double determinant(const MoebiusTransform& m) { return m.a * m.d - m.b * m.c; }

double trace(const MoebiusTransform& m) { return m.a + m.d; }

bool is_identity(const MoebiusTransform& m, double tol) {
    return std::fabs(m.b) <= tol && std::fabs(m.c) <= tol && std::fabs(m.a - m.d) <= tol;
}

MoebiusTransform compose(const MoebiusTransform& m1, const MoebiusTransform& m2) {
    MoebiusTransform p = normalize({m1.a * m2.a + m1.b * m2.c, m1.a * m2.b + m1.b * m2.d,
                                    m1.c * m2.a + m1.d * m2.c, m1.c * m2.b + m1.d * m2.d});
    if (std::fabs(determinant(p)) < kPoleEps) throw SingularComposition();
    return p;
}

double evaluate(const MoebiusTransform& m, double x) {
    double den = m.c * x + m.d;
    if (std::fabs(den) < kPoleEps) throw PoleError(-m.d / m.c);
    return (m.a * x + m.b) / den;
}

MoebiusTransform invert(const MoebiusTransform& m) {
    return make_moebius(m.d, -m.b, -m.c, m.a);
}

double derivative_at(const MoebiusTransform& m, double x) {
    double den = m.c * x + m.d;
    if (std::fabs(den) < kPoleEps) throw PoleError(-m.d / m.c);
    return determinant(m) / (den * den);
}

FixedPointResult fixed_points(const MoebiusTransform& m) {
    FixedPointResult r;
    if (is_identity(m, 1e-14)) {
        r.all_points_fixed = true;
        return r;
    }
    // Roots of c x^2 + (d - a) x - b = 0.
    const double qa = m.c, qb = m.d - m.a, qc = -m.b;
    if (std::fabs(qa) < kPoleEps) {
        if (std::fabs(qb) >= kPoleEps) r.roots.push_back(-qc / qb);
        return r;
    }
    double disc = qb * qb - 4.0 * qa * qc;
    if (disc < 0.0) return r;
    if (disc == 0.0) {
        r.roots.push_back(-qb / (2.0 * qa));
        return r;
    }
    // Sign-aware quadratic formula avoids cancellation near branch endpoints.
    double q = -0.5 * (qb + std::copysign(std::sqrt(disc), qb == 0.0 ? 1.0 : qb));
    if (std::fabs(q) < kPoleEps) {
        r.roots.push_back(0.0);
        r.roots.push_back(-qb / qa);
    } else {
        r.roots.push_back(q / qa);
        r.roots.push_back(qc / q);
    }
    std::sort(r.roots.begin(), r.roots.end());
    return r;
}

bool is_involution(const MoebiusTransform& m, double tol) {
    return std::fabs(trace(m)) <= tol;
}

}  // namespace invlim
