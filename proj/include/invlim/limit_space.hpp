#pragma once

#include <optional>
#include <vector>

#include "invlim/codes.hpp"
#include "invlim/map_family.hpp"

namespace invlim {

// Backward orbit (x_0, x_1, ...) with f(x_{k+1}) = x_k, identified by its
// head coordinate and type code; thread holds entries x_0..x_depth.
struct LimitPoint {
    double x0 = 0.0;
    TypeCode code;
    std::vector<double> thread;  // thread.front() == x0

    int depth() const { return static_cast<int>(thread.size()) - 1; }
};

struct BrickInterval {
    double lo = 0.0, hi = 0.0;
    bool lo_closed = true, hi_closed = true;
    bool converged = false;

    double width() const { return hi - lo; }
    bool contains(double x, double slack = 0.0) const;
};

struct EmptyBrickError : Error {
    EmptyBrickError() : Error("empty brick interval: code is not admissible for this map") {}
};

inline constexpr int kDefaultDepth = 64;

// Head-coordinate interval of the set of backward orbits with a fixed code:
// nested images of the branch domains, intersected until the widths settle
// (successive widths within 1e-12) or `depth` steps were taken.
BrickInterval brick_interval(const UnimodalMap& m, const TypeCode& code, int depth = kDefaultDepth);

// Expand the backward orbit of x0 along `code`.  Entries past the prefix are
// snapped onto the limiting landmark orbit when the backward iteration is
// unstable there (attracting fixed point or 2-cycle of the forward map).
LimitPoint decode_point(const UnimodalMap& m, double x0, const TypeCode& code,
                        int depth = kDefaultDepth);

// One backward step x_{k+1} from x_k = value under `code`; shared by
// decode_point and unshift.
double extend_thread(const UnimodalMap& m, const Landmarks& lm, const TypeCode& code, int k,
                     double value);

// (x_0, x_1, ...) -> (f(x_0), x_0, x_1, ...); prepends the branch bit of x_0
// (the closed left branch owns x_0 == rho) and keeps the depth by dropping
// the deepest entry.
LimitPoint shift(const UnimodalMap& m, const LimitPoint& p);

// Inverse of shift: drops the head and grows one entry at the deep end.
LimitPoint unshift(const UnimodalMap& m, const LimitPoint& p);

inline double factor(const LimitPoint& p) { return p.x0; }

// Junction of two bricks whose codes differ in exactly one index n: the
// backward orbit (f^n(0), ..., f(0), 0, ...) when it follows the code that
// has the 0 at index n.  Accepts the codes in either order.
std::optional<LimitPoint> connected_in(const UnimodalMap& m, const TypeCode& t,
                                       const TypeCode& t_prime, int depth = kDefaultDepth);

}  // namespace invlim
