#include "invlim/limit_space.hpp"

#include <algorithm>
#include <cmath>

namespace invlim {

namespace {

constexpr double kWidthSettle = 1e-12;
constexpr double kSnapTol = 1e-12;
constexpr double kBoundaryTol = 1e-12;

struct FlaggedInterval {
    double lo, hi;
    bool lo_closed, hi_closed;
};

bool fi_empty(const FlaggedInterval& a) {
    if (a.lo > a.hi) return true;
    if (a.lo == a.hi && !(a.lo_closed && a.hi_closed)) return true;
    return false;
}

FlaggedInterval fi_intersect(const FlaggedInterval& a, const FlaggedInterval& b) {
    FlaggedInterval r{};
    if (a.lo > b.lo) { r.lo = a.lo; r.lo_closed = a.lo_closed; }
    else if (b.lo > a.lo) { r.lo = b.lo; r.lo_closed = b.lo_closed; }
    else { r.lo = a.lo; r.lo_closed = a.lo_closed && b.lo_closed; }
    if (a.hi < b.hi) { r.hi = a.hi; r.hi_closed = a.hi_closed; }
    else if (b.hi < a.hi) { r.hi = b.hi; r.hi_closed = b.hi_closed; }
    else { r.hi = a.hi; r.hi_closed = a.hi_closed && b.hi_closed; }
    return r;
}

FlaggedInterval branch_domain(const UnimodalMap& m, int b) {
    if (b == 0) return {0.0, m.rho, true, true};
    return {m.rho, 1.0, false, true};
}

// Image of an interval under one branch; branch 0 is decreasing.
FlaggedInterval branch_image(const UnimodalMap& m, int b, const FlaggedInterval& j) {
    if (b == 0)
        return {evaluate(m.f0, j.hi), evaluate(m.f0, j.lo), j.hi_closed, j.lo_closed};
    return {evaluate(m.f1, j.lo), evaluate(m.f1, j.hi), j.lo_closed, j.hi_closed};
}

// Valid head interval after the first m backward steps.
FlaggedInterval head_interval(const UnimodalMap& m, const TypeCode& code, int steps) {
    FlaggedInterval a = branch_domain(m, code.at(steps - 1));
    for (int k = steps - 1; k >= 1; --k) {
        a = fi_intersect(branch_domain(m, code.at(k - 1)), branch_image(m, code.at(k), a));
        if (fi_empty(a)) throw EmptyBrickError();
    }
    a = branch_image(m, code.at(0), a);
    if (fi_empty(a)) throw EmptyBrickError();
    return a;
}

}  // namespace

bool BrickInterval::contains(double x, double slack) const {
    if (x < lo - slack || x > hi + slack) return false;
    if (!lo_closed && x <= lo - slack) return false;
    if (!hi_closed && x >= hi + slack) return false;
    return true;
}

BrickInterval brick_interval(const UnimodalMap& m, const TypeCode& code, int depth) {
    if (depth < 1) throw DomainError("brick_interval: depth must be >= 1");
    // Constraints keep arriving while the prefix is consumed; only the tail
    // region may settle.
    const int settle_from = static_cast<int>(code.prefix().size()) + 3;
    BrickInterval out;
    FlaggedInterval prev{};
    for (int steps = 1; steps <= depth; ++steps) {
        FlaggedInterval cur = head_interval(m, code, steps);
        out = {cur.lo, cur.hi, cur.lo_closed, cur.hi_closed, false};
        if (steps >= settle_from) {
            double dw = std::fabs((prev.hi - prev.lo) - (cur.hi - cur.lo));
            double de = std::max(std::fabs(prev.lo - cur.lo), std::fabs(prev.hi - cur.hi));
            if (dw < kWidthSettle && de < kWidthSettle && prev.lo_closed == cur.lo_closed &&
                prev.hi_closed == cur.hi_closed) {
                out.converged = true;
                return out;
            }
        }
        prev = cur;
    }
    return out;
}

double extend_thread(const UnimodalMap& m, const Landmarks& lm, const TypeCode& code, int k,
                     double value) {
    const int bit = code.at(k);
    const bool in_tail = static_cast<std::size_t>(k) >= code.prefix().size();
    if (in_tail) {
        // Backward iteration repels from a forward-attracting landmark;
        // substitute the exact limit orbit once it has been reached.
        if (code.tail() == Tail::AllZeros && std::fabs(lm.omega0_multiplier) < 1.0 - kTieTol &&
            std::fabs(value - lm.omega0) <= kSnapTol)
            return lm.omega0;
        if ((code.tail() == Tail::Alt10 || code.tail() == Tail::Alt01) && lm.cycle_multiplier &&
            std::fabs(*lm.cycle_multiplier) < 1.0 - kTieTol) {
            if (bit == 1 && std::fabs(value - *lm.w1) <= kSnapTol) return *lm.w2;
            if (bit == 0 && std::fabs(value - *lm.w2) <= kSnapTol) return *lm.w1;
        }
    }
    return branch_inverse(m, bit, value, k + 1);
}

LimitPoint decode_point(const UnimodalMap& m, double x0, const TypeCode& code, int depth) {
    if (x0 < -1e-12 || x0 > 1.0 + 1e-12) throw DomainError("decode_point: x0 outside [0,1]");
    Landmarks lm = landmarks(m);
    LimitPoint p;
    p.x0 = std::clamp(x0, 0.0, 1.0);
    p.code = code;
    p.thread.reserve(depth + 1);
    p.thread.push_back(p.x0);
    for (int k = 0; k < depth; ++k)
        p.thread.push_back(extend_thread(m, lm, code, k, p.thread.back()));
    return p;
}

LimitPoint shift(const UnimodalMap& m, const LimitPoint& p) {
    LimitPoint q;
    q.x0 = apply(m, p.x0);
    int bit = p.x0 > m.rho + kBoundaryTol ? 1 : 0;
    q.code = p.code.prepend(bit);
    q.thread.reserve(p.thread.size());
    q.thread.push_back(q.x0);
    q.thread.insert(q.thread.end(), p.thread.begin(), p.thread.end() - 1);
    return q;
}

LimitPoint unshift(const UnimodalMap& m, const LimitPoint& p) {
    if (p.depth() < 1) throw DepthError();
    LimitPoint q;
    q.code = p.code.drop_first();
    q.thread.assign(p.thread.begin() + 1, p.thread.end());
    q.x0 = q.thread.front();
    Landmarks lm = landmarks(m);
    q.thread.push_back(extend_thread(m, lm, q.code, p.depth() - 1, q.thread.back()));
    return q;
}

std::optional<LimitPoint> connected_in(const UnimodalMap& m, const TypeCode& t,
                                       const TypeCode& t_prime, int depth) {
    const std::size_t maxlen = std::max(t.prefix().size(), t_prime.prefix().size());
    // The tails must agree from maxlen on (both codes are eventually
    // 2-periodic there), and exactly one index below maxlen may differ.
    if (t.at(maxlen) != t_prime.at(maxlen) || t.at(maxlen + 1) != t_prime.at(maxlen + 1))
        return std::nullopt;
    std::vector<std::size_t> diffs;
    for (std::size_t k = 0; k < maxlen; ++k)
        if (t.at(k) != t_prime.at(k)) diffs.push_back(k);
    if (diffs.size() != 1) return std::nullopt;
    const std::size_t n = diffs.front();
    const TypeCode& zero_code = (t.at(n) == 0) ? t : t_prime;

    // Forward orbit of 0 up to f^n(0); the junction thread runs through it.
    std::vector<double> orbit(n + 1);
    orbit[0] = 0.0;
    for (std::size_t j = 1; j <= n; ++j) orbit[j] = apply(m, orbit[j - 1]);

    // The thread is of the zero code's type iff every entry lies in the
    // closure of the branch domain the code requests (entries at rho are
    // reachable as a limit through either branch).
    for (std::size_t k = 0; k < n; ++k) {
        double next_entry = orbit[n - k - 1];
        if (zero_code.at(k) == 0 && next_entry > m.rho + kBoundaryTol) return std::nullopt;
        if (zero_code.at(k) == 1 && next_entry < m.rho - kBoundaryTol) return std::nullopt;
    }

    LimitPoint junction;
    junction.code = zero_code;
    junction.x0 = orbit[n];
    junction.thread.reserve(depth + 1);
    for (std::size_t j = 0; j <= n; ++j) junction.thread.push_back(orbit[n - j]);
    Landmarks lm = landmarks(m);
    try {
        for (int k = static_cast<int>(n); k < depth; ++k)
            junction.thread.push_back(extend_thread(m, lm, zero_code, k, junction.thread.back()));
    } catch (const ImageError&) {
        return std::nullopt;  // orbit through 0 does not admit this code
    }
    return junction;
}

}  // namespace invlim
