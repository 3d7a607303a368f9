#pragma once

#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "invlim/moebius.hpp"

namespace invlim {

// Two-hyperbola unimodal map on [0,1]:
//   f0(x) = (alpha x - alpha rho) / (gamma x + delta)   on [0, rho]
//   f1(x) = (x - rho) / (1 - rho)                       on (rho, 1]
// with 0 < rho < 1, delta > 0, gamma > -delta/rho, -delta/rho < alpha < 0.
struct UnimodalMap {
    double rho = 0.5, delta = 1.0, gamma = 0.0, alpha = -1.0;
    MoebiusTransform f0, f1;
    MoebiusTransform f0_inv, f1_inv;
    double rho1 = 0.5;  // f0(0) = -alpha rho / delta
};

UnimodalMap validate_params(double rho, double delta, double gamma, double alpha);

// f at x; the left (closed) branch owns x = rho.
double apply(const UnimodalMap& m, double x);

// Inverse of one branch.  Branch 0 accepts y in [0, rho1]; branch 1 accepts
// y in [0, 1], where y = 0 returns the limit endpoint rho.
double branch_inverse(const UnimodalMap& m, int branch, double y, int step = -1);

struct Landmarks {
    double rho1 = 0.0;
    double omega0 = 0.0;             // interior fixed point in [0, rho)
    double omega0_multiplier = 0.0;  // f0'(omega0)
    std::optional<double> w1, w2;    // 2-cycle, present when rho < rho1
    std::optional<double> cycle_multiplier;  // (f0 o f1)'(w2)
    double f_rho1 = 0.0;             // f(rho1)
};

Landmarks landmarks(const UnimodalMap& m);

enum class Case { Case1, Case2, Case3a, Case3b, OutsideF2n };

struct CaseLabel {
    Case value = Case::OutsideF2n;
    std::optional<int> n;        // 0, 1, 1, 2 for the four cases
    std::string diagnostic;      // non-empty for OutsideF2n
};

std::string to_string(Case c);

inline constexpr double kTieTol = 1e-9;

CaseLabel classify(const UnimodalMap& m, double tie_tol = kTieTol);

// Brute-force periodic-structure census, independent of the classifier: for
// each p in {1, 2, 4, ..., p_max} it scans f^p - id over a grid, collecting
// isolated roots (refined by bisection) and intervals where the residual
// stays below tol, plus a per-grid-point least period after a 500-iteration
// burn-in.  Stabilization exponent N is the least one with the fixed-point
// structure of f^(2^N) and f^(2^(N+1)) numerically equal.
struct PeriodicInterval {
    double lo = 0.0, hi = 0.0;
    int period = 0;
};

struct PeriodCensus {
    std::set<int> detected_periods;
    int stabilization_n = -1;  // -1 when not stabilized within p_max
    std::vector<PeriodicInterval> periodic_intervals;
    std::vector<double> isolated_roots_p1;  // fixed points found by the scan
    bool resolution_suspect = false;  // an interval narrower than 10 grid cells
};

PeriodCensus period_census(const UnimodalMap& m, int grid_size, int p_max, double tol);

// Expected census signature for a case label; used to compare classifier
// against census.
bool census_agrees(const CaseLabel& label, const PeriodCensus& census);

// d_0 = rho1, d_n = |f^n(rho) - f^n(rho1)|.  Requires rho < rho1.
std::vector<double> d_sequence(const UnimodalMap& m, int count);

// Left endpoint of the embedded line in the attractive-fixed-point case.
// `series_partial_sum` is the printed alternating-orbit series
// 2 * sum_{n=0..K} (f^{2n}(rho1) - f^{2n+1}(rho1)); the endpoint itself is
// a = -omega0 - series, with a geometric remainder bound from the multiplier.
struct TailEndpoint {
    bool finite = true;          // false for the symmetric case: endpoint -inf
    double series_partial_sum = 0.0;
    double value = 0.0;          // endpoint estimate -omega0 - series
    double remainder_bound = 0.0;
};

TailEndpoint tail_endpoint_a(const UnimodalMap& m, int terms);

// Conjugator for the symmetric case (rho == rho1): h fixes 0, rho and 1,
// restricts to a single rational piece on [0, rho], and g = h o f o h^{-1}
// is the normal form rho - x on [0, rho], (x - rho)/(1 - rho) on (rho, 1].
struct Conjugator {
    double c = 0.0, d = 1.0;  // constants (1/rho)(1 - s) and s = sqrt(1 - gamma rho / alpha)
    std::function<double(double)> h, h_inv, g;
};

Conjugator conjugator(const UnimodalMap& m);

// Parse "key=value" lines (rho, delta, gamma, alpha); '#' starts a comment.
UnimodalMap parse_preset_file(const std::string& path);

}  // namespace invlim
