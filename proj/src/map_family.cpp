#include "invlim/map_family.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <thread>

namespace invlim {

namespace {

constexpr double kImageSlack = 1e-9;   // forgiveness for fp drift at brick ends
constexpr int kBurnIn = 500;

double clamp(double x, double lo, double hi) { return std::min(hi, std::max(lo, x)); }

}  // namespace

UnimodalMap validate_params(double rho, double delta, double gamma, double alpha) {
    if (!(rho > 0.0 && rho < 1.0)) throw ConstraintError("0 < rho < 1");
    if (!(delta > 0.0)) throw ConstraintError("delta > 0");
    if (!(gamma > -delta / rho)) throw ConstraintError("gamma > -delta/rho");
    if (!(alpha < 0.0)) throw ConstraintError("alpha < 0");
    if (!(alpha > -delta / rho)) throw ConstraintError("alpha > -delta/rho");
    // gamma x + delta is linear, so positivity at 0 and rho covers [0, rho].
    if (!(delta > kPoleEps && gamma * rho + delta > kPoleEps))
        throw ConstraintError("gamma x + delta > 0 on [0, rho]");

    UnimodalMap m;
    m.rho = rho;
    m.delta = delta;
    m.gamma = gamma;
    m.alpha = alpha;
    m.f0 = make_moebius(alpha, -alpha * rho, gamma, delta);
    m.f1 = make_moebius(1.0, -rho, 0.0, 1.0 - rho);
    m.f0_inv = invert(m.f0);
    m.f1_inv = invert(m.f1);
    m.rho1 = -alpha * rho / delta;
    return m;
}

double apply(const UnimodalMap& m, double x) {
    if (x < -1e-12 || x > 1.0 + 1e-12) throw DomainError("apply: x outside [0,1]");
    x = clamp(x, 0.0, 1.0);
    double y = (x <= m.rho) ? evaluate(m.f0, x) : evaluate(m.f1, x);
    return clamp(y, 0.0, 1.0);
}

double branch_inverse(const UnimodalMap& m, int branch, double y, int step) {
    if (branch == 0) {
        if (y < -kImageSlack || y > m.rho1 + kImageSlack) throw ImageError(0, y, step);
        double x = evaluate(m.f0_inv, clamp(y, 0.0, m.rho1));
        return clamp(x, 0.0, m.rho);
    }
    if (y < -kImageSlack || y > 1.0 + kImageSlack) throw ImageError(1, y, step);
    double x = evaluate(m.f1_inv, clamp(y, 0.0, 1.0));
    return clamp(x, m.rho, 1.0);
}

Landmarks landmarks(const UnimodalMap& m) {
    Landmarks lm;
    lm.rho1 = m.rho1;

    FixedPointResult fp = fixed_points(m.f0);
    std::vector<double> inside;
    for (double r : fp.roots)
        if (r >= -1e-12 && r < m.rho) inside.push_back(r);
    if (inside.size() != 1) throw Error("expected exactly one fixed point of f0 in [0, rho)");
    lm.omega0 = inside.front();
    lm.omega0_multiplier = derivative_at(m.f0, lm.omega0);
    lm.f_rho1 = apply(m, m.rho1);

    if (m.rho1 > m.rho + kTieTol) {
        MoebiusTransform f2 = compose(m.f0, m.f1);
        FixedPointResult cyc = fixed_points(f2);
        std::vector<double> w2s;
        for (double r : cyc.roots)
            if (r >= m.rho - 1e-12 && r <= m.rho1 + 1e-12) w2s.push_back(r);
        if (w2s.size() == 1) {
            lm.w2 = w2s.front();
            lm.w1 = evaluate(m.f1, *lm.w2);
            lm.cycle_multiplier = derivative_at(f2, *lm.w2);
        }
    }
    return lm;
}

std::string to_string(Case c) {
    switch (c) {
        case Case::Case1: return "Case 1";
        case Case::Case2: return "Case 2";
        case Case::Case3a: return "Case 3a";
        case Case::Case3b: return "Case 3b";
        default: return "outside F_{2^n}";
    }
}

CaseLabel classify(const UnimodalMap& m, double tie_tol) {
    CaseLabel label;
    if (m.rho - m.rho1 > tie_tol) {
        label.value = Case::Case1;
        label.n = 0;
        return label;
    }
    if (std::fabs(m.rho - m.rho1) <= tie_tol) {
        label.value = Case::Case2;
        label.n = 1;
        return label;
    }
    Landmarks lm = landmarks(m);
    if (!lm.cycle_multiplier) {
        label.diagnostic = "no 2-cycle found in [rho, rho1]";
        return label;
    }
    double mult = std::fabs(*lm.cycle_multiplier);
    if (mult < 1.0 - tie_tol) {
        label.value = Case::Case3a;
        label.n = 1;
        return label;
    }
    if (is_involution(compose(m.f0, m.f1), tie_tol)) {
        label.value = Case::Case3b;
        label.n = 2;
        return label;
    }
    label.diagnostic = "2-cycle multiplier " + std::to_string(*lm.cycle_multiplier) +
                       " is not attracting and the second iterate is not an involution";
    return label;
}

namespace {

double iterate(const UnimodalMap& m, double x, int p) {
    for (int i = 0; i < p; ++i) x = apply(m, x);
    return x;
}

// Bisection on g(x) = f^p(x) - x over a sign-change cell.
double refine_root(const UnimodalMap& m, int p, double lo, double hi) {
    double glo = iterate(m, lo, p) - lo;
    for (int it = 0; it < 80 && hi - lo > 1e-13; ++it) {
        double mid = 0.5 * (lo + hi);
        double gm = iterate(m, mid, p) - mid;
        if ((glo <= 0.0) == (gm <= 0.0)) {
            lo = mid;
            glo = gm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

struct FixStructure {
    std::vector<double> roots;                          // isolated fixed points of f^p
    std::vector<std::pair<double, double>> intervals;   // runs with |f^p - id| <= tol
};

FixStructure scan_fixed_sets(const UnimodalMap& m, int p, const std::vector<double>& grid,
                             const std::vector<double>& gp, double tol) {
    FixStructure fs;
    const int n = static_cast<int>(grid.size());
    std::vector<char> flat(n, 0);
    for (int i = 0; i < n; ++i) flat[i] = std::fabs(gp[i] - grid[i]) <= tol;

    int i = 0;
    while (i < n) {
        if (flat[i]) {
            int j = i;
            while (j + 1 < n && flat[j + 1]) ++j;
            if (j > i)
                fs.intervals.emplace_back(grid[i], grid[j]);
            else
                fs.roots.push_back(grid[i]);
            i = j + 1;
        } else {
            ++i;
        }
    }
    // Sign changes between non-flat neighbours give isolated roots.
    for (int k = 0; k + 1 < n; ++k) {
        if (flat[k] || flat[k + 1]) continue;
        double ga = gp[k] - grid[k], gb = gp[k + 1] - grid[k + 1];
        if ((ga < 0.0) != (gb < 0.0)) fs.roots.push_back(refine_root(m, p, grid[k], grid[k + 1]));
    }
    std::sort(fs.roots.begin(), fs.roots.end());
    return fs;
}

bool inside_any(const std::vector<std::pair<double, double>>& ivs, double x, double pad) {
    for (const auto& iv : ivs)
        if (x >= iv.first - pad && x <= iv.second + pad) return true;
    return false;
}

bool near_any(const std::vector<double>& xs, double x, double tol) {
    for (double v : xs)
        if (std::fabs(v - x) <= tol) return true;
    return false;
}

bool same_structure(const FixStructure& a, const FixStructure& b, double root_tol, double end_tol) {
    if (a.intervals.size() != b.intervals.size()) return false;
    for (size_t i = 0; i < a.intervals.size(); ++i) {
        if (std::fabs(a.intervals[i].first - b.intervals[i].first) > end_tol) return false;
        if (std::fabs(a.intervals[i].second - b.intervals[i].second) > end_tol) return false;
    }
    if (a.roots.size() != b.roots.size()) return false;
    for (size_t i = 0; i < a.roots.size(); ++i)
        if (std::fabs(a.roots[i] - b.roots[i]) > root_tol) return false;
    return true;
}

}  // namespace

PeriodCensus period_census(const UnimodalMap& m, int grid_size, int p_max, double tol) {
    if (grid_size < 64) throw DomainError("census: grid_size must be >= 64");
    if (p_max < 8 || (p_max & (p_max - 1)) != 0) throw DomainError("census: p_max must be a power of two >= 8");

    std::vector<double> grid(grid_size);
    for (int i = 0; i < grid_size; ++i) grid[i] = static_cast<double>(i) / (grid_size - 1);
    const double spacing = 1.0 / (grid_size - 1);

    std::vector<int> ladder;
    for (int p = 1; p <= p_max; p *= 2) ladder.push_back(p);

    // f^p over the grid, reusing f^(p/2) of the previous rung.
    std::vector<std::vector<double>> iter(ladder.size());
    iter[0].resize(grid_size);
    for (int i = 0; i < grid_size; ++i) iter[0][i] = apply(m, grid[i]);
    for (size_t r = 1; r < ladder.size(); ++r) {
        iter[r].resize(grid_size);
        for (int i = 0; i < grid_size; ++i) {
            double x = iter[r - 1][i];
            for (int k = ladder[r - 1]; k < ladder[r]; ++k) x = apply(m, x);
            iter[r][i] = x;
        }
    }

    PeriodCensus census;
    std::vector<FixStructure> structures(ladder.size());
    for (size_t r = 0; r < ladder.size(); ++r)
        structures[r] = scan_fixed_sets(m, ladder[r], grid, iter[r], tol);
    census.isolated_roots_p1 = structures[0].roots;

    // Least period of each root/interval: new content relative to smaller rungs.
    const double root_match = 1e-6;
    const double end_match = 2.0 * spacing;
    for (size_t r = 0; r < ladder.size(); ++r) {
        bool fresh = false;
        for (double root : structures[r].roots) {
            bool seen = false;
            for (size_t q = 0; q < r && !seen; ++q)
                seen = near_any(structures[q].roots, root, root_match) ||
                       inside_any(structures[q].intervals, root, end_match);
            if (!seen) fresh = true;
        }
        for (const auto& iv : structures[r].intervals) {
            bool seen = false;
            for (size_t q = 0; q < r && !seen; ++q)
                for (const auto& jv : structures[q].intervals)
                    if (std::fabs(iv.first - jv.first) <= end_match &&
                        std::fabs(iv.second - jv.second) <= end_match)
                        seen = true;
            if (!seen) {
                fresh = true;
                census.periodic_intervals.push_back({iv.first, iv.second, ladder[r]});
                if (iv.second - iv.first < 10.0 * spacing) census.resolution_suspect = true;
            }
        }
        if (fresh) census.detected_periods.insert(ladder[r]);
    }

    // Attractor pass: least p with |f^p(y) - y| <= tol after burn-in.
    // Grid points are independent; chunks run concurrently.
    {
        unsigned workers = std::min(8u, std::max(1u, std::thread::hardware_concurrency()));
        std::vector<std::set<int>> found(workers);
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&, w]() {
                for (int i = static_cast<int>(w); i < grid_size; i += workers) {
                    double y = grid[i];
                    for (int k = 0; k < kBurnIn; ++k) y = apply(m, y);
                    double z = y;
                    int prev = 0;
                    for (int p : ladder) {
                        for (int k = prev; k < p; ++k) z = apply(m, z);
                        prev = p;
                        if (std::fabs(z - y) <= tol) {
                            found[w].insert(p);
                            break;
                        }
                    }
                }
            });
        }
        for (auto& t : pool) t.join();
        for (const auto& s : found) census.detected_periods.insert(s.begin(), s.end());
    }

    for (size_t r = 0; r + 1 < ladder.size(); ++r) {
        if (same_structure(structures[r], structures[r + 1], root_match, end_match)) {
            census.stabilization_n = static_cast<int>(r);
            break;
        }
    }
    return census;
}

bool census_agrees(const CaseLabel& label, const PeriodCensus& census) {
    if (census.stabilization_n < 0) return false;
    std::set<int> expected;
    int n = -1;
    switch (label.value) {
        case Case::Case1: expected = {1}; n = 0; break;
        case Case::Case2: expected = {1, 2}; n = 1; break;
        case Case::Case3a: expected = {1, 2}; n = 1; break;
        case Case::Case3b: expected = {1, 2, 4}; n = 2; break;
        default: return false;
    }
    return census.detected_periods == expected && census.stabilization_n == n;
}

std::vector<double> d_sequence(const UnimodalMap& m, int count) {
    if (!(m.rho < m.rho1)) throw CaseError("d-sequence requires rho < rho1");
    std::vector<double> d;
    d.reserve(count + 1);
    d.push_back(m.rho1);
    double u = m.rho, v = m.rho1;
    for (int n = 1; n <= count; ++n) {
        u = apply(m, u);
        v = apply(m, v);
        d.push_back(std::fabs(u - v));
    }
    return d;
}

TailEndpoint tail_endpoint_a(const UnimodalMap& m, int terms) {
    TailEndpoint out;
    if (std::fabs(m.rho - m.rho1) <= kTieTol) {
        out.finite = false;
        out.value = -std::numeric_limits<double>::infinity();
        out.series_partial_sum = std::numeric_limits<double>::infinity();
        out.remainder_bound = 0.0;
        return out;
    }
    if (!(m.rho > m.rho1)) throw CaseError("finite tail endpoint requires rho > rho1");

    Landmarks lm = landmarks(m);
    double x = m.rho1;
    double sum = 0.0;
    for (int n = 0; n <= terms; ++n) {
        double even = x;
        double odd = apply(m, even);
        sum += even - odd;
        x = apply(m, odd);
    }
    out.series_partial_sum = 2.0 * sum;
    out.value = -lm.omega0 - out.series_partial_sum;

    double mu = std::fabs(lm.omega0_multiplier);
    double mu_safe = std::min(0.999999, mu * 1.0001 + 1e-12);
    double next_term = std::fabs(x - apply(m, x));
    out.remainder_bound = 2.0 * next_term / (1.0 - mu_safe * mu_safe) * (1.0 + mu_safe);
    return out;
}

Conjugator conjugator(const UnimodalMap& m) {
    if (std::fabs(m.rho - m.rho1) > kTieTol)
        throw CaseError("conjugator requires rho == rho1");
    Conjugator cj;
    double s = std::sqrt(1.0 - m.gamma * m.rho / m.alpha);
    cj.c = (1.0 - s) / m.rho;
    cj.d = s;
    const double rho = m.rho;
    const double c = cj.c, d = cj.d;
    // On [0, rho]: h(x) = d x / (1 - c x), inverse x / (c x + d); both fix 0
    // and rho (note c rho + d = 1).  Right of rho the conjugacy is forced by
    // the left piece: descend with the right branch until the orbit crosses
    // rho, apply the left piece there, and lift back with the inverse affine
    // steps.  The right branch itself is shared by the map and its normal
    // form, so the lift is the same for h and h^{-1}.
    auto extend = [rho](double x, auto&& left) {
        if (x <= rho) return left(x);
        if (x >= 1.0 - 1e-15) return x;
        int k = 0;
        double y = x;
        while (y > rho) {
            y = (y - rho) / (1.0 - rho);
            ++k;
        }
        double scale = std::pow(1.0 - rho, k);
        return 1.0 - scale + scale * left(y);
    };
    cj.h = [extend, c, d](double x) {
        return extend(x, [c, d](double t) { return d * t / (1.0 - c * t); });
    };
    cj.h_inv = [extend, c, d](double x) {
        return extend(x, [c, d](double t) { return t / (c * t + d); });
    };
    UnimodalMap map_copy = m;
    auto h = cj.h;
    auto h_inv = cj.h_inv;
    cj.g = [map_copy, h, h_inv](double x) { return h(apply(map_copy, h_inv(x))); };
    return cj;
}

UnimodalMap parse_preset_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open preset file: " + path);
    double rho = NAN, delta = NAN, gamma = NAN, alpha = NAN;
    std::string line;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        std::string key = line.substr(0, eq);
        key.erase(std::remove_if(key.begin(), key.end(), ::isspace), key.end());
        double value = std::stod(line.substr(eq + 1));
        if (key == "rho") rho = value;
        else if (key == "delta") delta = value;
        else if (key == "gamma") gamma = value;
        else if (key == "alpha") alpha = value;
        else throw Error("unknown preset key: " + key);
    }
    if (std::isnan(rho) || std::isnan(delta) || std::isnan(gamma) || std::isnan(alpha))
        throw Error("preset file must set rho, delta, gamma and alpha");
    return validate_params(rho, delta, gamma, alpha);
}

}  // namespace invlim
