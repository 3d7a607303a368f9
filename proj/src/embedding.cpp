#include "invlim/embedding.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace invlim {

namespace {

constexpr double kMinBrickWidth = 1e-12;   // line table stops below decodable resolution
constexpr double kChartSlack = 1e-9;
constexpr double kEndpointSnap = 1e-11;

// Length tag of a line brick: longest alternating head of the prefix gives
// the iterate count of the brick's image interval.
int line_d_index(const TypeCode& code) {
    const std::string& p = code.prefix();
    if (p.empty()) return 0;
    bool any_one = false;
    for (char c : p) any_one |= (c == '1');
    if (!any_one) return 0;  // plain 0^n code
    int run = 1;
    while (run < static_cast<int>(p.size()) && p[run] != p[run - 1]) ++run;
    int k = run / 2;
    int i = p[0] == '1' ? 1 : 0;
    return 2 * k - i;
}

}  // namespace

std::string to_string(Sheet s) {
    switch (s) {
        case Sheet::Line: return "line";
        case Sheet::ArcInf: return "arc_inf";
        case Sheet::ArcMinusInf: return "arc_minus_inf";
        default: return "arc_plus_inf";
    }
}

Embedding::Embedding(const UnimodalMap& m, EmbeddingOptions opt)
    : map_(m), label_(classify(m)), lm_(landmarks(m)), opt_(opt) {
    if (label_.value == Case::OutsideF2n)
        throw CaseError("embedding requires a classified map: " + label_.diagnostic);

    const bool case3 = label_.value == Case::Case3a || label_.value == Case::Case3b;
    if (case3) {
        int needed = std::max(2 * (opt_.arc_bricks_per_side + 4) + 2, 64);
        dseq_ = d_sequence(map_, needed);
        rho1_orbit_.resize(needed + 1);
        rho1_orbit_[0] = map_.rho1;
        for (int k = 1; k <= needed; ++k) rho1_orbit_[k] = apply(map_, rho1_orbit_[k - 1]);

        if (label_.value == Case::Case3a) {
            // a_inf = -sum of odd-index d, b_inf = d_0 + sum of even-index d.
            double u = map_.rho, v = map_.rho1;
            double odd = 0.0, even = 0.0;
            for (int n = 1; n <= 200000; ++n) {
                u = apply(map_, u);
                v = apply(map_, v);
                double dn = std::fabs(u - v);
                if (n % 2 == 1) odd += dn; else even += dn;
                if (dn < 1e-17 && n > 4) break;
            }
            a_inf_ = -odd;
            b_inf_ = map_.rho1 + even;
        } else {
            a_inf_ = -std::numeric_limits<double>::infinity();
            b_inf_ = std::numeric_limits<double>::infinity();
        }
    }
    if (label_.value == Case::Case1) tail_a_ = tail_endpoint_a(map_, 60);
    if (label_.value == Case::Case2) tail_a_ = tail_endpoint_a(map_, 0);

    build_line_table();
    if (case3) build_arc_table(opt_.arc_bricks_per_side + 2);
}

void Embedding::build_line_table() {
    std::vector<TypeCode> codes = enumerate_types(label_, opt_.line_bricks);
    double pre = 0.0;  // sum of brick lengths chained so far (bricks 1..m-1)
    for (std::size_t idx = 0; idx < codes.size(); ++idx) {
        Brick b;
        b.code = codes[idx];
        int depth = static_cast<int>(b.code.prefix().size()) + 12;
        b.phi = brick_interval(map_, b.code, depth);
        b.d_index = line_d_index(b.code);
        if (idx == 0) {
            b.sign = 1.0;
            b.offset = 0.0;
            b.lo = b.phi.lo;
            b.hi = b.phi.hi;
            b.lo_closed = b.phi.lo_closed;
            b.hi_closed = b.phi.hi_closed;
        } else {
            double len = b.phi.width();
            if (len < kMinBrickWidth) break;  // below decodable resolution
            bool odd = idx % 2 == 1;
            b.sign = odd ? -1.0 : 1.0;
            // Chart spans [-(pre+len), -pre]; the brick end nearest 0 in the
            // head coordinate sits at the right end for odd bricks.
            b.offset = odd ? (b.phi.lo - pre) : (-b.phi.lo - pre - len);
            b.lo = -(pre + len);
            b.hi = -pre;
            b.lo_closed = odd ? b.phi.hi_closed : b.phi.lo_closed;
            b.hi_closed = odd ? b.phi.lo_closed : b.phi.hi_closed;
            pre += len;
        }
        line_index_.emplace(b.code, static_cast<int>(line_.size()));
        line_.push_back(std::move(b));
    }
    covered_inf_ = -pre;
}

void Embedding::build_arc_table(int per_side) {
    // Left chain: T^1_k images stack leftward from 0; right chain: T^0_k
    // images stack rightward from the central brick [0, rho1].
    std::vector<Brick> left, right;
    double edge = 0.0;
    for (int k = 1; k <= per_side; ++k) {
        Brick b;
        b.code = TypeCode::t_lower(1, k);
        b.phi = brick_interval(map_, b.code, static_cast<int>(b.code.prefix().size()) + 12);
        b.d_index = 2 * k - 1;
        double len = b.phi.width();
        if (len < kMinBrickWidth) break;
        bool odd = k % 2 == 1;
        b.sign = odd ? -1.0 : 1.0;
        b.offset = odd ? (edge + b.phi.lo) : (edge - b.phi.hi);
        b.lo = edge - len;
        b.hi = edge;
        b.lo_closed = odd ? b.phi.hi_closed : b.phi.lo_closed;
        b.hi_closed = odd ? b.phi.lo_closed : b.phi.hi_closed;
        edge -= len;
        left.push_back(std::move(b));
    }
    Brick center;
    center.code = TypeCode::t_infinity();
    center.phi = brick_interval(map_, center.code, 24);
    center.sign = 1.0;
    center.offset = 0.0;
    center.lo = center.phi.lo;
    center.hi = center.phi.hi;
    center.lo_closed = center.phi.lo_closed;
    center.hi_closed = center.phi.hi_closed;
    center.d_index = 0;

    edge = center.hi;
    for (int k = 1; k <= per_side; ++k) {
        Brick b;
        b.code = TypeCode::t_lower(0, k);
        b.phi = brick_interval(map_, b.code, static_cast<int>(b.code.prefix().size()) + 12);
        b.d_index = 2 * k;
        double len = b.phi.width();
        if (len < kMinBrickWidth) break;
        bool odd = k % 2 == 1;
        b.sign = odd ? -1.0 : 1.0;
        b.offset = odd ? (edge + b.phi.hi) : (edge - b.phi.lo);
        b.lo = edge;
        b.hi = edge + len;
        b.lo_closed = odd ? b.phi.hi_closed : b.phi.lo_closed;
        b.hi_closed = odd ? b.phi.lo_closed : b.phi.hi_closed;
        edge += len;
        right.push_back(std::move(b));
    }

    arc_.reserve(left.size() + 1 + right.size());
    for (auto it = left.rbegin(); it != left.rend(); ++it) arc_.push_back(std::move(*it));
    arc_.push_back(std::move(center));
    for (auto& b : right) arc_.push_back(std::move(b));
    for (std::size_t i = 0; i < arc_.size(); ++i) arc_index_.emplace(arc_[i].code, static_cast<int>(i));
}

double Embedding::arc_covered_lo() const { return arc_.empty() ? 0.0 : arc_.front().lo; }
double Embedding::arc_covered_hi() const { return arc_.empty() ? 0.0 : arc_.back().hi; }

double Embedding::psi_line(const LimitPoint& p) const {
    if (p.code.tail() != Tail::AllOnes)
        throw CaseError("psi is defined on the eventually-one part of the space");
    auto it = line_index_.find(p.code);
    if (it == line_index_.end())
        throw RangeError("code beyond the covered cluster table: " + p.code.text());
    const Brick& b = line_[it->second];
    return b.sign * p.x0 + b.offset;
}

double Embedding::theta_offset(int i, int k, double& sign) const {
    // theta = sign * phi + 2 * sum_{j>=i}^{k-1} (-1)^j f^{2j-i}(rho1)
    sign = (k % 2 == 0) ? 1.0 : -1.0;
    double off = 0.0;
    for (int j = i; j <= k - 1; ++j) {
        double term = rho1_orbit_.at(2 * j - i);
        off += 2.0 * ((j % 2 == 0) ? term : -term);
    }
    return off;
}

ExtendedCoord Embedding::theta(const LimitPoint& p) const {
    if (label_.value != Case::Case3a && label_.value != Case::Case3b)
        throw CaseError("theta requires rho < rho1");
    switch (p.code.tail()) {
        case Tail::AllOnes:
            throw CaseError("theta is not defined on the eventually-one part");
        case Tail::AllZeros: {
            auto it = arc_index_.find(p.code);
            if (it != arc_index_.end()) {
                const Brick& b = arc_[it->second];
                return {Sheet::ArcInf, b.sign * p.x0 + b.offset};
            }
            auto lk = lower_index(p.code);
            if (!lk) throw CaseError("inadmissible eventually-zero code: " + p.code.text());
            double sign = 1.0;
            double off = theta_offset(lk->first, lk->second, sign);
            return {Sheet::ArcInf, sign * p.x0 + off};
        }
        case Tail::Alt10:
            if (label_.value == Case::Case3a) return {Sheet::ArcInf, a_inf_};
            return {Sheet::ArcMinusInf, p.x0};
        default:
            if (label_.value == Case::Case3a) return {Sheet::ArcInf, b_inf_};
            return {Sheet::ArcPlusInf, p.x0};
    }
}

ExtendedCoord Embedding::psi(const LimitPoint& p) const {
    if (p.code.tail() == Tail::AllOnes) return {Sheet::Line, psi_line(p)};
    switch (label_.value) {
        case Case::Case1:
            // The only point off the line is the constant thread at omega0.
            return {Sheet::Line, tail_a_.value};
        case Case::Case2:
            if (p.code != TypeCode::t_infinity())
                throw CaseError("inadmissible code for the symmetric case: " + p.code.text());
            return {Sheet::ArcInf, p.x0};
        default:
            return theta(p);
    }
}

LimitPoint Embedding::decode_line(double y, int depth) const {
    if (y > line_.front().hi + kChartSlack || y < covered_inf_ - kChartSlack)
        throw RangeError("line coordinate outside the covered range");
    // Bricks chain leftward; ties at shared endpoints go to the lower index.
    int idx = static_cast<int>(line_.size()) - 1;
    for (std::size_t m = 0; m < line_.size(); ++m) {
        if (y >= line_[m].lo) {
            idx = static_cast<int>(m);
            break;
        }
    }
    const Brick& b = line_[idx];
    double phi = b.sign * (y - b.offset);
    phi = std::clamp(phi, b.phi.lo, b.phi.hi);
    return decode_point(map_, phi, b.code, depth);
}

LimitPoint Embedding::decode_arc(double t, int depth) const {
    if (label_.value != Case::Case3a && label_.value != Case::Case3b)
        throw CaseError("arc decoding requires rho < rho1");
    if (label_.value == Case::Case3a) {
        if (std::fabs(t - a_inf_) <= kEndpointSnap)
            return decode_point(map_, *lm_.w1, TypeCode::t_lower_infinity(1), depth);
        if (std::fabs(t - b_inf_) <= kEndpointSnap)
            return decode_point(map_, *lm_.w2, TypeCode::t_lower_infinity(0), depth);
    }
    if (t < arc_covered_lo() - kChartSlack || t > arc_covered_hi() + kChartSlack)
        throw RangeError("arc coordinate outside the covered range");
    // Prefer the brick whose closure actually contains t; ties go toward the
    // central brick.
    const int center = static_cast<int>(arc_index_.at(TypeCode::t_infinity()));
    int best = -1;
    double best_rank = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < arc_.size(); ++i) {
        const Brick& b = arc_[i];
        if (t < b.lo - kChartSlack || t > b.hi + kChartSlack) continue;
        bool strict = (t > b.lo || b.lo_closed) && (t < b.hi || b.hi_closed);
        double rank = std::fabs(static_cast<double>(i) - center) + (strict ? 0.0 : 0.5);
        if (rank < best_rank) {
            best_rank = rank;
            best = static_cast<int>(i);
        }
    }
    if (best < 0) throw RangeError("arc coordinate outside the covered range");
    const Brick& b = arc_[best];
    double phi = b.sign * (t - b.offset);
    phi = std::clamp(phi, b.phi.lo, b.phi.hi);
    return decode_point(map_, phi, b.code, depth);
}

ExtendedCoord Embedding::embedded_shift(const ExtendedCoord& c) const {
    switch (c.sheet) {
        case Sheet::Line: {
            LimitPoint p = decode_line(c.value, opt_.depth);
            return psi(shift(map_, p));
        }
        case Sheet::ArcInf: {
            if (label_.value == Case::Case2) {
                double x = std::clamp(c.value, 0.0, map_.rho);
                LimitPoint p = decode_point(map_, x, TypeCode::t_infinity(), opt_.depth);
                return psi(shift(map_, p));
            }
            if (label_.value == Case::Case3a) {
                if (std::fabs(c.value - a_inf_) <= kEndpointSnap) return {Sheet::ArcInf, b_inf_};
                if (std::fabs(c.value - b_inf_) <= kEndpointSnap) return {Sheet::ArcInf, a_inf_};
            }
            LimitPoint p = decode_arc(c.value, opt_.depth);
            return psi(shift(map_, p));
        }
        case Sheet::ArcMinusInf: {
            if (label_.value != Case::Case3b) throw CaseError("no -inf sheet in this case");
            double x = std::clamp(c.value, 0.0, lm_.f_rho1);
            return {Sheet::ArcPlusInf, apply(map_, x)};
        }
        default: {
            if (label_.value != Case::Case3b) throw CaseError("no +inf sheet in this case");
            double x = std::clamp(c.value, map_.rho, map_.rho1);
            return {Sheet::ArcMinusInf, apply(map_, x)};
        }
    }
}

NeighborhoodBase Embedding::neighborhood_base(const ExtendedCoord& c, int N, double eps,
                                              int pieces) const {
    NeighborhoodBase base;
    base.center = c;
    if (c.sheet == Sheet::Line) {
        base.satellite_sheet = Sheet::Line;
        base.line_pieces.push_back({c.value - eps, c.value + eps});
        return base;
    }
    const double x = c.value;
    if (label_.value == Case::Case2) {
        base.arc_pieces.push_back({std::max(0.0, x - eps), std::min(map_.rho, x + eps)});
        base.satellite_sheet = Sheet::Line;
        for (int n = N + 1; n <= N + pieces; ++n) {
            double center = ((n % 2 == 0) ? x : -x) - 2.0 * (n / 2) * map_.rho;
            base.line_pieces.push_back({center - eps, center + eps});
        }
        return base;
    }
    if (label_.value != Case::Case3a && label_.value != Case::Case3b)
        throw CaseError("no arc sheets in this case");

    auto interior_line_pieces = [&](double t, std::vector<Interval>& out) {
        // Satellite line pieces around the chart images of the point's
        // deeper relabellings.
        for (int n = N + 1; n <= N + pieces; ++n) {
            double shift_sum = 2.0 * n * dseq_[0];
            for (int k = 1; k <= n - 1; ++k)
                shift_sum += 2.0 * (n - k) * (dseq_[2 * k - 1] + dseq_[2 * k]);
            double odd_sum = 0.0;
            for (int k = 1; k <= n; ++k) odd_sum += 2.0 * dseq_[2 * k - 1];
            double x_plus = t - shift_sum;
            double x_minus = -t - shift_sum - odd_sum;
            out.push_back({x_plus - eps, x_plus + eps});
            out.push_back({x_minus - eps, x_minus + eps});
        }
    };

    if (c.sheet == Sheet::ArcInf) {
        base.satellite_sheet = Sheet::Line;
        if (label_.value == Case::Case3a && std::fabs(x - a_inf_) <= kEndpointSnap) {
            for (int n = N + 1; n <= N + pieces; ++n) {
                double sign = 1.0;
                double off = theta_offset(1, n, sign);
                double y = sign * *lm_.w1 + off;
                base.arc_pieces.push_back({y - eps, y + eps});
                interior_line_pieces(y, base.line_pieces);
            }
            return base;
        }
        if (label_.value == Case::Case3a && std::fabs(x - b_inf_) <= kEndpointSnap) {
            for (int n = N + 1; n <= N + pieces; ++n) {
                double sign = 1.0;
                double off = theta_offset(0, n, sign);
                double y = sign * *lm_.w2 + off;
                base.arc_pieces.push_back({y - eps, y + eps});
                interior_line_pieces(y, base.line_pieces);
            }
            return base;
        }
        base.arc_pieces.push_back({x - eps, x + eps});
        interior_line_pieces(x, base.line_pieces);
        return base;
    }

    if (label_.value != Case::Case3b) throw CaseError("no +-inf sheets in this case");
    base.satellite_sheet = Sheet::ArcInf;
    if (c.sheet == Sheet::ArcMinusInf) {
        base.arc_pieces.push_back({std::max(0.0, x - eps), std::min(dseq_[1], x + eps)});
        for (int n = N + 1; n <= N + pieces; ++n) {
            double center = ((n % 2 == 0) ? x : -x) - 2.0 * (n / 2) * dseq_[1];
            base.line_pieces.push_back({center - eps, center + eps});
        }
    } else {
        base.arc_pieces.push_back(
            {std::max(map_.rho, x - eps), std::min(map_.rho1, x + eps)});
        for (int n = N + 1; n <= N + pieces; ++n) {
            double center =
                ((n % 2 == 0) ? -(x - map_.rho) : (x - map_.rho)) + 2.0 * (n / 2) * dseq_[2] + map_.rho;
            base.line_pieces.push_back({center - eps, center + eps});
        }
    }
    return base;
}

double Embedding::h_compress(double ell) const {
    double d0 = (label_.value == Case::Case1 || label_.value == Case::Case2) ? map_.rho1
                                                                             : dseq_[0];
    return std::exp2((ell - 1.0) / d0);
}

double Embedding::arc_normalized(double t) const {
    if (label_.value == Case::Case2) return 2.0 * t / map_.rho - 1.0;
    if (label_.value == Case::Case3a) return 2.0 * (t - a_inf_) / (b_inf_ - a_inf_) - 1.0;
    throw CaseError("no single bounded arc to normalize in this case");
}

double Embedding::shadow_theta(const LimitPoint& p) const {
    TypeCode shadow(p.code.prefix(), Tail::AllZeros);
    if (label_.value == Case::Case2) return p.x0;
    auto it = arc_index_.find(shadow);
    if (it != arc_index_.end()) {
        const Brick& b = arc_[it->second];
        return b.sign * p.x0 + b.offset;
    }
    auto lk = lower_index(shadow);
    if (!lk) throw CaseError("code has no arc shadow: " + p.code.text());
    double sign = 1.0;
    double off = theta_offset(lk->first, lk->second, sign);
    return sign * p.x0 + off;
}

std::array<double, 2> Embedding::base_chart(double t) const {
    // Piecewise-linear ray between the two arcs of the period-four model:
    // nodes at multiples of d_1 leftward from 0 and of d_2 rightward from
    // rho, alternating between the top and bottom of the band.
    const double d1 = dseq_[1], d2 = dseq_[2];
    const double margin = 0.35, shrink = 0.62;
    const int K = 28;
    auto left_node = [&](int k) {
        return std::array<double, 2>{margin * std::pow(shrink, k),
                                     k == 0 ? 0.0 : (k % 2 == 1 ? 1.0 : -1.0)};
    };
    auto right_node = [&](int k) {
        return std::array<double, 2>{1.0 - margin * std::pow(shrink, k),
                                     k == 0 ? 0.0 : (k % 2 == 1 ? 1.0 : -1.0)};
    };
    if (t <= 0.0) {
        double u = -t / d1;
        int k = std::min(K - 1, static_cast<int>(u));
        double frac = std::min(1.0, u - k);
        auto p0 = left_node(k), p1 = left_node(k + 1);
        return {p0[0] + frac * (p1[0] - p0[0]), p0[1] + frac * (p1[1] - p0[1])};
    }
    if (t <= map_.rho) {
        double frac = t / map_.rho;
        return {margin + frac * (1.0 - margin - margin), 0.0};
    }
    double u = (t - map_.rho) / d2;
    int k = std::min(K - 1, static_cast<int>(u));
    double frac = std::min(1.0, u - k);
    auto p0 = right_node(k), p1 = right_node(k + 1);
    return {p0[0] + frac * (p1[0] - p0[0]), p0[1] + frac * (p1[1] - p0[1])};
}

ModelPoint Embedding::model_coordinates(const ExtendedCoord& c) const {
    ModelPoint out;
    switch (label_.value) {
        case Case::Case1: {
            out.dims = 1;
            double a = tail_a_.value;
            out.x[0] = (c.value - a) / (1.0 - a);
            return out;
        }
        case Case::Case2:
        case Case::Case3a: {
            out.dims = 2;
            if (c.sheet == Sheet::Line) {
                LimitPoint p = decode_line(c.value, opt_.depth);
                out.x[0] = h_compress(c.value);
                out.x[1] = arc_normalized(shadow_theta(p));
            } else {
                out.x[0] = 0.0;
                out.x[1] = arc_normalized(c.value);
            }
            return out;
        }
        default: {
            out.dims = 3;
            switch (c.sheet) {
                case Sheet::Line: {
                    LimitPoint p = decode_line(c.value, opt_.depth);
                    auto xy = base_chart(shadow_theta(p));
                    out.x = {xy[0], xy[1], h_compress(c.value)};
                    return out;
                }
                case Sheet::ArcInf: {
                    auto xy = base_chart(c.value);
                    out.x = {xy[0], xy[1], 0.0};
                    return out;
                }
                case Sheet::ArcMinusInf:
                    out.x = {0.0, 2.0 * c.value / dseq_[1] - 1.0, 0.0};
                    return out;
                default:
                    out.x = {1.0, 2.0 * (c.value - map_.rho) / dseq_[2] - 1.0, 0.0};
                    return out;
            }
        }
    }
}

double psi_case12(const Embedding& e, const LimitPoint& p) {
    if (e.label().value != Case::Case1 && e.label().value != Case::Case2)
        throw CaseError("psi_case12 requires rho >= rho1");
    return e.psi_line(p);
}

double psi_case3(const Embedding& e, const LimitPoint& p) {
    if (e.label().value != Case::Case3a && e.label().value != Case::Case3b)
        throw CaseError("psi_case3 requires rho < rho1");
    return e.psi_line(p);
}

}  // namespace invlim
