#pragma once

#include <array>
#include <map>
#include <vector>

#include "invlim/limit_space.hpp"

namespace invlim {

enum class Sheet { Line, ArcInf, ArcMinusInf, ArcPlusInf };

std::string to_string(Sheet s);

// A point of the embedded model: a coordinate on the line (a, 1] or on one
// of the arc sheets carried over from the non-line part of the space.
struct ExtendedCoord {
    Sheet sheet = Sheet::Line;
    double value = 0.0;
};

struct Interval {
    double lo = 0.0, hi = 0.0;
};

// Flattened neighborhood base around an embedded point: pieces on the
// center's own sheet plus satellite pieces (one per index n > N) that live
// on `satellite_sheet`.
struct NeighborhoodBase {
    ExtendedCoord center;
    std::vector<Interval> arc_pieces;        // on the center's sheet
    Sheet satellite_sheet = Sheet::Line;
    std::vector<Interval> line_pieces;       // satellite pieces, index order
};

struct ModelPoint {
    int dims = 1;
    std::array<double, 3> x{0.0, 0.0, 0.0};
};

struct EmbeddingOptions {
    int line_bricks = 40;        // cluster table depth, counted in bricks
    int arc_bricks_per_side = 48;
    int depth = kDefaultDepth;   // thread depth used by the codecs
};

// Per-map chart tables: the line chart glues brick images leftward from 1,
// the arc chart glues the eventually-zero bricks around the central one.
// Built once, immutable, all queries const.
class Embedding {
public:
    explicit Embedding(const UnimodalMap& m, EmbeddingOptions opt = {});

    struct Brick {
        TypeCode code;
        BrickInterval phi;
        double sign = 1.0;    // chart = sign * phi + offset
        double offset = 0.0;
        double lo = 0.0, hi = 0.0;  // chart interval
        bool lo_closed = false, hi_closed = true;
        int d_index = 0;      // interval-length tag: |image| == d_{d_index}
    };

    const UnimodalMap& map() const { return map_; }
    const CaseLabel& label() const { return label_; }
    const Landmarks& marks() const { return lm_; }
    const std::vector<Brick>& line_bricks() const { return line_; }
    const std::vector<Brick>& arc_bricks() const { return arc_; }
    double covered_inf() const { return covered_inf_; }
    double arc_covered_lo() const;
    double arc_covered_hi() const;
    double a_inf() const { return a_inf_; }
    double b_inf() const { return b_inf_; }
    const TailEndpoint& tail_a() const { return tail_a_; }
    const std::vector<double>& d() const { return dseq_; }

    // Line chart for eventually-one codes.
    double psi_line(const LimitPoint& p) const;
    // Arc charts for the eventually-zero and alternating codes (rho < rho1).
    ExtendedCoord theta(const LimitPoint& p) const;
    // Full dispatch onto the embedded model.
    ExtendedCoord psi(const LimitPoint& p) const;

    LimitPoint decode_line(double y, int depth) const;
    LimitPoint decode_arc(double t, int depth) const;

    ExtendedCoord embedded_shift(const ExtendedCoord& c) const;

    NeighborhoodBase neighborhood_base(const ExtendedCoord& c, int N, double eps,
                                       int pieces = 6) const;

    ModelPoint model_coordinates(const ExtendedCoord& c) const;

    // Rendering helpers (exposed for the figure emitters and tests).
    double h_compress(double ell) const;        // (-inf, 1] -> (0, 1]
    double arc_normalized(double t) const;      // arc coordinate -> [-1, 1]
    double shadow_theta(const LimitPoint& p) const;  // arc chart of the tail-swapped code
    std::array<double, 2> base_chart(double t) const;  // period-four model base plane

private:
    void build_line_table();
    void build_arc_table(int per_side);
    double theta_offset(int i, int k, double& sign) const;

    UnimodalMap map_;
    CaseLabel label_;
    Landmarks lm_;
    EmbeddingOptions opt_;
    std::vector<Brick> line_, arc_;
    std::map<TypeCode, int> line_index_, arc_index_;
    std::vector<double> dseq_;
    std::vector<double> rho1_orbit_;  // f^k(rho1)
    double covered_inf_ = 0.0;
    double a_inf_ = 0.0, b_inf_ = 0.0;
    TailEndpoint tail_a_;
};

// Contract-named wrappers.
double psi_case12(const Embedding& e, const LimitPoint& p);
double psi_case3(const Embedding& e, const LimitPoint& p);

}  // namespace invlim
