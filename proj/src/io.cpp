#include "invlim/io.hpp"

#include <cmath>
#include <cstdio>

namespace invlim {

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string limit_point_csv_row(const LimitPoint& p) {
    std::string row = fmt17(p.x0) + "," + p.code.text() + "," + std::to_string(p.depth()) + ",";
    for (std::size_t i = 0; i < p.thread.size(); ++i) {
        if (i) row += ' ';
        row += fmt17(p.thread[i]);
    }
    return row;
}

EmbedResult embed_samples(const Embedding& e, Sheet sheet, int samples, int depth) {
    if (samples < 2) throw DomainError("embed: need at least 2 samples");
    EmbedResult r;
    const UnimodalMap& m = e.map();

    double lo = 0.0, hi = 1.0;
    switch (sheet) {
        case Sheet::Line:
            lo = e.covered_inf();
            hi = 1.0;
            break;
        case Sheet::ArcInf:
            if (e.label().value == Case::Case2) {
                lo = 0.0;
                hi = m.rho;
            } else if (e.label().value == Case::Case3a) {
                lo = e.a_inf();
                hi = e.b_inf();
            } else {
                lo = e.arc_covered_lo();
                hi = e.arc_covered_hi();
            }
            break;
        case Sheet::ArcMinusInf:
            if (e.label().value != Case::Case3b) throw CaseError("no -inf sheet in this case");
            lo = 0.0;
            hi = e.marks().f_rho1;
            break;
        case Sheet::ArcPlusInf:
            if (e.label().value != Case::Case3b) throw CaseError("no +inf sheet in this case");
            lo = m.rho;
            hi = m.rho1;
            break;
    }

    for (int i = 0; i < samples; ++i) {
        // Open at the low end: the deep end of the line is only covered up
        // to the table, and arc ends are handled by their own snap rules.
        double t = lo + (hi - lo) * (i + 1) / samples;
        ExtendedCoord c{sheet, t};
        try {
            LimitPoint p;
            switch (sheet) {
                case Sheet::Line:
                    p = e.decode_line(t, depth);
                    break;
                case Sheet::ArcInf:
                    p = (e.label().value == Case::Case2)
                            ? decode_point(m, t, TypeCode::t_infinity(), depth)
                            : e.decode_arc(t, depth);
                    break;
                case Sheet::ArcMinusInf:
                    p = decode_point(m, t, TypeCode::t_lower_infinity(1), depth);
                    break;
                case Sheet::ArcPlusInf:
                    p = decode_point(m, t, TypeCode::t_lower_infinity(0), depth);
                    break;
            }
            ModelPoint mp = e.model_coordinates(c);
            r.samples.push_back({c, mp});
            r.points.push_back(std::move(p));
        } catch (const RangeError&) {
            ++r.skipped;
        }
    }
    return r;
}

void write_embed_csv(const EmbedResult& r, std::ostream& out) {
    out << "sheet,line_value,model_x,model_y,model_z\n";
    for (const auto& s : r.samples) {
        out << to_string(s.coord.sheet) << ',' << fmt17(s.coord.value) << ','
            << fmt17(s.model.x[0]) << ',' << fmt17(s.model.x[1]) << ',';
        if (s.model.dims > 2) out << fmt17(s.model.x[2]);
        out << '\n';
    }
}

void write_points_csv(const EmbedResult& r, std::ostream& out) {
    out << "x0,code,depth,thread\n";
    for (const auto& p : r.points) out << limit_point_csv_row(p) << '\n';
}

}  // namespace invlim
