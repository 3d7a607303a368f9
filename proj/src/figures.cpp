#include "invlim/figures.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "invlim/io.hpp"

namespace invlim {

namespace {

bool is_case3(const CaseLabel& l) {
    return l.value == Case::Case3a || l.value == Case::Case3b;
}

void require_case(bool ok, int id, const std::string& need) {
    if (!ok) throw CaseError("figure " + std::to_string(id) + " requires " + need);
}

// "-2d_0-d_1" style label for a partial sum of brick lengths.
std::string sum_label(const std::vector<int>& counts) {
    std::string s;
    for (std::size_t j = 0; j < counts.size(); ++j) {
        if (!counts[j]) continue;
        s += '-';
        if (counts[j] > 1) s += std::to_string(counts[j]);
        s += "d_" + std::to_string(j);
    }
    return s.empty() ? "0" : s;
}

Polyline graph_branch(const UnimodalMap& m, int branch, int samples) {
    Polyline pl;
    pl.label = branch == 0 ? "f0" : "f1";
    double lo = branch == 0 ? 0.0 : m.rho;
    double hi = branch == 0 ? m.rho : 1.0;
    for (int i = 0; i <= samples; ++i) {
        double x = lo + (hi - lo) * i / samples;
        double y = branch == 0 ? evaluate(m.f0, x) : evaluate(m.f1, x);
        pl.pts.push_back({x, std::clamp(y, 0.0, 1.0), 0.0});
    }
    return pl;
}

FigureSeries figure_graph(const Embedding& e, int id) {
    const UnimodalMap& m = e.map();
    const Landmarks& lm = e.marks();
    FigureSeries f;
    f.figure_id = id;
    f.polylines.push_back(graph_branch(m, 0, 256));
    f.polylines.push_back(graph_branch(m, 1, 256));
    f.polylines.push_back({"diagonal", {{0.0, 0.0, 0.0}, {1.0, 1.0, 0.0}}, false});
    f.markers.push_back({"0", {0.0, 0.0, 0.0}});
    f.markers.push_back({"rho", {m.rho, 0.0, 0.0}});
    f.markers.push_back({"1", {1.0, 0.0, 0.0}});
    f.markers.push_back({"rho_1", {0.0, m.rho1, 0.0}});
    f.markers.push_back({"omega0", {lm.omega0, 0.0, 0.0}});
    if (id == 4) {
        f.markers.push_back({"w_1", {*lm.w1, 0.0, 0.0}});
        f.markers.push_back({"w_2", {*lm.w2, 0.0, 0.0}});
        f.markers.push_back({"f(rho_1)", {0.0, lm.f_rho1, 0.0}});
    }
    return f;
}

// Junction chart value between consecutive line bricks m and m+1.
double junction_psi(const Embedding& e, int m) { return e.line_bricks()[m + 1].hi; }

double junction_shadow(const Embedding& e, int m) {
    auto j = connected_in(e.map(), e.line_bricks()[m].code, e.line_bricks()[m + 1].code);
    if (!j) throw Error("line table bricks are not glued at index " + std::to_string(m));
    return e.shadow_theta(*j);
}

FigureSeries figure_line_layout(const Embedding& e, int id) {
    FigureSeries f;
    f.figure_id = id;
    const auto& bricks = e.line_bricks();
    Polyline pl{"breakpoints", {}, false};
    pl.pts.push_back({bricks.front().hi, 0.0, 0.0});
    int limit = std::min<int>(id == 2 ? 12 : 14, static_cast<int>(bricks.size()));
    for (int m = 0; m < limit; ++m) {
        pl.pts.push_back({bricks[m].lo, 0.0, 0.0});
        if (m >= 1) {
            if (id == 5)
                f.markers.push_back({"d_" + std::to_string(bricks[m].d_index),
                                     {0.5 * (bricks[m].lo + bricks[m].hi), 0.0, 0.0}});
            if (id == 2 && m >= 2)
                f.markers.push_back({"s" + std::to_string(m), {bricks[m].lo, 0.0, 0.0}});
        }
    }
    f.polylines.push_back(std::move(pl));
    f.markers.push_back({"1", {bricks.front().hi, 0.0, 0.0}});
    f.markers.push_back({"0", {bricks.front().lo, 0.0, 0.0}});
    if (id == 2) {
        f.markers.push_back({"-rho_1", {bricks[1].lo, 0.0, 0.0}});
        if (e.label().value == Case::Case1)
            f.markers.push_back({"a", {e.tail_a().value, 0.0, 0.0}});
    }
    return f;
}

FigureSeries figure_arc_layout(const Embedding& e) {
    FigureSeries f;
    f.figure_id = 6;
    const auto& arcs = e.arc_bricks();
    auto center = std::find_if(arcs.begin(), arcs.end(), [](const Embedding::Brick& b) {
        return b.code == TypeCode::t_infinity();
    });
    int ic = static_cast<int>(center - arcs.begin());
    Polyline pl{"breakpoints", {}, false};
    for (int i = ic - 2; i <= ic + 2; ++i) {
        pl.pts.push_back({arcs[i].lo, 0.0, 0.0});
        f.markers.push_back({"d_" + std::to_string(arcs[i].d_index),
                             {0.5 * (arcs[i].lo + arcs[i].hi), 0.0, 0.0}});
    }
    pl.pts.push_back({arcs[ic + 2].hi, 0.0, 0.0});
    f.polylines.push_back(std::move(pl));
    f.markers.push_back({"0", {arcs[ic].lo, 0.0, 0.0}});
    f.markers.push_back({"rho_1", {arcs[ic].hi, 0.0, 0.0}});
    if (e.label().value == Case::Case3a) {
        f.markers.push_back({"a_inf", {e.a_inf(), 0.0, 0.0}});
        f.markers.push_back({"b_inf", {e.b_inf(), 0.0, 0.0}});
    }
    return f;
}

// Planar model: the line folded by h against the shadow coordinate, with the
// arc drawn at h = 0.
FigureSeries figure_planar_model(const Embedding& e, int id, int node_count) {
    FigureSeries f;
    f.figure_id = id;
    const auto& bricks = e.line_bricks();
    int limit = std::min<int>(node_count, static_cast<int>(bricks.size()) - 1);

    Polyline ray{"ray", {}, false};
    {
        LimitPoint top = decode_point(e.map(), 1.0, TypeCode::t_n(0));
        ray.pts.push_back({e.h_compress(1.0), e.arc_normalized(e.shadow_theta(top)), 0.0});
    }
    std::vector<int> counts;
    for (int m = 0; m < limit; ++m) {
        // Node m sits between bricks m and m+1, at minus the summed lengths
        // of bricks 1..m.
        double ell = junction_psi(e, m);
        double v = e.arc_normalized(junction_shadow(e, m));
        ray.pts.push_back({e.h_compress(ell), v, 0.0});
        if (m >= 1) {
            if (bricks[m].d_index >= static_cast<int>(counts.size()))
                counts.resize(bricks[m].d_index + 1, 0);
            ++counts[bricks[m].d_index];
        }
        std::string label;
        if (id == 3) {
            label = m == 0 ? "0" : (m == 1 ? "-rho" : "-" + std::to_string(m) + "rho");
        } else {
            label = m == 0 ? "0" : sum_label(counts);
        }
        f.markers.push_back({label, ray.pts.back()});
    }
    f.polylines.push_back(std::move(ray));
    f.polylines.push_back({"arc", {{0.0, -1.0, 0.0}, {0.0, 1.0, 0.0}}, false});
    f.markers.push_back({"1", f.polylines[0].pts.front()});
    if (id == 3) {
        f.markers.push_back({"(0,inf)", {0.0, -1.0, 0.0}});
        f.markers.push_back({"(rho,inf)", {0.0, 1.0, 0.0}});
    } else {
        f.markers.push_back({"(a_inf,inf)", {0.0, -1.0, 0.0}});
        f.markers.push_back({"(b_inf,inf)", {0.0, 1.0, 0.0}});
        const auto& arcs = e.arc_bricks();
        auto center = std::find_if(arcs.begin(), arcs.end(), [](const Embedding::Brick& b) {
            return b.code == TypeCode::t_infinity();
        });
        int ic = static_cast<int>(center - arcs.begin());
        for (int i = ic - 3; i <= ic + 3; ++i) {
            if (i < 0 || i >= static_cast<int>(arcs.size())) continue;
            double mid = e.arc_normalized(0.5 * (arcs[i].lo + arcs[i].hi));
            f.markers.push_back({"d_" + std::to_string(arcs[i].d_index), {0.0, mid, 0.0}});
        }
    }
    return f;
}

Polyline base_ray(const Embedding& e, int side_nodes) {
    const double d1 = e.d()[1], d2 = e.d()[2];
    Polyline pl{"base_ray", {}, false};
    for (int k = side_nodes; k >= 0; --k) {
        auto xy = e.base_chart(-k * d1);
        pl.pts.push_back({xy[0], xy[1], 0.0});
    }
    for (int k = 0; k <= side_nodes; ++k) {
        auto xy = e.base_chart(e.map().rho + k * d2);
        pl.pts.push_back({xy[0], xy[1], 0.0});
    }
    return pl;
}

FigureSeries figure_base_plane(const Embedding& e) {
    FigureSeries f;
    f.figure_id = 8;
    const double d1 = e.d()[1], d2 = e.d()[2];
    const double rho = e.map().rho;
    f.polylines.push_back(base_ray(e, 10));
    f.polylines.push_back({"arc_minus", {{0.0, -1.0, 0.0}, {0.0, 1.0, 0.0}}, false});
    f.polylines.push_back({"arc_plus", {{1.0, -1.0, 0.0}, {1.0, 1.0, 0.0}}, false});
    auto at = [&](double t) {
        auto xy = e.base_chart(t);
        return std::array<double, 3>{xy[0], xy[1], 0.0};
    };
    f.markers.push_back({"0", at(0.0)});
    f.markers.push_back({"rho", at(rho)});
    f.markers.push_back({"rho_1", at(rho + d2)});
    f.markers.push_back({"-d_1", at(-d1)});
    for (int k = 2; k <= 3; ++k)
        f.markers.push_back({"-" + std::to_string(k) + "d_1", at(-k * d1)});
    for (int k = 2; k <= 3; ++k)
        f.markers.push_back({"rho+" + std::to_string(k) + "d_2", at(rho + k * d2)});
    f.markers.push_back({"(0,-inf)", {0.0, -1.0, 0.0}});
    f.markers.push_back({"(f(rho_1),-inf)", {0.0, 1.0, 0.0}});
    f.markers.push_back({"(rho,+inf)", {1.0, -1.0, 0.0}});
    f.markers.push_back({"(rho_1,+inf)", {1.0, 1.0, 0.0}});
    return f;
}

FigureSeries figure_model3d(const Embedding& e) {
    FigureSeries f;
    f.figure_id = 9;
    Polyline base = base_ray(e, 10);
    base.is3d = true;
    f.polylines.push_back(std::move(base));
    f.polylines.push_back({"arc_minus", {{0.0, -1.0, 0.0}, {0.0, 1.0, 0.0}}, true});
    f.polylines.push_back({"arc_plus", {{1.0, -1.0, 0.0}, {1.0, 1.0, 0.0}}, true});

    const auto& bricks = e.line_bricks();
    Polyline wind{"winding_ray", {}, true};
    int limit = std::min<int>(14, static_cast<int>(bricks.size()));
    const int per_brick = 8;
    for (int m = 0; m < limit; ++m) {
        for (int q = 0; q < per_brick; ++q) {
            double ell = bricks[m].hi -
                         (bricks[m].hi - bricks[m].lo) * (q + (m ? 0.0 : 0.5)) / per_brick;
            ModelPoint mp = e.model_coordinates({Sheet::Line, ell});
            wind.pts.push_back(mp.x);
        }
    }
    f.polylines.push_back(std::move(wind));

    auto base_at = [&](double t) {
        auto xy = e.base_chart(t);
        return std::array<double, 3>{xy[0], xy[1], 0.0};
    };
    f.markers.push_back({"1", e.model_coordinates({Sheet::Line, 1.0}).x});
    std::vector<int> counts;
    for (int m = 1; m <= 5 && m < static_cast<int>(bricks.size()); ++m) {
        if (bricks[m].d_index >= static_cast<int>(counts.size()))
            counts.resize(bricks[m].d_index + 1, 0);
        ++counts[bricks[m].d_index];
        ModelPoint mp = e.model_coordinates({Sheet::Line, bricks[m].lo});
        f.markers.push_back({m == 0 ? "0" : sum_label(counts), mp.x});
    }
    f.markers.push_back({"(0,inf)", base_at(0.0)});
    f.markers.push_back({"(rho,inf)", base_at(e.map().rho)});
    f.markers.push_back({"(rho_1,inf)", base_at(e.map().rho1)});
    f.markers.push_back({"(0,-inf)", {0.0, -1.0, 0.0}});
    f.markers.push_back({"(d_1,-inf)", {0.0, 1.0, 0.0}});
    f.markers.push_back({"(rho,+inf)", {1.0, -1.0, 0.0}});
    f.markers.push_back({"(rho_1,+inf)", {1.0, 1.0, 0.0}});
    return f;
}

}  // namespace

FigureSeries build_figure(const Embedding& e, int figure_id) {
    const CaseLabel& l = e.label();
    switch (figure_id) {
        case 1:
            return figure_graph(e, 1);
        case 2:
            require_case(l.value == Case::Case1 || l.value == Case::Case2, 2, "case 1 or 2");
            return figure_line_layout(e, 2);
        case 3:
            require_case(l.value == Case::Case2, 3, "case 2");
            return figure_planar_model(e, 3, 8);
        case 4:
            require_case(is_case3(l), 4, "case 3a or 3b");
            return figure_graph(e, 4);
        case 5:
            require_case(is_case3(l), 5, "case 3a or 3b");
            return figure_line_layout(e, 5);
        case 6:
            require_case(is_case3(l), 6, "case 3a or 3b");
            return figure_arc_layout(e);
        case 7:
            require_case(l.value == Case::Case3a, 7, "case 3a");
            return figure_planar_model(e, 7, 13);
        case 8:
            require_case(l.value == Case::Case3b, 8, "case 3b");
            return figure_base_plane(e);
        case 9:
            require_case(l.value == Case::Case3b, 9, "case 3b");
            return figure_model3d(e);
        default:
            throw DomainError("figure id must be 1..9");
    }
}

void write_figure_csv(const FigureSeries& f, std::ostream& out) {
    out << "record,label,seq,x,y,z\n";
    for (const auto& pl : f.polylines) {
        for (std::size_t i = 0; i < pl.pts.size(); ++i) {
            out << "polyline," << pl.label << ',' << i << ',' << fmt17(pl.pts[i][0]) << ','
                << fmt17(pl.pts[i][1]) << ',';
            if (pl.is3d) out << fmt17(pl.pts[i][2]);
            out << '\n';
        }
    }
    for (const auto& mk : f.markers) {
        out << "marker," << mk.label << ",0," << fmt17(mk.pt[0]) << ',' << fmt17(mk.pt[1]) << ',';
        bool is3d = !f.polylines.empty() && f.polylines.front().is3d;
        if (is3d) out << fmt17(mk.pt[2]);
        out << '\n';
    }
}

namespace {

struct Projection {
    int ix, iy;  // indices into the point triple
    double x0, y0, sx, sy;
};

void svg_panel(std::ostream& out, const FigureSeries& f, int ix, int iy, double ox,
               double panel_w, double panel_h) {
    double lo_x = 1e300, hi_x = -1e300, lo_y = 1e300, hi_y = -1e300;
    auto see = [&](const std::array<double, 3>& p) {
        lo_x = std::min(lo_x, p[ix]); hi_x = std::max(hi_x, p[ix]);
        lo_y = std::min(lo_y, p[iy]); hi_y = std::max(hi_y, p[iy]);
    };
    for (const auto& pl : f.polylines)
        for (const auto& p : pl.pts) see(p);
    for (const auto& mk : f.markers) see(mk.pt);
    if (hi_x <= lo_x) hi_x = lo_x + 1.0;
    if (hi_y <= lo_y) hi_y = lo_y + 1.0;
    double pad = 30.0;
    double sx = (panel_w - 2 * pad) / (hi_x - lo_x);
    double sy = (panel_h - 2 * pad) / (hi_y - lo_y);
    auto X = [&](double v) { return ox + pad + (v - lo_x) * sx; };
    auto Y = [&](double v) { return panel_h - pad - (v - lo_y) * sy; };

    for (const auto& pl : f.polylines) {
        out << "<polyline fill=\"none\" stroke=\"black\" stroke-width=\"1\" points=\"";
        for (const auto& p : pl.pts) {
            char buf[64];
            std::snprintf(buf, sizeof(buf), "%.3f,%.3f ", X(p[ix]), Y(p[iy]));
            out << buf;
        }
        out << "\"/>\n";
    }
    for (const auto& mk : f.markers) {
        char buf[200];
        std::snprintf(buf, sizeof(buf),
                      "<circle cx=\"%.3f\" cy=\"%.3f\" r=\"2\" fill=\"red\"/>"
                      "<text x=\"%.3f\" y=\"%.3f\" font-size=\"9\">%s</text>\n",
                      X(mk.pt[ix]), Y(mk.pt[iy]), X(mk.pt[ix]) + 3.0, Y(mk.pt[iy]) - 3.0,
                      mk.label.c_str());
        out << buf;
    }
}

}  // namespace

void write_figure_svg(const FigureSeries& f, std::ostream& out) {
    bool is3d = !f.polylines.empty() && f.polylines.front().is3d;
    double w = is3d ? 1600.0 : 800.0, h = 600.0;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h
        << "\" viewBox=\"0 0 " << w << ' ' << h << "\">\n";
    if (!is3d) {
        svg_panel(out, f, 0, 1, 0.0, 800.0, 600.0);
    } else {
        // Oxy projection on the left, Ozx on the right.
        svg_panel(out, f, 0, 1, 0.0, 800.0, 600.0);
        svg_panel(out, f, 2, 0, 800.0, 800.0, 600.0);
    }
    out << "</svg>\n";
}

}  // namespace invlim
