#pragma once

#include <array>
#include <ostream>
#include <string>
#include <vector>

#include "invlim/embedding.hpp"

namespace invlim {

struct Polyline {
    std::string label;
    std::vector<std::array<double, 3>> pts;
    bool is3d = false;
};

struct Marker {
    std::string label;
    std::array<double, 3> pt{0.0, 0.0, 0.0};
};

struct FigureSeries {
    int figure_id = 0;
    std::vector<Polyline> polylines;
    std::vector<Marker> markers;
};

// Figures 1-9: 1/4 graph of the map, 2/5 line-chart layouts, 6 arc-chart
// layout, 3/7 planar models, 8 base plane of the period-four model, 9 its
// three-dimensional model.  Raises CaseError when the map's case does not
// carry the requested figure.
FigureSeries build_figure(const Embedding& e, int figure_id);

void write_figure_csv(const FigureSeries& f, std::ostream& out);
void write_figure_svg(const FigureSeries& f, std::ostream& out);

}  // namespace invlim
