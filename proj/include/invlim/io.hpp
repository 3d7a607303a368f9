#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "invlim/embedding.hpp"

namespace invlim {

// Shortest exact decimal form of a double (17 significant digits round-trip).
std::string fmt17(double v);

// "x0,code,depth,x_0 x_1 ..." row for a decoded point.
std::string limit_point_csv_row(const LimitPoint& p);

struct EmbedSample {
    ExtendedCoord coord;
    ModelPoint model;
};

struct EmbedResult {
    std::vector<EmbedSample> samples;
    std::vector<LimitPoint> points;  // decoded line/arc points where available
    int skipped = 0;                 // coordinates outside the covered range
};

// Deterministic uniform sampling of one sheet of the embedded model.
EmbedResult embed_samples(const Embedding& e, Sheet sheet, int samples, int depth);

void write_embed_csv(const EmbedResult& r, std::ostream& out);
void write_points_csv(const EmbedResult& r, std::ostream& out);

}  // namespace invlim
