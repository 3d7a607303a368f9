// Command-line surface: classification reports, periodic-structure census,
// embedded sampling, and figure emission.
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "invlim/figures.hpp"
#include "invlim/io.hpp"

namespace {

using namespace invlim;

struct ParamArgs {
    std::optional<double> rho, delta, gamma, alpha;
    std::string preset;
};

void add_param_options(CLI::App* cmd, ParamArgs& args) {
    cmd->add_option("--rho", args.rho, "left/right branch split point");
    cmd->add_option("--delta", args.delta, "left branch denominator constant");
    cmd->add_option("--gamma", args.gamma, "left branch denominator slope");
    cmd->add_option("--alpha", args.alpha, "left branch numerator slope");
    cmd->add_option("--preset", args.preset, "key=value parameter file");
}

UnimodalMap load_map(const ParamArgs& args) {
    if (!args.preset.empty()) return parse_preset_file(args.preset);
    if (!(args.rho && args.delta && args.gamma && args.alpha))
        throw Error("give either --preset or all of --rho --delta --gamma --alpha");
    return validate_params(*args.rho, *args.delta, *args.gamma, *args.alpha);
}

void print_census(const PeriodCensus& census) {
    std::cout << "census: periods {";
    bool first = true;
    for (int p : census.detected_periods) {
        if (!first) std::cout << ',';
        std::cout << p;
        first = false;
    }
    std::cout << "}";
    if (census.stabilization_n >= 0)
        std::cout << " stabilization n=" << census.stabilization_n;
    else
        std::cout << " (not stabilized)";
    std::cout << " periodic intervals: " << census.periodic_intervals.size() << "\n";
    for (const auto& iv : census.periodic_intervals)
        std::cout << "  [" << fmt17(iv.lo) << ", " << fmt17(iv.hi) << "] period " << iv.period
                  << "\n";
}

int run_classify(const UnimodalMap& m, int grid, int pmax, double tol) {
    CaseLabel label = classify(m);
    Landmarks lm = landmarks(m);
    std::cout << to_string(label.value);
    if (label.n) std::cout << " (n=" << *label.n << ")";
    std::cout << "\n";
    if (!label.diagnostic.empty()) std::cout << "  " << label.diagnostic << "\n";
    std::cout << "  rho=" << fmt17(m.rho) << " delta=" << fmt17(m.delta)
              << " gamma=" << fmt17(m.gamma) << " alpha=" << fmt17(m.alpha)
              << " rho1=" << fmt17(m.rho1) << "\n";
    std::cout << "  omega0=" << fmt17(lm.omega0) << " multiplier=" << fmt17(lm.omega0_multiplier)
              << (std::fabs(lm.omega0_multiplier) < 1.0 ? " (attracting)" : " (repelling)")
              << "\n";
    if (lm.w1)
        std::cout << "  cycle w1=" << fmt17(*lm.w1) << " w2=" << fmt17(*lm.w2)
                  << " multiplier=" << fmt17(*lm.cycle_multiplier)
                  << (std::fabs(*lm.cycle_multiplier) < 1.0 ? " (attracting)" : " (not attracting)")
                  << "\n";
    PeriodCensus census = period_census(m, grid, pmax, tol);
    print_census(census);
    bool agree = census_agrees(label, census);
    std::cout << (agree ? "classifier and census agree" : "classifier and census disagree")
              << "\n";
    return agree ? 0 : 2;
}

Sheet parse_sheet(const std::string& name) {
    if (name == "line") return Sheet::Line;
    if (name == "arc_inf") return Sheet::ArcInf;
    if (name == "arc_minus_inf") return Sheet::ArcMinusInf;
    if (name == "arc_plus_inf") return Sheet::ArcPlusInf;
    throw Error("unknown sheet: " + name);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"inverse limits of two-hyperbola unimodal interval maps"};
    app.require_subcommand(1);

    ParamArgs args;
    int grid = 2048, pmax = 8, samples = 100, depth = kDefaultDepth, figure_id = 1;
    int line_bricks = 40;
    double tol = 1e-6;
    std::string sheet_name = "line", out_path, points_path, format = "csv";

    CLI::App* c_classify = app.add_subcommand("classify", "case label, landmarks and census");
    add_param_options(c_classify, args);
    c_classify->add_option("--grid", grid);
    c_classify->add_option("--pmax", pmax);
    c_classify->add_option("--tol", tol);

    CLI::App* c_census = app.add_subcommand("census", "periodic-structure census only");
    add_param_options(c_census, args);
    c_census->add_option("--grid", grid);
    c_census->add_option("--pmax", pmax);
    c_census->add_option("--tol", tol);

    CLI::App* c_embed = app.add_subcommand("embed", "sample one sheet of the embedded model");
    add_param_options(c_embed, args);
    c_embed->add_option("--sheet", sheet_name, "line | arc_inf | arc_minus_inf | arc_plus_inf");
    c_embed->add_option("--samples", samples);
    c_embed->add_option("--depth", depth);
    c_embed->add_option("--line-bricks", line_bricks);
    c_embed->add_option("--out", out_path)->required();
    c_embed->add_option("--points", points_path, "also write decoded threads");

    CLI::App* c_figure = app.add_subcommand("figure", "emit figure data");
    add_param_options(c_figure, args);
    c_figure->add_option("--figure", figure_id)->required();
    c_figure->add_option("--out", out_path)->required();
    c_figure->add_option("--format", format, "csv | svg");
    c_figure->add_option("--line-bricks", line_bricks);

    CLI11_PARSE(app, argc, argv);

    try {
        UnimodalMap m = load_map(args);
        if (c_classify->parsed()) return run_classify(m, grid, pmax, tol);
        if (c_census->parsed()) {
            print_census(period_census(m, grid, pmax, tol));
            return 0;
        }
        EmbeddingOptions opt;
        opt.line_bricks = line_bricks;
        opt.depth = depth;
        Embedding e(m, opt);
        if (c_embed->parsed()) {
            EmbedResult r = embed_samples(e, parse_sheet(sheet_name), samples, depth);
            std::ofstream out(out_path);
            if (!out) throw Error("cannot write " + out_path);
            write_embed_csv(r, out);
            if (!points_path.empty()) {
                std::ofstream pts(points_path);
                if (!pts) throw Error("cannot write " + points_path);
                write_points_csv(r, pts);
            }
            if (r.skipped > 0)
                std::cerr << "warning: " << r.skipped << " samples outside the covered range\n";
            return 0;
        }
        FigureSeries f = build_figure(e, figure_id);
        std::ofstream out(out_path);
        if (!out) throw Error("cannot write " + out_path);
        if (format == "svg")
            write_figure_svg(f, out);
        else
            write_figure_csv(f, out);
        return 0;
    } catch (const ConstraintError& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 1;
    } catch (const Error& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 1;
    }
}
