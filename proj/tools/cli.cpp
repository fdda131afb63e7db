#include "cli.hpp"

#include <algorithm>
#include <fstream>
#include <limits>
#include <optional>
#include <ostream>

#include <CLI11.hpp>

#include "dtmfilt/dtm.hpp"
#include "dtmfilt/errors.hpp"
#include "dtmfilt/filtration.hpp"
#include "dtmfilt/metrics.hpp"
#include "dtmfilt/persistence.hpp"
#include "dtmfilt/pointcloud.hpp"
#include "dtmfilt/render.hpp"

namespace dtmf::cli {

namespace {

void write_text(const std::string& path, const std::string& text, std::ostream& out) {
    if (path.empty() || path == "-") {
        out << text;
        return;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file) throw Error("cannot write " + path);
    file << text;
}

ReductionStrategy parse_strategy(const std::string& name) {
    if (name == "standard") return ReductionStrategy::standard;
    if (name == "twist") return ReductionStrategy::twist;
    if (name == "cohomology") return ReductionStrategy::cohomology;
    throw ParameterError("unknown strategy '" + name + "' (expected standard, twist or cohomology)");
}

// Top-dimensional homology is not meaningful without the next simplices.
std::vector<int> default_dims(const FilteredComplex& complex, const std::vector<int>& requested) {
    if (!requested.empty()) return requested;
    std::vector<int> dims;
    for (int d = 0; d < std::max(complex.max_dim(), 1); ++d) dims.push_back(d);
    return dims;
}

DiscreteMeasure load_as_measure(const std::string& path, bool weighted) {
    return weighted ? load_measure(path) : DiscreteMeasure::uniform(load_cloud(path));
}

struct DtmArgs {
    std::string input, queries, output, m;
    bool weighted = false;
};

struct PipelineArgs {
    std::string input, m, p = "1", diagram_out, complex_out, strategy = "twist", filtration = "rips";
    bool weighted = false, keep_zero = false;
    double tol = 1e-6;
    int max_dim = 2;
    std::optional<double> t_max;
    std::vector<int> dims;
};

struct ReduceArgs {
    std::string complex, diagram_out, strategy = "twist";
    bool keep_zero = false;
    std::vector<int> dims;
};

struct StabilityArgs {
    std::string theorem, x, gamma, omega, y, mu, m, p = "1", report_out, strategy = "twist";
    bool weighted = false;
    int max_dim = 2;
    std::optional<double> t_max;
    double tol = 1e-6;
    std::vector<int> dims{0, 1};
};

struct PairArgs {
    std::string a, b;
    bool weighted = false;
    int dim = 0;
};

struct EmbedArgs {
    std::string input, output;
    std::size_t dim = 3, stride = 1;
};

struct SynthArgs {
    std::string kind, output;
    std::size_t n = 0, outliers = 0;
    std::uint64_t seed = 0;
};

struct RenderArgs {
    std::string diagram, output;
};

int cmd_dtm(const DtmArgs& a, std::ostream& out) {
    const DtmParams params = DtmParams::parse(a.m);
    const DiscreteMeasure mu = load_as_measure(a.input, a.weighted);
    const PointCloud queries = a.queries.empty() ? mu.support() : load_cloud(a.queries);
    const WeightFunction values = dtm_values(mu, queries, params);
    std::string text;
    for (double v : values.values()) text += format_real(v) + "\n";
    write_text(a.output, text, out);
    return ok;
}

int cmd_pipeline(const PipelineArgs& a, std::ostream& out) {
    const DtmParams params = DtmParams::parse(a.m);
    const PExponent p = PExponent::parse(a.p);
    const DiscreteMeasure mu = load_as_measure(a.input, a.weighted);
    FilteredComplex complex;
    if (a.filtration == "rips") {
        complex = dtm_filtration(mu, params, p, a.max_dim, a.t_max);
    } else if (a.filtration == "cech") {
        MinimaxOptions solver;
        solver.tol = a.tol;
        const double t_max = a.t_max ? *a.t_max : std::numeric_limits<double>::infinity();
        complex = build_weighted_cech(mu.support(), dtm_weights(mu, params), p, a.max_dim, t_max, solver);
    } else {
        throw ParameterError("unknown filtration '" + a.filtration + "' (expected rips or cech)");
    }
    if (!a.complex_out.empty()) save_complex(a.complex_out, complex);
    ReduceOptions options;
    options.dims = default_dims(complex, a.dims);
    options.strategy = parse_strategy(a.strategy);
    options.keep_zero = a.keep_zero;
    const PersistenceDiagram diagram = reduce(complex, options);
    write_text(a.diagram_out, format_diagram(diagram), out);
    if (diagram.censor_value && !a.diagram_out.empty()) {
        out << "essential deaths censored at t_max = " << format_real(*diagram.censor_value) << "\n";
    }
    return ok;
}

int cmd_reduce(const ReduceArgs& a, std::ostream& out) {
    const FilteredComplex complex = load_complex(a.complex);
    ReduceOptions options;
    options.dims = default_dims(complex, a.dims);
    options.strategy = parse_strategy(a.strategy);
    options.keep_zero = a.keep_zero;
    write_text(a.diagram_out, format_diagram(reduce(complex, options)), out);
    return ok;
}

int cmd_stability(const StabilityArgs& a, std::ostream& out) {
    const Theorem theorem = parse_theorem(a.theorem);
    const DtmParams params = DtmParams::parse(a.m);
    const PExponent p = PExponent::parse(a.p);
    CertifyInputs inputs;
    if (theorem == Theorem::p44) {
        if (a.x.empty() || a.y.empty()) throw ParameterError("P4.4 needs --x and --y");
        inputs.mu = load_as_measure(a.x, a.weighted);
        inputs.nu = load_as_measure(a.y, a.weighted);
    } else if (theorem == Theorem::p48) {
        if (a.mu.empty() || a.x.empty()) throw ParameterError("P4.8-bound needs --mu and --x");
        inputs.mu = load_as_measure(a.mu, a.weighted);
        inputs.x = load_cloud(a.x);
    } else {
        if (a.x.empty() || a.gamma.empty()) throw ParameterError(a.theorem + " needs --x and --gamma");
        inputs.x = load_cloud(a.x);
        inputs.gamma = load_cloud(a.gamma);
        if (!a.omega.empty()) inputs.omega = load_cloud(a.omega);
        if (!a.y.empty()) inputs.y = load_cloud(a.y);
    }
    CertifyOptions options;
    options.max_dim = a.max_dim;
    options.t_max = a.t_max;
    options.dims = a.dims;
    options.solver.tol = a.tol;
    options.strategy = parse_strategy(a.strategy);
    const StabilityReport report = certify(theorem, inputs, params, p, options);
    write_text(a.report_out, format_report(report), out);
    return ok;
}

int cmd_render(const RenderArgs& a, std::ostream& out) {
    write_text(a.output, render_svg(load_diagram(a.diagram)), out);
    return ok;
}

int cmd_bottleneck(const PairArgs& a, std::ostream& out) {
    const BottleneckResult r = bottleneck_detail(load_diagram(a.a), load_diagram(a.b), a.dim);
    out << format_real(r.distance) << "\n";
    if (!r.explanation.empty()) out << r.explanation << "\n";
    return ok;
}

int cmd_w2(const PairArgs& a, std::ostream& out) {
    out << format_real(wasserstein2(load_as_measure(a.a, a.weighted), load_as_measure(a.b, a.weighted))) << "\n";
    return ok;
}

int cmd_hausdorff(const PairArgs& a, std::ostream& out) {
    out << format_real(hausdorff(load_cloud(a.a), load_cloud(a.b))) << "\n";
    return ok;
}

int cmd_embed(const EmbedArgs& a, std::ostream& out) {
    write_text(a.output, format_points(delay_embedding(load_series(a.input), a.dim, a.stride)), out);
    return ok;
}

int cmd_synth(const SynthArgs& a, std::ostream& out) {
    write_text(a.output, format_points(synth(parse_synth_kind(a.kind), a.n, a.outliers, a.seed)), out);
    return ok;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"DTM-weighted Cech/Rips filtrations and their persistence diagrams", "dtmfilt"};
    app.require_subcommand(1);

    DtmArgs dtm_args;
    auto* dtm = app.add_subcommand("dtm", "DTM values of a point cloud or measure");
    dtm->add_option("--input", dtm_args.input, "point CSV")->required();
    dtm->add_flag("--weighted", dtm_args.weighted, "last column of the input is a mass");
    dtm->add_option("--m", dtm_args.m, "mass parameter, decimal or k/n")->required();
    dtm->add_option("--queries", dtm_args.queries, "query points (default: the input points)");
    dtm->add_option("--output", dtm_args.output, "output CSV (default: stdout)");

    PipelineArgs pipe_args;
    auto* pipe = app.add_subcommand("pipeline", "DTM filtration followed by persistence");
    pipe->add_option("--input", pipe_args.input, "point CSV")->required();
    pipe->add_flag("--weighted", pipe_args.weighted, "last column of the input is a mass");
    pipe->add_option("--m", pipe_args.m, "mass parameter, decimal or k/n")->required();
    pipe->add_option("--p", pipe_args.p, "exponent p >= 1 or inf")->capture_default_str();
    pipe->add_option("--max-dim", pipe_args.max_dim, "largest simplex dimension")->capture_default_str();
    pipe->add_option("--t-max", pipe_args.t_max, "truncation value (default: diameter for rips, none for cech)");
    pipe->add_option("--filtration", pipe_args.filtration, "rips or cech")->capture_default_str();
    pipe->add_option("--tol", pipe_args.tol, "minimax solver tolerance for cech")->capture_default_str();
    pipe->add_option("--dims", pipe_args.dims, "homology dimensions (default: below max-dim)")->delimiter(',');
    pipe->add_option("--diagram-out", pipe_args.diagram_out, "diagram CSV (default: stdout)");
    pipe->add_option("--complex-out", pipe_args.complex_out, "write the filtered complex");
    pipe->add_flag("--keep-zero", pipe_args.keep_zero, "keep zero-persistence points");
    pipe->add_option("--strategy", pipe_args.strategy, "standard, twist or cohomology")->capture_default_str();

    ReduceArgs red_args;
    auto* red = app.add_subcommand("reduce", "persistence diagram of a complex file");
    red->add_option("--complex", red_args.complex, "complex file")->required();
    red->add_option("--diagram-out", red_args.diagram_out, "diagram CSV (default: stdout)");
    red->add_option("--dims", red_args.dims, "homology dimensions (default: below max-dim)")->delimiter(',');
    red->add_flag("--keep-zero", red_args.keep_zero, "keep zero-persistence points");
    red->add_option("--strategy", red_args.strategy, "standard, twist or cohomology")->capture_default_str();

    StabilityArgs stab_args;
    auto* stab = app.add_subcommand("stability", "compare a measured bottleneck distance with a stability bound");
    stab->add_option("--theorem", stab_args.theorem, "P4.4, T4.6, T4.13 or P4.8-bound")->required();
    stab->add_option("--x", stab_args.x, "point CSV for X");
    stab->add_option("--gamma", stab_args.gamma, "subset of X");
    stab->add_option("--omega", stab_args.omega, "subset of Y (default: gamma)");
    stab->add_option("--y", stab_args.y, "point CSV for Y (default: omega)");
    stab->add_option("--mu", stab_args.mu, "measure for P4.8-bound");
    stab->add_flag("--weighted", stab_args.weighted, "measure files carry a mass column");
    stab->add_option("--m", stab_args.m, "mass parameter, decimal or k/n")->required();
    stab->add_option("--p", stab_args.p, "exponent p >= 1 or inf")->capture_default_str();
    stab->add_option("--dims", stab_args.dims, "homology dimensions")->delimiter(',')->capture_default_str();
    stab->add_option("--max-dim", stab_args.max_dim, "largest simplex dimension")->capture_default_str();
    stab->add_option("--t-max", stab_args.t_max, "truncation value (default: diameter of both clouds)");
    stab->add_option("--tol", stab_args.tol, "minimax solver tolerance")->capture_default_str();
    stab->add_option("--strategy", stab_args.strategy, "standard, twist or cohomology")->capture_default_str();
    stab->add_option("--report-out", stab_args.report_out, "report JSON (default: stdout)");

    RenderArgs render_args;
    auto* render = app.add_subcommand("render", "SVG plot of a diagram");
    render->add_option("--diagram", render_args.diagram, "diagram CSV")->required();
    render->add_option("--output", render_args.output, "SVG file (default: stdout)");

    PairArgs bn_args;
    auto* bn = app.add_subcommand("bottleneck", "bottleneck distance between two diagram CSVs");
    bn->add_option("a", bn_args.a, "first diagram")->required();
    bn->add_option("b", bn_args.b, "second diagram")->required();
    bn->add_option("--dim", bn_args.dim, "homology dimension")->capture_default_str();

    PairArgs w2_args;
    auto* w2 = app.add_subcommand("w2", "Wasserstein-2 distance between two measures");
    w2->add_option("a", w2_args.a, "first point CSV")->required();
    w2->add_option("b", w2_args.b, "second point CSV")->required();
    w2->add_flag("--weighted", w2_args.weighted, "files carry a mass column");

    PairArgs hd_args;
    auto* hd = app.add_subcommand("hausdorff", "Hausdorff distance between two point clouds");
    hd->add_option("a", hd_args.a, "first point CSV")->required();
    hd->add_option("b", hd_args.b, "second point CSV")->required();

    EmbedArgs embed_args;
    auto* embed = app.add_subcommand("embed", "delay embedding of a time series");
    embed->add_option("--input", embed_args.input, "one sample per line")->required();
    embed->add_option("--dim", embed_args.dim, "embedding dimension")->capture_default_str();
    embed->add_option("--stride", embed_args.stride, "delay between coordinates")->capture_default_str();
    embed->add_option("--output", embed_args.output, "point CSV (default: stdout)");

    SynthArgs synth_args;
    auto* syn = app.add_subcommand("synth", "seeded synthetic point clouds");
    syn->add_option("--kind", synth_args.kind, "circle, square or circle-with-outliers")->required();
    syn->add_option("--n", synth_args.n, "number of points")->required();
    syn->add_option("--outliers", synth_args.outliers, "number of outliers")->capture_default_str();
    syn->add_option("--seed", synth_args.seed, "generator seed")->capture_default_str();
    syn->add_option("--output", synth_args.output, "point CSV (default: stdout)");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    if (!reversed.empty()) reversed.pop_back();
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? ok : usage;
    }

    try {
        if (*dtm) return cmd_dtm(dtm_args, out);
        if (*pipe) return cmd_pipeline(pipe_args, out);
        if (*red) return cmd_reduce(red_args, out);
        if (*stab) return cmd_stability(stab_args, out);
        if (*render) return cmd_render(render_args, out);
        if (*bn) return cmd_bottleneck(bn_args, out);
        if (*w2) return cmd_w2(w2_args, out);
        if (*hd) return cmd_hausdorff(hd_args, out);
        if (*embed) return cmd_embed(embed_args, out);
        if (*syn) return cmd_synth(synth_args, out);
    } catch (const SizeError& e) {
        err << "error: " << e.what() << "\n";
        return size_guard;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return usage;
    }
    return usage;
}

}  // namespace dtmf::cli
