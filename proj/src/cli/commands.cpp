#include "onion/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <CLI11.hpp>

#include "onion/certify.hpp"
#include "onion/io.hpp"
#include "onion/render.hpp"
#include "onion/symmetry.hpp"

namespace onion::cli {

namespace {

namespace fs = std::filesystem;

/// Smallest side used by the reference growth sweep; fits on smaller grids are flagged.
constexpr std::uint64_t kAsymptoticSide = 51;

struct Input {
    PointSet points;
    std::optional<Grid> grid;  // set when the points are a centered grid
};

std::uint64_t point_cap(const RunConfig& cfg) {
    if (cfg.cap) return *cfg.cap;
    if (const char* env = std::getenv(kCapEnv); env && *env) {
        try {
            return std::stoull(env);
        } catch (const std::exception&) {
            throw DomainError(std::string(kCapEnv) + " must be a positive integer");
        }
    }
    return kDefaultPointCap;
}

Input load_input(const RunConfig& cfg) {
    const std::uint64_t cap = point_cap(cfg);
    if (!cfg.input.empty()) {
        std::ifstream in(cfg.input);
        if (!in) throw ParseError("cannot open " + cfg.input);
        PointSet pts = io::read_points(in);
        if (pts.size() > cap) {
            throw SizeLimitError("input has " + std::to_string(pts.size()) + " points, above the cap of " +
                                     std::to_string(cap),
                                 Scalar(pts.size()));
        }
        auto grid = detect_grid(pts);
        return Input{std::move(pts), grid};
    }
    if (!cfg.d) throw DomainError("either --input or --d with --n/--side is required");
    if (cfg.n && cfg.side) throw DomainError("give --n or --side, not both");
    if (!cfg.n && !cfg.side) throw DomainError("--n or --side is required");
    if (cfg.side && *cfg.side == 0) throw DomainError("--side must be positive");
    if (cfg.side && *cfg.side % 2 == 0) {
        return Input{materialize_box(*cfg.d, Scalar(1), Scalar(*cfg.side), cap), std::nullopt};
    }
    Grid g{*cfg.d, cfg.n ? *cfg.n : (*cfg.side - 1) / 2};
    return Input{materialize(g, cap), g};
}

Engine engine_for(const RunConfig& cfg, const Input& in) {
    const std::size_t d = in.points.dimension();
    if (cfg.engine == "generic") return Engine::generic;
    if (cfg.engine == "orbit") {
        if (!in.grid) throw DomainError("engine 'orbit' needs a centered grid input");
        return Engine::orbit;
    }
    if (cfg.engine == "2d") {
        if (d != 2) throw DomainError("engine '2d' needs d = 2");
        return Engine::planar;
    }
    // auto: planar in the plane, orbit-reduced for other grids.
    if (d == 2) return Engine::planar;
    return in.grid ? Engine::orbit : Engine::generic;
}

LayerAssignment run_peel(const RunConfig& cfg, const Input& in, Engine engine, std::ostream& out) {
    PeelOptions opt;
    opt.engine = engine;
    opt.threads = cfg.threads;
    LayerAssignment a = peel(in.points, opt);
    if (cfg.cross_check) {
        Engine other = engine == Engine::generic ? (in.points.dimension() == 2 ? Engine::planar : Engine::orbit)
                                                 : Engine::generic;
        if (other == Engine::orbit && !in.grid) {
            out << "cross-check: no second engine applies to this input\n";
            return a;
        }
        PeelOptions alt = opt;
        alt.engine = other;
        if (!(peel(in.points, alt) == a)) throw InternalInconsistency("cross-check: engines disagree");
        out << "cross-check: engines agree\n";
    }
    return a;
}

void write_file(const fs::path& path, const std::string& text) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    std::ofstream f(path, std::ios::binary);
    if (!f) throw DomainError("cannot write " + path.string());
    f << text;
}

std::string read_file(const fs::path& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw ParseError("cannot read " + path.string());
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

std::string summary(const LayerAssignment& a) {
    std::string s = "layers: " + std::to_string(a.num_layers()) + "; sizes:";
    for (std::size_t k : a.layer_sizes()) s += ' ' + std::to_string(k);
    return s;
}

int cmd_peel(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    Input in = load_input(cfg);
    LayerAssignment a = run_peel(cfg, in, engine_for(cfg, in), out);
    std::optional<std::uint64_t> n = in.grid ? std::optional(in.grid->radius) : std::nullopt;
    if (cfg.one_based) {
        if (!n) throw DomainError("--one-based needs a centered grid");
        a = io::to_one_based(a, *n);
    }
    std::string body;
    if (cfg.format == Format::json) body = io::layers_to_json(a, n);
    if (cfg.format == Format::csv) body = io::layers_to_csv(a);

    if (!cfg.output.empty()) {
        write_file(cfg.output, body.empty() ? summary(a) + "\n" : body);
        out << summary(a) << '\n';
    } else if (!body.empty()) {
        out << body;
        err << summary(a) << '\n';
    } else {
        out << summary(a) << '\n';
    }
    return kOk;
}

int cmd_certify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    if (cfg.side && *cfg.side % 2 == 0) throw DomainError("certificates are defined for odd sides only");
    Input in = load_input(cfg);
    if (!in.grid) throw DomainError("certificates need a centered grid [-n,n]^d");
    const Grid g = *in.grid;
    LayerAssignment a = run_peel(cfg, in, engine_for(cfg, in), out);

    const fs::path dir(cfg.output_dir);
    const fs::path norm_path = dir / "norm-descent.cert";
    const fs::path chain_path = dir / "chain.cert";
    write_file(norm_path, to_text(build_norm_certificate(g, a)));
    write_file(chain_path, to_text(build_chain_certificate(g, a)));

    // Re-read from disk so what gets checked is what was written.
    auto norm = parse_norm_certificate(read_file(norm_path));
    auto chain = parse_chain_certificate(read_file(chain_path));
    for (const Verdict& v : {verify(norm), verify(chain), verify_against(norm, a), verify_against(chain, a)}) {
        if (!v) {
            err << "verification failed: " << v.reason << '\n';
            return kInternal;
        }
    }
    out << lower_bound(g.dimension, g.radius) << " ≤ " << a.num_layers() << " ≤ "
        << upper_bound(g.dimension, g.radius) << '\n';
    out << "wrote " << norm_path.string() << " and " << chain_path.string() << '\n';
    return kOk;
}

int cmd_render(RunConfig cfg, std::ostream& out) {
    if (!cfg.d && cfg.input.empty()) cfg.d = 2;
    Input in = load_input(cfg);
    if (in.points.dimension() != 2) throw DomainError("render needs d = 2");
    if (cfg.steps.empty()) throw DomainError("--steps is required");
    LayerAssignment a = peel_2d(in.points);
    const fs::path dir(cfg.output_dir);
    for (std::uint32_t step : cfg.steps) {
        std::string svg = render::step_svg(a, step);
        const fs::path path = dir / ("step_" + std::to_string(step) + ".svg");
        write_file(path, svg);
        out << path.string() << ": " << a.layer_sizes()[step - 1] << " vertices, radius^2 "
            << layer_max_norm_sq(a)[step - 1] << '\n';
    }
    return kOk;
}

int cmd_growth(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    if (cfg.sides.size() < 2) throw DomainError("need ≥ 2 sizes");
    std::vector<std::uint64_t> layers;
    out << "side\tlayers\n";
    for (std::uint64_t side : cfg.sides) {
        RunConfig one = cfg;
        one.d = 2;
        one.side = side;
        one.n.reset();
        one.input.clear();
        Input in = load_input(one);
        layers.push_back(peel_2d(in.points).num_layers());
        out << side << '\t' << layers.back() << '\n';
    }
    const auto fit = io::fit_log_log(cfg.sides, layers);
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.4f", fit.slope);
    out << "slope: " << buf << '\n';
    if (*std::min_element(cfg.sides.begin(), cfg.sides.end()) < kAsymptoticSide) {
        out << "warning: pre-asymptotic (smallest side below " << kAsymptoticSide << ")\n";
        err << "warning: fit is pre-asymptotic\n";
    }
    return kOk;
}

std::vector<std::uint64_t> parse_list(const std::string& s) {
    std::vector<std::uint64_t> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) continue;
        if (tok.find_first_not_of("0123456789") != std::string::npos) throw DomainError("bad list entry '" + tok + "'");
        out.push_back(std::stoull(tok));
    }
    return out;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact convex-layer peeling of integer point sets and grids"};
    app.require_subcommand(1, 1);
    RunConfig cfg;
    std::string format = "text";
    std::string steps, sides;

    auto add_input = [&](CLI::App* sub) {
        sub->add_option("--d", cfg.d, "Dimension")->check(CLI::PositiveNumber);
        sub->add_option("--n", cfg.n, "Grid radius: peel [-n,n]^d");
        sub->add_option("--side", cfg.side, "Side length; odd sides are centered, even sides are [1,side]^d");
        sub->add_option("--input", cfg.input, "Point file: whitespace-separated integer rows");
        sub->add_option("--cap", cfg.cap, std::string("Point-count cap (default from ") + kCapEnv + ")");
        sub->add_option("--threads", cfg.threads, "Worker threads inside a layer")->check(CLI::PositiveNumber);
    };
    auto add_engine = [&](CLI::App* sub) {
        sub->add_option("--engine", cfg.engine, "auto | generic | orbit | 2d")
            ->check(CLI::IsMember({"auto", "generic", "orbit", "2d"}));
        sub->add_flag("--cross-check", cfg.cross_check, "Also run a second engine and compare");
    };

    auto* peel_cmd = app.add_subcommand("peel", "Peel a grid or point file and report its layers");
    add_input(peel_cmd);
    add_engine(peel_cmd);
    peel_cmd->add_option("--format", format, "text | json | csv")->check(CLI::IsMember({"text", "json", "csv"}));
    peel_cmd->add_option("--output", cfg.output, "Write layer data to this file");
    peel_cmd->add_flag("--one-based", cfg.one_based, "Write grid coordinates in [1, 2n+1]");

    auto* certify_cmd = app.add_subcommand("certify", "Build and verify both layer-count certificates");
    add_input(certify_cmd);
    add_engine(certify_cmd);
    certify_cmd->add_option("--output-dir", cfg.output_dir, "Directory for the certificate files");

    auto* render_cmd = app.add_subcommand("render", "Draw planar peeling steps as SVG");
    add_input(render_cmd);
    render_cmd->add_option("--steps", steps, "Comma-separated 1-based steps")->required();
    render_cmd->add_option("--output-dir", cfg.output_dir, "Directory for step_<k>.svg");

    auto* growth_cmd = app.add_subcommand("growth", "Fit the planar layer-count growth exponent");
    growth_cmd->add_option("--sides", sides, "Comma-separated side lengths")->required();

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend() - (args.empty() ? 0 : 1));
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << e.what() << '\n';
        return kUsage;
    }

    try {
        cfg.format = format == "json" ? Format::json : format == "csv" ? Format::csv : Format::text;
        for (auto s : parse_list(steps)) cfg.steps.push_back(static_cast<std::uint32_t>(s));
        cfg.sides = parse_list(sides);
        if (peel_cmd->parsed()) return cmd_peel(cfg, out, err);
        if (certify_cmd->parsed()) return cmd_certify(cfg, out, err);
        if (render_cmd->parsed()) return cmd_render(cfg, out);
        return cmd_growth(cfg, out, err);
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << '\n';
        return kParse;
    } catch (const SizeLimitError& e) {
        err << "size limit: " << e.what() << '\n';
        return kUsage;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const InternalInconsistency& e) {
        err << "internal inconsistency: " << e.what() << '\n';
        return kInternal;
    }
}

}  // namespace onion::cli
