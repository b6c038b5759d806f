#include "rfis/cli.hpp"

#include <cstdio>
#include <map>
#include <ostream>
#include <sstream>

#include "rfis/attractor.hpp"
#include "rfis/config.hpp"
#include "rfis/dimension.hpp"
#include "rfis/empirical.hpp"
#include "rfis/export.hpp"

namespace rfis {

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void print_usage(std::ostream& err) {
    err << "usage:\n"
           "  rfis validate CONFIG\n"
           "  rfis sample CONFIG --level N [--format csv|pgm16|obj] --out PATH\n"
           "  rfis dim CONFIG --method theory|empirical [--levels A..B]\n"
           "  rfis attractor-check CONFIG --level N --steps K\n"
           "  rfis example-paper [--corrected|--original]\n"
           "flags:\n"
           "  --level N       sampling level (sample) or voxel level (attractor-check)\n"
           "  --format F      export format: csv (default), pgm16, obj\n"
           "  --out PATH      output file\n"
           "  --method M      theory or empirical\n"
           "  --levels A..B   empirical regression levels (default 5..10)\n"
           "  --steps K       attractor iteration count\n";
}

struct Args {
    std::string config_path;
    std::map<std::string, std::string> flags;
};

Args parse_args(const std::vector<std::string>& args, bool needs_config,
                const std::vector<std::string>& allowed) {
    Args out;
    std::size_t at = 1;
    if (needs_config) {
        if (args.size() < 2 || args[1].starts_with("--"))
            throw Error(ErrorCode::UsageError, "missing CONFIG argument");
        out.config_path = args[1];
        at = 2;
    }
    for (; at < args.size(); ++at) {
        const std::string& flag = args[at];
        bool known = false;
        for (const std::string& a : allowed) known = known || a == flag;
        if (!known) throw Error(ErrorCode::UsageError, "unknown flag '" + flag + "'");
        if (flag == "--corrected" || flag == "--original") {
            out.flags[flag] = "1";
            continue;
        }
        if (at + 1 >= args.size())
            throw Error(ErrorCode::UsageError, "flag '" + flag + "' needs a value");
        out.flags[flag] = args[++at];
    }
    return out;
}

int parse_int(const Args& args, const std::string& flag, bool required, int fallback) {
    auto it = args.flags.find(flag);
    if (it == args.flags.end()) {
        if (required) throw Error(ErrorCode::UsageError, "missing required flag " + flag);
        return fallback;
    }
    try {
        return std::stoi(it->second);
    } catch (...) {
        throw Error(ErrorCode::UsageError, "flag " + flag + " needs an integer");
    }
}

int cmd_validate(const Args& args, std::ostream& out) {
    const RfisConfig config = load_config(args.config_path);
    const Scenario sc = build_scenario(config);
    bool pass = true;

    out << "config = " << args.config_path << "\n";
    out << "N = " << config.N << "\n";
    out << "K = " << config.K << "\n";

    const HomogeneityCertificate cert = check_homogeneity(sc.data, sc.maps, config.K);
    out << "homogeneity = " << (cert.ok() ? "pass" : "fail") << "\n";
    for (const std::string& f : cert.failures) out << "homogeneity.failure = " << f << "\n";
    pass = pass && cert.ok();

    const MatchableReport matchable = check_matchable(sc.rfis, 33);
    out << "matchable.max_discrepancy = " << fmt(matchable.max_discrepancy) << "\n";
    out << "matchable = " << (matchable.max_discrepancy <= 1e-9 ? "pass" : "fail") << "\n";
    pass = pass && matchable.max_discrepancy <= 1e-9;

    const SteadyReport steady = check_steady(sc.rfis.scaling);
    out << "steady = " << (steady.steady ? "pass" : "fail") << "\n";
    for (const Cell& c : steady.offending)
        out << "steady.offending_cell = (" << c.i << "," << c.j << ")\n";
    pass = pass && steady.steady;

    const CompatibilityReport compat = check_compatible(sc.partition, sc.maps);
    out << "compatible = " << (compat.compatible ? "pass" : "fail") << "\n";
    for (const std::string& v : compat.violations) out << "compatible.violation = " << v << "\n";
    out << "intersections =";
    for (const auto& [r, t] : compat.nonempty_intersections) out << " (" << r << "," << t << ")";
    out << "\n";
    pass = pass && compat.compatible;

    if (cert.ok() && compat.compatible) {
        try {
            const TransferMatrix G = compute_uniform_sums(sc.rfis, sc.partition);
            out << "uniform_sums = pass\n";
            for (const auto& [r, t] : compat.nonempty_intersections)
                out << "gamma[" << r << "][" << t << "] = " << fmt(G.gamma(r - 1, t - 1)) << "\n";
            const InteriorUniformityReport interior =
                verify_interior_uniformity(sc.rfis, sc.partition, G, 9);
            out << "interior_uniformity.max_deviation = " << fmt(interior.max_deviation) << "\n";
        } catch (const UniformSumError& e) {
            out << "uniform_sums = fail\n";
            out << "uniform_sums.violation = (r=" << e.r << ",t=" << e.t << ",alpha=" << e.alpha
                << ",beta=" << e.beta << ",corner=(" << e.corner_x << "," << e.corner_y
                << "),value=" << fmt(e.value) << ",expected=" << fmt(e.expected) << ")\n";
            pass = false;
        }
    } else {
        out << "uniform_sums = skipped\n";
    }

    out << "result = " << (pass ? "pass" : "fail") << "\n";
    return pass ? 0 : 2;
}

int cmd_sample(const Args& args, std::ostream& out) {
    const Scenario sc = build_scenario(load_config(args.config_path));
    const int level = parse_int(args, "--level", true, 0);
    if (level < 0) throw Error(ErrorCode::UsageError, "--level must be nonnegative");
    auto it = args.flags.find("--out");
    if (it == args.flags.end()) throw Error(ErrorCode::UsageError, "missing required flag --out");
    const std::string format_name =
        args.flags.count("--format") ? args.flags.at("--format") : "csv";
    const ExportFormat format = parse_format(format_name);

    const SampledSurface surface = sample_surface(sc.rfis, level);
    export_surface_file(surface, format, it->second);
    out << "wrote = " << it->second << "\n";
    out << "format = " << format_name << "\n";
    out << "level = " << surface.level << "\n";
    out << "side = " << surface.side << "\n";
    out << "nodes = " << static_cast<long long>(surface.side + 1) * (surface.side + 1) << "\n";
    return 0;
}

int cmd_dim(const Args& args, std::ostream& out) {
    const Scenario sc = build_scenario(load_config(args.config_path));
    auto it = args.flags.find("--method");
    if (it == args.flags.end()) throw Error(ErrorCode::UsageError, "missing required flag --method");
    out << "config = " << args.config_path << "\n";
    out << "method = " << it->second << "\n";

    if (it->second == "theory") {
        const DimensionReport rep = theoretical_box_dimension(sc.rfis, sc.partition);
        out << "K = " << rep.K << "\n";
        out << "dimension = " << fmt(rep.dimension) << "\n";
        out << "d_star = " << fmt(rep.d_star) << "\n";
        const int m = rep.G.m;
        for (int r = 1; r <= m; ++r)
            for (int t = 1; t <= m; ++t)
                out << "G[" << r << "][" << t << "] = " << fmt(rep.G.gamma(r - 1, t - 1)) << "\n";
        out << "components = " << rep.report.components.size() << "\n";
        for (std::size_t v = 0; v < rep.report.components.size(); ++v) {
            const ComponentInfo& info = rep.report.components[v];
            out << "component[" << v + 1 << "].members = {";
            for (std::size_t a = 0; a < info.members.size(); ++a)
                out << (a ? "," : "") << info.members[a];
            out << "}\n";
            out << "component[" << v + 1 << "].rho = " << fmt(info.rho) << "\n";
            out << "component[" << v + 1 << "].d = " << fmt(info.d) << "\n";
            out << "component[" << v + 1 << "].degenerate = " << (info.degenerate ? "true" : "false")
                << "\n";
        }
        out << "positions =";
        for (int p : rep.report.positions) out << " " << p;
        out << "\n";
        out << "irreducible = " << (rep.irreducible ? "true" : "false") << "\n";
        if (rep.irreducible_case) out << "irreducible_case = " << *rep.irreducible_case << "\n";
        for (const std::string& w : rep.warnings) out << "warning = " << w << "\n";
        return 0;
    }
    if (it->second == "empirical") {
        int lo = 5, hi = 10;
        if (auto lv = args.flags.find("--levels"); lv != args.flags.end()) {
            const std::string& range = lv->second;
            const std::size_t dots = range.find("..");
            if (dots == std::string::npos)
                throw Error(ErrorCode::UsageError, "--levels needs the form A..B");
            try {
                lo = std::stoi(range.substr(0, dots));
                hi = std::stoi(range.substr(dots + 2));
            } catch (...) {
                throw Error(ErrorCode::UsageError, "--levels needs integers A..B");
            }
        }
        const OscillationProfile profile =
            compute_oscillation_profile(sc.rfis, sc.partition, lo, hi);
        const SlopeReport slope = empirical_dimension(profile);
        out << "levels = " << lo << ".." << hi << "\n";
        for (const LevelStats& s : profile.levels) {
            out << "O[" << s.level << "] = " << fmt(s.total_osc) << "\n";
            out << "boxes[" << s.level << "] = " << s.boxes << "\n";
        }
        out << "slope = " << fmt(slope.slope) << "\n";
        out << "dimension_estimate = " << fmt(slope.dimension_estimate) << "\n";
        out << "ci95 = " << fmt(slope.ci95) << "\n";
        out << "box_slope = " << fmt(slope.box_slope) << "\n";
        return 0;
    }
    throw Error(ErrorCode::UsageError, "--method must be theory or empirical");
}

int cmd_attractor(const Args& args, std::ostream& out) {
    const Scenario sc = build_scenario(load_config(args.config_path));
    const int level = parse_int(args, "--level", true, 0);
    const int steps = parse_int(args, "--steps", true, 0);
    if (level < 0 || steps < 1)
        throw Error(ErrorCode::UsageError, "--level must be >= 0 and --steps >= 1");

    const AttractorCheckResult result = attractor_convergence_check(sc.rfis, level, steps);
    out << "voxel_level = " << level << "\n";
    out << "steps = " << steps << "\n";
    out << "voxel_size = " << fmt(result.voxel_size) << "\n";
    out << "voxel_diagonal = " << fmt(result.voxel_diagonal) << "\n";
    for (std::size_t i = 0; i < result.distances.size(); ++i)
        out << "distance[" << i + 1 << "] = " << fmt(result.distances[i]) << "\n";
    for (std::size_t i = 0; i < result.z_deviation.size(); ++i)
        out << "z_deviation[" << i + 1 << "] = " << fmt(result.z_deviation[i]) << "\n";
    out << "final_distance = " << fmt(result.distances.back()) << "\n";
    return 0;
}

int cmd_example(const Args& args, std::ostream& out) {
    if (args.flags.count("--corrected") && args.flags.count("--original"))
        throw Error(ErrorCode::UsageError, "--corrected and --original are mutually exclusive");
    const bool corrected = !args.flags.count("--original");
    out << paper_example_json(corrected);
    return 0;
}

}  // namespace

int run_subcommand(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    try {
        if (args.empty()) throw Error(ErrorCode::UsageError, "missing subcommand");
        const std::string& cmd = args[0];
        if (cmd == "validate") return cmd_validate(parse_args(args, true, {}), out);
        if (cmd == "sample")
            return cmd_sample(parse_args(args, true, {"--level", "--format", "--out"}), out);
        if (cmd == "dim") return cmd_dim(parse_args(args, true, {"--method", "--levels"}), out);
        if (cmd == "attractor-check")
            return cmd_attractor(parse_args(args, true, {"--level", "--steps"}), out);
        if (cmd == "example-paper")
            return cmd_example(parse_args(args, false, {"--corrected", "--original"}), out);
        throw Error(ErrorCode::UsageError, "unknown subcommand '" + cmd + "'");
    } catch (const Error& e) {
        if (e.code() == ErrorCode::UsageError) {
            err << "error = " << to_string(e.code()) << ": " << e.what() << "\n";
            print_usage(err);
            return 1;
        }
        err << "error = " << to_string(e.code()) << ": " << e.what() << "\n";
        return 2;
    }
}

}  // namespace rfis
