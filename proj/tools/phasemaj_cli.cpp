// Command-line front end: every verification in the library behind one
// subcommand-style binary with machine-readable JSON reports.
//
// Exit codes: 0 all requested verdicts hold; 1 a verdict fails or the claim
// is not applicable; 2 usage or parse error; 3 an exact theorem or identity
// check failed (never expected).

#include <CLI11.hpp>
#include <json.hpp>

#include <phasemaj/fockspace.hpp>
#include <phasemaj/majorize.hpp>
#include <phasemaj/sigma.hpp>
#include <phasemaj/theorems.hpp>

#include <charconv>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

using nlohmann::ordered_json;
using namespace phasemaj;

namespace {

constexpr const char* kVersion = "0.1.0";

struct ParseFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// exact input parsing: rationals come in as "p/q" or integers, never floats

BigRational parse_rational(const std::string& s) {
    if (s.empty()) throw ParseFailure("empty rational");
    size_t start = (s[0] == '+' || s[0] == '-') ? 1 : 0;
    bool digits = false, slash = false, den_digits = false, den_nonzero = false;
    for (size_t i = start; i < s.size(); ++i) {
        const char c = s[i];
        if (c >= '0' && c <= '9') {
            if (slash) {
                den_digits = true;
                den_nonzero = den_nonzero || c != '0';
            } else {
                digits = true;
            }
            continue;
        }
        if (c == '/' && !slash && digits) {
            slash = true;
            continue;
        }
        throw ParseFailure("bad character '" + std::string(1, c) + "' at position " +
                           std::to_string(i) + " in rational \"" + s +
                           "\"; use p/q or an integer");
    }
    if (!digits || (slash && !den_digits))
        throw ParseFailure("malformed rational \"" + s + "\"");
    if (slash && !den_nonzero) throw ParseFailure("zero denominator in \"" + s + "\"");
    BigRational r(s, 10);
    r.canonicalize();
    return r;
}

unsigned parse_unsigned(const std::string& s, const char* what) {
    unsigned v = 0;
    const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || p != s.data() + s.size())
        throw ParseFailure(std::string("bad ") + what + " \"" + s + "\"");
    return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

// "n:weight,..." with exact rational weights; "vacuum" is the n = 0 state
FockMixture parse_mixture(const std::string& spec) {
    if (spec == "vacuum") return FockMixture::single(0);
    FockMixture m;
    const std::vector<std::string> parts = split(spec, ',');
    for (size_t t = 0; t < parts.size(); ++t) {
        const std::string& tok = parts[t];
        const size_t colon = tok.find(':');
        if (tok.empty() || colon == std::string::npos)
            throw ParseFailure("mixture entry " + std::to_string(t) + " (\"" + tok +
                               "\") is not of the form n:weight");
        const unsigned n = parse_unsigned(tok.substr(0, colon), "state number");
        if (m.weights.count(n))
            throw ParseFailure("duplicate state " + std::to_string(n) + " in mixture");
        m.weights[n] = parse_rational(tok.substr(colon + 1));
    }
    m.validate();
    return m;
}

std::vector<BigRational> parse_rational_list(const std::string& csv) {
    std::vector<BigRational> out;
    for (const std::string& tok : split(csv, ',')) out.push_back(parse_rational(tok));
    return out;
}

// "z_end:n,..." refinement schedule
std::vector<std::pair<BigRational, unsigned>> parse_schedule(const std::string& spec) {
    std::vector<std::pair<BigRational, unsigned>> out;
    for (const std::string& tok : split(spec, ',')) {
        const size_t colon = tok.find(':');
        if (colon == std::string::npos)
            throw ParseFailure("schedule entry \"" + tok + "\" is not of the form z_end:n");
        out.emplace_back(parse_rational(tok.substr(0, colon)),
                         parse_unsigned(tok.substr(colon + 1), "grid size"));
    }
    return out;
}

// ---------------------------------------------------------------------------
// report plumbing

std::string shortest_double(double v) {
    char buf[40];
    const auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, p);
}

ordered_json mixture_json(const FockMixture& m) {
    ordered_json j = ordered_json::object();
    for (const auto& [n, w] : m.weights) j[std::to_string(n)] = to_string(w);
    return j;
}

ordered_json rational_list_json(const std::vector<BigRational>& v) {
    ordered_json arr = ordered_json::array();
    for (const BigRational& x : v) arr.push_back(to_string(x));
    return arr;
}

ordered_json kernel_json(const PolyExpFn& f) {
    ordered_json j;
    j["dirac_weight"] = to_string(f.dirac_weight);
    j["coefficients"] = rational_list_json(f.poly.coeffs);
    return j;
}

struct Ctx {
    std::string command;
    ordered_json inputs = ordered_json::object();
    std::string out_path;
};

void emit_text(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream f(out_path, std::ios::binary);
        if (!f) throw ParseFailure("cannot open output file \"" + out_path + "\"");
        f << text;
    }
}

ordered_json report_head(const Ctx& ctx) {
    ordered_json j;
    j["command"] = ctx.command;
    j["version"] = kVersion;
    j["inputs"] = ctx.inputs;
    return j;
}

void emit_report(const Ctx& ctx, ordered_json report) {
    emit_text(report.dump(2) + "\n", ctx.out_path);
}

int emit_error(const Ctx& ctx, const char* type, const std::string& message, int code) {
    ordered_json j = report_head(ctx);
    j["error"] = {{"type", type}, {"message", message}};
    emit_report(ctx, std::move(j));
    return code;
}

// ---------------------------------------------------------------------------
// presets: config file and environment, applied before flag parsing

struct Presets {
    double z_max = 0;           // 0 = automatic
    std::uint64_t cells = std::uint64_t{1} << 18;
    int rounds = 3;
    double tol = 1e-9;
    std::uint64_t seed = 12345;
    unsigned jobs = 1;
};

Presets load_presets(int argc, char** argv) {
    Presets p;
    if (const char* env = std::getenv("PHASEMAJ_SEED")) {
        const std::string s(env);
        const auto [q, ec] = std::from_chars(s.data(), s.data() + s.size(), p.seed);
        if (ec != std::errc{} || q != s.data() + s.size())
            throw ParseFailure("PHASEMAJ_SEED is not an unsigned integer: \"" + s + "\"");
    }
    std::string path;
    for (int i = 1; i + 1 < argc; ++i)
        if (std::string(argv[i]) == "--config") path = argv[i + 1];
    if (path.empty()) return p;

    std::ifstream f(path);
    if (!f) throw ParseFailure("cannot read config file \"" + path + "\"");
    std::string line;
    int lineno = 0;
    while (std::getline(f, line)) {
        ++lineno;
        const size_t first = line.find_first_not_of(" \t");
        if (first == std::string::npos || line[first] == '#') continue;
        const size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw ParseFailure("config line " + std::to_string(lineno) + " is not key=value");
        const std::string key = line.substr(first, eq - first);
        const std::string val = line.substr(eq + 1);
        try {
            if (key == "z_max")
                p.z_max = std::stod(val);
            else if (key == "cells")
                p.cells = std::stoull(val);
            else if (key == "rounds")
                p.rounds = std::stoi(val);
            else if (key == "tol")
                p.tol = std::stod(val);
            else if (key == "seed")
                p.seed = std::stoull(val);
            else if (key == "jobs")
                p.jobs = static_cast<unsigned>(std::stoul(val));
            else
                throw ParseFailure("unknown config key \"" + key + "\"");
        } catch (const std::logic_error&) {
            throw ParseFailure("bad value for config key \"" + key + "\" on line " +
                               std::to_string(lineno));
        }
    }
    return p;
}

struct GridFlags {
    double z_max;
    std::uint64_t cells;
    int rounds;
    double tol;
};

void add_grid_flags(CLI::App* cmd, GridFlags& g) {
    cmd->add_option("--z-max", g.z_max, "grid endpoint (0 = automatic from the tail bound)");
    cmd->add_option("--cells", g.cells, "base grid cells");
    cmd->add_option("--rounds", g.rounds, "refinement rounds");
    cmd->add_option("--tol", g.tol, "verdict tolerance");
}

GridConfig to_grid_config(const GridFlags& g) {
    GridConfig cfg;
    cfg.z_max = g.z_max;
    cfg.cells = static_cast<size_t>(g.cells);
    cfg.refine_rounds = g.rounds;
    cfg.tolerance = g.tol;
    return cfg;
}

ordered_json grid_json(const GridFlags& g) {
    ordered_json j;
    j["z_max"] = g.z_max;
    j["cells"] = g.cells;
    j["rounds"] = g.rounds;
    j["tol"] = g.tol;
    return j;
}

// ---------------------------------------------------------------------------
// subcommands

struct ProfileArgs {
    std::string mix;
    std::string format = "json";
    unsigned points = 201;
    double z_max = 0;
};

int run_profile(Ctx& ctx, const ProfileArgs& args) {
    const FockMixture m = parse_mixture(args.mix);
    const RadialProfile p = mixture_radial(m);
    const double z_max = args.z_max > 0 ? args.z_max : tail_cutoff(p.fn, 1e-12);
    if (args.points < 2) throw ParseFailure("--points must be at least 2");

    ctx.inputs["mix"] = mixture_json(m);
    ctx.inputs["format"] = args.format;
    ctx.inputs["points"] = args.points;
    ctx.inputs["z_max"] = z_max;

    const NonnegCertificate cert = certify_nonnegative(p);
    std::vector<std::pair<double, double>> samples(args.points);
    for (unsigned i = 0; i < args.points; ++i) {
        const double z = z_max * i / (args.points - 1);
        samples[i] = {z, eval(p.fn, z)};
    }

    if (args.format == "csv") {
        std::string text = "# radial profile of mixture " + args.mix + "\n";
        text += "# polynomial coefficients:";
        for (const BigRational& c : p.fn.poly.coeffs) text += " " + to_string(c);
        text += "\nz,w\n";
        for (const auto& [z, w] : samples)
            text += shortest_double(z) + "," + shortest_double(w) + "\n";
        emit_text(text, ctx.out_path);
        return 0;
    }

    ordered_json j = report_head(ctx);
    ordered_json verdict;
    verdict["name"] = "nonnegative";
    verdict["holds"] = cert.nonneg;
    verdict["method"] = cert.method;
    verdict["distinct_positive_roots"] = cert.distinct_positive_roots;
    if (!cert.nonneg) verdict["witness_point"] = to_string(cert.witness_point);
    j["verdicts"] = ordered_json::array({verdict});

    ordered_json art;
    art["function"] = kernel_json(p.fn);
    ordered_json rows = ordered_json::array();
    for (const auto& [z, w] : samples) rows.push_back(ordered_json::array({z, w}));
    art["samples"] = std::move(rows);
    j["artifacts"] = std::move(art);
    emit_report(ctx, std::move(j));
    return 0;
}

struct MajorizeArgs {
    std::string a, b;
    GridFlags grid;
};

int run_majorize(Ctx& ctx, const MajorizeArgs& args) {
    const FockMixture ma = parse_mixture(args.a);
    const FockMixture mb = parse_mixture(args.b);
    ctx.inputs["a"] = mixture_json(ma);
    ctx.inputs["b"] = mixture_json(mb);
    ctx.inputs["grid"] = grid_json(args.grid);

    const MajorizationVerdict v =
        majorizes_continuous(mixture_radial(ma), mixture_radial(mb), to_grid_config(args.grid));

    ordered_json j = report_head(ctx);
    ordered_json verdict;
    verdict["name"] = "majorizes";
    verdict["holds"] = v.holds;
    verdict["min_margin"] = v.min_margin;
    verdict["argmin"] = v.argmin;
    verdict["total_a"] = v.total_x;
    verdict["total_b"] = v.total_y;
    j["verdicts"] = ordered_json::array({verdict});

    ordered_json rounds = ordered_json::array();
    for (const RefinementRound& r : v.rounds) {
        ordered_json row;
        row["cells"] = r.cells;
        row["min_margin"] = r.min_margin;
        row["total_mismatch"] = r.total_mismatch;
        row["holds"] = r.holds;
        rounds.push_back(std::move(row));
    }
    j["artifacts"] = ordered_json{{"rounds", std::move(rounds)}};
    emit_report(ctx, std::move(j));
    return v.holds ? 0 : 1;
}

struct EntropyArgs {
    std::string mix;
    GridFlags grid;
};

int run_entropy(Ctx& ctx, const EntropyArgs& args) {
    const FockMixture m = parse_mixture(args.mix);
    ctx.inputs["mix"] = mixture_json(m);
    ctx.inputs["grid"] = grid_json(args.grid);

    const EntropyResult r = wigner_entropy(mixture_radial(m), to_grid_config(args.grid));

    ordered_json j = report_head(ctx);
    j["verdicts"] = ordered_json::array(
        {ordered_json{{"name", "entropy"}, {"value", r.entropy}},
         ordered_json{{"name", "integral_term"}, {"value", r.integral_term}}});
    emit_report(ctx, std::move(j));
    return 0;
}

struct SigmaArgs {
    unsigned m = 0, n = 0;
    unsigned mixture = 0;
    bool have_mn = false, have_mixture = false;
    unsigned bound = kSigmaDefaultBound;
};

int run_sigma(Ctx& ctx, const SigmaArgs& args) {
    ordered_json j;
    if (args.have_mixture) {
        ctx.inputs["mixture"] = args.mixture;
        ctx.inputs["bound"] = args.bound;
        // throws on any deviation from the exact uniform identity
        const FockMixture fm = equal_mixture(args.mixture, args.bound);
        const bool sym = symmetry_check(args.mixture, args.bound);
        j = report_head(ctx);
        j["verdicts"] = ordered_json::array(
            {ordered_json{{"name", "uniform_identity"}, {"holds", true}},
             ordered_json{{"name", "symmetric"}, {"holds", sym}}});
        j["artifacts"] = ordered_json{{"mixture", mixture_json(fm)}};
        emit_report(ctx, std::move(j));
        return sym ? 0 : 1;
    }

    ctx.inputs["m"] = args.m;
    ctx.inputs["n"] = args.n;
    ctx.inputs["bound"] = args.bound;
    const SigmaCoefficients s = sigma_coefficients(args.m, args.n, args.bound);
    BigRational total = 0;
    bool nonneg = true;
    for (const BigRational& a : s.a) {
        total += a;
        nonneg = nonneg && a >= 0;
    }
    j = report_head(ctx);
    j["verdicts"] = ordered_json::array(
        {ordered_json{{"name", "row_nonnegative"}, {"holds", nonneg}},
         ordered_json{{"name", "row_normalized"}, {"holds", total == 1}}});
    j["artifacts"] = ordered_json{{"coefficients", rational_list_json(s.a)}};
    emit_report(ctx, std::move(j));
    return (nonneg && total == 1) ? 0 : 1;
}

struct Theorem1Args {
    unsigned n = 0;
    std::string a;
    std::string lambdas;
    std::uint64_t samples = 0;
    std::uint64_t seed;
    unsigned jobs;
    bool vertices = false;
    bool have_lambdas = false, have_samples = false;
};

int run_theorem1(Ctx& ctx, const Theorem1Args& args) {
    const BigRational a = parse_rational(args.a);
    ctx.inputs["n"] = args.n;
    ctx.inputs["a"] = to_string(a);

    const int modes = int(args.have_lambdas) + int(args.have_samples) + int(args.vertices);
    if (modes != 1)
        throw ParseFailure("choose exactly one of --lambdas, --samples, --vertices");

    if (args.have_lambdas) {
        const Theorem1Instance inst{args.n, a, parse_rational_list(args.lambdas)};
        ctx.inputs["lambdas"] = rational_list_json(inst.lambdas);
        const Theorem1Verdict v = verify_theorem1(inst);

        ordered_json j = report_head(ctx);
        ordered_json applicable{{"name", "applicable"}, {"holds", v.applicable}};
        if (!v.applicable) applicable["negative_index"] = v.negative_index;
        ordered_json majorized{{"name", "majorized"}, {"holds", v.applicable && v.majorization.holds}};
        if (v.applicable) {
            majorized["min_margin"] = to_string(v.majorization.min_margin);
            majorized["argmin"] = v.majorization.argmin;
        }
        j["verdicts"] = ordered_json::array({applicable, majorized});
        j["artifacts"] = ordered_json{{"g", rational_list_json(v.g)}};
        emit_report(ctx, std::move(j));
        return (v.applicable && v.majorization.holds) ? 0 : 1;
    }

    if (args.have_samples) {
        ctx.inputs["samples"] = args.samples;
        ctx.inputs["jobs"] = args.jobs;
        // a violation inside the harness throws TheoremViolation (exit 3)
        const MonteCarloReport r =
            theorem1_monte_carlo(args.n, a, args.samples, args.seed, args.jobs);

        ordered_json j = report_head(ctx);
        j["verdicts"] =
            ordered_json::array({ordered_json{{"name", "no_violations"}, {"holds", true}}});
        ordered_json art;
        art["samples"] = r.samples;
        art["applicable"] = r.applicable;
        art["not_applicable"] = r.not_applicable;
        art["both_branches_seen"] = r.applicable > 0 && r.not_applicable > 0;
        if (r.any_applicable) art["min_margin"] = to_string(r.min_margin);
        j["artifacts"] = std::move(art);
        j["seed"] = args.seed;
        emit_report(ctx, std::move(j));
        return 0;
    }

    // full vertex table over all 2^n index patterns
    if (args.n > 12) throw ParseFailure("--vertices supports n up to 12");
    ordered_json rows = ordered_json::array();
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << args.n); ++mask) {
        ConeVertexSpec spec{args.n, a, std::vector<char>(args.n, 0)};
        std::string pattern(args.n, 'l');
        for (unsigned i = 0; i < args.n; ++i)
            if ((mask >> i) & 1) {
                spec.zeroed[i] = 1;
                pattern[i] = '0';
            }
        const ConeVertexResult res = cone_vertex(spec);
        ordered_json row;
        row["pattern"] = pattern;
        row["lambdas"] = rational_list_json(res.lambdas);
        row["vertex"] = rational_list_json(res.vertex);
        rows.push_back(std::move(row));
    }
    ordered_json j = report_head(ctx);
    j["verdicts"] = ordered_json::array(
        {ordered_json{{"name", "all_vertices_majorized"}, {"holds", true}}});
    j["artifacts"] = ordered_json{{"vertices", std::move(rows)}};
    emit_report(ctx, std::move(j));
    return 0;
}

struct Theorem2Args {
    std::string mixture;
    std::string schedule = "30:64,30:128,30:256";
    double tol = 1e-9;
};

int run_theorem2(Ctx& ctx, const Theorem2Args& args) {
    const FockMixture m = parse_mixture(args.mixture);
    const RadialProfile p = mixture_radial(m);
    const VacuumDecomposition dec = vacuum_decomposition(p);
    const std::vector<std::pair<BigRational, unsigned>> schedule =
        parse_schedule(args.schedule);

    ctx.inputs["mixture"] = mixture_json(m);
    ctx.inputs["schedule"] = args.schedule;
    ctx.inputs["tol"] = args.tol;
    ctx.inputs["kernel"] = kernel_json(dec.c);

    const Theorem2Report r = verify_theorem2_convergence(dec.c, schedule, args.tol);

    bool all_applicable = true, all_majorized = true;
    ordered_json levels = ordered_json::array();
    for (const Theorem2Level& lvl : r.levels) {
        all_applicable = all_applicable && lvl.applicable;
        all_majorized = all_majorized && lvl.applicable && lvl.majorization_holds;
        ordered_json row;
        row["n"] = lvl.n;
        row["z_end"] = lvl.z_end;
        row["delta_z"] = lvl.delta_z;
        row["applicable"] = lvl.applicable;
        row["sign_ok"] = lvl.sign_ok;
        row["majorization_holds"] = lvl.majorization_holds;
        row["min_margin"] = lvl.min_margin;
        row["error_metric"] = lvl.error_metric;
        row["g_min"] = lvl.g_min;
        levels.push_back(std::move(row));
    }

    ordered_json j = report_head(ctx);
    j["verdicts"] = ordered_json::array(
        {ordered_json{{"name", "all_levels_applicable"}, {"holds", all_applicable}},
         ordered_json{{"name", "majorization_all_levels"}, {"holds", all_majorized}},
         ordered_json{{"name", "metric_nonincreasing"}, {"holds", r.metric_nonincreasing}},
         ordered_json{{"name", "witness_doubly_stochastic"},
                      {"holds", r.witness_checked && r.witness_ok}}});
    ordered_json art;
    art["levels"] = std::move(levels);
    ordered_json witness;
    witness["checked"] = r.witness_checked;
    witness["doubly_stochastic"] = r.witness_ok;
    witness["transfers"] = r.witness_transfers;
    witness["dimension"] = 2 * r.levels.back().n;
    art["witness"] = std::move(witness);
    j["artifacts"] = std::move(art);
    emit_report(ctx, std::move(j));

    const bool pass =
        all_applicable && all_majorized && r.metric_nonincreasing && r.witness_ok;
    return pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    Ctx ctx;
    try {
        const Presets presets = load_presets(argc, argv);

        CLI::App app{"exact verification toolkit for radial phase-space profiles"};
        app.require_subcommand(1);
        std::string config_path;
        app.add_option("--config", config_path,
                       "key=value preset file (z_max, cells, rounds, tol, seed, jobs)");

        GridFlags default_grid{presets.z_max, presets.cells, presets.rounds, presets.tol};

        ProfileArgs profile_args;
        CLI::App* profile = app.add_subcommand("profile", "sample a mixture's radial profile");
        profile->add_option("--mix", profile_args.mix, "mixture \"n:weight,...\" or \"vacuum\"")
            ->required();
        profile->add_option("--format", profile_args.format, "output format: json or csv")
            ->check(CLI::IsMember({"json", "csv"}));
        profile->add_option("--points", profile_args.points, "number of sample points");
        profile->add_option("--z-max", profile_args.z_max,
                            "sampling endpoint (0 = automatic from the tail bound)");

        MajorizeArgs majorize_args{.grid = default_grid};
        CLI::App* majorize = app.add_subcommand("majorize", "compare two profiles");
        majorize->add_option("--a", majorize_args.a, "majorizing mixture or \"vacuum\"")
            ->required();
        majorize->add_option("--b", majorize_args.b, "majorized mixture or \"vacuum\"")
            ->required();
        add_grid_flags(majorize, majorize_args.grid);

        EntropyArgs entropy_args{.grid = default_grid};
        CLI::App* entropy = app.add_subcommand("entropy", "phase-space entropy of a mixture");
        entropy->add_option("--mix", entropy_args.mix, "mixture \"n:weight,...\" or \"vacuum\"")
            ->required();
        add_grid_flags(entropy, entropy_args.grid);

        SigmaArgs sigma_args;
        CLI::App* sigma = app.add_subcommand("sigma", "beamsplitter output coefficients");
        CLI::Option* opt_m = sigma->add_option("--m", sigma_args.m, "first input state");
        CLI::Option* opt_n = sigma->add_option("--n", sigma_args.n, "second input state");
        CLI::Option* opt_mix =
            sigma->add_option("--mixture", sigma_args.mixture,
                              "check the equal-weight average identity at total M");
        sigma->add_option("--bound", sigma_args.bound, "combinatorial bound on m+n");
        opt_m->needs(opt_n);
        opt_n->needs(opt_m);
        opt_mix->excludes(opt_m);
        opt_mix->excludes(opt_n);

        Theorem1Args t1_args;
        t1_args.seed = presets.seed;
        t1_args.jobs = presets.jobs;
        CLI::App* t1 = app.add_subcommand("theorem1", "discrete convolution-majorization checks");
        t1->add_option("--n", t1_args.n, "vector dimension")->required();
        t1->add_option("--a", t1_args.a, "geometric ratio as a rational in (0,1)")->required();
        CLI::Option* opt_lambdas =
            t1->add_option("--lambdas", t1_args.lambdas, "one instance: \"l1,l2,...\"");
        CLI::Option* opt_samples =
            t1->add_option("--samples", t1_args.samples, "Monte Carlo: number of draws");
        CLI::Option* opt_vertices =
            t1->add_flag("--vertices", t1_args.vertices, "emit the full vertex table (n <= 12)");
        t1->add_option("--seed", t1_args.seed, "master seed for Monte Carlo");
        t1->add_option("--jobs", t1_args.jobs, "worker threads (result is independent of this)");
        opt_lambdas->excludes(opt_samples);
        opt_lambdas->excludes(opt_vertices);
        opt_samples->excludes(opt_vertices);

        Theorem2Args t2_args;
        CLI::App* t2 = app.add_subcommand("theorem2", "discretized continuous majorization");
        t2->add_option("--mixture", t2_args.mixture, "mixture \"n:weight,...\" or \"vacuum\"")
            ->required();
        t2->add_option("--schedule", t2_args.schedule, "refinement schedule \"z_end:n,...\"");
        t2->add_option("--tol", t2_args.tol, "verdict tolerance");
        t2_args.tol = presets.tol;

        for (CLI::App* sub : {profile, majorize, entropy, sigma, t1, t2}) {
            sub->add_option("--out", ctx.out_path, "write the report to a file instead of stdout");
            sub->add_option("--config", config_path,
                            "key=value preset file (z_max, cells, rounds, tol, seed, jobs)");
        }

        try {
            app.parse(argc, argv);
        } catch (const CLI::CallForHelp& e) {
            return app.exit(e);
        } catch (const CLI::ParseError& e) {
            app.exit(e);
            return 2;
        }

        t1_args.have_lambdas = opt_lambdas->count() > 0;
        t1_args.have_samples = opt_samples->count() > 0;
        sigma_args.have_mn = opt_m->count() > 0;
        sigma_args.have_mixture = opt_mix->count() > 0;

        if (profile->parsed()) {
            ctx.command = "profile";
            return run_profile(ctx, profile_args);
        }
        if (majorize->parsed()) {
            ctx.command = "majorize";
            return run_majorize(ctx, majorize_args);
        }
        if (entropy->parsed()) {
            ctx.command = "entropy";
            return run_entropy(ctx, entropy_args);
        }
        if (sigma->parsed()) {
            ctx.command = "sigma";
            if (!sigma_args.have_mn && !sigma_args.have_mixture)
                throw ParseFailure("sigma needs either --m/--n or --mixture");
            return run_sigma(ctx, sigma_args);
        }
        if (t1->parsed()) {
            ctx.command = "theorem1";
            return run_theorem1(ctx, t1_args);
        }
        ctx.command = "theorem2";
        return run_theorem2(ctx, t2_args);
    } catch (const TheoremViolation& e) {
        return emit_error(ctx, "TheoremViolation", e.what(), 3);
    } catch (const IdentityViolation& e) {
        return emit_error(ctx, "IdentityViolation", e.what(), 3);
    } catch (const NegativeWigner& e) {
        return emit_error(ctx, "NegativeWigner", e.what(), 1);
    } catch (const NegativeInput& e) {
        return emit_error(ctx, "NegativeInput", e.what(), 1);
    } catch (const EntryConditionsFailed& e) {
        return emit_error(ctx, "EntryConditionsFailed", e.what(), 1);
    } catch (const SuffixConditionFailed& e) {
        return emit_error(ctx, "SuffixConditionFailed", e.what(), 1);
    } catch (const ConvergenceViolation& e) {
        return emit_error(ctx, "ConvergenceViolation", e.what(), 1);
    } catch (const Unstable& e) {
        return emit_error(ctx, "Unstable", e.what(), 1);
    } catch (const NotMajorized& e) {
        return emit_error(ctx, "NotMajorized", e.what(), 1);
    } catch (const TailTooHeavy& e) {
        return emit_error(ctx, "TailTooHeavy", e.what(), 1);
    } catch (const ConstructionFailure& e) {
        return emit_error(ctx, "ConstructionFailure", e.what(), 3);
    } catch (const NotNormalized& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const BoundExceeded& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const ParseFailure& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
