#include "lpoly/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "lpoly/errors.hpp"
#include "lpoly/json_io.hpp"

namespace lpoly {

namespace {

using nlohmann::json;

struct CommonFlags {
    std::uint64_t seed = 0;
    unsigned workers = 0;
    std::string format = "json";
    std::string out;
    std::size_t limit_n = 28;

    ExhaustiveOptions exhaustive() const {
        ExhaustiveOptions o;
        o.limit_n = limit_n;
        o.workers = workers == 0 ? std::max(1U, std::thread::hardware_concurrency()) : workers;
        return o;
    }
};

void add_common(CLI::App* cmd, CommonFlags& flags) {
    cmd->add_option("--seed", flags.seed, "Seed for every random choice");
    cmd->add_option("--workers", flags.workers, "Worker threads (0 = hardware concurrency)");
    cmd->add_option("--format", flags.format, "Output format")->check(CLI::IsMember({"json", "text", "csv"}));
    cmd->add_option("--out", flags.out, "Output path (default stdout)");
    cmd->add_option("--limit-n", flags.limit_n, "Largest n enumerated exhaustively")->check(CLI::Range(1, 63));
}

class UsageError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_input(const std::string& path, std::istream& in) {
    std::ostringstream buffer;
    if (path == "-") {
        buffer << in.rdbuf();
        return buffer.str();
    }
    std::ifstream file(path, std::ios::binary);
    if (!file) throw UsageError("cannot open '" + path + "'");
    buffer << file.rdbuf();
    return buffer.str();
}

void flatten(const json& j, const std::string& prefix, std::ostream& os) {
    if (j.is_object()) {
        for (const auto& [key, value] : j.items()) flatten(value, prefix.empty() ? key : prefix + "." + key, os);
    } else if (j.is_array() && std::all_of(j.begin(), j.end(), [](const json& e) { return e.is_primitive(); })) {
        os << prefix << ":";
        for (const auto& e : j) os << ' ' << e.dump();
        os << '\n';
    } else if (j.is_array()) {
        for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], prefix + "[" + std::to_string(i) + "]", os);
    } else if (j.is_string()) {
        os << prefix << ": " << j.get<std::string>() << '\n';
    } else {
        os << prefix << ": " << j.dump() << '\n';
    }
}

std::string render(const json& j, const std::string& format) {
    if (format == "text") {
        std::ostringstream os;
        flatten(j, "", os);
        return os.str();
    }
    if (format == "csv") throw UsageError("csv output is only available for khintchine");
    return j.dump(2) + "\n";
}

void emit(const std::string& text, const CommonFlags& flags, std::ostream& out) {
    if (flags.out.empty()) {
        out << text;
        return;
    }
    std::ofstream file(flags.out, std::ios::binary);
    if (!file) throw UsageError("cannot write '" + flags.out + "'");
    file << text;
}

std::string gap_csv(const std::vector<GapRow>& rows) {
    std::ostringstream os;
    os.precision(17);
    os << "delta,instances,min_ratio,mean_ratio,converse_ratio,lower_base,upper_base,lower_respected,converse_below_upper\n";
    for (const auto& r : rows)
        os << r.delta << ',' << r.instances << ',' << r.min_ratio << ',' << r.mean_ratio << ',' << r.converse_ratio << ','
           << r.lower_base << ',' << r.upper_base << ',' << (r.lower_respected ? 1 : 0) << ','
           << (r.converse_below_upper ? 1 : 0) << '\n';
    return os.str();
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err) {
    CLI::App app{"Littlewood polynomial bounds: synthesis, witnesses and exhaustive checks", "lpoly"};
    app.require_subcommand(1);
    CommonFlags flags;

    std::string path;
    auto* bounds = app.add_subcommand("bounds", "Closed-form upper and lower bounds for a family");
    bounds->add_option("file", path, "LPOLY file or - for stdin")->required();
    add_common(bounds, flags);

    std::string mode = "exact";
    std::size_t trials = 10000;
    bool symmetry = false;
    auto* supnorm = app.add_subcommand("supnorm", "Sup norm over the hypercube");
    supnorm->add_option("file", path)->required();
    supnorm->add_option("--mode", mode)->check(CLI::IsMember({"exact", "sampled"}));
    supnorm->add_option("--trials", trials, "Random starts in sampled mode")->check(CLI::PositiveNumber);
    supnorm->add_flag("--symmetry", symmetry, "Halve the enumeration when all degrees share a parity");
    add_common(supnorm, flags);

    SynthesisOptions synth_opts;
    auto* synth = app.add_subcommand("synth", "Synthesize a flat polynomial by chaining and certify it");
    synth->add_option("file", path)->required();
    synth->add_option("--lambda", synth_opts.lambda, "Slack constant, must exceed sqrt(2/lg e)");
    synth->add_option("--budget", synth_opts.budget, "Sign draws per block")->check(CLI::PositiveNumber);
    synth->add_option("--block-limit", synth_opts.block_exact_limit, "Widest block checked exhaustively");
    synth->add_option("--prefixes", synth_opts.sampled_prefixes, "Random prefixes per sampled block")
        ->check(CLI::PositiveNumber);
    add_common(synth, flags);

    WitnessConfig wconf;
    bool no_polish = false;
    bool check_exact = false;
    auto* witness = app.add_subcommand("witness", "Construct an assignment with large |h|");
    witness->add_option("file", path)->required();
    witness->add_option("--attempts", wconf.split_attempts, "Random splits tried")->check(CLI::PositiveNumber);
    witness->add_option("--trials", wconf.y_trials, "Random y tried")->check(CLI::PositiveNumber);
    witness->add_option("--grid", wconf.grid_size, "Grid points for the z sweep")->check(CLI::PositiveNumber);
    witness->add_flag("--no-polish", no_polish, "Skip hill climbing after rounding");
    witness->add_flag("--check-exact", check_exact, "Also compute the exact sup norm");
    add_common(witness, flags);

    std::uint64_t prime = 0;
    bool report = false;
    auto* paley_cmd = app.add_subcommand("paley", "Emit the Paley polynomial for a prime p = 1 mod 4");
    paley_cmd->add_option("p", prime)->required();
    paley_cmd->add_flag("--report", report, "Check the p^{3/2} bound instead of emitting LPOLY");
    add_common(paley_cmd, flags);

    std::size_t dim = 0;
    std::size_t det_trials = 16;
    bool det_max_only = false;
    auto* det = app.add_subcommand("det", "Emit the d x d determinant polynomial");
    det->add_option("d", dim)->required();
    det->add_flag("--report", report, "Compare the determinant with random signs (d <= 4)");
    det->add_flag("--max", det_max_only, "Only compute max |det| over ±1 matrices");
    det->add_option("--trials", det_trials, "Random sign patterns (report) or restarts (--max, d >= 5)");
    add_common(det, flags);

    std::size_t delta_max = 4;
    std::size_t instances = 100;
    std::string moments_file;
    auto* khin = app.add_subcommand("khintchine", "Khintchine-type moment checks");
    khin->add_option("--delta-max", delta_max)->check(CLI::Range(1, 6));
    khin->add_option("--instances", instances);
    khin->add_option("--moments", moments_file, "Report exact moments of one LPOLY file instead");
    add_common(khin, flags);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        const auto ex = flags.exhaustive();
        auto load = [&] { return parse_family(read_input(path, in)); };

        if (bounds->parsed()) {
            emit(render(json(bound_summary(load().family())), flags.format), flags, out);
            return kExitOk;
        }
        if (supnorm->parsed()) {
            const auto poly = load();
            SupNormResult r;
            if (mode == "exact") {
                auto o = ex;
                o.parity_symmetry = symmetry;
                r = sup_norm_exact(poly, o);
            } else {
                r = sup_norm_sampled(poly, trials, flags.seed);
            }
            emit(render(json(r), flags.format), flags, out);
            return kExitOk;
        }
        if (synth->parsed()) {
            const auto poly = load();
            if (!(synth_opts.lambda > min_lambda()))
                throw UsageError("--lambda must exceed " + std::to_string(min_lambda()));
            synth_opts.seed = flags.seed;
            synth_opts.exhaustive = ex;
            try {
                const auto cert = synthesize(poly.family(), synth_opts);
                const auto check = certify(cert, synth_opts);
                json j = cert;
                j["certified"] = check.ok;
                j["certify_report"] = check.report;
                emit(render(j, flags.format), flags, out);
                if (!check.ok) err << "lpoly: certificate rejected: " << check.report << '\n';
                return check.ok ? kExitOk : kExitBoundFailure;
            } catch (const BudgetExhausted& e) {
                err << "lpoly: " << e.what() << '\n';
                return kExitBoundFailure;
            }
        }
        if (witness->parsed()) {
            const auto poly = load();
            wconf.seed = flags.seed;
            wconf.polish = !no_polish;
            const auto rep = find_witness(poly, wconf);
            json j = rep;
            if (check_exact) {
                const auto sup = sup_norm_exact(poly, ex);
                j["sup_norm_exact"] = sup.value;
                j["within_sup_norm"] = rep.final_value <= sup.value;
            }
            emit(render(j, flags.format), flags, out);
            return kExitOk;
        }
        if (paley_cmd->parsed()) {
            if (!report) {
                emit(serialize(paley(prime).poly), flags, out);
                return kExitOk;
            }
            const auto r = paley_bound_check(prime, ex, 100000, flags.seed);
            emit(render(json(r), flags.format), flags, out);
            return r.pass ? kExitOk : kExitBoundFailure;
        }
        if (det->parsed()) {
            if (det_max_only) {
                emit(render(json(det_max(dim, ex.workers, det_trials * 125, flags.seed)), flags.format), flags, out);
                return kExitOk;
            }
            if (!report) {
                emit(serialize(determinant_polynomial(dim)), flags, out);
                return kExitOk;
            }
            const auto c = determinant_vs_random(dim, flags.seed, det_trials, ex);
            emit(render(json(c), flags.format), flags, out);
            return c.floor_respected ? kExitOk : kExitBoundFailure;
        }
        if (khin->parsed()) {
            if (!moments_file.empty()) {
                path = moments_file;
                const auto m = moments(load(), ex);
                emit(render(json(m), flags.format), flags, out);
                return m.all_hold() ? kExitOk : kExitBoundFailure;
            }
            const auto rows = khintchine_gap_scan(delta_max, instances, flags.seed, ex);
            bool ok = true;
            for (const auto& r : rows) ok = ok && r.lower_respected && r.converse_below_upper;
            if (flags.format == "csv") {
                emit(gap_csv(rows), flags, out);
            } else {
                json converse = json::array();
                for (std::size_t delta = 1; delta <= delta_max; ++delta) converse.push_back(converse_example(delta, ex));
                emit(render(json{{"rows", rows}, {"converse", converse}}, flags.format), flags, out);
            }
            return ok ? kExitOk : kExitBoundFailure;
        }
    } catch (const ParseError& e) {
        err << "lpoly: " << e.what() << '\n';
        return kExitUsage;
    } catch (const UsageError& e) {
        err << "lpoly: " << e.what() << '\n';
        return kExitUsage;
    } catch (const LimitExceeded& e) {
        err << "lpoly: " << e.what() << " (raise --limit-n)\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        err << "lpoly: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}

}  // namespace lpoly
