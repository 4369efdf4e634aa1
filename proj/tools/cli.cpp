#include "cli.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <filesystem>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "additive_ca/complexity.hpp"
#include "additive_ca/engine.hpp"
#include "additive_ca/experiments.hpp"
#include "additive_ca/io_formats.hpp"
#include "additive_ca/parity.hpp"
#include "additive_ca/spectral.hpp"

namespace aca::cli {

namespace {

using json = nlohmann::ordered_json;

struct UsageError : Error {
    using Error::Error;
};

struct Common {
    std::optional<std::uint64_t> size;
    std::optional<std::uint64_t> log2_size;
    std::uint64_t r = 1;
    std::optional<std::uint64_t> steps;
    std::uint64_t seed = 1;
    std::string init = "random-odd";
    std::string out_dir;
    std::string format; // empty: csv (text for parity)
};

void add_common(CLI::App* cmd, Common& c)
{
    cmd->add_option("-N,--size", c.size, "Array size N");
    cmd->add_option("-n,--log2-size", c.log2_size, "Array size as n with N = 2^n")->check(CLI::Range(0, 40));
    cmd->add_option("-r,--r", c.r, "Shift distance r of a_i(t+1) = a_{i-r}(t) + a_i(t)")->check(CLI::PositiveNumber);
    cmd->add_option("-t,--steps", c.steps, "Number of time steps");
    cmd->add_option("--seed", c.seed, "Seed for random initial configurations");
    cmd->add_option("--init", c.init, "random-odd | random | single-one | literal:<bits> | file:<path>");
    cmd->add_option("--out", c.out_dir, "Directory receiving artifacts (default: standard output)");
    cmd->add_option("--format", c.format, "csv | pbm | json")->check(CLI::IsMember({"csv", "pbm", "json"}));
}

std::size_t resolve_size(const Common& c)
{
    if (c.size.has_value() == c.log2_size.has_value()) {
        throw UsageError("give exactly one of --size/-N and --log2-size/-n");
    }
    const std::uint64_t n = c.size ? *c.size : (std::uint64_t{1} << *c.log2_size);
    if (n == 0) {
        throw UsageError("array size must be at least 1");
    }
    return static_cast<std::size_t>(n);
}

Configuration resolve_initial(const Common& c, std::size_t size)
{
    Scenario s;
    s.size = size;
    s.seed = c.seed;
    s.init = InitSpec::parse(c.init);
    if (s.init.kind == InitKind::literal && s.init.payload.size() != size) {
        throw UsageError("literal init has " + std::to_string(s.init.payload.size()) + " cells but N = " +
                         std::to_string(size));
    }
    return make_initial(s);
}

void emit(std::ostream& out, const std::string& out_dir, const std::string& name, const std::string& contents)
{
    if (out_dir.empty()) {
        out << contents;
    } else {
        write_file(std::filesystem::path(out_dir) / name, contents);
    }
}

std::vector<unsigned> parse_sizes(const std::string& text)
{
    std::vector<unsigned> out;
    const auto number = [&](std::string_view s) {
        unsigned v = 0;
        const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
        if (res.ec != std::errc{} || res.ptr != s.data() + s.size() || v == 0) {
            throw UsageError("invalid --sizes entry '" + std::string(s) + "'");
        }
        return v;
    };
    std::string_view rest = text;
    while (!rest.empty()) {
        const auto comma = rest.find(',');
        const std::string_view item = rest.substr(0, comma);
        if (const auto dash = item.find('-'); dash != std::string_view::npos) {
            const unsigned lo = number(item.substr(0, dash));
            const unsigned hi = number(item.substr(dash + 1));
            if (lo > hi) {
                throw UsageError("empty --sizes range '" + std::string(item) + "'");
            }
            for (unsigned v = lo; v <= hi; ++v) {
                out.push_back(v);
            }
        } else {
            out.push_back(number(item));
        }
        if (comma == std::string_view::npos) {
            break;
        }
        rest.remove_prefix(comma + 1);
    }
    if (out.empty()) {
        throw UsageError("--sizes is empty");
    }
    return out;
}

std::string verdict_line(const ParityVerdict& v)
{
    return "parity=" + std::to_string(to_int(v.answer)) + " decided_at=" + std::to_string(v.decided_at) + "\n";
}

// ---------------------------------------------------------------------------

int cmd_evolve(const Common& c, std::uint64_t stride, bool binary, bool save, std::ostream& out)
{
    const std::size_t size = resolve_size(c);
    const Configuration initial = resolve_initial(c, size);
    const RuleParams rule(c.r);
    const std::uint64_t steps = c.steps.value_or(size - 1);
    const EvolutionRun run = evolve_trace(initial, rule, steps, stride);

    if (c.format == "pbm") {
        emit(out, c.out_dir, "spacetime.pbm", emit_pbm(SpaceTimeImage::from_run(run), binary));
    } else if (c.format == "json") {
        const Configuration& last = run.at(steps);
        json doc{{"size", size},
                 {"r", c.r},
                 {"steps", steps},
                 {"initial_parity", to_int(parity(initial))},
                 {"final", last.to_string()},
                 {"final_parity", to_int(parity(last))},
                 {"final_period", spatial_period(last)}};
        emit(out, c.out_dir, "evolution.json", doc.dump(2) + "\n");
    } else {
        std::string csv = "t,cells\n";
        for (const auto& [t, cfg] : run.snapshots) {
            csv += std::to_string(t) + "," + cfg.to_string() + "\n";
        }
        emit(out, c.out_dir, "evolution.csv", csv);
    }
    if (save) {
        if (c.out_dir.empty()) {
            throw UsageError("--save requires --out");
        }
        save_run(run, std::filesystem::path(c.out_dir) / "run.acar");
    }
    return exit_ok;
}

int cmd_parity(const Common& c, std::ostream& out)
{
    const std::size_t size = resolve_size(c);
    if (!exact_log2(size) || size < 2) {
        throw UsageError("N must be a power of two 2^n with n >= 1 for parity classification, got N = " +
                         std::to_string(size));
    }
    const Configuration initial = resolve_initial(c, size);
    const ParityVerdict v = classify(initial, RuleParams(c.r));
    if (c.format == "json") {
        json doc{{"answer", to_int(v.answer)},
                 {"decided_at", v.decided_at},
                 {"mode", v.mode == ReadoutMode::uniform_cell ? "uniform-cell" : "block"},
                 {"block", v.block},
                 {"uniform", v.uniform},
                 {"initial_parity", to_int(parity(initial))}};
        emit(out, c.out_dir, "verdict.json", doc.dump(2) + "\n");
    } else {
        emit(out, c.out_dir, "verdict.txt", verdict_line(v));
    }
    return v.answer == parity(initial) ? exit_ok : exit_failed;
}

int cmd_spectrum(const Common& c, std::vector<std::uint64_t> at, std::ostream& out)
{
    const std::size_t size = resolve_size(c);
    const Configuration initial = resolve_initial(c, size);
    const RuleParams rule(c.r);
    if (at.empty()) {
        at = {0, c.steps.value_or(size - 1)};
    }
    std::sort(at.begin(), at.end());
    EvolutionRun run{rule, initial, at.back(), 1, {}};
    run.snapshots.emplace(0, initial);
    const SpectrumSeries series = spectrum_trace(run, at);
    if (c.format == "json") {
        json rows = json::array();
        for (const auto& [t, s] : series) {
            rows.push_back(json{{"t", t},
                                {"longest_period", longest_period_from_spectrum(s)},
                                {"flatness", format_real(spectral_flatness(s))}});
        }
        emit(out, c.out_dir, "spectrum.json", rows.dump(2) + "\n");
    } else {
        emit(out, c.out_dir, "spectrum.csv", emit_csv(series));
    }
    return exit_ok;
}

int cmd_lz(const Common& c, std::uint64_t from, std::uint64_t stride, bool plateaus, std::ostream& out)
{
    const std::size_t size = resolve_size(c);
    const Configuration initial = resolve_initial(c, size);
    const std::uint64_t horizon = c.steps.value_or(size - 1);
    const ComplexityTrace trace = complexity_trace(initial, RuleParams(c.r), from, horizon, stride);
    if (!plateaus) {
        emit(out, c.out_dir, "lz_trace.csv", emit_csv(trace));
        return exit_ok;
    }
    const std::string doc = emit_plateaus_json(detect_plateaus(trace));
    if (c.out_dir.empty()) {
        out << doc;
    } else {
        emit(out, c.out_dir, "lz_trace.csv", emit_csv(trace));
        emit(out, c.out_dir, "plateaus.json", doc);
    }
    return exit_ok;
}

int cmd_verify(const Common& c, const std::string& sizes, std::size_t samples, std::ostream& out)
{
    VerifyOptions opts;
    opts.log2_sizes = parse_sizes(sizes);
    opts.samples = samples;
    opts.seed = c.seed;
    const RunReport report = verify_all(opts);
    emit(out, c.out_dir, "verify.json", report.to_json());
    return report.passed() ? exit_ok : exit_failed;
}

int cmd_bench(const Common& c, const std::vector<std::string>& backends, std::size_t reps, std::ostream& out,
              std::ostream& err)
{
    if (reps == 0) {
        throw UsageError("--reps must be at least 1");
    }
    const std::size_t size = resolve_size(c);
    const Configuration initial = resolve_initial(c, size);
    const RuleParams rule(c.r);
    const std::uint64_t t = c.steps.value_or(1024);

    using Backend = std::function<Configuration()>;
    const std::vector<std::pair<std::string, Backend>> all = {
        {"naive", [&] { return naive_evolve(initial, rule, t); }},
        {"packed",
         [&] {
             Configuration cur = initial;
             for (std::uint64_t s = 0; s < t; ++s) {
                 cur = step_packed(cur, rule);
             }
             return cur;
         }},
        {"jump", [&] { return fast_evolve(initial, rule, t); }},
        {"poly", [&] { return poly_evolve(initial, rule, t); }},
    };
    std::vector<std::string> chosen = backends;
    if (chosen.empty() || (chosen.size() == 1 && chosen[0] == "all")) {
        chosen = {"naive", "packed", "jump", "poly"};
    }

    json rows = json::array();
    std::optional<Configuration> reference;
    bool all_equal = true;
    std::optional<double> naive_rate;
    std::vector<std::string> warnings;
    for (const auto& name : chosen) {
        const auto it = std::find_if(all.begin(), all.end(), [&](const auto& b) { return b.first == name; });
        if (it == all.end()) {
            throw UsageError("unknown backend '" + name + "' (expected naive, packed, jump, poly)");
        }
        std::vector<double> seconds;
        std::optional<Configuration> result;
        for (std::size_t i = 0; i < reps; ++i) {
            const auto start = std::chrono::steady_clock::now();
            result = it->second();
            const auto stop = std::chrono::steady_clock::now();
            seconds.push_back(std::chrono::duration<double>(stop - start).count());
        }
        std::sort(seconds.begin(), seconds.end());
        const double median = seconds[seconds.size() / 2];
        const double rate = static_cast<double>(size) * static_cast<double>(t) / std::max(median, 1e-12);
        if (!reference) {
            reference = result;
        } else if (!(*reference == *result)) {
            all_equal = false;
        }
        std::uint64_t step_equivalents = t;
        if (name == "jump") {
            step_equivalents = 0;
            for (unsigned k = 0; k < 64; ++k) {
                if ((t >> k) & 1U) {
                    step_equivalents += std::uint64_t{1} << k;
                }
            }
        }
        if (name == "naive") {
            naive_rate = rate;
        }
        json row{{"backend", name},
                 {"median_seconds", format_real(median)},
                 {"cell_steps_per_second", format_real(rate)},
                 {"step_equivalents", step_equivalents}};
        if (naive_rate && name != "naive") {
            const double speedup = rate / *naive_rate;
            row["speedup_vs_naive"] = format_real(speedup);
            if ((name == "packed" || name == "jump") && speedup < 5.0) {
                warnings.push_back(name + " backend is only " + format_real(speedup) + "x naive throughput");
            }
        }
        rows.push_back(row);
    }
    for (const auto& w : warnings) {
        err << "warning: " << w << "\n";
    }
    json doc{{"size", size}, {"steps", t}, {"reps", reps}, {"backends", rows}, {"outputs_equal", all_equal},
             {"warnings", warnings}};
    emit(out, c.out_dir, "bench.json", doc.dump(2) + "\n");
    return all_equal ? exit_ok : exit_failed;
}

int cmd_scenario(const Common& c, const std::string& spec, bool full, std::optional<std::uint64_t> seed,
                 std::ostream& out)
{
    const auto& names = preset_names();
    Scenario s;
    if (std::find(names.begin(), names.end(), spec) != names.end()) {
        s = preset(spec, full);
    } else if (std::filesystem::exists(spec)) {
        s = parse_scenario(read_file(spec));
    } else {
        throw UsageError("'" + spec + "' is neither a preset name nor a scenario file");
    }
    if (seed) {
        s.seed = *seed;
    }
    if (!c.out_dir.empty()) {
        s.out_dir = c.out_dir;
    } else if (!s.out_dir.empty()) {
        // Scenario files may name an output directory only through --out.
        s.out_dir.clear();
    }
    const RunReport report = run_scenario(s);
    if (s.out_dir.empty()) {
        out << report.to_json();
    }
    return report.passed() ? exit_ok : exit_failed;
}

} // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Additive cellular automata workbench: evolution, parity classification, spectra, LZ78 complexity"};
    app.name("aca");
    app.require_subcommand(1);

    Common common;

    auto* evolve = app.add_subcommand("evolve", "Evolve a configuration and emit the space-time pattern");
    std::uint64_t stride = 1;
    bool binary = false;
    bool save = false;
    add_common(evolve, common);
    evolve->add_option("--stride", stride, "Snapshot stride")->check(CLI::PositiveNumber);
    evolve->add_flag("--binary", binary, "Emit packed P4 instead of text P1");
    evolve->add_flag("--save", save, "Also write the run container run.acar into --out");

    auto* par = app.add_subcommand("parity", "Decide the parity of the initial configuration");
    add_common(par, common);

    auto* spectrum = app.add_subcommand("spectrum", "Power spectra at selected time steps");
    std::vector<std::uint64_t> at;
    add_common(spectrum, common);
    spectrum->add_option("--at", at, "Time steps (comma separated)")->delimiter(',');

    auto* lz = app.add_subcommand("lz", "LZ78 complexity trace");
    std::uint64_t from = 0;
    std::uint64_t lz_stride = 1;
    bool plateaus = false;
    add_common(lz, common);
    lz->add_option("--from", from, "First time step of the trace");
    lz->add_option("--stride", lz_stride, "Sampling stride")->check(CLI::PositiveNumber);
    lz->add_flag("--plateaus", plateaus, "Report plateaus instead of the raw trace");

    auto* verify = app.add_subcommand("verify", "Run every property suite and print a JSON report");
    std::string sizes = "3-8";
    std::size_t samples = 100;
    add_common(verify, common);
    verify->add_option("--sizes", sizes, "Values of n, e.g. 3-8 or 4,6,10");
    verify->add_option("--samples", samples, "Random cases per size when N > 8");

    auto* bench = app.add_subcommand("bench", "Time the evolution backends");
    std::vector<std::string> backends;
    std::size_t reps = 3;
    add_common(bench, common);
    bench->add_option("--backends", backends, "naive,packed,jump,poly or all")->delimiter(',');
    bench->add_option("--reps", reps, "Repetitions per backend (median reported)");

    auto* scenario = app.add_subcommand("scenario", "Run a named preset or a scenario file");
    std::string spec;
    bool full = false;
    std::optional<std::uint64_t> scenario_seed;
    scenario->add_option("spec", spec, "Preset name or path to a key=value scenario file")->required();
    scenario->add_flag("--full", full, "Full-size presets (N = 8192 / 8193)");
    scenario->add_option("--seed", scenario_seed, "Override the scenario seed");
    scenario->add_option("--out", common.out_dir, "Directory receiving artifacts and report.json");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? exit_ok : exit_usage;
    }

    try {
        if (*evolve) return cmd_evolve(common, stride, binary, save, out);
        if (*par) return cmd_parity(common, out);
        if (*spectrum) return cmd_spectrum(common, at, out);
        if (*lz) return cmd_lz(common, from, lz_stride, plateaus, out);
        if (*verify) return cmd_verify(common, sizes, samples, out);
        if (*bench) return cmd_bench(common, backends, reps, out, err);
        if (*scenario) return cmd_scenario(common, spec, full, scenario_seed, out);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (const InvariantViolation& e) {
        err << "invariant violated: " << e.what() << "\n";
        return exit_failed;
    } catch (const std::exception& e) {
        // Unsupported sizes, failed preconditions, malformed input, I/O.
        err << "error: " << e.what() << "\n";
        return exit_usage;
    }
    return exit_usage;
}

} // namespace aca::cli
