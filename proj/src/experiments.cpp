#include "additive_ca/experiments.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <random>
#include <set>

#include <json.hpp>

#include "additive_ca/complexity.hpp"
#include "additive_ca/io_formats.hpp"
#include "additive_ca/spectral.hpp"

namespace aca {

namespace {

using json = nlohmann::ordered_json;

std::string_view trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

std::uint64_t parse_u64(std::string_view text, std::string_view key)
{
    text = trim(text);
    std::uint64_t value = 0;
    const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
    if (res.ec != std::errc{} || res.ptr != text.data() + text.size()) {
        throw FormatError("value of '" + std::string(key) + "' is not a non-negative integer: '" +
                          std::string(text) + "'");
    }
    return value;
}

std::vector<std::string_view> split(std::string_view text, char sep, bool keep_empty = false)
{
    std::vector<std::string_view> out;
    while (true) {
        const auto pos = text.find(sep);
        const auto item = trim(text.substr(0, pos));
        if (keep_empty || !item.empty()) {
            out.push_back(item);
        }
        if (pos == std::string_view::npos) {
            return out;
        }
        text.remove_prefix(pos + 1);
    }
}

bool is_pow2_size(std::size_t n) { return exact_log2(n).value_or(0) >= 1; }

Configuration config_from_mask(std::size_t size, std::uint64_t mask)
{
    return Configuration::from_words(size, {mask});
}

std::uint64_t hamming(const Configuration& a, const Configuration& b) { return (a ^ b).count_ones(); }

json scenario_json(const Scenario& s)
{
    json analyses = json::array();
    for (Analysis a : s.analyses) {
        analyses.push_back(std::string(analysis_name(a)));
    }
    return json{{"name", s.name},
                {"size", s.size},
                {"r", s.r},
                {"init", s.init.to_string()},
                {"seed", s.seed},
                {"horizon", s.horizon},
                {"from", s.from},
                {"analyses", analyses},
                {"at", s.spectra_at},
                {"pbm", s.binary_pbm ? "binary" : "text"}};
}

std::string_view mode_name(ReadoutMode m) { return m == ReadoutMode::uniform_cell ? "uniform-cell" : "block"; }

// Accumulates one property suite.
class Suite {
public:
    explicit Suite(std::string name) { result_.name = std::move(name); }

    void record(bool ok, double deviation = 0.0)
    {
        ++result_.cases;
        if (!ok) {
            ++result_.failures;
            result_.passed = false;
        }
        result_.worst_deviation = std::max(result_.worst_deviation, deviation);
    }
    void note(std::string detail)
    {
        if (result_.detail.empty()) {
            result_.detail = std::move(detail);
        }
    }
    CheckResult finish() { return std::move(result_); }

private:
    CheckResult result_;
};

CheckResult simple_check(std::string name, bool ok, double measured = 0.0, std::string detail = {})
{
    CheckResult c;
    c.name = std::move(name);
    c.passed = ok;
    c.cases = 1;
    c.failures = ok ? 0 : 1;
    c.worst_deviation = measured;
    c.detail = std::move(detail);
    return c;
}

} // namespace

// ---------------------------------------------------------------------------
// Initial configurations and scenario parsing

Configuration random_config(std::size_t size, std::uint64_t seed, bool force_odd)
{
    std::mt19937_64 gen(seed);
    std::vector<Configuration::Word> words((size + Configuration::word_bits - 1) / Configuration::word_bits);
    for (auto& w : words) {
        w = gen();
    }
    Configuration c = Configuration::from_words(size, std::move(words));
    if (force_odd && parity(c) == ParityBit::zero) {
        c.flip(0);
    }
    return c;
}

InitSpec InitSpec::parse(std::string_view text)
{
    text = trim(text);
    if (text == "random-odd") {
        return {InitKind::random_odd, {}};
    }
    if (text == "random") {
        return {InitKind::random, {}};
    }
    if (text == "single-one") {
        return {InitKind::single_one, {}};
    }
    if (text.starts_with("literal:")) {
        auto bits = text.substr(8);
        Configuration::from_string(bits); // validates
        return {InitKind::literal, std::string(bits)};
    }
    if (text.starts_with("file:") && text.size() > 5) {
        return {InitKind::file, std::string(text.substr(5))};
    }
    throw FormatError("unknown init '" + std::string(text) +
                      "' (expected random-odd, random, single-one, literal:<bits> or file:<path>)");
}

std::string InitSpec::to_string() const
{
    switch (kind) {
    case InitKind::random_odd:
        return "random-odd";
    case InitKind::random:
        return "random";
    case InitKind::single_one:
        return "single-one";
    case InitKind::literal:
        return "literal:" + payload;
    case InitKind::file:
        return "file:" + payload;
    }
    return {};
}

Analysis parse_analysis(std::string_view name)
{
    name = trim(name);
    if (name == "spacetime") return Analysis::spacetime;
    if (name == "spectra") return Analysis::spectra;
    if (name == "lz-trace") return Analysis::lz_trace;
    if (name == "plateaus") return Analysis::plateaus;
    if (name == "verdict") return Analysis::verdict;
    throw FormatError("unknown analysis '" + std::string(name) + "'");
}

std::string_view analysis_name(Analysis a)
{
    switch (a) {
    case Analysis::spacetime:
        return "spacetime";
    case Analysis::spectra:
        return "spectra";
    case Analysis::lz_trace:
        return "lz-trace";
    case Analysis::plateaus:
        return "plateaus";
    case Analysis::verdict:
        return "verdict";
    }
    return {};
}

bool Scenario::wants(Analysis a) const
{
    return std::find(analyses.begin(), analyses.end(), a) != analyses.end();
}

namespace {

void parse_scenario_line(std::string_view line, Scenario& s, std::optional<std::uint64_t>& log2_size,
                         std::optional<std::uint64_t>& size)
{
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
        throw FormatError("expected key=value");
    }
    const auto key = trim(line.substr(0, eq));
    const auto value = trim(line.substr(eq + 1));
    if (key == "name") {
        s.name = std::string(value);
    } else if (key == "n") {
        log2_size = parse_u64(value, key);
    } else if (key == "size") {
        size = parse_u64(value, key);
    } else if (key == "r") {
        s.r = parse_u64(value, key);
    } else if (key == "init") {
        s.init = InitSpec::parse(value);
    } else if (key == "seed") {
        s.seed = parse_u64(value, key);
    } else if (key == "horizon") {
        s.horizon = parse_u64(value, key);
    } else if (key == "from") {
        s.from = parse_u64(value, key);
    } else if (key == "analyses") {
        s.analyses.clear();
        for (auto item : split(value, ',')) {
            s.analyses.push_back(parse_analysis(item));
        }
    } else if (key == "at") {
        s.spectra_at.clear();
        for (auto item : split(value, ',')) {
            s.spectra_at.push_back(parse_u64(item, key));
        }
    } else if (key == "pbm") {
        if (value != "text" && value != "binary") {
            throw FormatError("pbm must be 'text' or 'binary'");
        }
        s.binary_pbm = value == "binary";
    } else if (key == "out-dir") {
        s.out_dir = std::string(value);
    } else {
        throw FormatError("unknown scenario key '" + std::string(key) + "'");
    }
}

} // namespace

Scenario parse_scenario(std::string_view text)
{
    Scenario s;
    std::optional<std::uint64_t> log2_size;
    std::optional<std::uint64_t> size;
    std::size_t line_no = 0;
    for (auto line : split(text, '\n', true)) {
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) {
            line = trim(line.substr(0, hash));
        }
        if (line.empty()) {
            continue;
        }
        try {
            parse_scenario_line(line, s, log2_size, size);
        } catch (const FormatError& e) {
            throw FormatError("scenario line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    if (log2_size && size) {
        throw FormatError("scenario sets both n and size");
    }
    if (log2_size) {
        if (*log2_size > 40) {
            throw FormatError("n = " + std::to_string(*log2_size) + " is too large");
        }
        s.size = std::size_t{1} << *log2_size;
    } else if (size) {
        s.size = *size;
    } else {
        throw FormatError("scenario must set n or size");
    }
    if (s.size == 0) {
        throw FormatError("array size must be at least 1");
    }
    if (s.r == 0) {
        throw FormatError("r must be a positive integer");
    }
    if (s.init.kind == InitKind::literal && s.init.payload.size() != s.size) {
        throw FormatError("literal init has " + std::to_string(s.init.payload.size()) +
                          " cells but size is " + std::to_string(s.size));
    }
    return s;
}

const std::vector<std::string>& preset_names()
{
    static const std::vector<std::string> names = {
        "fig1-left", "fig1-right", "fig2-top",   "fig2-bottom", "fig3",       "fig4",
        "fig5-left", "fig5-right", "fig6",       "fig7",        "fig8-left",  "fig8-right",
    };
    return names;
}

Scenario preset(std::string_view name, bool full)
{
    constexpr std::uint64_t kSeed = 2012;
    Scenario s;
    s.name = std::string(name);
    s.seed = kSeed;
    const std::size_t pow2 = full ? 8192 : 256;
    const std::size_t odd = pow2 + 1;

    if (name == "fig1-left") {
        s.size = 128;
        s.horizon = 127;
        s.analyses = {Analysis::spacetime, Analysis::verdict};
    } else if (name == "fig1-right") {
        s.size = 127;
        s.horizon = 126;
        s.analyses = {Analysis::spacetime, Analysis::verdict};
    } else if (name == "fig2-top") {
        s.size = 128;
        s.r = 2;
        s.horizon = 63;
        s.analyses = {Analysis::spacetime, Analysis::verdict};
    } else if (name == "fig2-bottom") {
        s.size = 128;
        s.r = 8;
        s.horizon = 15;
        s.analyses = {Analysis::spacetime, Analysis::verdict};
    } else if (name == "fig3") {
        s.size = pow2;
        s.spectra_at = full ? std::vector<std::uint64_t>{0, 4095, 8000, 8160, 8180, 8184, 8188, 8190, 8191}
                            : std::vector<std::uint64_t>{0, 127, 224, 248, 252, 254, 255};
        s.horizon = s.spectra_at.back();
        s.analyses = {Analysis::spectra, Analysis::verdict};
    } else if (name == "fig4") {
        s.size = odd;
        s.init = {InitKind::random, {}};
        s.spectra_at = {0, 10000};
        s.horizon = 10000;
        s.analyses = {Analysis::spectra};
    } else if (name == "fig5-left" || name == "fig6") {
        s.size = pow2;
        s.horizon = pow2 - 1;
        if (name == "fig6") {
            s.from = full ? 7000 : 218;
        }
        s.analyses = {Analysis::lz_trace, Analysis::plateaus};
    } else if (name == "fig5-right") {
        s.size = odd;
        s.init = {InitKind::random, {}};
        s.horizon = full ? 10000 : 2 * pow2;
        s.analyses = {Analysis::lz_trace, Analysis::plateaus};
    } else if (name == "fig7") {
        s.size = 256;
        s.init = {InitKind::single_one, {}};
        s.horizon = 255;
        s.analyses = {Analysis::spacetime, Analysis::verdict};
    } else if (name == "fig8-left") {
        s.size = pow2;
        s.init = {InitKind::single_one, {}};
        s.horizon = pow2 + pow2 / 64;
        s.analyses = {Analysis::lz_trace};
    } else if (name == "fig8-right") {
        s.size = odd;
        s.init = {InitKind::single_one, {}};
        s.horizon = full ? 10000 : 2 * pow2;
        s.analyses = {Analysis::lz_trace};
    } else {
        throw FormatError("unknown preset '" + std::string(name) + "'");
    }
    return s;
}

Configuration make_initial(const Scenario& s)
{
    switch (s.init.kind) {
    case InitKind::random_odd:
        return random_config(s.size, s.seed, true);
    case InitKind::random:
        return random_config(s.size, s.seed, false);
    case InitKind::single_one:
        return Configuration::single_one(s.size, 0);
    case InitKind::literal:
        break;
    case InitKind::file: {
        std::string text;
        try {
            text = read_file(s.init.payload);
        } catch (const Error& e) {
            throw FormatError(e.what());
        }
        Configuration c = Configuration::from_string(trim(text));
        if (c.size() != s.size) {
            throw FormatError("initial configuration file holds " + std::to_string(c.size()) +
                              " cells but size is " + std::to_string(s.size));
        }
        return c;
    }
    }
    Configuration c = Configuration::from_string(s.init.payload);
    if (c.size() != s.size) {
        throw FormatError("literal init length does not match size");
    }
    return c;
}

// ---------------------------------------------------------------------------
// Reports

bool RunReport::passed() const
{
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

const CheckResult* RunReport::check(std::string_view name) const
{
    for (const auto& c : checks) {
        if (c.name == name) {
            return &c;
        }
    }
    return nullptr;
}

std::string RunReport::to_json() const
{
    json doc;
    doc["schema_version"] = 1;
    doc["scenario"] = scenario ? scenario_json(*scenario) : json(nullptr);
    if (verdict) {
        doc["verdict"] = json{{"answer", to_int(verdict->answer)},
                              {"decided_at", verdict->decided_at},
                              {"mode", std::string(mode_name(verdict->mode))},
                              {"block", verdict->block},
                              {"uniform", verdict->uniform}};
    } else {
        doc["verdict"] = nullptr;
    }
    json names = json::array();
    for (const auto& a : artifacts) {
        names.push_back(a.name);
    }
    doc["artifacts"] = names;
    json spec = json::array();
    for (const auto& s : spectra) {
        spec.push_back(json{{"t", s.t}, {"longest_period", s.longest_period}, {"flatness", format_real(s.flatness)}});
    }
    doc["spectra"] = spec;
    json list = json::array();
    for (const auto& c : checks) {
        list.push_back(json{{"name", c.name},
                            {"passed", c.passed},
                            {"cases", c.cases},
                            {"failures", c.failures},
                            {"worst_deviation", format_real(c.worst_deviation)},
                            {"detail", c.detail}});
    }
    doc["checks"] = list;
    doc["passed"] = passed();
    return doc.dump(2) + "\n";
}

// ---------------------------------------------------------------------------
// Scenario runner

RunReport run_scenario(const Scenario& s)
{
    RunReport report;
    report.scenario = s;
    const Configuration initial = make_initial(s);
    const RuleParams rule(s.r);
    const bool pow2 = is_pow2_size(s.size);
    const bool odd_start = parity(initial) == ParityBit::one;

    if (s.wants(Analysis::spacetime)) {
        const EvolutionRun run = evolve_trace(initial, rule, s.horizon, 1);
        report.artifacts.push_back({"spacetime.pbm", emit_pbm(SpaceTimeImage::from_run(run), s.binary_pbm)});
    }

    if (s.wants(Analysis::verdict)) {
        if (pow2 && !rule.degenerate_for(s.size)) {
            try {
                const ParityVerdict v = classify(initial, rule);
                report.verdict = v;
                report.checks.push_back(simple_check("verdict-equals-parity", v.answer == parity(initial), 0.0,
                                                     "answer " + std::to_string(to_int(v.answer)) + " at t = " +
                                                         std::to_string(v.decided_at)));
                const Configuration decided = fast_evolve(initial, rule, v.decided_at);
                const std::size_t period = spatial_period(decided);
                report.checks.push_back(simple_check("readout-period-divides-block", v.block % period == 0,
                                                     static_cast<double>(period)));
            } catch (const InvariantViolation& e) {
                report.checks.push_back(simple_check("verdict-equals-parity", false, 1.0, e.what()));
            }
        } else {
            bool refused = false;
            std::string why;
            try {
                classify(initial, rule);
            } catch (const UnsupportedSize& e) {
                refused = true;
                why = e.what();
            } catch (const PreconditionError& e) {
                refused = true;
                why = e.what();
            }
            report.checks.push_back(simple_check("classifier-refuses", refused, 0.0, why));
            if (!pow2) {
                const Configuration late = fast_evolve(initial, rule, s.size - 1);
                const bool unanimous = unanimous_readout(late, 1).has_value();
                report.checks.push_back(simple_check("no-unanimity-at-N-1", !unanimous,
                                                     static_cast<double>(late.count_ones())));
            }
        }
    }

    if (s.wants(Analysis::spectra)) {
        std::vector<std::uint64_t> times = s.spectra_at;
        if (times.empty()) {
            times = {0, s.horizon};
        }
        std::sort(times.begin(), times.end());
        times.erase(std::unique(times.begin(), times.end()), times.end());
        EvolutionRun sparse{rule, initial, times.back(), 1, {}};
        sparse.snapshots.emplace(0, initial);
        const SpectrumSeries series = spectrum_trace(sparse, times);
        report.artifacts.push_back({"spectra.csv", emit_csv(series)});
        std::vector<std::size_t> periods;
        for (const auto& [t, spec] : series) {
            periods.push_back(longest_period_from_spectrum(spec));
            report.spectra.push_back({t, periods.back(), spectral_flatness(spec)});
        }
        if (pow2 && rule.is_odd() && odd_start) {
            const bool monotone = std::is_sorted(periods.rbegin(), periods.rend());
            report.checks.push_back(simple_check("cascade-non-increasing", monotone));
        }
    }

    if (s.wants(Analysis::lz_trace) || s.wants(Analysis::plateaus)) {
        const ComplexityTrace trace = complexity_trace(initial, rule, s.from, s.horizon);
        if (s.wants(Analysis::lz_trace)) {
            report.artifacts.push_back({"lz_trace.csv", emit_csv(trace)});
        }
        if (s.wants(Analysis::plateaus)) {
            const PlateauReport plateaus = detect_plateaus(trace);
            report.artifacts.push_back({"plateaus.json", emit_plateaus_json(plateaus)});
            const unsigned n = static_cast<unsigned>(std::bit_width(s.size) - 1);
            if (pow2 && rule.is_odd() && s.init.kind == InitKind::random_odd) {
                // Plateaus after the first halving are strictly decreasing in mean.
                const std::uint64_t first_halving = std::uint64_t{1} << (n - 1);
                Suite suite("plateau-means-decreasing");
                std::optional<double> prev;
                for (const auto& p : plateaus.intervals) {
                    if (p.t_start < first_halving) {
                        continue;
                    }
                    if (prev) {
                        suite.record(p.mean < *prev, std::max(0.0, p.mean - *prev));
                    }
                    prev = p.mean;
                }
                report.checks.push_back(suite.finish());
            } else if (!pow2) {
                const auto schedule = halving_changepoints(n);
                const auto found = plateaus.changepoints();
                std::uint64_t hits = 0;
                for (auto b : found) {
                    hits += std::count(schedule.begin(), schedule.end(), b);
                }
                report.checks.push_back(simple_check("no-halving-boundaries", hits == 0,
                                                     static_cast<double>(hits),
                                                     std::to_string(found.size()) + " change points detected"));
                if (s.from == 0 && trace.values.size() > 202) {
                    double early = 0.0;
                    double tail = 0.0;
                    for (std::size_t i = 0; i <= 100; ++i) {
                        early += static_cast<double>(trace.values[i].complexity);
                        tail += static_cast<double>(trace.values[trace.values.size() - 1 - i].complexity);
                    }
                    const double rel = std::abs(tail - early) / early;
                    report.checks.push_back(simple_check("tail-mean-within-10pct", rel <= 0.10, rel));
                }
            }
        }
    }

    if (!s.out_dir.empty()) {
        for (const auto& a : report.artifacts) {
            write_file(s.out_dir / a.name, a.contents);
        }
        write_file(s.out_dir / "report.json", report.to_json());
    }
    return report;
}

// ---------------------------------------------------------------------------
// Property suites

RunReport verify_all(const VerifyOptions& options)
{
    const StepFunction step_fn = options.step_under_test ? options.step_under_test : StepFunction(step);
    std::mt19937_64 gen(options.seed);

    Suite additivity("additivity");
    Suite parity_odd("parity-odd-r");
    Suite parity_even("parity-even-r");
    Suite garden("garden-of-eden");
    Suite even_zero("even-frequency-zeros");
    Suite odd_zero("odd-frequency-zeros");
    Suite halving("period-halving");
    Suite backends("backend-equivalence");
    Suite plateaus("plateau-structure");

    for (unsigned n : options.log2_sizes) {
        if (n == 0 || n > 24) {
            throw PreconditionError("verify sizes must satisfy 1 <= n <= 24, got " + std::to_string(n));
        }
        const std::size_t size = std::size_t{1} << n;
        const bool exhaustive = size <= 8;
        const std::uint64_t total = std::uint64_t{1} << std::min<std::size_t>(size, 63);

        // Either every configuration of this size or `samples` random ones.
        std::vector<Configuration> configs;
        if (exhaustive) {
            for (std::uint64_t m = 0; m < total; ++m) {
                configs.push_back(config_from_mask(size, m));
            }
        } else {
            for (std::size_t i = 0; i < options.samples; ++i) {
                configs.push_back(random_config(size, gen(), false));
            }
        }
        std::vector<Configuration> odd_configs;
        for (const auto& c : configs) {
            Configuration o = c;
            if (parity(o) == ParityBit::zero) {
                if (exhaustive) {
                    continue;
                }
                o.flip(0);
            }
            odd_configs.push_back(std::move(o));
        }

        // additivity
        if (exhaustive) {
            for (std::uint64_t r = 1; r <= 3; ++r) {
                const RuleParams rule(r);
                for (const auto& a : configs) {
                    const Configuration sa = step_fn(a, rule);
                    for (const auto& b : configs) {
                        const std::uint64_t d = hamming(step_fn(a ^ b, rule), sa ^ step_fn(b, rule));
                        additivity.record(d == 0, static_cast<double>(d));
                    }
                }
            }
        } else {
            for (std::size_t i = 0; i < configs.size(); ++i) {
                const RuleParams rule(1 + gen() % (2 * size));
                const Configuration b = random_config(size, gen(), false);
                const std::uint64_t d = hamming(step_fn(configs[i] ^ b, rule), step_fn(configs[i], rule) ^ step_fn(b, rule));
                additivity.record(d == 0, static_cast<double>(d));
            }
        }

        // parity problem, odd and even r
        for (std::uint64_t r : {1, 3, 5, 2, 4, 6, 8, 12}) {
            const RuleParams rule(r);
            if (rule.k() >= n) {
                continue;
            }
            Suite& suite = rule.is_odd() ? parity_odd : parity_even;
            for (const auto& c : configs) {
                try {
                    const ParityVerdict v = classify(c, rule);
                    suite.record(v.uniform && v.answer == parity(c), v.answer == parity(c) ? 0.0 : 1.0);
                } catch (const InvariantViolation& e) {
                    suite.record(false, 1.0);
                    suite.note(e.what());
                }
            }
        }

        // successors have even parity
        for (std::uint64_t r = 1; r <= 3; ++r) {
            const RuleParams rule(r);
            if (rule.degenerate_for(size)) {
                continue;
            }
            for (const auto& c : configs) {
                const bool even = parity(step_fn(c, rule)) == ParityBit::zero;
                garden.record(even, even ? 0.0 : 1.0);
            }
        }

        // spectral zeros and period halving
        for (std::uint64_t r : {1, 3}) {
            const RuleParams rule(r);
            for (const auto& c : odd_configs) {
                const TheoremReport rep = check_even_zero_theorem(c, rule);
                even_zero.record(rep.holds, rep.max_power);
            }
            const std::uint64_t onset = size / 2;
            for (const auto& c : configs) {
                if (exhaustive) {
                    for (std::uint64_t t = onset; t <= size; ++t) {
                        const TheoremReport rep = check_odd_zero_theorem(c, rule, t);
                        odd_zero.record(rep.holds, rep.max_power);
                    }
                } else {
                    const std::uint64_t t = onset + gen() % (onset + 1);
                    const TheoremReport rep = check_odd_zero_theorem(c, rule, t);
                    odd_zero.record(rep.holds, rep.max_power);
                }
                for (unsigned j = 1; j <= n; ++j) {
                    const std::uint64_t block = std::uint64_t{1} << (n - j);
                    const std::size_t period = spatial_period(fast_evolve(c, rule, size - block));
                    halving.record(block % period == 0, static_cast<double>(period));
                }
            }
        }

        // backend equivalence against the unpacked per-cell evolution
        for (std::size_t i = 0; i < configs.size(); ++i) {
            const RuleParams rule(1 + gen() % 16);
            const std::uint64_t t = gen() % (4 * size + 1);
            const Configuration& c = configs[i];
            const Configuration expected = naive_evolve(c, rule, t);
            Configuration packed = c;
            for (std::uint64_t s = 0; s < t; ++s) {
                packed = step_packed(packed, rule);
            }
            const unsigned k = static_cast<unsigned>(gen() % (n + 2));
            const std::uint64_t d = std::max({hamming(expected, packed), hamming(expected, fast_evolve(c, rule, t)),
                                              hamming(expected, poly_evolve(c, rule, t)),
                                              hamming(naive_evolve(c, rule, (std::uint64_t{1} << k) - 1),
                                                      window_sum_jump(c, rule, k))});
            backends.record(d == 0, static_cast<double>(d));
        }

        // plateau boundaries coincide with period-halving times
        if (n >= 2) {
            const RuleParams rule(1);
            std::vector<std::uint64_t> expected = halving_changepoints(n);
            expected.pop_back(); // 2^n - 1 lies past the traced range
            for (const auto& c : odd_configs) {
                const ComplexityTrace trace = complexity_trace(c, rule, 0, size - 2);
                const PlateauReport rep = detect_plateaus(trace);
                std::vector<std::uint64_t> period_changes;
                Configuration cur = c;
                std::size_t period = spatial_period(cur);
                for (std::uint64_t t = 1; t + 2 <= size; ++t) {
                    cur = step_packed(cur, rule);
                    const std::size_t p = spatial_period(cur);
                    if (p != period) {
                        period_changes.push_back(t);
                    }
                    period = p;
                }
                const bool ok = rep.changepoints() == expected && period_changes == expected;
                plateaus.record(ok, ok ? 0.0 : 1.0);
            }
        }
    }

    RunReport report;
    for (Suite* s : {&additivity, &parity_odd, &parity_even, &garden, &even_zero, &odd_zero, &halving, &backends,
                     &plateaus}) {
        report.checks.push_back(s->finish());
    }
    return report;
}

} // namespace aca
