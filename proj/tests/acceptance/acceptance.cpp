// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails. Runtime budgets are part of each criterion.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "additive_ca/complexity.hpp"
#include "additive_ca/engine.hpp"
#include "additive_ca/experiments.hpp"
#include "additive_ca/io_formats.hpp"
#include "additive_ca/parity.hpp"
#include "additive_ca/spectral.hpp"
#include "cli.hpp"
#include "oracles.hpp"

using namespace aca;

namespace {

struct Outcome {
    bool passed = true;
    std::string detail;
    std::string warning;
};

struct Tally {
    std::uint64_t cases = 0;
    std::uint64_t failures = 0;
    std::string first_failure;

    void record(bool ok, const std::string& what = {})
    {
        ++cases;
        if (!ok) {
            if (failures == 0) {
                first_failure = what;
            }
            ++failures;
        }
    }
    std::string summary() const
    {
        std::string s = std::to_string(cases) + " cases, " + std::to_string(failures) + " failures";
        if (failures > 0 && !first_failure.empty()) {
            s += " (first: " + first_failure + ")";
        }
        return s;
    }
};

Configuration from_mask(std::size_t n, std::uint64_t mask) { return Configuration::from_words(n, {mask}); }

const std::vector<std::size_t> kSweep{16, 32, 64, 128, 256, 512, 1024};

// --- 1 ----------------------------------------------------------------------
Outcome parity_odd_r()
{
    Tally tally;
    for (std::uint64_t r : {1, 3, 5}) {
        const RuleParams rule(r);
        for (std::size_t n : {2U, 4U, 8U}) {
            for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m) {
                const Configuration c = from_mask(n, m);
                // brute-force evolution to t = N - 1, then the uniform readout
                const auto cells = oracle::evolve(oracle::cells_of(c.to_string()), static_cast<long>(r), n - 1);
                const int p = static_cast<int>(c.count_ones() % 2);
                const bool unanimous = std::all_of(cells.begin(), cells.end(), [&](int v) { return v == p; });
                const ParityVerdict v = classify(c, rule);
                tally.record(unanimous && v.uniform && to_int(v.answer) == p && v.decided_at == n - 1,
                             "N=" + std::to_string(n) + " mask=" + std::to_string(m));
            }
        }
        std::mt19937_64 seeds(100 + r);
        for (std::size_t n : kSweep) {
            for (int i = 0; i < 200; ++i) {
                const Configuration c = random_config(n, seeds(), false);
                const Configuration last = fast_evolve(c, rule, n - 1);
                const bool ok = parity(c) == ParityBit::one ? last.is_all_ones() : last.is_null();
                const ParityVerdict v = classify(c, rule);
                tally.record(ok && v.answer == parity(c) && v.decided_at == n - 1, "N=" + std::to_string(n));
            }
        }
    }
    return {tally.failures == 0, tally.summary(), {}};
}

// --- 2 ----------------------------------------------------------------------
Outcome parity_even_r()
{
    Tally tally;
    for (std::uint64_t r : {2, 4, 6, 8, 12}) {
        const RuleParams rule(r);
        std::mt19937_64 seeds(200 + r);
        for (std::size_t n : kSweep) {
            const unsigned log_n = static_cast<unsigned>(*exact_log2(n));
            if (rule.k() >= log_n) {
                continue;
            }
            const std::size_t block = std::size_t{1} << rule.k();
            const std::uint64_t t = (std::uint64_t{1} << (log_n - rule.k())) - 1;
            for (int i = 0; i < 200; ++i) {
                const Configuration c = random_config(n, seeds(), false);
                const int p = static_cast<int>(c.count_ones() % 2);
                const Configuration at = fast_evolve(c, rule, t);
                bool ok = true;
                for (std::size_t b = 0; b < n; b += block) {
                    int sum = 0;
                    for (std::size_t i2 = b; i2 < b + block; ++i2) {
                        sum += at.get(i2) ? 1 : 0;
                    }
                    ok = ok && sum % 2 == p;
                }
                const ParityVerdict v = classify(c, rule);
                tally.record(ok && to_int(v.answer) == p && v.decided_at == t && v.block == block,
                             "r=" + std::to_string(r) + " N=" + std::to_string(n));
            }
        }
    }
    return {tally.failures == 0, tally.summary(), {}};
}

// --- 3 ----------------------------------------------------------------------
Outcome garden_of_eden()
{
    Tally tally;
    for (std::uint64_t r : {1, 2, 3}) {
        for (std::uint64_t m = 0; m < 256; ++m) {
            const auto next = oracle::step(oracle::cells_of(from_mask(8, m).to_string()), static_cast<long>(r));
            const int sum = std::accumulate(next.begin(), next.end(), 0);
            tally.record(sum % 2 == 0 && parity(step(from_mask(8, m), RuleParams(r))) == ParityBit::zero);
        }
    }
    std::mt19937_64 gen(3);
    for (int i = 0; i < 10000;) {
        const std::size_t n = 2 + gen() % 4095;
        const std::uint64_t r = 1 + gen() % 10000;
        if (r % n == 0) {
            continue;
        }
        const Configuration c = random_config(n, gen(), false);
        tally.record(parity(step(c, RuleParams(r))) == ParityBit::zero,
                     "N=" + std::to_string(n) + " r=" + std::to_string(r));
        ++i;
    }
    return {tally.failures == 0, tally.summary(), {}};
}

// --- 4 ----------------------------------------------------------------------
Outcome additivity()
{
    Tally tally;
    std::mt19937_64 gen(4);
    for (int i = 0; i < 10000; ++i) {
        const std::size_t n = 8 + gen() % (4096 - 8 + 1);
        const RuleParams rule(1 + gen() % (2 * n));
        const Configuration rho = random_config(n, gen(), false);
        const Configuration tau = random_config(n, gen(), false);
        tally.record(step(rho ^ tau, rule) == (step(rho, rule) ^ step(tau, rule)),
                     "N=" + std::to_string(n) + " r=" + std::to_string(rule.r()));
    }
    return {tally.failures == 0, tally.summary(), {}};
}

// --- 5 ----------------------------------------------------------------------
Outcome backend_equivalence()
{
    Tally tally;
    std::mt19937_64 gen(5);
    for (int i = 0; i < 500; ++i) {
        const std::size_t n = 1 + gen() % 4096;
        const RuleParams rule(1 + gen() % 16);
        const std::uint64_t t = gen() % 10001;
        const Configuration c = random_config(n, gen(), false);
        const Configuration naive = naive_evolve(c, rule, t);
        Configuration packed = c;
        for (std::uint64_t s = 0; s < t; ++s) {
            packed = step_packed(packed, rule);
        }
        const bool ok = naive == packed && naive == fast_evolve(c, rule, t) && naive == poly_evolve(c, rule, t);
        tally.record(ok, "N=" + std::to_string(n) + " r=" + std::to_string(rule.r()) + " t=" + std::to_string(t));
    }
    // small instances also against the brute-force oracle
    for (int i = 0; i < 50; ++i) {
        const std::size_t n = 1 + gen() % 64;
        const std::uint64_t r = 1 + gen() % 16;
        const std::uint64_t t = gen() % 300;
        const Configuration c = random_config(n, gen(), false);
        tally.record(naive_evolve(c, RuleParams(r), t).to_string() ==
                     oracle::evolve(c.to_string(), static_cast<long>(r), t));
    }
    return {tally.failures == 0, tally.summary(), {}};
}

// --- 6 ----------------------------------------------------------------------
Outcome spectral_theorems()
{
    Tally tally;
    double worst = 0.0;
    const auto note = [&](const TheoremReport& rep, const std::string& what) {
        worst = std::max(worst, rep.max_power);
        tally.record(rep.holds && rep.max_power <= 1e-9, what);
    };
    for (std::uint64_t r : {1, 3}) {
        const RuleParams rule(r);
        for (std::uint64_t m = 0; m < 256; ++m) {
            const Configuration c = from_mask(8, m);
            if (parity(c) == ParityBit::one) {
                note(check_even_zero_theorem(c, rule), "even N=8");
            }
            for (std::uint64_t t = 4; t <= 16; ++t) {
                note(check_odd_zero_theorem(c, rule, t), "odd N=8");
            }
        }
        std::mt19937_64 seeds(600 + r);
        for (std::size_t n : kSweep) {
            for (int i = 0; i < 100; ++i) {
                const Configuration c = random_config(n, seeds(), true);
                note(check_even_zero_theorem(c, rule), "even N=" + std::to_string(n));
                const std::uint64_t t = n / 2 + seeds() % (n + 1);
                note(check_odd_zero_theorem(c, rule, t), "odd N=" + std::to_string(n));
            }
        }
    }

    // full-size spot check: the even-frequency zeros appear at t = 4095 and not before
    const Configuration c = random_config(8192, 2012, true);
    const TheoremReport onset = check_even_zero_theorem(c, RuleParams(1));
    note(onset, "even N=8192");
    tally.record(onset.t == 4095, "onset time");
    const Spectrum before = fft(fast_evolve(c, RuleParams(1), 4094));
    double before_max = 0.0;
    for (std::size_t f = 2; f < 8192; f += 2) {
        before_max = std::max(before_max, before.power[f]);
    }
    tally.record(before_max > 1e-6, "even frequencies already zero at t = 4094");
    note(check_odd_zero_theorem(c, RuleParams(1), 4096), "odd N=8192");

    std::ostringstream d;
    d << tally.summary() << ", max |S| at asserted frequencies " << worst << ", max even S at t=4094 "
      << before_max;
    return {tally.failures == 0, d.str(), {}};
}

// --- 7 ----------------------------------------------------------------------
Outcome cascade()
{
    Tally tally;
    std::ostringstream d;
    const auto run_one = [&](std::size_t n, const std::vector<std::uint64_t>& times) {
        const Configuration c = random_config(n, 2012, true);
        EvolutionRun run{RuleParams(1), c, times.back(), 1, {}};
        run.snapshots.emplace(0, c);
        const SpectrumSeries series = spectrum_trace(run, times);
        std::vector<std::size_t> periods;
        for (auto t : times) {
            periods.push_back(longest_period_from_spectrum(series.at(t)));
            // independent route: the spatial period of the evolved configuration
            tally.record(periods.back() == spatial_period(naive_evolve(c, RuleParams(1), t)),
                         "N=" + std::to_string(n) + " t=" + std::to_string(t));
        }
        tally.record(std::is_sorted(periods.rbegin(), periods.rend()), "non-increasing");
        const std::size_t k = periods.size();
        tally.record(periods[k - 3] == 4 && periods[k - 2] == 2 && periods[k - 1] == 1, "final three periods");
        d << "N=" << n << ":";
        for (std::size_t i = 0; i < k; ++i) {
            d << " " << times[i] << "->" << periods[i];
        }
        d << "; ";
    };
    run_one(8192, {0, 4095, 8000, 8160, 8180, 8184, 8188, 8190, 8191});
    run_one(256, {0, 127, 224, 248, 252, 254, 255});
    d << tally.summary();
    return {tally.failures == 0, d.str(), {}};
}

// --- 8 ----------------------------------------------------------------------
Outcome lz_anchors()
{
    Tally tally;
    const std::size_t ones = lz78_phrase_count(std::string(8192, '1'));
    const std::size_t single = lz78_phrase_count("1" + std::string(8191, '0'));
    tally.record(ones == 128, "ones=" + std::to_string(ones));
    tally.record(single == 129, "single=" + std::to_string(single));
    tally.record(oracle::lz78(std::string(8192, '1')) == 128);
    tally.record(oracle::lz78("1" + std::string(8191, '0')) == 129);
    // Constant strings of every length up to 10^5 against m(m+1)/2 >= N. The
    // prefix counts come from one parse; direct parses cross-check a sample.
    constexpr std::uint64_t kMax = 100000;
    std::mt19937_64 gen(8);
    for (char symbol : {'0', '1'}) {
        const std::string text(kMax, symbol);
        const std::vector<std::size_t> counts = lz78_prefix_counts(text);
        std::uint64_t m = 0;
        for (std::uint64_t n = 1; n <= kMax; ++n) {
            while (m * (m + 1) / 2 < n) {
                ++m;
            }
            tally.record(counts[n - 1] == m, "N=" + std::to_string(n));
        }
        for (int i = 0; i < 300; ++i) {
            const std::uint64_t n = i < 100 ? static_cast<std::uint64_t>(i + 1) : 1 + gen() % kMax;
            const std::string_view prefix(text.data(), n);
            tally.record(lz78_phrase_count(prefix) == counts[n - 1] &&
                             counts[n - 1] == oracle::constant_string_lz(n),
                         "direct N=" + std::to_string(n));
        }
    }
    return {tally.failures == 0, tally.summary() + ", lz(1^8192)=" + std::to_string(ones) +
                                     ", lz(1 0^8191)=" + std::to_string(single),
            {}};
}

// --- 9 ----------------------------------------------------------------------

struct PlateauCase {
    std::vector<std::uint64_t> period_changes;
    PlateauReport plateaus;
};

PlateauCase plateau_case(std::size_t n, std::uint64_t seed)
{
    const Configuration c = random_config(n, seed, true);
    const RuleParams rule(1);
    PlateauCase out;
    Configuration cur = c;
    std::size_t period = spatial_period(cur);
    for (std::uint64_t t = 1; t + 2 <= n; ++t) {
        cur = step_packed(cur, rule);
        const std::size_t p = spatial_period(cur);
        if (p != period) {
            out.period_changes.push_back(t);
        }
        period = p;
    }
    out.plateaus = detect_plateaus(complexity_trace(c, rule, 0, n - 2));
    return out;
}

// Means of the plateaus that start at or after 2^(n-1).
std::vector<double> tail_means(const PlateauReport& rep, std::uint64_t first)
{
    std::vector<double> out;
    for (const auto& p : rep.intervals) {
        if (p.t_start >= first) {
            out.push_back(p.mean);
        }
    }
    return out;
}

bool strictly_decreasing(const std::vector<double>& v)
{
    return std::adjacent_find(v.begin(), v.end(), std::less_equal<>()) == v.end();
}

Outcome plateau_structure_full()
{
    const std::vector<std::uint64_t> expected{4096, 6144, 7168, 7680, 7936, 8064,
                                              8128, 8160, 8176, 8184, 8188, 8190};
    const PlateauCase pc = plateau_case(8192, 2012);
    const auto means = tail_means(pc.plateaus, 4096);
    const bool ok = pc.period_changes == expected && pc.plateaus.changepoints() == expected &&
                    strictly_decreasing(means);
    std::ostringstream d;
    d << "period changes " << (pc.period_changes == expected ? "match" : "differ") << ", plateau boundaries "
      << (pc.plateaus.changepoints() == expected ? "match" : "differ") << ", means:";
    for (double m : means) {
        d << " " << format_real(m);
    }
    return {ok, d.str(), {}};
}

Outcome plateau_structure_scaled()
{
    const std::vector<std::uint64_t> expected{32, 48, 56, 60, 62};
    Tally boundaries;
    std::size_t per_seed_decreasing = 0;
    std::vector<double> ensemble(5, 0.0);
    constexpr std::uint64_t kSeeds = 2000;
    for (std::uint64_t seed = 0; seed < kSeeds; ++seed) {
        const PlateauCase pc = plateau_case(64, seed);
        boundaries.record(pc.period_changes == expected && pc.plateaus.changepoints() == expected,
                          "seed " + std::to_string(seed));
        const auto means = tail_means(pc.plateaus, 32);
        per_seed_decreasing += strictly_decreasing(means) ? 1 : 0;
        for (std::size_t i = 0; i < std::min(means.size(), ensemble.size()); ++i) {
            ensemble[i] += means[i] / static_cast<double>(kSeeds);
        }
    }
    std::ostringstream d;
    d << boundaries.summary() << " on boundaries; ensemble means:";
    for (double m : ensemble) {
        d << " " << format_real(m);
    }
    d << "; strictly decreasing in " << per_seed_decreasing << "/" << kSeeds << " individual seeds";
    return {boundaries.failures == 0 && strictly_decreasing(ensemble), d.str(), {}};
}

// --- 10 ---------------------------------------------------------------------
Outcome non_power_of_two()
{
    Tally tally;
    std::ostringstream d;
    Scenario s = preset("fig5-right", true);
    const RunReport rep = run_scenario(s);
    for (const char* name : {"no-halving-boundaries", "tail-mean-within-10pct"}) {
        const CheckResult* c = rep.check(name);
        tally.record(c != nullptr && c->passed, name);
        if (c != nullptr) {
            d << name << " " << (c->passed ? "ok" : "failed") << " (" << format_real(c->worst_deviation);
            if (!c->detail.empty()) {
                d << ", " << c->detail;
            }
            d << "); ";
        }
    }

    std::ostringstream out;
    std::ostringstream err;
    const char* argv[] = {"aca", "parity", "-N", "8193", "-r", "1"};
    const int code = cli::run(6, argv, out, err);
    tally.record(code == cli::exit_usage, "parity exit code " + std::to_string(code));
    d << "aca parity -N 8193 exits " << code << "; " << tally.summary();
    return {tally.failures == 0, d.str(), {}};
}

// --- 11 ---------------------------------------------------------------------
std::uint64_t fnv1a(const std::string& bytes)
{
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char ch : bytes) {
        h = (h ^ ch) * 1099511628211ULL;
    }
    return h;
}

Outcome determinism()
{
    Tally tally;
    const auto base = std::filesystem::temp_directory_path() / "aca_acceptance_determinism";
    std::filesystem::remove_all(base);
    for (const auto& name : preset_names()) {
        Scenario s = preset(name);
        s.binary_pbm = name == "fig2-top";
        std::vector<std::uint64_t> sums[2];
        for (int rep = 0; rep < 2; ++rep) {
            s.out_dir = base / name / std::to_string(rep);
            const RunReport report = run_scenario(s);
            for (const auto& a : report.artifacts) {
                sums[rep].push_back(fnv1a(read_file(s.out_dir / a.name)));
            }
            sums[rep].push_back(fnv1a(read_file(s.out_dir / "report.json")));
        }
        tally.record(sums[0] == sums[1], name);
    }
    std::filesystem::remove_all(base);
    return {tally.failures == 0, tally.summary() + " (presets compared by checksum)", {}};
}

// --- 12 ---------------------------------------------------------------------
Outcome performance()
{
    const std::size_t n = std::size_t{1} << 16;
    const std::uint64_t t = std::uint64_t{1} << 10;
    const Configuration c = random_config(n, 12, false);
    const RuleParams rule(1);
    const auto median_seconds = [](const std::function<Configuration()>& f, Configuration& result) {
        std::vector<double> s;
        for (int i = 0; i < 3; ++i) {
            const auto a = std::chrono::steady_clock::now();
            result = f();
            s.push_back(std::chrono::duration<double>(std::chrono::steady_clock::now() - a).count());
        }
        std::sort(s.begin(), s.end());
        return std::max(s[1], 1e-9);
    };
    Configuration naive_out(1);
    Configuration packed_out(1);
    Configuration jump_out(1);
    const double naive = median_seconds([&] { return naive_evolve(c, rule, t); }, naive_out);
    const double packed = median_seconds(
        [&] {
            Configuration cur = c;
            for (std::uint64_t s = 0; s < t; ++s) {
                cur = step_packed(cur, rule);
            }
            return cur;
        },
        packed_out);
    const double jump = median_seconds([&] { return fast_evolve(c, rule, t); }, jump_out);

    std::ostringstream d;
    d << "speedup vs naive: packed " << format_real(naive / packed) << "x, jump " << format_real(naive / jump) << "x";
    std::string warning;
    if (naive / packed < 5.0 || naive / jump < 5.0) {
        warning = "a backend is below 5x naive throughput";
    }
    // Report-only: outputs must still agree, throughput only warns.
    return {naive_out == packed_out && naive_out == jump_out, d.str(), warning};
}

struct Criterion {
    int id;
    const char* name;
    double budget_seconds; // 0: no time budget
    std::function<Outcome()> run;
};

} // namespace

int main()
{
    const std::vector<Criterion> criteria = {
        {1, "parity classification, odd r", 10, parity_odd_r},
        {2, "parity classification, even r", 20, parity_even_r},
        {3, "successors have even parity", 5, garden_of_eden},
        {4, "additivity", 5, additivity},
        {5, "backend equivalence", 60, backend_equivalence},
        {6, "spectral zero theorems", 60, spectral_theorems},
        {7, "spectral cascade", 30, cascade},
        {8, "LZ78 anchors", 5, lz_anchors},
        {9,
         "plateau structure",
         125,
         [] {
             // the full-size run and the scaled ensemble carry separate budgets
             const auto a = std::chrono::steady_clock::now();
             Outcome full = plateau_structure_full();
             const double full_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - a).count();
             const auto b = std::chrono::steady_clock::now();
             Outcome scaled = plateau_structure_scaled();
             const double scaled_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - b).count();
             std::ostringstream d;
             d << "N=8192 [" << full.detail << "] in " << format_real(full_s) << " s; N=64 [" << scaled.detail
               << "] in " << format_real(scaled_s) << " s";
             const bool in_time = full_s < 120.0 && scaled_s < 5.0;
             return Outcome{full.passed && scaled.passed && in_time, d.str(), {}};
         }},
        {10, "non-power-of-two contrast", 60, non_power_of_two},
        {11, "determinism", 10, determinism},
        {12, "backend throughput (report only)", 0, performance},
    };

    int failed = 0;
    for (const auto& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what(), {}};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        const bool over = c.budget_seconds > 0 && secs >= c.budget_seconds;
        const bool pass = o.passed && !over;
        failed += pass ? 0 : 1;

        std::printf("%s [PRIMARY] %2d %s: %s; %.2f s", pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str(),
                    secs);
        if (c.budget_seconds > 0) {
            std::printf(" (budget %.0f s%s)", c.budget_seconds, over ? ", exceeded" : "");
        }
        if (!o.warning.empty()) {
            std::printf(" WARNING: %s", o.warning.c_str());
        }
        std::printf("\n");
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria failed\n", failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
