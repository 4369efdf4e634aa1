#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "additive_ca/core.hpp"
#include "additive_ca/engine.hpp"
#include "additive_ca/parity.hpp"

namespace aca {

/// Deterministic fair-coin configuration.
///
/// Generator: std::mt19937_64 seeded with `seed`. Output word w supplies
/// cells 64w .. 64w+63, least significant bit first; bits past N are
/// discarded. With force_odd, cell 0 is flipped when the parity came out 0.
/// This mapping is part of the artifact format: golden files depend on it.
Configuration random_config(std::size_t size, std::uint64_t seed, bool force_odd);

enum class InitKind { random_odd, random, single_one, literal, file };

struct InitSpec {
    InitKind kind = InitKind::random_odd;
    std::string payload; // bits for literal, path for file

    /// "random-odd" | "random" | "single-one" | "literal:<bits>" | "file:<path>"
    static InitSpec parse(std::string_view text);
    std::string to_string() const;
};

enum class Analysis { spacetime, spectra, lz_trace, plateaus, verdict };

Analysis parse_analysis(std::string_view name);
std::string_view analysis_name(Analysis a);

struct Scenario {
    std::string name = "custom";
    std::size_t size = 0;
    std::uint64_t r = 1;
    InitSpec init;
    std::uint64_t seed = 1;
    std::uint64_t horizon = 0;
    std::uint64_t from = 0; // first time step of complexity traces
    std::vector<Analysis> analyses;
    std::vector<std::uint64_t> spectra_at; // empty: {0, horizon}
    bool binary_pbm = false;
    std::filesystem::path out_dir; // empty: nothing is written to disk

    bool wants(Analysis a) const;
};

/// Line-oriented key=value text; '#' starts a comment. Keys: name, n | size,
/// r, init, seed, horizon, from, analyses, at, pbm (text|binary), out-dir.
/// Throws FormatError on unknown keys, malformed values or invalid combinations.
Scenario parse_scenario(std::string_view text);

/// Named presets for the standard runs (fig1-left .. fig8-right).
const std::vector<std::string>& preset_names();
/// Scaled (N = 256 / 257) unless `full`, which selects N = 8192 / 8193 where
/// the run calls for them. Throws FormatError for an unknown name.
Scenario preset(std::string_view name, bool full = false);

Configuration make_initial(const Scenario& s);

struct CheckResult {
    std::string name;
    bool passed = true;
    std::uint64_t cases = 0;
    std::uint64_t failures = 0;
    double worst_deviation = 0.0;
    std::string detail;
};

struct Artifact {
    std::string name; // file name relative to the output directory
    std::string contents;
};

struct SpectrumSummary {
    std::uint64_t t = 0;
    std::size_t longest_period = 0;
    double flatness = 0.0;
};

struct RunReport {
    std::optional<Scenario> scenario;
    std::optional<ParityVerdict> verdict;
    std::vector<Artifact> artifacts;
    std::vector<SpectrumSummary> spectra;
    std::vector<CheckResult> checks;

    bool passed() const;
    const CheckResult* check(std::string_view name) const;
    /// Deterministic JSON document (schema_version 1); artifact names only.
    std::string to_json() const;
};

/// Executes the scenario's analyses. Writes artifacts plus report.json into
/// scenario.out_dir when it is set.
RunReport run_scenario(const Scenario& s);

using StepFunction = std::function<Configuration(const Configuration&, const RuleParams&)>;

struct VerifyOptions {
    std::vector<unsigned> log2_sizes{3};
    std::size_t samples = 100;
    std::uint64_t seed = 42;
    /// Step used by the additivity and successor-parity suites; a hook for
    /// mutation testing of the harness.
    StepFunction step_under_test;
};

/// Runs every property suite at each N = 2^n. Sizes with N <= 8 are
/// enumerated exhaustively; larger sizes draw `samples` random cases.
RunReport verify_all(const VerifyOptions& options);

} // namespace aca
