#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "additive_ca/core.hpp"
#include "additive_ca/engine.hpp"

namespace aca {

/// Number of phrases in the LZ78 incremental parse of a '0'/'1' string.
///
/// Each phrase is the longest previously seen phrase extended by one symbol.
/// A trailing run that is itself a previous phrase (the input ended before
/// it could be extended) still counts as one phrase. Throws PreconditionError
/// on an empty string and FormatError on characters other than '0'/'1'.
std::size_t lz78_phrase_count(std::string_view bits);
/// Same parse over cells a_0..a_{N-1}.
std::size_t lz78_phrase_count(const Configuration& c);
/// Element i is the phrase count of bits[0..i]. The parse never looks ahead,
/// so one pass yields the count of every prefix.
std::vector<std::size_t> lz78_prefix_counts(std::string_view bits);

struct TracePoint {
    std::uint64_t t = 0;
    std::size_t complexity = 0;

    friend bool operator==(const TracePoint&, const TracePoint&) = default;
};

struct ComplexityTrace {
    std::size_t size = 0; // array size N of the traced run
    std::vector<TracePoint> values;
};

ComplexityTrace complexity_trace(const EvolutionRun& run);
/// Streams the evolution instead of storing snapshots: samples t = from,
/// from + stride, ... up to horizon.
ComplexityTrace complexity_trace(const Configuration& initial, const RuleParams& rule,
                                 std::uint64_t from, std::uint64_t horizon,
                                 std::uint64_t stride = 1);

struct Plateau {
    std::uint64_t t_start = 0;
    std::uint64_t t_end = 0;
    std::uint64_t duration = 0;
    double mean = 0.0;
};

struct PlateauReport {
    std::vector<Plateau> intervals;

    /// Start of every plateau but the first.
    std::vector<std::uint64_t> changepoints() const;
};

struct PlateauOptions {
    std::size_t window = 16;
    double relative_drop = 0.02;
    /// Use the windowed-drop detector even for power-of-two N.
    bool force_windowed = false;
};

/// Period-halving times 2^n - 2^(n-j), j = 1..n.
std::vector<std::uint64_t> halving_changepoints(unsigned n);

/// Splits a trace into plateaus.
///
/// With `expected` given, segments exactly at those times (clipped to the
/// sampled range). Otherwise power-of-two traces use halving_changepoints and
/// other sizes use the windowed-drop detector: a change point is placed where
/// the mean of the next `window` samples falls below (1 - relative_drop) times
/// the mean of the previous `window`, at the largest drop of each run of
/// qualifying positions.
PlateauReport detect_plateaus(const ComplexityTrace& trace,
                              const std::optional<std::vector<std::uint64_t>>& expected = std::nullopt,
                              const PlateauOptions& options = {});

} // namespace aca
