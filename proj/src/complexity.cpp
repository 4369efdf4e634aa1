#include "additive_ca/complexity.hpp"

#include <algorithm>
#include <array>

namespace aca {

namespace {

// Binary trie of dictionary phrases; node 0 is the empty phrase.
class PhraseTrie {
public:
    PhraseTrie() { nodes_.push_back({0, 0}); }

    // on_prefix(i, count) sees the phrase count of symbols 0..i.
    template <typename SymbolAt, typename OnPrefix>
    std::size_t parse(std::size_t length, SymbolAt symbol_at, OnPrefix on_prefix)
    {
        std::size_t phrases = 0;
        std::uint32_t node = 0;
        for (std::size_t i = 0; i < length; ++i) {
            const unsigned s = symbol_at(i);
            const std::uint32_t child = nodes_[node][s];
            if (child != 0) {
                node = child;
            } else {
                nodes_[node][s] = static_cast<std::uint32_t>(nodes_.size());
                nodes_.push_back({0, 0});
                ++phrases;
                node = 0;
            }
            on_prefix(i, node == 0 ? phrases : phrases + 1);
        }
        return node == 0 ? phrases : phrases + 1;
    }

    template <typename SymbolAt>
    std::size_t parse(std::size_t length, SymbolAt symbol_at)
    {
        return parse(length, symbol_at, [](std::size_t, std::size_t) {});
    }

private:
    std::vector<std::array<std::uint32_t, 2>> nodes_;
};

PlateauReport segment(const ComplexityTrace& trace, std::vector<std::uint64_t> starts)
{
    PlateauReport report;
    const auto& v = trace.values;
    if (v.empty()) {
        return report;
    }
    const std::uint64_t first = v.front().t;
    const std::uint64_t last = v.back().t;
    std::sort(starts.begin(), starts.end());
    starts.erase(std::remove_if(starts.begin(), starts.end(),
                                [&](std::uint64_t b) { return b <= first || b > last; }),
                 starts.end());
    starts.erase(std::unique(starts.begin(), starts.end()), starts.end());
    starts.insert(starts.begin(), first);

    std::size_t i = 0;
    for (std::size_t s = 0; s < starts.size(); ++s) {
        const std::uint64_t end = s + 1 < starts.size() ? starts[s + 1] - 1 : last;
        double sum = 0.0;
        std::size_t count = 0;
        for (; i < v.size() && v[i].t <= end; ++i) {
            sum += static_cast<double>(v[i].complexity);
            ++count;
        }
        if (count == 0) {
            // No sample fell inside; extend the previous plateau.
            if (!report.intervals.empty()) {
                report.intervals.back().t_end = end;
                report.intervals.back().duration = end - report.intervals.back().t_start + 1;
            }
            continue;
        }
        report.intervals.push_back({starts[s], end, end - starts[s] + 1, sum / static_cast<double>(count)});
    }
    return report;
}

std::vector<std::uint64_t> windowed_drops(const ComplexityTrace& trace, const PlateauOptions& options)
{
    const auto& v = trace.values;
    const std::size_t w = std::max<std::size_t>(options.window, 1);
    std::vector<std::uint64_t> found;
    if (v.size() < 2 * w) {
        return found;
    }
    std::vector<double> prefix(v.size() + 1, 0.0);
    for (std::size_t i = 0; i < v.size(); ++i) {
        prefix[i + 1] = prefix[i] + static_cast<double>(v[i].complexity);
    }
    const auto mean = [&](std::size_t a, std::size_t b) {
        return (prefix[b] - prefix[a]) / static_cast<double>(b - a);
    };

    std::optional<std::size_t> best;
    double best_drop = 0.0;
    for (std::size_t i = w; i + w <= v.size(); ++i) {
        const double left = mean(i - w, i);
        const double right = mean(i, i + w);
        if (right < left * (1.0 - options.relative_drop)) {
            if (!best || left - right > best_drop) {
                best = i;
                best_drop = left - right;
            }
        } else if (best) {
            found.push_back(v[*best].t);
            best.reset();
        }
    }
    if (best) {
        found.push_back(v[*best].t);
    }
    return found;
}

} // namespace

namespace {

void require_bits(std::string_view bits)
{
    if (bits.empty()) {
        throw PreconditionError("LZ78 complexity of an empty string is undefined");
    }
    for (char ch : bits) {
        if (ch != '0' && ch != '1') {
            throw FormatError("LZ78 input may only contain '0' and '1'");
        }
    }
}

} // namespace

std::size_t lz78_phrase_count(std::string_view bits)
{
    require_bits(bits);
    PhraseTrie trie;
    return trie.parse(bits.size(), [&](std::size_t i) { return bits[i] == '1' ? 1U : 0U; });
}

std::vector<std::size_t> lz78_prefix_counts(std::string_view bits)
{
    require_bits(bits);
    std::vector<std::size_t> counts(bits.size());
    PhraseTrie trie;
    trie.parse(
        bits.size(), [&](std::size_t i) { return bits[i] == '1' ? 1U : 0U; },
        [&](std::size_t i, std::size_t count) { counts[i] = count; });
    return counts;
}

std::size_t lz78_phrase_count(const Configuration& c)
{
    PhraseTrie trie;
    return trie.parse(c.size(), [&](std::size_t i) { return c.get(i) ? 1U : 0U; });
}

ComplexityTrace complexity_trace(const EvolutionRun& run)
{
    ComplexityTrace trace{run.size(), {}};
    trace.values.reserve(run.snapshots.size());
    for (const auto& [t, c] : run.snapshots) {
        trace.values.push_back({t, lz78_phrase_count(c)});
    }
    return trace;
}

ComplexityTrace complexity_trace(const Configuration& initial, const RuleParams& rule,
                                 std::uint64_t from, std::uint64_t horizon, std::uint64_t stride)
{
    if (stride == 0) {
        throw PreconditionError("trace stride must be positive");
    }
    ComplexityTrace trace{initial.size(), {}};
    if (from > horizon) {
        return trace;
    }
    Configuration cur = fast_evolve(initial, rule, from);
    for (std::uint64_t t = from;;) {
        trace.values.push_back({t, lz78_phrase_count(cur)});
        if (horizon - t < stride) {
            break;
        }
        cur = stride == 1 ? step_packed(cur, rule) : fast_evolve(cur, rule, stride);
        t += stride;
    }
    return trace;
}

std::vector<std::uint64_t> PlateauReport::changepoints() const
{
    std::vector<std::uint64_t> out;
    for (std::size_t i = 1; i < intervals.size(); ++i) {
        out.push_back(intervals[i].t_start);
    }
    return out;
}

std::vector<std::uint64_t> halving_changepoints(unsigned n)
{
    std::vector<std::uint64_t> out;
    const std::uint64_t size = std::uint64_t{1} << n;
    for (unsigned j = 1; j <= n; ++j) {
        out.push_back(size - (std::uint64_t{1} << (n - j)));
    }
    return out;
}

PlateauReport detect_plateaus(const ComplexityTrace& trace,
                              const std::optional<std::vector<std::uint64_t>>& expected,
                              const PlateauOptions& options)
{
    if (expected) {
        return segment(trace, *expected);
    }
    const auto n = exact_log2(trace.size);
    if (n && *n >= 1 && !options.force_windowed) {
        return segment(trace, halving_changepoints(*n));
    }
    return segment(trace, windowed_drops(trace, options));
}

} // namespace aca
