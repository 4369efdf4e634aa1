#include "additive_ca/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace aca {

namespace {

// exp(-2 pi i m / n) for m = 0..count-1, each evaluated directly.
std::vector<std::complex<double>> roots_of_unity(std::size_t n, std::size_t count)
{
    std::vector<std::complex<double>> w(count);
    for (std::size_t m = 0; m < count; ++m) {
        const double angle = -2.0 * std::numbers::pi * static_cast<double>(m) / static_cast<double>(n);
        w[m] = {std::cos(angle), std::sin(angle)};
    }
    return w;
}

Spectrum finish(std::vector<std::complex<double>> amplitudes)
{
    Spectrum s;
    s.power.resize(amplitudes.size());
    std::transform(amplitudes.begin(), amplitudes.end(), s.power.begin(),
                   [](std::complex<double> a) { return std::norm(a); });
    s.amplitudes = std::move(amplitudes);
    return s;
}

unsigned require_power_of_two(std::size_t size)
{
    const auto n = exact_log2(size);
    if (!n || *n == 0) {
        throw UnsupportedSize("array size N must be a power of two 2^n with n >= 1, got " +
                              std::to_string(size));
    }
    return *n;
}

TheoremReport measure(const Configuration& c, std::uint64_t t, std::vector<std::size_t> freqs)
{
    const Spectrum s = fft(c);
    TheoremReport report;
    report.t = t;
    report.power.reserve(freqs.size());
    for (std::size_t f : freqs) {
        report.power.push_back(s.power[f]);
        report.max_power = std::max(report.max_power, s.power[f]);
    }
    report.frequencies = std::move(freqs);
    report.holds = report.max_power <= spectral_zero_threshold;
    return report;
}

} // namespace

Spectrum dft(const Configuration& c)
{
    const std::size_t n = c.size();
    const auto w = roots_of_unity(n, n);
    const double scale = 1.0 / static_cast<double>(n);

    std::vector<std::size_t> ones;
    for (std::size_t x = 0; x < n; ++x) {
        if (c.get(x)) {
            ones.push_back(x);
        }
    }
    std::vector<std::complex<double>> amplitudes(n);
    for (std::size_t f = 0; f < n; ++f) {
        std::complex<double> sum = 0.0;
        for (std::size_t x : ones) {
            sum += w[static_cast<std::size_t>((static_cast<unsigned __int128>(x) * f) % n)];
        }
        amplitudes[f] = sum * scale;
    }
    return finish(std::move(amplitudes));
}

Spectrum fft(const Configuration& c)
{
    const unsigned log_n = require_power_of_two(c.size());
    const std::size_t n = c.size();

    std::vector<std::complex<double>> a(n);
    for (std::size_t x = 0; x < n; ++x) {
        // bit-reversed load
        std::size_t rev = 0;
        for (unsigned b = 0; b < log_n; ++b) {
            rev |= ((x >> b) & 1U) << (log_n - 1 - b);
        }
        a[rev] = c.get(x) ? 1.0 : 0.0;
    }

    const auto w = roots_of_unity(n, n / 2);
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const std::size_t half = len / 2;
        const std::size_t stride = n / len;
        for (std::size_t start = 0; start < n; start += len) {
            for (std::size_t j = 0; j < half; ++j) {
                const std::complex<double> u = a[start + j];
                const std::complex<double> v = a[start + j + half] * w[j * stride];
                a[start + j] = u + v;
                a[start + j + half] = u - v;
            }
        }
    }

    const double scale = 1.0 / static_cast<double>(n);
    for (auto& v : a) {
        v *= scale;
    }
    return finish(std::move(a));
}

Spectrum power_spectrum(const Configuration& c)
{
    return exact_log2(c.size()).value_or(0) >= 1 ? fft(c) : dft(c);
}

std::size_t longest_period_from_spectrum(const Spectrum& s, double eps)
{
    if (!(eps > 0.0)) {
        throw PreconditionError("zero threshold eps must be positive");
    }
    const std::size_t n = s.size();
    for (std::size_t f = 1; f < n; ++f) {
        if (s.power[f] > eps) {
            return (n + f / 2) / f;
        }
    }
    return 1;
}

double spectral_flatness(const Spectrum& s)
{
    const std::size_t n = s.size();
    if (n < 2) {
        return 0.0;
    }
    double log_sum = 0.0;
    double sum = 0.0;
    for (std::size_t f = 1; f < n; ++f) {
        if (s.power[f] <= 0.0) {
            return 0.0;
        }
        log_sum += std::log(s.power[f]);
        sum += s.power[f];
    }
    const auto count = static_cast<double>(n - 1);
    return std::exp(log_sum / count) / (sum / count);
}

TheoremReport check_even_zero_theorem(const Configuration& c0, const RuleParams& rule)
{
    const unsigned n = require_power_of_two(c0.size());
    if (!rule.is_odd()) {
        throw PreconditionError("even-frequency theorem requires odd r, got r = " +
                                std::to_string(rule.r()));
    }
    if (parity(c0) != ParityBit::one) {
        throw PreconditionError("even-frequency theorem requires an initial configuration with odd parity");
    }
    const std::uint64_t t = (std::uint64_t{1} << (n - 1)) - 1;
    std::vector<std::size_t> freqs;
    for (std::size_t f = 2; f < c0.size(); f += 2) {
        freqs.push_back(f);
    }
    return measure(fast_evolve(c0, rule, t), t, std::move(freqs));
}

TheoremReport check_odd_zero_theorem(const Configuration& c0, const RuleParams& rule,
                                     std::uint64_t t)
{
    const unsigned n = require_power_of_two(c0.size());
    if (!rule.is_odd()) {
        throw PreconditionError("odd-frequency theorem requires odd r, got r = " +
                                std::to_string(rule.r()));
    }
    const std::uint64_t onset = std::uint64_t{1} << (n - 1);
    if (t < onset) {
        throw PreconditionError("odd-frequency theorem requires t >= 2^(n-1) = " +
                                std::to_string(onset) + ", got t = " + std::to_string(t));
    }
    std::vector<std::size_t> freqs;
    for (std::size_t f = 1; f < c0.size(); f += 2) {
        freqs.push_back(f);
    }
    return measure(fast_evolve(c0, rule, t), t, std::move(freqs));
}

SpectrumSeries spectrum_trace(const EvolutionRun& run, std::span<const std::uint64_t> times)
{
    SpectrumSeries out;
    for (std::uint64_t t : times) {
        if (out.contains(t)) {
            continue;
        }
        const auto it = run.snapshots.find(t);
        const Configuration c =
            it != run.snapshots.end() ? it->second : fast_evolve(run.initial, run.rule, t);
        out.emplace(t, power_spectrum(c));
    }
    return out;
}

} // namespace aca
