#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "additive_ca/core.hpp"
#include "additive_ca/engine.hpp"

namespace aca {

/// Power values at or below this are treated as exact zeros.
inline constexpr double spectral_zero_threshold = 1e-9;

/// Normalized DFT of one configuration: amplitude(f) = (1/N) sum_x a_x exp(-2 pi i x f / N),
/// power(f) = |amplitude(f)|^2.
struct Spectrum {
    std::vector<std::complex<double>> amplitudes;
    std::vector<double> power;

    std::size_t size() const noexcept { return power.size(); }
};

using SpectrumSeries = std::map<std::uint64_t, Spectrum>;

/// Direct O(N^2) evaluation; the reference transform. Works for any N.
Spectrum dft(const Configuration& c);
/// Iterative radix-2 FFT. Throws UnsupportedSize unless N is a power of two.
Spectrum fft(const Configuration& c);
/// fft for N = 2^n, dft otherwise.
Spectrum power_spectrum(const Configuration& c);

/// N / f_min for the lowest f >= 1 with power above eps (rounded); 1 if none.
std::size_t longest_period_from_spectrum(const Spectrum& s, double eps = spectral_zero_threshold);

/// Geometric over arithmetic mean of power(f), f = 1..N-1. Near 1 for flat
/// (white) spectra, 0 when any component vanishes.
double spectral_flatness(const Spectrum& s);

struct TheoremReport {
    std::uint64_t t = 0;
    std::vector<std::size_t> frequencies; // frequencies the theorem claims are zero
    std::vector<double> power;            // measured power at those frequencies
    double max_power = 0.0;
    bool holds = false;
};

/// Power at every even nonzero frequency vanishes at t = 2^(n-1) - 1.
/// Requires N = 2^n (n >= 1), odd r and odd parity(c0); throws PreconditionError
/// (or UnsupportedSize) naming the violated requirement.
TheoremReport check_even_zero_theorem(const Configuration& c0, const RuleParams& rule);

/// Power at every odd frequency vanishes at any t >= 2^(n-1).
/// Requires N = 2^n (n >= 1) and odd r.
TheoremReport check_odd_zero_theorem(const Configuration& c0, const RuleParams& rule,
                                     std::uint64_t t);

/// Spectra at the requested times, taken from the run's snapshots when present
/// and recomputed from the initial configuration otherwise.
SpectrumSeries spectrum_trace(const EvolutionRun& run, std::span<const std::uint64_t> times);

} // namespace aca
