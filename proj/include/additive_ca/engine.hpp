#pragma once

#include <cstdint>
#include <map>

#include "additive_ca/core.hpp"

namespace aca {

/// Shift distance r of the rule a_i(t+1) = a_{i-r}(t) + a_i(t).
class RuleParams {
public:
    /// Throws PreconditionError for r == 0.
    explicit RuleParams(std::uint64_t r);

    std::uint64_t r() const noexcept { return r_; }
    /// Largest j with 2^j dividing r.
    unsigned k() const noexcept;
    bool is_odd() const noexcept { return (r_ & 1U) != 0; }
    /// True when a rotation by r is the identity on an array of `size` cells.
    bool degenerate_for(std::size_t size) const noexcept { return r_ % size == 0; }

    friend bool operator==(const RuleParams&, const RuleParams&) = default;

private:
    std::uint64_t r_;
};

/// Polynomial over GF(2) reduced mod x^N - 1; coefficient of x^i is cell i.
class PolyGF2 {
public:
    explicit PolyGF2(Configuration coeffs) : coeffs_(std::move(coeffs)) {}

    static PolyGF2 one(std::size_t size);
    /// 1 + x^r, the one-step transition multiplier.
    static PolyGF2 transition(std::size_t size, const RuleParams& rule);

    std::size_t size() const noexcept { return coeffs_.size(); }
    const Configuration& coefficients() const noexcept { return coeffs_; }

    /// Schoolbook product: XOR of `rhs` rotated by every exponent present in *this.
    friend PolyGF2 operator*(const PolyGF2& lhs, const PolyGF2& rhs);
    /// Square-and-multiply.
    PolyGF2 pow(std::uint64_t exponent) const;

    friend bool operator==(const PolyGF2&, const PolyGF2&) = default;

private:
    Configuration coeffs_;
};

/// Reference step, one cell at a time.
Configuration step(const Configuration& c, const RuleParams& rule);
/// XOR of c with its right rotation by r, word-parallel.
Configuration step_packed(const Configuration& c, const RuleParams& rule);
/// Advance 2^k steps in one rotation: a_i(t+2^k) = a_i(t) + a_{i-2^k r}(t).
Configuration jump_pow2(const Configuration& c, const RuleParams& rule, unsigned k);
/// Advance 2^k - 1 steps: out_x = sum_{j<2^k} c_{x-rj}.
Configuration window_sum_jump(const Configuration& c, const RuleParams& rule, unsigned k);
/// Advance t steps as a product of jump_pow2 over the binary digits of t.
Configuration fast_evolve(const Configuration& c, const RuleParams& rule, std::uint64_t t);
/// Advance t steps by multiplying the characteristic polynomial by (1 + x^r)^t.
Configuration poly_evolve(const Configuration& c, const RuleParams& rule, std::uint64_t t);
/// Advance t steps by repeating the per-cell update on an unpacked byte array.
Configuration naive_evolve(const Configuration& c, const RuleParams& rule, std::uint64_t t);

struct EvolutionRun {
    RuleParams rule;
    Configuration initial;
    std::uint64_t horizon = 0;
    std::uint64_t stride = 1;
    std::map<std::uint64_t, Configuration> snapshots;

    std::size_t size() const noexcept { return initial.size(); }
    const Configuration& at(std::uint64_t t) const { return snapshots.at(t); }

    friend bool operator==(const EvolutionRun&, const EvolutionRun&) = default;
};

/// Snapshots at 0, stride, 2*stride, ... and always at `horizon`.
EvolutionRun evolve_trace(const Configuration& c, const RuleParams& rule, std::uint64_t horizon,
                          std::uint64_t stride = 1);

} // namespace aca
