#include "additive_ca/engine.hpp"

#include <algorithm>
#include <bit>
#include <vector>

namespace aca {

namespace {

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m)
{
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

// (2^k * r) mod n, without overflowing for large k.
std::uint64_t jump_shift(std::uint64_t r, unsigned k, std::uint64_t n)
{
    std::uint64_t pow = 1 % n;
    std::uint64_t base = 2 % n;
    for (unsigned e = k; e != 0; e >>= 1) {
        if (e & 1U) {
            pow = mul_mod(pow, base, n);
        }
        base = mul_mod(base, base, n);
    }
    return mul_mod(pow, r % n, n);
}

} // namespace

RuleParams::RuleParams(std::uint64_t r) : r_(r)
{
    if (r == 0) {
        throw PreconditionError("shift distance r must be a positive integer");
    }
}

unsigned RuleParams::k() const noexcept { return static_cast<unsigned>(std::countr_zero(r_)); }

PolyGF2 PolyGF2::one(std::size_t size) { return PolyGF2(Configuration::single_one(size, 0)); }

PolyGF2 PolyGF2::transition(std::size_t size, const RuleParams& rule)
{
    Configuration c = Configuration::single_one(size, 0);
    c.flip(static_cast<std::size_t>(rule.r() % size));
    return PolyGF2(std::move(c));
}

PolyGF2 operator*(const PolyGF2& lhs, const PolyGF2& rhs)
{
    if (lhs.size() != rhs.size()) {
        throw SizeMismatch("polynomials reduced modulo different x^N - 1");
    }
    Configuration product(lhs.size());
    const auto words = lhs.coeffs_.words();
    for (std::size_t w = 0; w < words.size(); ++w) {
        for (auto bits = words[w]; bits != 0; bits &= bits - 1) {
            const auto exponent = w * Configuration::word_bits + std::countr_zero(bits);
            product ^= rhs.coeffs_.rotated(exponent);
        }
    }
    return PolyGF2(std::move(product));
}

PolyGF2 PolyGF2::pow(std::uint64_t exponent) const
{
    PolyGF2 result = one(size());
    PolyGF2 base = *this;
    for (; exponent != 0; exponent >>= 1) {
        if (exponent & 1U) {
            result = result * base;
        }
        if (exponent > 1) {
            base = base * base;
        }
    }
    return result;
}

Configuration step(const Configuration& c, const RuleParams& rule)
{
    const auto n = static_cast<std::int64_t>(c.size());
    const auto r = static_cast<std::int64_t>(rule.r() % c.size());
    Configuration out(c.size());
    for (std::int64_t i = 0; i < n; ++i) {
        out.set(static_cast<std::size_t>(i), c.cell(i - r) != c.cell(i));
    }
    return out;
}

Configuration step_packed(const Configuration& c, const RuleParams& rule) { return c.xor_rotated(rule.r()); }

Configuration jump_pow2(const Configuration& c, const RuleParams& rule, unsigned k)
{
    return c.xor_rotated(jump_shift(rule.r(), k, c.size()));
}

Configuration window_sum_jump(const Configuration& c, const RuleParams& rule, unsigned k)
{
    // Doubling: the window of 2^(m+1) terms is the 2^m window plus itself
    // shifted by 2^m r.
    Configuration window = c;
    for (unsigned m = 0; m < k; ++m) {
        window ^= window.rotated(jump_shift(rule.r(), m, c.size()));
    }
    return window;
}

Configuration fast_evolve(const Configuration& c, const RuleParams& rule, std::uint64_t t)
{
    Configuration out = c;
    for (unsigned k = 0; t != 0; ++k, t >>= 1) {
        if (t & 1U) {
            out = jump_pow2(out, rule, k);
        }
    }
    return out;
}

Configuration poly_evolve(const Configuration& c, const RuleParams& rule, std::uint64_t t)
{
    const PolyGF2 multiplier = PolyGF2::transition(c.size(), rule).pow(t);
    return (multiplier * PolyGF2(c)).coefficients();
}

Configuration naive_evolve(const Configuration& c, const RuleParams& rule, std::uint64_t t)
{
    const std::size_t n = c.size();
    const std::size_t r = static_cast<std::size_t>(rule.r() % n);
    std::vector<std::uint8_t> cur(n);
    std::vector<std::uint8_t> next(n);
    for (std::size_t i = 0; i < n; ++i) {
        cur[i] = c.get(i) ? 1 : 0;
    }
    for (std::uint64_t s = 0; s < t; ++s) {
        for (std::size_t i = 0; i < r; ++i) {
            next[i] = cur[i + n - r] ^ cur[i];
        }
        for (std::size_t i = r; i < n; ++i) {
            next[i] = cur[i - r] ^ cur[i];
        }
        cur.swap(next);
    }
    Configuration out(n);
    for (std::size_t i = 0; i < n; ++i) {
        out.set(i, cur[i] != 0);
    }
    return out;
}

EvolutionRun evolve_trace(const Configuration& c, const RuleParams& rule, std::uint64_t horizon,
                          std::uint64_t stride)
{
    if (stride == 0) {
        throw PreconditionError("snapshot stride must be positive");
    }
    EvolutionRun run{rule, c, horizon, stride, {}};
    run.snapshots.emplace(0, c);
    Configuration cur = c;
    std::uint64_t t = 0;
    while (t < horizon) {
        const std::uint64_t advance = std::min(stride, horizon - t);
        cur = advance == 1 ? step_packed(cur, rule) : fast_evolve(cur, rule, advance);
        t += advance;
        run.snapshots.emplace(t, cur);
    }
    return run;
}

} // namespace aca
