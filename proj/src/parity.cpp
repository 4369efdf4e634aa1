#include "additive_ca/parity.hpp"

#include <algorithm>

namespace aca {

namespace {

unsigned require_power_of_two(std::size_t size)
{
    const auto n = exact_log2(size);
    if (!n || *n == 0) {
        throw UnsupportedSize("array size N must be a power of two 2^n with n >= 1, got " +
                              std::to_string(size));
    }
    return *n;
}

} // namespace

std::optional<ParityBit> unanimous_readout(const Configuration& c, std::size_t block)
{
    const auto parities = block_parities(c, block);
    const ParityBit first = parities.front();
    const bool same = std::all_of(parities.begin(), parities.end(),
                                  [first](ParityBit p) { return p == first; });
    if (!same) {
        return std::nullopt;
    }
    return first;
}

ParityVerdict classify(const Configuration& c, const RuleParams& rule)
{
    const unsigned n = require_power_of_two(c.size());
    const unsigned k = rule.k();
    if (k >= n) {
        throw PreconditionError("r = " + std::to_string(rule.r()) + " has 2^" + std::to_string(k) +
                                " dividing it, which needs k < n = " + std::to_string(n));
    }

    ParityVerdict verdict;
    verdict.mode = rule.is_odd() ? ReadoutMode::uniform_cell : ReadoutMode::block;
    verdict.block = std::size_t{1} << k;
    verdict.decided_at = (std::uint64_t{1} << (n - k)) - 1;

    const Configuration final = fast_evolve(c, rule, verdict.decided_at);
    const auto readout = unanimous_readout(final, verdict.block);
    if (!readout) {
        throw InvariantViolation("readout at t = " + std::to_string(verdict.decided_at) +
                                 " is not unanimous for block length " +
                                 std::to_string(verdict.block));
    }
    verdict.answer = *readout;
    verdict.uniform = true;
    return verdict;
}

ParityBit is_reachable_parity(const Configuration& c, const RuleParams& rule)
{
    return parity(step_packed(c, rule));
}

std::uint64_t null_absorption_time(const Configuration& c, const RuleParams& rule)
{
    require_power_of_two(c.size());
    const std::uint64_t limit = c.size();
    Configuration cur = c;
    for (std::uint64_t t = 0; t <= limit; ++t) {
        if (cur.is_null()) {
            return t;
        }
        cur = step_packed(cur, rule);
    }
    throw InvariantViolation("evolution did not reach the null configuration within N = " +
                             std::to_string(limit) + " steps");
}

} // namespace aca
