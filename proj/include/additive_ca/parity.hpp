#pragma once

#include <cstdint>
#include <optional>

#include "additive_ca/core.hpp"
#include "additive_ca/engine.hpp"

namespace aca {

enum class ReadoutMode {
    uniform_cell, // odd r: every cell holds the answer at t = 2^n - 1
    block,        // even r: every 2^k-cell block has the answer as its parity at t = 2^(n-k) - 1
};

struct ParityVerdict {
    ParityBit answer = ParityBit::zero;
    std::uint64_t decided_at = 0;
    ReadoutMode mode = ReadoutMode::uniform_cell;
    std::size_t block = 1;
    bool uniform = false;

    friend bool operator==(const ParityVerdict&, const ParityVerdict&) = default;
};

/// Common value of the block parities of `c`, or nullopt if they disagree.
/// With block == 1 this asks whether every cell holds the same state.
std::optional<ParityBit> unanimous_readout(const Configuration& c, std::size_t block);

/// Decides the parity of `c` by evolving it and reading the result.
///
/// Requires N = 2^n with n >= 1 and k(r) < n (equivalently r mod N != 0).
/// Throws UnsupportedSize for other N, PreconditionError when k(r) >= n, and
/// InvariantViolation if the readout is not unanimous (an engine defect).
ParityVerdict classify(const Configuration& c, const RuleParams& rule);

/// Parity of the successor of `c`; always zero when r mod N != 0.
ParityBit is_reachable_parity(const Configuration& c, const RuleParams& rule);

/// First t <= N at which the evolution of `c` is the null configuration.
/// Requires N = 2^n.
std::uint64_t null_absorption_time(const Configuration& c, const RuleParams& rule);

} // namespace aca
