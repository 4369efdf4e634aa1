#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "additive_ca/errors.hpp"

namespace aca {

enum class ParityBit : std::uint8_t { zero = 0, one = 1 };

constexpr int to_int(ParityBit p) noexcept { return static_cast<int>(p); }
constexpr ParityBit parity_of(std::uint64_t count) noexcept
{
    return (count & 1U) ? ParityBit::one : ParityBit::zero;
}

/// Circular array of N binary cells, bit-packed into 64-bit words.
///
/// Cell i lives in word i / 64 at bit i % 64. Bits at positions >= N in the
/// last word are always zero; every mutating operation restores that.
/// Cell 0 is the leftmost cell in every textual rendering.
class Configuration {
public:
    using Word = std::uint64_t;
    static constexpr std::size_t word_bits = 64;

    /// All-zero configuration of `size` cells. Throws PreconditionError if size == 0.
    explicit Configuration(std::size_t size);

    /// Parses a '0'/'1' literal, index 0 first.
    static Configuration from_string(std::string_view bits);
    static Configuration from_words(std::size_t size, std::vector<Word> words);
    static Configuration single_one(std::size_t size, std::size_t index = 0);
    static Configuration all_ones(std::size_t size);

    std::size_t size() const noexcept { return size_; }
    std::size_t word_count() const noexcept { return words_.size(); }
    std::span<const Word> words() const noexcept { return words_; }

    bool get(std::size_t i) const noexcept
    {
        return (words_[i / word_bits] >> (i % word_bits)) & 1U;
    }
    void set(std::size_t i, bool value) noexcept
    {
        const Word mask = Word{1} << (i % word_bits);
        if (value) {
            words_[i / word_bits] |= mask;
        } else {
            words_[i / word_bits] &= ~mask;
        }
    }
    void flip(std::size_t i) noexcept { words_[i / word_bits] ^= Word{1} << (i % word_bits); }

    /// Periodic accessor: any integer index, reduced mod N.
    bool cell(std::int64_t i) const noexcept;

    std::uint64_t count_ones() const noexcept;
    bool is_null() const noexcept;
    bool is_all_ones() const noexcept;

    /// Right rotation: result cell i equals this cell (i - shift) mod N.
    Configuration rotated(std::uint64_t shift) const;
    /// *this ^ rotated(shift) in one pass.
    Configuration xor_rotated(std::uint64_t shift) const;

    std::string to_string() const;

    Configuration& operator^=(const Configuration& other);
    friend Configuration operator^(Configuration a, const Configuration& b)
    {
        a ^= b;
        return a;
    }
    friend bool operator==(const Configuration&, const Configuration&) = default;

private:
    void clear_tail() noexcept;

    std::size_t size_;
    std::vector<Word> words_;
};

ParityBit parity(const Configuration& c) noexcept;

/// Cellwise sum mod 2. Throws SizeMismatch for different sizes.
Configuration superpose(const Configuration& a, const Configuration& b);

/// Smallest divisor p of N with c rotated by p equal to c.
std::size_t spatial_period(const Configuration& c);

/// Parities of the N / block consecutive blocks [m*block, (m+1)*block).
std::vector<ParityBit> block_parities(const Configuration& c, std::size_t block);

/// n with 2^n == value, or nullopt.
std::optional<unsigned> exact_log2(std::uint64_t value) noexcept;

} // namespace aca
