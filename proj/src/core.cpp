#include "additive_ca/core.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

namespace aca {

namespace {

using Word = Configuration::Word;
constexpr std::size_t kWordBits = Configuration::word_bits;

std::size_t words_for(std::size_t size) { return (size + kWordBits - 1) / kWordBits; }

// dst |= src moved `shift` positions toward higher indices (bits leaving the
// top are dropped by the caller's tail mask).
void or_shifted_up(std::span<Word> dst, std::span<const Word> src, std::size_t shift)
{
    const std::size_t q = shift / kWordBits;
    const std::size_t b = shift % kWordBits;
    for (std::size_t w = q; w < dst.size(); ++w) {
        Word v = src[w - q] << b;
        if (b != 0 && w > q) {
            v |= src[w - q - 1] >> (kWordBits - b);
        }
        dst[w] |= v;
    }
}

// dst |= src moved `shift` positions toward lower indices.
void or_shifted_down(std::span<Word> dst, std::span<const Word> src, std::size_t shift)
{
    const std::size_t q = shift / kWordBits;
    const std::size_t b = shift % kWordBits;
    const std::size_t n = src.size();
    for (std::size_t w = 0; w + q < n; ++w) {
        Word v = src[w + q] >> b;
        if (b != 0 && w + q + 1 < n) {
            v |= src[w + q + 1] << (kWordBits - b);
        }
        dst[w] |= v;
    }
}

} // namespace

Configuration::Configuration(std::size_t size) : size_(size), words_(words_for(size), 0)
{
    if (size == 0) {
        throw PreconditionError("configuration size must be at least 1");
    }
}

Configuration Configuration::from_string(std::string_view bits)
{
    if (bits.empty()) {
        throw FormatError("empty configuration literal");
    }
    Configuration c(bits.size());
    for (std::size_t i = 0; i < bits.size(); ++i) {
        switch (bits[i]) {
        case '0':
            break;
        case '1':
            c.set(i, true);
            break;
        default:
            throw FormatError("configuration literal may only contain '0' and '1', found '" +
                              std::string(1, bits[i]) + "'");
        }
    }
    return c;
}

Configuration Configuration::from_words(std::size_t size, std::vector<Word> words)
{
    Configuration c(size);
    if (words.size() != c.words_.size()) {
        throw SizeMismatch("word count " + std::to_string(words.size()) + " does not match size " +
                           std::to_string(size));
    }
    c.words_ = std::move(words);
    c.clear_tail();
    return c;
}

Configuration Configuration::single_one(std::size_t size, std::size_t index)
{
    Configuration c(size);
    c.set(index % size, true);
    return c;
}

Configuration Configuration::all_ones(std::size_t size)
{
    Configuration c(size);
    std::fill(c.words_.begin(), c.words_.end(), ~Word{0});
    c.clear_tail();
    return c;
}

bool Configuration::cell(std::int64_t i) const noexcept
{
    const auto n = static_cast<std::int64_t>(size_);
    auto m = i % n;
    if (m < 0) {
        m += n;
    }
    return get(static_cast<std::size_t>(m));
}

std::uint64_t Configuration::count_ones() const noexcept
{
    std::uint64_t total = 0;
    for (Word w : words_) {
        total += static_cast<std::uint64_t>(std::popcount(w));
    }
    return total;
}

bool Configuration::is_null() const noexcept
{
    return std::all_of(words_.begin(), words_.end(), [](Word w) { return w == 0; });
}

bool Configuration::is_all_ones() const noexcept { return count_ones() == size_; }

Configuration Configuration::rotated(std::uint64_t shift) const
{
    const std::size_t s = static_cast<std::size_t>(shift % size_);
    if (s == 0) {
        return *this;
    }
    Configuration out(size_);
    or_shifted_up(out.words_, words_, s);
    or_shifted_down(out.words_, words_, size_ - s);
    out.clear_tail();
    return out;
}

Configuration Configuration::xor_rotated(std::uint64_t shift) const
{
    const std::size_t s = static_cast<std::size_t>(shift % size_);
    if (size_ % kWordBits != 0) {
        Configuration out = rotated(s);
        out ^= *this;
        return out;
    }
    // Whole words only: the rotation wraps at a word boundary. Word w of the
    // rotation is src[w - q] << b | src[w - q - 1] >> (64 - b), indices mod n.
    const std::size_t n = words_.size();
    const std::size_t q = s / kWordBits;
    const std::size_t b = s % kWordBits;
    Configuration out(size_);
    const Word* src = words_.data();
    Word* dst = out.words_.data();
    const auto at = [&](std::size_t i) { return src[i >= n ? i - n : i]; };
    if (b == 0) {
        for (std::size_t w = 0; w < q; ++w) {
            dst[w] = src[w] ^ src[w + n - q];
        }
        for (std::size_t w = q; w < n; ++w) {
            dst[w] = src[w] ^ src[w - q];
        }
        return out;
    }
    const unsigned up = static_cast<unsigned>(b);
    const unsigned down = static_cast<unsigned>(kWordBits - b);
    for (std::size_t w = 0; w <= q && w < n; ++w) {
        dst[w] = src[w] ^ ((at(w + n - q) << up) | (at(w + 2 * n - q - 1) >> down));
    }
    for (std::size_t w = q + 1; w < n; ++w) {
        dst[w] = src[w] ^ ((src[w - q] << up) | (src[w - q - 1] >> down));
    }
    return out;
}

std::string Configuration::to_string() const
{
    std::string s(size_, '0');
    for (std::size_t i = 0; i < size_; ++i) {
        if (get(i)) {
            s[i] = '1';
        }
    }
    return s;
}

Configuration& Configuration::operator^=(const Configuration& other)
{
    if (other.size_ != size_) {
        throw SizeMismatch("cannot combine configurations of sizes " + std::to_string(size_) +
                           " and " + std::to_string(other.size_));
    }
    for (std::size_t w = 0; w < words_.size(); ++w) {
        words_[w] ^= other.words_[w];
    }
    return *this;
}

void Configuration::clear_tail() noexcept
{
    const std::size_t used = size_ % kWordBits;
    if (used != 0) {
        words_.back() &= (Word{1} << used) - 1;
    }
}

ParityBit parity(const Configuration& c) noexcept { return parity_of(c.count_ones()); }

Configuration superpose(const Configuration& a, const Configuration& b) { return a ^ b; }

std::size_t spatial_period(const Configuration& c)
{
    const std::size_t n = c.size();
    for (std::size_t p = 1; p < n; ++p) {
        if (n % p == 0 && c.rotated(p) == c) {
            return p;
        }
    }
    return n;
}

std::vector<ParityBit> block_parities(const Configuration& c, std::size_t block)
{
    if (block == 0 || c.size() % block != 0) {
        throw PreconditionError("block length " + std::to_string(block) +
                                " does not divide array size " + std::to_string(c.size()));
    }
    std::vector<ParityBit> out;
    out.reserve(c.size() / block);
    for (std::size_t start = 0; start < c.size(); start += block) {
        std::uint64_t ones = 0;
        for (std::size_t i = start; i < start + block; ++i) {
            ones += c.get(i) ? 1U : 0U;
        }
        out.push_back(parity_of(ones));
    }
    return out;
}

std::optional<unsigned> exact_log2(std::uint64_t value) noexcept
{
    if (!std::has_single_bit(value)) {
        return std::nullopt;
    }
    return static_cast<unsigned>(std::countr_zero(value));
}

} // namespace aca
