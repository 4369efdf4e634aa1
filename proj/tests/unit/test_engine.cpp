#include <doctest.h>

#include <random>

#include "additive_ca/engine.hpp"
#include "oracles.hpp"

using aca::Configuration;
using aca::RuleParams;

namespace {

Configuration cfg(const std::string& bits) { return Configuration::from_string(bits); }

std::string random_bits(std::mt19937_64& gen, std::size_t n)
{
    std::string s(n, '0');
    for (auto& ch : s) {
        ch = (gen() & 1U) ? '1' : '0';
    }
    return s;
}

} // namespace

TEST_CASE("rule parameters")
{
    CHECK(RuleParams(1).k() == 0);
    CHECK(RuleParams(8).k() == 3);
    CHECK(RuleParams(12).k() == 2);
    CHECK(RuleParams(3).is_odd());
    CHECK(RuleParams(16).degenerate_for(8));
    CHECK_THROWS_AS(RuleParams(0), aca::PreconditionError);
}

TEST_CASE("single step examples")
{
    CHECK(aca::step(cfg("0001"), RuleParams(1)) == cfg("1001"));
    CHECK(aca::step(cfg("0001"), RuleParams(2)) == cfg("0101"));
    for (std::uint64_t r : {1, 2, 5, 8}) {
        CHECK(aca::step(cfg("0000"), RuleParams(r)).is_null());
        CHECK(aca::step_packed(cfg("0000"), RuleParams(r)).is_null());
    }
    CHECK(aca::step_packed(cfg("0001"), RuleParams(1)) == cfg("1001"));
}

TEST_CASE("jump and window examples against step composition")
{
    const RuleParams r1(1);
    CHECK(aca::jump_pow2(cfg("0001"), r1, 1) == cfg(oracle::evolve("0001", 1, 2)));
    CHECK(aca::jump_pow2(cfg("0001"), r1, 1) == cfg("0101"));
    CHECK(aca::window_sum_jump(cfg("0110"), r1, 0) == cfg("0110"));
    CHECK(aca::window_sum_jump(cfg("0001"), r1, 2) == cfg(oracle::evolve("0001", 1, 3)));

    std::mt19937_64 gen(5);
    const std::string a = random_bits(gen, 64);
    CHECK(aca::jump_pow2(cfg(a), r1, 5) == cfg(oracle::evolve(a, 1, 32)));
    CHECK(aca::jump_pow2(cfg(a), r1, 0) == aca::step(cfg(a), r1));
    const std::string b = random_bits(gen, 128);
    CHECK(aca::window_sum_jump(cfg(b), RuleParams(3), 4) == cfg(oracle::evolve(b, 3, 15)));
}

TEST_CASE("fast and polynomial evolution examples")
{
    std::mt19937_64 gen(9);
    const std::string a = random_bits(gen, 256);
    const RuleParams r1(1);
    CHECK(aca::fast_evolve(cfg(a), r1, 0) == cfg(a));
    CHECK(aca::fast_evolve(cfg(a), r1, 1) == aca::step(cfg(a), r1));
    CHECK(aca::fast_evolve(cfg(a), r1, 1000) == cfg(oracle::evolve(a, 1, 1000)));

    CHECK(aca::poly_evolve(cfg(a), r1, 0) == cfg(a));
    CHECK(aca::poly_evolve(cfg("0001"), r1, 3) == cfg(oracle::evolve("0001", 1, 3)));
    const std::string big = random_bits(gen, 1024);
    CHECK(aca::poly_evolve(cfg(big), RuleParams(2), 9999) == aca::fast_evolve(cfg(big), RuleParams(2), 9999));
}

TEST_CASE("polynomial arithmetic")
{
    using aca::PolyGF2;
    // (1 + x)^2 = 1 + x^2 over GF(2)
    const PolyGF2 t = PolyGF2::transition(8, RuleParams(1));
    CHECK((t * t).coefficients() == cfg("10100000"));
    // x^7 * x^3 wraps to x^2 modulo x^8 - 1
    CHECK((PolyGF2(cfg("00000001")) * PolyGF2(cfg("00010000"))).coefficients() == cfg("00100000"));
    // (1 + x)^8 = 1 + x^8 = 0 modulo x^8 - 1
    CHECK(t.pow(8).coefficients().is_null());
    CHECK(t.pow(0) == PolyGF2::one(8));
    CHECK_THROWS_AS(PolyGF2::one(4) * PolyGF2::one(8), aca::SizeMismatch);
}

TEST_CASE("additivity exhaustively at N = 8")
{
    for (std::uint64_t r : {1, 2, 3, 8}) {
        const RuleParams rule(r);
        for (std::uint64_t a = 0; a < 256; ++a) {
            const Configuration ca = Configuration::from_words(8, {a});
            const Configuration sa = aca::step(ca, rule);
            for (std::uint64_t b = 0; b < 256; ++b) {
                const Configuration cb = Configuration::from_words(8, {b});
                if (aca::step(ca ^ cb, rule) != (sa ^ aca::step(cb, rule))) {
                    FAIL("additivity broken for a=" << a << " b=" << b << " r=" << r);
                }
            }
        }
    }
}

TEST_CASE("all backends agree with t-fold reference composition")
{
    std::mt19937_64 gen(2024);
    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t n = 4 + gen() % 700;
        const RuleParams rule(1 + gen() % 16);
        const std::uint64_t t = gen() % 1500;
        const std::string a = random_bits(gen, n);
        const Configuration expected = cfg(oracle::evolve(a, static_cast<long>(rule.r()), t));
        const Configuration c = cfg(a);

        CHECK(aca::naive_evolve(c, rule, t) == expected);
        CHECK(aca::fast_evolve(c, rule, t) == expected);
        CHECK(aca::poly_evolve(c, rule, t) == expected);

        Configuration packed = c;
        Configuration reference = c;
        for (std::uint64_t s = 0; s < std::min<std::uint64_t>(t, 50); ++s) {
            packed = aca::step_packed(packed, rule);
            reference = aca::step(reference, rule);
        }
        CHECK(packed == reference);

        const unsigned k = static_cast<unsigned>(gen() % 11);
        CHECK(aca::window_sum_jump(c, rule, k) ==
              cfg(oracle::evolve(a, static_cast<long>(rule.r()), (std::uint64_t{1} << k) - 1)));
    }
}

TEST_CASE("jump with 2^k r = 0 mod N is applied verbatim")
{
    // 2^3 * 1 = 8 = 0 mod 8: the rotation is the identity, so the jump annihilates.
    const Configuration c = cfg("10110010");
    CHECK(aca::jump_pow2(c, RuleParams(1), 3).is_null());
    CHECK(aca::jump_pow2(c, RuleParams(1), 3) == cfg(oracle::evolve("10110010", 1, 8)));
    // Large k must not overflow the shift computation.
    CHECK(aca::jump_pow2(c, RuleParams(3), 70).is_null());
}

TEST_CASE("r = 2 is rule 90 up to a one-cell translation")
{
    std::mt19937_64 gen(90);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t n = 3 + gen() % 200;
        const Configuration c = cfg(random_bits(gen, n));
        Configuration rule90(n);
        for (std::size_t i = 0; i < n; ++i) {
            rule90.set(i, c.cell(static_cast<std::int64_t>(i) - 1) != c.cell(static_cast<std::int64_t>(i) + 1));
        }
        CHECK(aca::step(c, RuleParams(2)) == rule90.rotated(1));
    }
}

TEST_CASE("successors always have even parity when r mod N != 0")
{
    for (std::uint64_t r : {1, 2, 3, 5}) {
        for (std::uint64_t a = 0; a < 256; ++a) {
            CHECK(aca::parity(aca::step(Configuration::from_words(8, {a}), RuleParams(r))) == aca::ParityBit::zero);
        }
    }
}

TEST_CASE("evolve_trace snapshots")
{
    const RuleParams r1(1);
    const auto run = aca::evolve_trace(cfg("0001"), r1, 2, 1);
    REQUIRE(run.snapshots.size() == 3);
    CHECK(run.at(0) == cfg("0001"));
    CHECK(run.at(1) == cfg("1001"));
    CHECK(run.at(2) == aca::step(cfg("1001"), r1));

    const auto single = aca::evolve_trace(cfg("0110"), r1, 0, 1);
    CHECK(single.snapshots.size() == 1);
    CHECK(single.at(0) == cfg("0110"));

    std::mt19937_64 gen(1);
    const Configuration c = cfg(random_bits(gen, 100));
    const auto sparse = aca::evolve_trace(c, r1, 77, 77);
    CHECK(sparse.snapshots.size() == 2);
    CHECK(sparse.at(77) == aca::fast_evolve(c, r1, 77));

    const auto strided = aca::evolve_trace(c, r1, 10, 4);
    CHECK(strided.snapshots.size() == 4); // 0, 4, 8, 10
    CHECK(strided.at(10) == cfg(oracle::evolve(c.to_string(), 1, 10)));
    CHECK_THROWS_AS(aca::evolve_trace(c, r1, 10, 0), aca::PreconditionError);
}
