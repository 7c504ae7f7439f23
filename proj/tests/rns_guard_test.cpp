/**************************************************************************
 * rns_guard_test.cpp
 *
 * Copyright 2026 The qprs Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 **************************************************************************/

#include <gtest/gtest.h>

#include "qprs/rns_guard.hpp"

#include "oracles.hpp"

using namespace qprs;

namespace {

FeedbackPoly poly(std::uint64_t q, std::vector<std::uint64_t> k) { return derive_taps(k, PrimeField(q)); }

const RnsParams& small() {
    static const RnsParams p({5, 7, 11}, 2, 34);
    return p;
}

Block state_at(std::uint64_t idx, std::uint64_t q, std::size_t m) {
    const auto vars = grid_point(idx, q, m);
    return Block{{vars.rbegin(), vars.rend()}};
}

} // namespace

TEST(ChooseModuli, Examples) {
    auto p = choose_moduli(1152, 1);
    EXPECT_EQ(p.moduli(), (std::vector<std::uint64_t>{2, 3, 5, 7, 11, 13}));
    EXPECT_EQ(p.eta(), 5u);

    p = choose_moduli(1, 1);
    EXPECT_EQ(p.moduli(), (std::vector<std::uint64_t>{2, 3}));
    EXPECT_EQ(p.eta(), 1u);

    p = choose_moduli(30, 2);
    EXPECT_EQ(p.moduli(), (std::vector<std::uint64_t>{2, 3, 5, 7, 11, 13}));
    EXPECT_EQ(p.eta(), 4u);

    EXPECT_THROW(choose_moduli(30, 0), ValidationError);
}

TEST(RnsParams, Validation) {
    EXPECT_NO_THROW(RnsParams({5, 7, 11}, 2, 34));
    EXPECT_THROW(RnsParams({5, 7, 11}, 2, 35), ValidationError);   // S_eta must exceed B
    EXPECT_THROW(RnsParams({5, 10, 11}, 2, 1), ValidationError);   // 5 | 10
    EXPECT_THROW(RnsParams({7, 5, 11}, 2, 1), ValidationError);    // not increasing
    EXPECT_THROW(RnsParams({5, 7}, 2, 1), ValidationError);        // no redundant modulus
    EXPECT_THROW(RnsParams({5, 7, 11}, 0, 1), ValidationError);
    EXPECT_THROW(RnsParams({2, 3, 1ULL << 33}, 2, 1), ValidationError);
}

TEST(RnsParams, CrtConstants) {
    const auto& p = small();
    EXPECT_EQ(p.s_eta(), 35u);
    EXPECT_EQ(p.s_psi(), 385u);
    ASSERT_EQ(p.crt().size(), 3u);
    EXPECT_EQ(p.crt()[0].cofactor, 77u);
    EXPECT_EQ(p.crt()[0].mu, 3u); // 77 = 2 mod 5, 2 * 3 = 6
    EXPECT_EQ(p.crt()[1].cofactor, 55u);
    EXPECT_EQ(p.crt()[1].mu, 6u); // 55 = 6 mod 7
    EXPECT_EQ(p.crt()[2].cofactor, 35u);
    EXPECT_EQ(p.crt()[2].mu, 6u); // 35 = 2 mod 11, 2 * 6 = 12
}

TEST(ToResidues, Examples) {
    EXPECT_EQ(to_residues(7, small()).residues, (std::vector<std::uint64_t>{2, 0, 7}));
    EXPECT_EQ(to_residues(23, small()).residues, (std::vector<std::uint64_t>{3, 2, 1}));
    EXPECT_EQ(to_residues(0, small()).residues, (std::vector<std::uint64_t>{0, 0, 0}));
}

TEST(EncodeCoeffs, Examples) {
    const PackedArithPoly pp{ArithPoly{3, 2, 9, {{{0, 0}, 7}, {{1, 0}, 23}}}, {1, 3}, 30};
    const RnsParams p({5, 7, 11}, 2, 30);
    const auto t = encode_coeffs(pp, p);
    ASSERT_EQ(t.exponents.size(), 2u);
    EXPECT_EQ(t.exponents[0], (Exponents{0, 0}));
    EXPECT_EQ(t.residues[0], (std::vector<std::uint64_t>{2, 3}));
    EXPECT_EQ(t.residues[1], (std::vector<std::uint64_t>{0, 2}));
    EXPECT_EQ(t.residues[2], (std::vector<std::uint64_t>{7, 1}));

    const PackedArithPoly zero{ArithPoly{3, 2, 9, {}}, {1, 3}, 0};
    const auto tz = encode_coeffs(zero, p);
    EXPECT_TRUE(tz.exponents.empty());
    EXPECT_EQ(eval_channels(tz, Block{{2, 2}}, p).residues, (std::vector<std::uint64_t>{0, 0, 0}));
}

TEST(EvalChannels, ConstantPolynomial) {
    const PackedArithPoly pp{ArithPoly{3, 2, 9, {{{0, 0}, 7}}}, {1, 3}, 7};
    const auto t = encode_coeffs(pp, small());
    for (const Block& b : {Block{{0, 0}}, Block{{1, 2}}})
        EXPECT_EQ(eval_channels(t, b, small()).residues, (std::vector<std::uint64_t>{2, 0, 7}));
}

TEST(EvalChannels, EqualRawResiduesExhaustively) {
    for (auto [q, k] : std::vector<std::pair<std::uint64_t, std::vector<std::uint64_t>>>{
             {3, {2, 1, 1}}, {3, {1, 2, 0, 1}}, {5, {2, 1, 1}}, {2, {1, 1, 0, 1}}}) {
        const auto fp = poly(q, k);
        const auto pp = compile_lnp(fp);
        const auto params = choose_moduli(pp.value_bound, 2);
        const auto tables = encode_coeffs(pp, params);
        for (std::uint64_t idx = 0; idx < pp.modulus(); ++idx) {
            const auto st = state_at(idx, q, fp.degree());
            const auto raw = eval_packed(pp, st).raw;
            const auto cw = eval_channels(tables, st, params);
            for (std::size_t d = 0; d < params.psi(); ++d) EXPECT_EQ(cw.residues[d], raw % params.moduli()[d]);
            EXPECT_EQ(eval_channels(tables, st, params, ChannelExecution::parallel), cw);
        }
    }
}

TEST(CrtReconstruct, Examples) {
    EXPECT_EQ(crt_reconstruct(RnsCodeword{{3, 2, 1}}, small()), 23u);
    EXPECT_EQ(crt_reconstruct(RnsCodeword{{0, 0, 0}}, small()), 0u);
    EXPECT_EQ(crt_reconstruct(RnsCodeword{{4, 2, 1}}, small()), 254u);
    EXPECT_EQ(oracle::crt_search({3, 2, 1}, {5, 7, 11}), 23u);
    EXPECT_EQ(oracle::crt_search({4, 2, 1}, {5, 7, 11}), 254u);
    EXPECT_THROW(crt_reconstruct(RnsCodeword{{5, 0, 0}}, small()), ValidationError);
    EXPECT_THROW(crt_reconstruct(RnsCodeword{{0, 0}}, small()), ValidationError);
}

TEST(CrtReconstruct, AgreesWithSearchOnEveryCodeword) {
    const auto& p = small();
    for (std::uint64_t a = 0; a < 5; ++a)
        for (std::uint64_t b = 0; b < 7; ++b)
            for (std::uint64_t c = 0; c < 11; ++c)
                ASSERT_EQ(crt_reconstruct(RnsCodeword{{a, b, c}}, p), oracle::crt_search({a, b, c}, {5, 7, 11}));
}

TEST(CrtReconstruct, RoundTripInRange) {
    for (std::uint64_t u = 0; u < 35; ++u) EXPECT_EQ(crt_reconstruct(to_residues(u, small()), small()), u);
}

TEST(RangeCheck, Examples) {
    EXPECT_TRUE(range_check(23, small()));
    EXPECT_FALSE(range_check(254, small()));
    EXPECT_TRUE(range_check(0, small()));
    EXPECT_TRUE(range_check(0, choose_moduli(1, 1)));
}

TEST(RangeCheck, EverySingleChannelFaultLeavesTheRange) {
    for (const auto& p : {small(), choose_moduli(132, 1), choose_moduli(1152, 1), choose_moduli(30, 2)}) {
        for (std::uint64_t u = 0; u < p.s_eta(); ++u) {
            const auto cw = to_residues(u, p);
            for (std::size_t d = 0; d < p.psi(); ++d)
                for (std::uint64_t delta = 1; delta < p.moduli()[d]; ++delta) {
                    auto bad = cw;
                    bad.residues[d] = (bad.residues[d] + delta) % p.moduli()[d];
                    ASSERT_FALSE(range_check(crt_reconstruct(bad, p), p)) << "u=" << u << " d=" << d;
                }
        }
    }
}

TEST(CorrectSingle, AmbiguousWithOneRedundantModulus) {
    const auto r = correct_single(RnsCodeword{{4, 2, 1}}, small());
    EXPECT_EQ(r.kind, CorrectionKind::ambiguous);
    EXPECT_EQ(r.candidates.size(), 3u);
    // projections by hand: drop 5 -> 23 (mod 77), drop 7 -> 34 (mod 55), drop 11 -> 9 (mod 35)
    EXPECT_EQ(oracle::crt_search({2, 1}, {7, 11}), 23u);
    EXPECT_EQ(oracle::crt_search({4, 1}, {5, 11}), 34u);
    EXPECT_EQ(oracle::crt_search({4, 2}, {5, 7}), 9u);
}

TEST(CorrectSingle, RejectsCleanCodeword) {
    EXPECT_THROW(correct_single(RnsCodeword{{3, 2, 1}}, small()), ValidationError);
}

TEST(CorrectSingle, TwoRedundantModuliRestoreEveryValue) {
    for (const auto& p : {choose_moduli(132, 2), choose_moduli(30, 2), choose_moduli(1, 2)}) {
        std::size_t corrected = 0, total = 0;
        for (std::uint64_t u = 0; u < p.s_eta(); ++u) {
            const auto cw = to_residues(u, p);
            for (std::size_t d = 0; d < p.psi(); ++d)
                for (std::uint64_t delta = 1; delta < p.moduli()[d]; ++delta) {
                    auto bad = cw;
                    bad.residues[d] = (bad.residues[d] + delta) % p.moduli()[d];
                    const auto r = correct_single(bad, p);
                    ++total;
                    ASSERT_NE(r.kind, CorrectionKind::uncorrectable);
                    if (r.kind == CorrectionKind::corrected) {
                        ASSERT_EQ(r.value, u);
                        ASSERT_EQ(r.channel, d);
                        ++corrected;
                    }
                }
        }
        EXPECT_EQ(corrected, total);
    }
}

TEST(GuardedStep, Examples) {
    const auto fp = poly(3, {2, 1, 1});
    const auto pp = compile_lnp(fp);
    const auto params = choose_moduli(pp.value_bound, 1);
    EXPECT_EQ(params.moduli(), (std::vector<std::uint64_t>{2, 3, 5, 7, 11}));
    EXPECT_EQ(params.eta(), 4u);
    const auto tables = encode_coeffs(pp, params);

    auto g = guarded_step(Block{{0, 1}}, pp, tables, params);
    EXPECT_EQ(g.block, (Block{{2, 1}}));
    EXPECT_EQ(g.status, GuardStatus::ok);

    g = guarded_step(Block{{0, 0}}, pp, tables, params);
    EXPECT_EQ(g.block, (Block{{0, 0}}));
    EXPECT_EQ(g.status, GuardStatus::ok);

    auto cw = eval_channels(tables, Block{{0, 1}}, params);
    cw.residues[2] = (cw.residues[2] + 1) % 5;
    EXPECT_EQ(guard_codeword(cw, pp, params).status, GuardStatus::detected);
}

TEST(GuardedStep, AgreesWithLnpBlockAndSerialForAllStates) {
    const auto fp = poly(3, {1, 2, 0, 1});
    const auto pp = compile_lnp(fp);
    const auto bm = build_ginf(fp);
    const auto params = choose_moduli(pp.value_bound, 1);
    const auto tables = encode_coeffs(pp, params);
    for (std::uint64_t idx = 0; idx < 27; ++idx) {
        const auto st = state_at(idx, 3, 3);
        const auto g = guarded_step(st, pp, tables, params, false, ChannelExecution::parallel);
        EXPECT_EQ(g.status, GuardStatus::ok);
        EXPECT_EQ(g.block, lnp_step(pp, st));
        EXPECT_EQ(g.block, block_step(bm, st));
        LfsrState s = st.to_state();
        for (int i = 0; i < 3; ++i) s = step(s, fp).next;
        EXPECT_EQ(g.block, Block::from_state(s));
    }
}

TEST(GuardedStep, CorrectionRestoresBlock) {
    const auto fp = poly(3, {2, 1, 1});
    const auto pp = compile_lnp(fp);
    const auto params = choose_moduli(pp.value_bound, 2);
    const auto tables = encode_coeffs(pp, params);
    for (std::uint64_t idx = 0; idx < 9; ++idx) {
        const auto st = state_at(idx, 3, 2);
        const auto want = lnp_step(pp, st);
        const auto clean = eval_channels(tables, st, params);
        for (std::size_t d = 0; d < params.psi(); ++d)
            for (std::uint64_t delta = 1; delta < params.moduli()[d]; ++delta) {
                auto cw = clean;
                cw.residues[d] = (cw.residues[d] + delta) % params.moduli()[d];
                const auto g = guard_codeword(cw, pp, params, true);
                ASSERT_TRUE(g.correction.has_value());
                if (g.status == GuardStatus::corrected)
                    EXPECT_EQ(g.block, want);
                else
                    EXPECT_EQ(g.correction->kind, CorrectionKind::ambiguous);
            }
    }
}
