/**************************************************************************
 * suite.hpp
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

#pragma once

#include <string_view>

#include "linear_code_guard.hpp"
#include "rns_guard.hpp"

namespace qprs {

/// Everything derived from one generating polynomial: the three generator forms
/// and both guards.
struct GeneratorSuite {
    FeedbackPoly fp;
    BlockMatrix bm;
    CheckMatrix cm;
    PackedArithPoly pp;
    RnsParams rns;
    ChannelTables tables;

    std::size_t m() const noexcept { return fp.degree(); }
    const PrimeField& field() const noexcept { return fp.field(); }

    friend bool operator==(const GeneratorSuite&, const GeneratorSuite&) = default;
};

inline GeneratorSuite derive_suite(const PrimeField& f, std::span<const std::uint64_t> k, std::size_t r,
                                   std::size_t rns_extras, std::uint64_t limit = kDefaultExhaustionLimit) {
    auto fp = derive_taps(k, f);
    auto bm = build_ginf(fp);
    auto cm = build_ggen(bm, build_check_matrix(f, fp.degree(), r));
    auto pp = compile_lnp(fp, limit);
    auto rns = choose_moduli(std::max<std::uint64_t>(pp.value_bound, 1), rns_extras);
    auto tables = encode_coeffs(pp, rns);
    return GeneratorSuite{std::move(fp), std::move(bm), std::move(cm), std::move(pp), std::move(rns), std::move(tables)};
}

/// Human-readable list of every derivation that does not match the stored data.
inline std::vector<std::string> consistency_issues(const GeneratorSuite& s, std::uint64_t limit = kDefaultExhaustionLimit) {
    std::vector<std::string> issues;
    try {
        if (derive_taps(s.fp.coefficients(), s.field()).taps() != s.fp.taps()) issues.emplace_back("taps are not -k_i mod q");
    } catch (const Error& e) {
        issues.emplace_back(std::string("generating polynomial invalid: ") + e.what());
        return issues;
    }
    if (s.bm.m() != s.m() || !(s.bm.field() == s.field()) || build_ginf(s.fp).g_inf() != s.bm.g_inf())
        issues.emplace_back("g_inf is not companion^m mod q");
    try {
        if (s.cm.c_rows != mat_mul(s.cm.p_mat, s.bm.g_inf(), s.field()))
            issues.emplace_back("c_rows is not p_mat * g_inf mod q");
        build_ggen(s.bm, s.cm.p_mat);
    } catch (const Error& e) {
        issues.emplace_back(std::string("check matrix invalid: ") + e.what());
    }
    if (compile_lnp(s.fp, limit) != s.pp) issues.emplace_back("packed polynomial does not match the recurrence");
    if (s.rns.bound() != s.pp.value_bound) issues.emplace_back("RNS bound differs from the packed value bound");
    if (encode_coeffs(s.pp, s.rns) != s.tables) issues.emplace_back("channel tables are not reductions of the packed coefficients");
    return issues;
}

enum class Backend { serial, block, lnp, guarded_rns, coded_block };

inline std::string_view to_string(Backend b) noexcept {
    switch (b) {
    case Backend::serial: return "serial";
    case Backend::block: return "block";
    case Backend::lnp: return "lnp";
    case Backend::guarded_rns: return "guarded-rns";
    case Backend::coded_block: return "coded-block";
    }
    return "?";
}

inline Backend parse_backend(std::string_view name) {
    for (auto b : {Backend::serial, Backend::block, Backend::lnp, Backend::guarded_rns, Backend::coded_block})
        if (to_string(b) == name) return b;
    throw ValidationError("unknown backend '" + std::string(name) + "'");
}

/// First n sequence elements from seed (descending cells) with the chosen backend.
/// Guarded backends throw SoundnessError if their guard fires, since nothing was injected.
inline std::vector<Elem> generate_stream(const GeneratorSuite& s, Backend backend, const Block& seed, std::size_t n) {
    validate_state(seed.to_state(), s.fp);
    switch (backend) {
    case Backend::serial: return generate(seed.to_state(), s.fp, n);
    case Backend::block: return generate_block_stream(seed, s.bm, n);
    case Backend::lnp: return generate_lnp_stream(seed, s.pp, n);
    case Backend::guarded_rns:
    case Backend::coded_block: break;
    }
    std::vector<Elem> out;
    out.reserve(n + s.m());
    Block cur = seed;
    while (out.size() < n) {
        out.insert(out.end(), cur.elems.rbegin(), cur.elems.rend());
        if (out.size() >= n) break;
        if (backend == Backend::guarded_rns) {
            auto g = guarded_step(cur, s.pp, s.tables, s.rns);
            if (g.status != GuardStatus::ok)
                throw SoundnessError("RNS guard fired on a fault-free step (U* = " + std::to_string(g.u_star) + ")");
            cur = std::move(g.block);
        } else {
            auto cb = encode_block(s.bm, s.cm, cur);
            if (!check_block(cb, s.cm.p_mat, s.field()).clean())
                throw SoundnessError("nonzero syndrome on a fault-free block");
            cur = std::move(cb.info);
        }
    }
    out.resize(n);
    return out;
}

/// FNV-1a over the numeric content of the suite; identifies the artifact in reports.
inline std::string suite_digest(const GeneratorSuite& s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    auto mix = [&h](std::uint64_t v) {
        for (int i = 0; i < 8; ++i) {
            h ^= (v >> (8 * i)) & 0xff;
            h *= 0x100000001b3ULL;
        }
    };
    auto mix_all = [&mix](const auto& range) {
        mix(range.size());
        for (auto v : range) mix(v);
    };
    mix(s.field().q());
    mix_all(s.fp.coefficients());
    mix_all(s.fp.taps());
    mix_all(s.bm.g_inf().entries());
    mix_all(s.cm.p_mat.entries());
    mix_all(s.cm.c_rows.entries());
    mix(s.pp.modulus());
    mix(s.pp.value_bound);
    for (const auto& [e, v] : s.pp.base.coeffs) {
        mix_all(e);
        mix(v);
    }
    mix_all(s.rns.moduli());
    mix(s.rns.eta());
    static constexpr char hex[] = "0123456789abcdef";
    std::string out = "fnv1a64:";
    for (int i = 15; i >= 0; --i) out.push_back(hex[(h >> (4 * i)) & 0xf]);
    return out;
}

} // namespace qprs
