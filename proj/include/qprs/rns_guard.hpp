/**************************************************************************
 * rns_guard.hpp
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

#include <future>
#include <numeric>
#include <optional>

#include "arith_poly.hpp"

// Redundant residue-number-system protection of the packed polynomial.
//
// The packed polynomial is evaluated independently in psi narrow channels, one per
// modulus s_d. The first eta moduli span the working range S_eta, which must exceed
// every legitimate plain-integer evaluation. The remaining moduli are redundant: a
// CRT reconstruction landing in [S_eta, S_psi) proves that some channel is wrong.

namespace qprs {

struct CrtConstant {
    std::uint64_t cofactor; // S_psi / s_d
    std::uint64_t mu;       // cofactor^{-1} mod s_d

    friend bool operator==(const CrtConstant&, const CrtConstant&) = default;
};

class RnsParams {
public:
    /// Validates coprimality, the range condition S_eta > bound, and the
    /// single-fault detection condition (product of redundant moduli >= s_eta).
    RnsParams(std::vector<std::uint64_t> moduli, std::size_t eta, std::uint64_t bound)
        : moduli_(std::move(moduli)), eta_(eta), bound_(bound) {
        if (eta_ == 0 || eta_ >= moduli_.size())
            throw ValidationError("need at least one information and one redundant modulus (eta = " +
                                  std::to_string(eta_) + ", psi = " + std::to_string(moduli_.size()) + ")");
        for (std::size_t i = 0; i < moduli_.size(); ++i) {
            if (moduli_[i] < 2) throw ValidationError("modulus " + std::to_string(moduli_[i]) + " is below 2");
            if (moduli_[i] > std::numeric_limits<std::uint32_t>::max())
                throw ValidationError("modulus " + std::to_string(moduli_[i]) + " exceeds 32 bits");
            if (i > 0 && moduli_[i] <= moduli_[i - 1]) throw ValidationError("moduli must be strictly increasing");
            for (std::size_t j = 0; j < i; ++j)
                if (std::gcd(moduli_[i], moduli_[j]) != 1)
                    throw ValidationError("moduli " + std::to_string(moduli_[j]) + " and " + std::to_string(moduli_[i]) +
                                          " are not coprime");
        }
        s_eta_ = product(0, eta_);
        s_psi_ = product(0, moduli_.size());
        if (s_eta_ <= bound_)
            throw ValidationError("working range " + std::to_string(s_eta_) + " does not exceed the value bound " +
                                  std::to_string(bound_));
        if (product(eta_, moduli_.size()) < moduli_[eta_ - 1])
            throw ValidationError("redundant moduli too small: single-channel faults could stay in range");
        for (std::uint64_t s : moduli_) {
            const std::uint64_t cof = s_psi_ / s;
            crt_.push_back({cof, inv_mod(cof % s, s)});
        }
    }

    const std::vector<std::uint64_t>& moduli() const noexcept { return moduli_; }
    std::size_t eta() const noexcept { return eta_; }
    std::size_t psi() const noexcept { return moduli_.size(); }
    std::uint64_t s_eta() const noexcept { return s_eta_; }
    std::uint64_t s_psi() const noexcept { return s_psi_; }
    std::uint64_t bound() const noexcept { return bound_; }
    const std::vector<CrtConstant>& crt() const noexcept { return crt_; }

    friend bool operator==(const RnsParams&, const RnsParams&) = default;

private:
    std::uint64_t product(std::size_t from, std::size_t to) const {
        std::uint64_t p = 1;
        for (std::size_t i = from; i < to; ++i)
            if (__builtin_mul_overflow(p, moduli_[i], &p)) throw LimitError("RNS range overflows 64 bits");
        return p;
    }

    std::vector<std::uint64_t> moduli_;
    std::size_t eta_;
    std::uint64_t bound_;
    std::uint64_t s_eta_ = 0;
    std::uint64_t s_psi_ = 0;
    std::vector<CrtConstant> crt_;
};

inline std::uint64_t next_prime_after(std::uint64_t n) {
    do {
        ++n;
    } while (!is_prime(n));
    return n;
}

/// Smallest run of consecutive primes 2, 3, 5, ... whose product exceeds bound,
/// followed by r_extra further primes as redundant moduli.
inline RnsParams choose_moduli(std::uint64_t bound, std::size_t r_extra) {
    if (bound < 1) throw ValidationError("value bound must be at least 1");
    if (r_extra < 1) throw ValidationError("at least one redundant modulus is required");
    std::vector<std::uint64_t> moduli;
    std::uint64_t prod = 1;
    std::uint64_t p = 1;
    while (prod <= bound) {
        p = next_prime_after(p);
        if (__builtin_mul_overflow(prod, p, &prod)) throw LimitError("RNS working range overflows 64 bits");
        moduli.push_back(p);
    }
    const std::size_t eta = moduli.size();
    for (std::size_t i = 0; i < r_extra; ++i) moduli.push_back(p = next_prime_after(p));
    return RnsParams(std::move(moduli), eta, bound);
}

struct RnsCodeword {
    std::vector<std::uint64_t> residues;

    friend bool operator==(const RnsCodeword&, const RnsCodeword&) = default;
};

/// Packed coefficients reduced per channel. residues[d][i] belongs to exponents[i].
struct ChannelTables {
    std::vector<Exponents> exponents;
    std::vector<std::vector<std::uint64_t>> residues;

    friend bool operator==(const ChannelTables&, const ChannelTables&) = default;
};

inline RnsCodeword to_residues(std::uint64_t x, const RnsParams& params) {
    RnsCodeword cw;
    for (std::uint64_t s : params.moduli()) cw.residues.push_back(x % s);
    return cw;
}

inline ChannelTables encode_coeffs(const PackedArithPoly& pp, const RnsParams& params) {
    ChannelTables t;
    t.residues.resize(params.psi());
    for (const auto& [e, v] : pp.base.coeffs) {
        t.exponents.push_back(e);
        for (std::size_t d = 0; d < params.psi(); ++d) t.residues[d].push_back(v % params.moduli()[d]);
    }
    return t;
}

/// Channel d alone; every intermediate stays below s_d.
inline std::uint64_t eval_channel(const ChannelTables& tables, std::size_t d, std::span<const Elem> vars,
                                  std::uint64_t s) noexcept {
    std::uint64_t acc = 0;
    const auto& coeffs = tables.residues[d];
    for (std::size_t i = 0; i < coeffs.size(); ++i)
        acc = (acc + mul_mod(coeffs[i], monomial_mod(tables.exponents[i], vars, s), s)) % s;
    return acc;
}

enum class ChannelExecution { sequential, parallel };

inline RnsCodeword eval_channels(const ChannelTables& tables, const Block& state, const RnsParams& params,
                                 ChannelExecution mode = ChannelExecution::sequential) {
    if (tables.residues.size() != params.psi()) throw ValidationError("channel table count does not match the moduli");
    const auto vars = ascending_vars(state);
    RnsCodeword cw{std::vector<std::uint64_t>(params.psi())};
    if (mode == ChannelExecution::sequential) {
        for (std::size_t d = 0; d < params.psi(); ++d) cw.residues[d] = eval_channel(tables, d, vars, params.moduli()[d]);
        return cw;
    }
    std::vector<std::future<std::uint64_t>> pending;
    pending.reserve(params.psi());
    for (std::size_t d = 0; d < params.psi(); ++d)
        pending.push_back(std::async(std::launch::async, [&tables, &vars, &params, d] {
            return eval_channel(tables, d, vars, params.moduli()[d]);
        }));
    for (std::size_t d = 0; d < params.psi(); ++d) cw.residues[d] = pending[d].get();
    return cw;
}

/// Generic CRT over an arbitrary set of pairwise coprime moduli.
inline std::uint64_t crt_combine(std::span<const std::uint64_t> residues, std::span<const std::uint64_t> moduli) {
    std::uint64_t total = 1;
    for (std::uint64_t s : moduli)
        if (__builtin_mul_overflow(total, s, &total)) throw LimitError("CRT range overflows 64 bits");
    std::uint64_t acc = 0;
    for (std::size_t d = 0; d < moduli.size(); ++d) {
        const std::uint64_t cof = total / moduli[d];
        const std::uint64_t mu = inv_mod(cof % moduli[d], moduli[d]);
        const std::uint64_t term = mul_mod(mul_mod(cof, mu, total), residues[d] % moduli[d], total);
        acc = static_cast<std::uint64_t>((static_cast<unsigned __int128>(acc) + term) % total);
    }
    return acc;
}

/// U* = |sum_d S_{d,psi} mu_{d,psi} U^(d)|_{S_psi}, using the precomputed constants.
inline std::uint64_t crt_reconstruct(const RnsCodeword& cw, const RnsParams& params) {
    if (cw.residues.size() != params.psi())
        throw ValidationError("codeword has " + std::to_string(cw.residues.size()) + " residues, expected " +
                              std::to_string(params.psi()));
    const std::uint64_t total = params.s_psi();
    unsigned __int128 acc = 0;
    for (std::size_t d = 0; d < params.psi(); ++d) {
        if (cw.residues[d] >= params.moduli()[d])
            throw ValidationError("residue " + std::to_string(d) + " is not canonical");
        const auto& c = params.crt()[d];
        acc += mul_mod(mul_mod(c.cofactor, c.mu, total), cw.residues[d], total);
        acc %= total;
    }
    return static_cast<std::uint64_t>(acc);
}

/// True when the value lies in the legitimate range [0, S_eta).
inline bool range_check(std::uint64_t u_star, const RnsParams& params) noexcept { return u_star < params.s_eta(); }

enum class CorrectionKind { corrected, ambiguous, uncorrectable };

struct CorrectionResult {
    CorrectionKind kind;
    std::uint64_t value = 0;   // valid when corrected
    std::size_t channel = 0;   // faulty channel, valid when corrected
    std::vector<std::size_t> candidates; // channels whose projection was in range
};

/// Projection method: drop one channel at a time and keep reconstructions that land
/// in the working range. A unique survivor identifies the faulty channel.
inline CorrectionResult correct_single(const RnsCodeword& cw, const RnsParams& params) {
    if (range_check(crt_reconstruct(cw, params), params))
        throw ValidationError("codeword reconstructs into the working range; nothing to correct");
    CorrectionResult out{CorrectionKind::uncorrectable, 0, 0, {}};
    std::vector<std::uint64_t> res, mod;
    for (std::size_t d = 0; d < params.psi(); ++d) {
        res.clear();
        mod.clear();
        for (std::size_t k = 0; k < params.psi(); ++k) {
            if (k == d) continue;
            res.push_back(cw.residues[k]);
            mod.push_back(params.moduli()[k]);
        }
        const std::uint64_t y = crt_combine(res, mod);
        if (y < params.s_eta()) {
            out.candidates.push_back(d);
            out.value = y;
            out.channel = d;
        }
    }
    if (out.candidates.size() == 1)
        out.kind = CorrectionKind::corrected;
    else if (out.candidates.size() > 1)
        out.kind = CorrectionKind::ambiguous;
    if (out.kind != CorrectionKind::corrected) out.value = out.channel = 0;
    return out;
}

enum class GuardStatus { ok, detected, corrected };

inline const char* to_string(GuardStatus s) noexcept {
    switch (s) {
    case GuardStatus::ok: return "ok";
    case GuardStatus::detected: return "detected";
    case GuardStatus::corrected: return "corrected";
    }
    return "?";
}

struct GuardedResult {
    Block block;
    GuardStatus status;
    std::uint64_t u_star;
    std::optional<CorrectionResult> correction;
};

/// CRT -> range check -> optional projection correction -> unmask.
/// On an uncorrected detection the block is derived from the faulty U* and must not be trusted.
inline GuardedResult guard_codeword(const RnsCodeword& cw, const PackedArithPoly& pp, const RnsParams& params,
                                    bool correct = false) {
    const std::uint64_t u = crt_reconstruct(cw, params);
    if (range_check(u, params)) return {unpack_block(u % pp.modulus(), pp.q(), pp.m()), GuardStatus::ok, u, std::nullopt};
    if (correct) {
        auto c = correct_single(cw, params);
        if (c.kind == CorrectionKind::corrected) {
            const std::uint64_t v = c.value;
            return {unpack_block(v % pp.modulus(), pp.q(), pp.m()), GuardStatus::corrected, u, std::move(c)};
        }
        return {unpack_block(u % pp.modulus(), pp.q(), pp.m()), GuardStatus::detected, u, std::move(c)};
    }
    return {unpack_block(u % pp.modulus(), pp.q(), pp.m()), GuardStatus::detected, u, std::nullopt};
}

inline GuardedResult guarded_step(const Block& state, const PackedArithPoly& pp, const ChannelTables& tables,
                                  const RnsParams& params, bool correct = false,
                                  ChannelExecution mode = ChannelExecution::sequential) {
    if (state.elems.size() != pp.m())
        throw ValidationError("state has " + std::to_string(state.elems.size()) + " elements, expected " +
                              std::to_string(pp.m()));
    return guard_codeword(eval_channels(tables, state, params, mode), pp, params, correct);
}

} // namespace qprs
