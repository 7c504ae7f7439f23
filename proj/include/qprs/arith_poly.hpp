/**************************************************************************
 * arith_poly.hpp
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

#include <map>

#include "block_parallel.hpp"

// Arithmetic-polynomial form of the block generator.
//
// Each of the m next-state functions [0,q)^m -> [0,q) is interpolated on the full
// grid as a polynomial with per-variable exponents 0..q-1 and coefficients in
// Z_{q^m}. The m polynomials are packed into one by weighting function e with
// q^{e-1}; evaluating the packed polynomial and reducing mod q^m leaves the m
// outputs as the base-q digits of the result.
//
// Variables are ordered (a_p, a_{p+1}, ..., a_{p+m-1}), i.e. ascending index,
// which is the reverse of the Block / LfsrState layout.

namespace qprs {

using Exponents = std::vector<std::uint32_t>;

/// Base-q digits of an index, least significant first.
inline std::vector<Elem> grid_point(std::uint64_t index, std::uint64_t q, std::size_t m) {
    std::vector<Elem> out(m);
    for (std::size_t u = 0; u < m; ++u) {
        out[u] = index % q;
        index /= q;
    }
    return out;
}

inline std::uint64_t grid_index(std::span<const Elem> point, std::uint64_t q) {
    std::uint64_t idx = 0;
    for (std::size_t u = point.size(); u-- > 0;) idx = idx * q + point[u];
    return idx;
}

inline std::vector<Elem> ascending_vars(const Block& b) { return {b.elems.rbegin(), b.elems.rend()}; }

/// Complete truth table of one q-valued function of m variables.
struct MfalTable {
    std::uint64_t q;
    std::size_t m;
    std::vector<Elem> outputs; // indexed by grid_index of (a_p, ..., a_{p+m-1})

    Elem at(std::span<const Elem> vars) const { return outputs.at(grid_index(vars, q)); }
};

struct ArithPoly {
    std::uint64_t q;
    std::size_t m;
    std::uint64_t modulus;
    std::map<Exponents, std::uint64_t> coeffs; // nonzero entries only

    friend bool operator==(const ArithPoly&, const ArithPoly&) = default;
};

struct PackedArithPoly {
    ArithPoly base;
    std::vector<std::uint64_t> weights; // q^{e-1}, e = 1..m
    std::uint64_t value_bound;          // max plain-integer evaluation over [0,q)^m

    std::uint64_t q() const noexcept { return base.q; }
    std::size_t m() const noexcept { return base.m; }
    std::uint64_t modulus() const noexcept { return base.modulus; }

    friend bool operator==(const PackedArithPoly&, const PackedArithPoly&) = default;
};

/// Product of vars[u]^e[u] over plain integers (0^0 = 1).
inline std::uint64_t monomial(const Exponents& e, std::span<const Elem> vars) noexcept {
    std::uint64_t v = 1;
    for (std::size_t u = 0; u < e.size(); ++u)
        for (std::uint32_t k = 0; k < e[u]; ++k) v *= vars[u];
    return v;
}

inline std::uint64_t monomial_mod(const Exponents& e, std::span<const Elem> vars, std::uint64_t n) noexcept {
    std::uint64_t v = 1 % n;
    for (std::size_t u = 0; u < e.size(); ++u)
        for (std::uint32_t k = 0; k < e[u]; ++k) v = mul_mod(v, vars[u] % n, n);
    return v;
}

/// Evaluation mod the polynomial's modulus; vars in ascending index order.
inline std::uint64_t eval_mod(const ArithPoly& p, std::span<const Elem> vars) noexcept {
    std::uint64_t acc = 0;
    for (const auto& [e, c] : p.coeffs) acc = (acc + mul_mod(c, monomial_mod(e, vars, p.modulus), p.modulus)) % p.modulus;
    return acc;
}

/// Table j maps (a_p, ..., a_{p+m-1}) to a_{p+m+j}, obtained by stepping the register.
inline std::vector<MfalTable> next_state_mfal(const FeedbackPoly& fp, std::uint64_t limit = kDefaultExhaustionLimit) {
    const std::uint64_t q = fp.q();
    const std::size_t m = fp.degree();
    const std::uint64_t size = nonzero_state_count(q, m, limit) + 1;
    std::vector<MfalTable> tables(m, MfalTable{q, m, std::vector<Elem>(size)});
    for (std::uint64_t idx = 0; idx < size; ++idx) {
        const auto vars = grid_point(idx, q, m);
        LfsrState s{std::vector<Elem>(vars.rbegin(), vars.rend())};
        for (std::size_t j = 0; j < m; ++j) {
            s = step(s, fp).next;
            tables[j].outputs[idx] = s.cells.front();
        }
    }
    return tables;
}

namespace detail {

/// inv_vandermonde[e][k]: coefficient of x^e in the Lagrange basis polynomial of node k,
/// nodes 0..q-1, all mod n. Denominators are products of integers below q, so they are
/// units mod n whenever n is a power of the prime q.
inline std::vector<std::vector<std::uint64_t>> inv_vandermonde(std::uint64_t q, std::uint64_t n) {
    std::vector<std::vector<std::uint64_t>> out(q, std::vector<std::uint64_t>(q, 0));
    for (std::uint64_t k = 0; k < q; ++k) {
        std::vector<std::uint64_t> num{1 % n}; // ascending powers
        std::uint64_t den = 1 % n;
        for (std::uint64_t j = 0; j < q; ++j) {
            if (j == k) continue;
            // multiply num by (x - j)
            std::vector<std::uint64_t> next(num.size() + 1, 0);
            const std::uint64_t minus_j = (n - j % n) % n;
            for (std::size_t d = 0; d < num.size(); ++d) {
                next[d + 1] = (next[d + 1] + num[d]) % n;
                next[d] = (next[d] + mul_mod(num[d], minus_j, n)) % n;
            }
            num = std::move(next);
            const std::uint64_t diff = k > j ? (k - j) % n : (n - (j - k) % n) % n;
            den = mul_mod(den, diff, n);
        }
        const std::uint64_t den_inv = inv_mod(den, n);
        for (std::uint64_t e = 0; e < q; ++e) out[e][k] = mul_mod(num[e], den_inv, n);
    }
    return out;
}

} // namespace detail

/// Grid interpolation: the unique polynomial with exponents 0..q-1 per variable whose
/// evaluation mod `modulus` matches the table at every point.
inline ArithPoly interpolate_mfal(const MfalTable& tbl, std::uint64_t modulus) {
    if (!is_prime(tbl.q)) throw ValidationError("interpolation requires a prime q");
    const std::uint64_t q = tbl.q;
    const std::size_t m = tbl.m;
    if (tbl.outputs.size() != checked_pow(q, m)) throw ValidationError("truth table is incomplete");

    const auto vinv = detail::inv_vandermonde(q, modulus);
    std::vector<std::uint64_t> vals(tbl.outputs.size());
    for (std::size_t i = 0; i < vals.size(); ++i) vals[i] = tbl.outputs[i] % modulus;

    std::vector<std::uint64_t> line(q), mixed(q);
    std::uint64_t stride = 1;
    for (std::size_t u = 0; u < m; ++u, stride *= q) {
        for (std::uint64_t base = 0; base < vals.size(); ++base) {
            if ((base / stride) % q != 0) continue;
            for (std::uint64_t k = 0; k < q; ++k) line[k] = vals[base + k * stride];
            for (std::uint64_t e = 0; e < q; ++e) {
                std::uint64_t acc = 0;
                for (std::uint64_t k = 0; k < q; ++k) acc = (acc + mul_mod(vinv[e][k], line[k], modulus)) % modulus;
                mixed[e] = acc;
            }
            for (std::uint64_t e = 0; e < q; ++e) vals[base + e * stride] = mixed[e];
        }
    }

    ArithPoly p{q, m, modulus, {}};
    for (std::uint64_t idx = 0; idx < vals.size(); ++idx) {
        if (vals[idx] == 0) continue;
        const auto digits = grid_point(idx, q, m);
        p.coeffs.emplace(Exponents(digits.begin(), digits.end()), vals[idx]);
    }
    return p;
}

/// Weighted sum of the m polynomials: function e lands in base-q digit e-1.
inline PackedArithPoly pack(std::span<const ArithPoly> polys) {
    if (polys.empty()) throw ValidationError("nothing to pack");
    const std::uint64_t q = polys.front().q;
    const std::size_t m = polys.front().m;
    const std::uint64_t modulus = polys.front().modulus;
    if (polys.size() != m)
        throw ValidationError("expected " + std::to_string(m) + " polynomials, got " + std::to_string(polys.size()));
    for (const auto& p : polys)
        if (p.q != q || p.m != m || p.modulus != modulus) throw ValidationError("polynomials differ in shape");

    PackedArithPoly out{ArithPoly{q, m, modulus, {}}, {}, 0};
    std::uint64_t w = 1;
    for (std::size_t e = 0; e < m; ++e, w *= q) {
        out.weights.push_back(w);
        for (const auto& [exps, c] : polys[e].coeffs) {
            auto& slot = out.base.coeffs[exps];
            slot = (slot + mul_mod(w % modulus, c, modulus)) % modulus;
        }
    }
    std::erase_if(out.base.coeffs, [](const auto& kv) { return kv.second == 0; });

    for (const auto& [exps, v] : out.base.coeffs) {
        std::uint64_t mono = 1;
        for (std::size_t u = 0; u < m; ++u)
            for (std::uint32_t k = 0; k < exps[u]; ++k)
                if (__builtin_mul_overflow(mono, q - 1, &mono)) throw LimitError("packed value bound overflows 64 bits");
        std::uint64_t term = 0;
        if (__builtin_mul_overflow(v, mono, &term) || __builtin_add_overflow(out.value_bound, term, &out.value_bound))
            throw LimitError("packed value bound overflows 64 bits");
    }
    return out;
}

struct PackedValue {
    std::uint64_t d_value; // raw mod q^m
    std::uint64_t raw;     // plain-integer evaluation
};

inline PackedValue eval_packed_vars(const PackedArithPoly& pp, std::span<const Elem> vars) noexcept {
    std::uint64_t raw = 0;
    for (const auto& [e, v] : pp.base.coeffs) raw += v * monomial(e, vars);
    return {raw % pp.modulus(), raw};
}

inline PackedValue eval_packed(const PackedArithPoly& pp, const Block& state) {
    if (state.elems.size() != pp.m())
        throw ValidationError("state has " + std::to_string(state.elems.size()) + " elements, expected " +
                              std::to_string(pp.m()));
    return eval_packed_vars(pp, ascending_vars(state));
}

/// Base-q digit w of d_value.
inline Elem unmask(std::uint64_t d_value, std::size_t w, std::uint64_t q, std::size_t m) {
    if (w >= m) throw ValidationError("digit index " + std::to_string(w) + " out of range for m = " + std::to_string(m));
    for (std::size_t i = 0; i < w; ++i) d_value /= q;
    return d_value % q;
}

/// Splits a packed value into the next block (digit j is a_{t,j}).
inline Block unpack_block(std::uint64_t d_value, std::uint64_t q, std::size_t m) {
    Block b{std::vector<Elem>(m)};
    for (std::size_t j = 0; j < m; ++j) b.elems[m - 1 - j] = unmask(d_value, j, q, m);
    return b;
}

inline Block lnp_step(const PackedArithPoly& pp, const Block& state) {
    return unpack_block(eval_packed(pp, state).d_value, pp.q(), pp.m());
}

inline std::vector<Elem> generate_lnp_stream(const Block& seed, const PackedArithPoly& pp, std::size_t n) {
    if (seed.elems.size() != pp.m())
        throw ValidationError("seed block has " + std::to_string(seed.elems.size()) + " elements, expected " +
                              std::to_string(pp.m()));
    std::vector<Elem> out;
    out.reserve(n + pp.m());
    Block cur = seed;
    while (out.size() < n) {
        out.insert(out.end(), cur.elems.rbegin(), cur.elems.rend());
        cur = lnp_step(pp, cur);
    }
    out.resize(n);
    return out;
}

/// next_state_mfal -> interpolate mod q^m -> pack.
inline PackedArithPoly compile_lnp(const FeedbackPoly& fp, std::uint64_t limit = kDefaultExhaustionLimit) {
    const auto tables = next_state_mfal(fp, limit);
    const std::uint64_t modulus = checked_pow(fp.q(), fp.degree());
    std::vector<ArithPoly> polys;
    polys.reserve(tables.size());
    for (const auto& t : tables) polys.push_back(interpolate_mfal(t, modulus));
    return pack(polys);
}

} // namespace qprs
