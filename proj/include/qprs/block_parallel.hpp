/**************************************************************************
 * block_parallel.hpp
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

#include "lfsr_serial.hpp"

namespace qprs {

/// m consecutive sequence elements, highest index first: (a_{t,m-1}, ..., a_{t,0}).
struct Block {
    std::vector<Elem> elems;

    static Block from_state(const LfsrState& s) { return Block{s.cells}; }
    LfsrState to_state() const { return LfsrState{elems}; }

    friend bool operator==(const Block&, const Block&) = default;
};

/// Advances the register one step when applied to a descending state vector.
inline FieldMatrix companion(const FeedbackPoly& fp) {
    const std::size_t m = fp.degree();
    FieldMatrix c(m, m);
    for (std::size_t j = 0; j < m; ++j) c(0, j) = fp.taps()[m - 1 - j];
    for (std::size_t i = 1; i < m; ++i) c(i, i - 1) = 1;
    return c;
}

/// Information matrix: the m-th power of the companion matrix. One application
/// yields the next m elements of the sequence at once.
class BlockMatrix {
public:
    BlockMatrix(PrimeField field, FieldMatrix g_inf) : field_(field), g_inf_(std::move(g_inf)) {
        if (!g_inf_.square()) throw ValidationError("information matrix must be square");
        detail::require_canonical(g_inf_, field_, "information matrix");
    }

    const PrimeField& field() const noexcept { return field_; }
    std::size_t m() const noexcept { return g_inf_.rows(); }
    const FieldMatrix& g_inf() const noexcept { return g_inf_; }

    friend bool operator==(const BlockMatrix&, const BlockMatrix&) = default;

private:
    PrimeField field_;
    FieldMatrix g_inf_;
};

inline BlockMatrix build_ginf(const FeedbackPoly& fp) {
    return BlockMatrix(fp.field(), mat_pow(companion(fp), fp.degree(), fp.field()));
}

inline Block block_step(const BlockMatrix& bm, const Block& prev) {
    return Block{mat_vec(bm.g_inf(), prev.elems, bm.field())};
}

/// Blocks A_1 .. A_t following the seed block A_0 (the seed itself is not included).
inline std::vector<Block> generate_blocks(const Block& seed, const BlockMatrix& bm, std::size_t t_count) {
    if (seed.elems.size() != bm.m())
        throw ValidationError("seed block has " + std::to_string(seed.elems.size()) + " elements, expected " +
                              std::to_string(bm.m()));
    std::vector<Block> out;
    out.reserve(t_count);
    Block cur = seed;
    for (std::size_t t = 0; t < t_count; ++t) {
        cur = block_step(bm, cur);
        out.push_back(cur);
    }
    return out;
}

/// Sequence order: each block read lowest index first.
inline std::vector<Elem> flatten(std::span<const Block> blocks) {
    std::vector<Elem> out;
    for (const auto& b : blocks) out.insert(out.end(), b.elems.rbegin(), b.elems.rend());
    return out;
}

/// First n sequence elements produced block-wise: seed contents, then A_1, A_2, ...
inline std::vector<Elem> generate_block_stream(const Block& seed, const BlockMatrix& bm, std::size_t n) {
    const std::size_t m = bm.m();
    if (seed.elems.size() != m)
        throw ValidationError("seed block has " + std::to_string(seed.elems.size()) + " elements, expected " +
                              std::to_string(m));
    std::vector<Block> blocks{seed};
    const std::size_t needed = (n + m - 1) / m;
    if (needed > 1) {
        auto rest = generate_blocks(seed, bm, needed - 1);
        blocks.insert(blocks.end(), rest.begin(), rest.end());
    }
    auto out = flatten(blocks);
    out.resize(n);
    return out;
}

} // namespace qprs
