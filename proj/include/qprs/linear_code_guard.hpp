/**************************************************************************
 * linear_code_guard.hpp
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

#include "block_parallel.hpp"

namespace qprs {

/// Parity rules over the r check symbols of a separable q-ary code.
///
/// p_mat acts on the information symbols of the current block; c_rows = p_mat * G_Inf
/// computes the same check symbols directly from the previous block, so information
/// and checks come out of one generating matrix G_Gen = [G_Inf ; c_rows].
struct CheckMatrix {
    FieldMatrix p_mat;
    FieldMatrix c_rows;

    std::size_t r() const noexcept { return p_mat.rows(); }

    /// G_Gen: information rows stacked over check rows.
    FieldMatrix stacked(const BlockMatrix& bm) const {
        auto entries = bm.g_inf().entries();
        entries.insert(entries.end(), c_rows.entries().begin(), c_rows.entries().end());
        return FieldMatrix(bm.m() + r(), bm.m(), std::move(entries));
    }

    friend bool operator==(const CheckMatrix&, const CheckMatrix&) = default;
};

struct CodedBlock {
    Block info;
    std::vector<Elem> checks;

    friend bool operator==(const CodedBlock&, const CodedBlock&) = default;
};

/// r = 1: a single sum check. r > 1: Vandermonde rows alpha_j^z with alpha_j = j + 1,
/// which needs m distinct nonzero points, i.e. q - 1 >= m.
inline FieldMatrix build_check_matrix(const PrimeField& f, std::size_t m, std::size_t r) {
    if (m == 0) throw ValidationError("block length must be positive");
    if (r == 0) throw ValidationError("at least one check symbol is required");
    if (r > 1 && f.q() - 1 < m)
        throw ValidationError("unsupported configuration: Vandermonde check rows need q - 1 >= m (q = " +
                              std::to_string(f.q()) + ", m = " + std::to_string(m) + ")");
    FieldMatrix p(r, m);
    for (std::size_t z = 0; z < r; ++z)
        for (std::size_t j = 0; j < m; ++j) p(z, j) = f.pow(j + 1, z);
    return p;
}

inline CheckMatrix build_ggen(const BlockMatrix& bm, FieldMatrix p_mat) {
    if (p_mat.cols() != bm.m())
        throw ValidationError("check matrix has " + std::to_string(p_mat.cols()) + " columns, expected " +
                              std::to_string(bm.m()));
    detail::require_canonical(p_mat, bm.field(), "check matrix");
    for (std::size_t j = 0; j < p_mat.cols(); ++j) {
        bool any = false;
        for (std::size_t z = 0; z < p_mat.rows(); ++z) any = any || p_mat(z, j) != 0;
        if (!any)
            throw ValidationError("check matrix column " + std::to_string(j) +
                                  " is all zero; that symbol would be unprotected");
    }
    auto c_rows = mat_mul(p_mat, bm.g_inf(), bm.field());
    return CheckMatrix{std::move(p_mat), std::move(c_rows)};
}

inline CodedBlock encode_block(const BlockMatrix& bm, const CheckMatrix& cm, const Block& prev) {
    return CodedBlock{Block{mat_vec(bm.g_inf(), prev.elems, bm.field())}, mat_vec(cm.c_rows, prev.elems, bm.field())};
}

/// p_mat * info - checks (mod q). All zero means the block is consistent.
struct Syndrome {
    std::vector<Elem> values;

    bool clean() const noexcept {
        return std::all_of(values.begin(), values.end(), [](Elem e) { return e == 0; });
    }
};

inline Syndrome check_block(const CodedBlock& cb, const FieldMatrix& p_mat, const PrimeField& f) {
    if (cb.checks.size() != p_mat.rows())
        throw ValidationError("coded block has " + std::to_string(cb.checks.size()) + " check symbols, expected " +
                              std::to_string(p_mat.rows()));
    auto s = mat_vec(p_mat, cb.info.elems, f);
    for (std::size_t z = 0; z < s.size(); ++z) s[z] = f.sub(s[z], cb.checks[z]);
    return Syndrome{std::move(s)};
}

} // namespace qprs
