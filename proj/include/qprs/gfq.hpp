/**************************************************************************
 * gfq.hpp
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

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace qprs {

using Elem = std::uint64_t;

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Input violates a documented precondition (bad coefficient, bad shape, ...).
class ValidationError : public Error {
public:
    using Error::Error;
};

/// A computation would exceed a configured size limit or the integer range.
class LimitError : public Error {
public:
    using Error::Error;
};

/// Internal consistency check failed; indicates a bug, not bad input.
class SoundnessError : public Error {
public:
    using Error::Error;
};

/// Default guard for exhaustive enumerations over q^m states.
inline constexpr std::uint64_t kDefaultExhaustionLimit = std::uint64_t{1} << 24;

constexpr bool is_prime(std::uint64_t n) noexcept {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    for (std::uint64_t d = 3; d <= n / d; d += 2)
        if (n % d == 0) return false;
    return true;
}

inline std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t n) noexcept {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % n);
}

/// Inverse of a modulo n (n need not be prime). Throws if gcd(a, n) != 1.
inline std::uint64_t inv_mod(std::uint64_t a, std::uint64_t n) {
    if (n == 1) return 0;
    __int128 old_r = static_cast<__int128>(a % n), r = n;
    __int128 old_s = 1, s = 0;
    while (r != 0) {
        const __int128 quot = old_r / r;
        __int128 tmp = old_r - quot * r;
        old_r = r;
        r = tmp;
        tmp = old_s - quot * s;
        old_s = s;
        s = tmp;
    }
    if (old_r != 1)
        throw ValidationError("no inverse: " + std::to_string(a) + " is not a unit mod " + std::to_string(n));
    __int128 res = old_s % static_cast<__int128>(n);
    if (res < 0) res += n;
    return static_cast<std::uint64_t>(res);
}

/// q^m with overflow detection.
inline std::uint64_t checked_pow(std::uint64_t base, std::size_t exp) {
    std::uint64_t out = 1;
    for (std::size_t i = 0; i < exp; ++i) {
        if (base != 0 && out > std::numeric_limits<std::uint64_t>::max() / base)
            throw LimitError("integer overflow computing " + std::to_string(base) + "^" + std::to_string(exp));
        out *= base;
    }
    return out;
}

/// The prime field GF(q). Every value handed out is canonical in [0, q).
class PrimeField {
public:
    explicit PrimeField(std::uint64_t q) : q_(q) {
        if (q > std::numeric_limits<std::uint32_t>::max())
            throw ValidationError("field modulus " + std::to_string(q) + " exceeds 32 bits");
        if (!is_prime(q))
            throw ValidationError("field modulus " + std::to_string(q) + " is not prime");
    }

    std::uint64_t q() const noexcept { return q_; }
    bool contains(std::uint64_t x) const noexcept { return x < q_; }

    Elem add(Elem x, Elem y) const noexcept { return (x + y) % q_; }
    Elem sub(Elem x, Elem y) const noexcept { return (x + q_ - y) % q_; }
    Elem neg(Elem x) const noexcept { return (q_ - x) % q_; }
    Elem mul(Elem x, Elem y) const noexcept { return x * y % q_; }

    Elem inv(Elem x) const {
        if (x % q_ == 0) throw ValidationError("no inverse of 0 in GF(" + std::to_string(q_) + ")");
        return pow(x, q_ - 2);
    }

    Elem pow(Elem x, std::uint64_t e) const noexcept {
        Elem acc = 1 % q_;
        x %= q_;
        while (e != 0) {
            if (e & 1) acc = mul(acc, x);
            x = mul(x, x);
            e >>= 1;
        }
        return acc;
    }

    friend bool operator==(const PrimeField&, const PrimeField&) = default;

private:
    std::uint64_t q_;
};

/// Dense row-major matrix of field elements. The field is supplied per operation.
class FieldMatrix {
public:
    FieldMatrix(std::size_t rows, std::size_t cols) : FieldMatrix(rows, cols, std::vector<Elem>(rows * cols, 0)) {}

    FieldMatrix(std::size_t rows, std::size_t cols, std::vector<Elem> entries)
        : rows_(rows), cols_(cols), data_(std::move(entries)) {
        if (rows == 0 || cols == 0) throw ValidationError("matrix dimensions must be positive");
        if (data_.size() != rows * cols)
            throw ValidationError("matrix entry count " + std::to_string(data_.size()) + " does not match " +
                                  std::to_string(rows) + "x" + std::to_string(cols));
    }

    static FieldMatrix from_rows(const std::vector<std::vector<Elem>>& rows) {
        if (rows.empty() || rows.front().empty()) throw ValidationError("matrix dimensions must be positive");
        std::vector<Elem> flat;
        flat.reserve(rows.size() * rows.front().size());
        for (const auto& row : rows) {
            if (row.size() != rows.front().size()) throw ValidationError("ragged matrix rows");
            flat.insert(flat.end(), row.begin(), row.end());
        }
        return FieldMatrix(rows.size(), rows.front().size(), std::move(flat));
    }

    static FieldMatrix identity(std::size_t n) {
        FieldMatrix id(n, n);
        for (std::size_t i = 0; i < n; ++i) id(i, i) = 1;
        return id;
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool square() const noexcept { return rows_ == cols_; }

    Elem& operator()(std::size_t r, std::size_t c) noexcept { return data_[r * cols_ + c]; }
    Elem operator()(std::size_t r, std::size_t c) const noexcept { return data_[r * cols_ + c]; }

    std::span<const Elem> row(std::size_t r) const noexcept { return {data_.data() + r * cols_, cols_}; }
    const std::vector<Elem>& entries() const noexcept { return data_; }

    std::vector<std::vector<Elem>> to_rows() const {
        std::vector<std::vector<Elem>> out;
        for (std::size_t r = 0; r < rows_; ++r) out.emplace_back(row(r).begin(), row(r).end());
        return out;
    }

    bool canonical_in(const PrimeField& f) const noexcept {
        for (Elem e : data_)
            if (!f.contains(e)) return false;
        return true;
    }

    friend bool operator==(const FieldMatrix&, const FieldMatrix&) = default;

private:
    std::size_t rows_;
    std::size_t cols_;
    std::vector<Elem> data_;
};

namespace detail {

inline void require_canonical(const FieldMatrix& m, const PrimeField& f, const char* what) {
    if (!m.canonical_in(f))
        throw ValidationError(std::string(what) + " has entries outside [0, " + std::to_string(f.q()) + ")");
}

} // namespace detail

inline FieldMatrix mat_mul(const FieldMatrix& a, const FieldMatrix& b, const PrimeField& f) {
    if (a.cols() != b.rows())
        throw ValidationError("dimension mismatch: " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                              " times " + std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
    detail::require_canonical(a, f, "left operand");
    detail::require_canonical(b, f, "right operand");
    FieldMatrix out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) {
            Elem acc = 0;
            for (std::size_t k = 0; k < a.cols(); ++k) acc = f.add(acc, f.mul(a(i, k), b(k, j)));
            out(i, j) = acc;
        }
    return out;
}

/// Matrix-vector product mod q. Hot path: entries are assumed canonical.
inline std::vector<Elem> mat_vec(const FieldMatrix& a, std::span<const Elem> v, const PrimeField& f) {
    if (a.cols() != v.size())
        throw ValidationError("dimension mismatch: " + std::to_string(a.cols()) + " columns vs vector of " +
                              std::to_string(v.size()));
    std::vector<Elem> out(a.rows(), 0);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        Elem acc = 0;
        for (std::size_t k = 0; k < a.cols(); ++k) acc = f.add(acc, f.mul(a(i, k), v[k]));
        out[i] = acc;
    }
    return out;
}

/// a^e mod q by square-and-multiply; a^0 = I.
inline FieldMatrix mat_pow(FieldMatrix a, std::uint64_t e, const PrimeField& f) {
    if (!a.square())
        throw ValidationError("matrix power needs a square matrix, got " + std::to_string(a.rows()) + "x" +
                              std::to_string(a.cols()));
    detail::require_canonical(a, f, "matrix");
    FieldMatrix acc = FieldMatrix::identity(a.rows());
    while (e != 0) {
        if (e & 1) acc = mat_mul(acc, a, f);
        e >>= 1;
        if (e != 0) a = mat_mul(a, a, f);
    }
    return acc;
}

} // namespace qprs
