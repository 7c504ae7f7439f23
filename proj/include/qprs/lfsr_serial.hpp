/**************************************************************************
 * lfsr_serial.hpp
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

#include <algorithm>
#include <optional>

#include "gfq.hpp"

namespace qprs {

/// Generating polynomial K(x) = k_0 + k_1 x + ... + k_m x^m over GF(q) and
/// the feedback taps c_i = -k_i mod q that the shift register actually uses.
class FeedbackPoly {
public:
    FeedbackPoly(PrimeField field, std::vector<Elem> coefficients, std::vector<Elem> taps)
        : field_(field), k_(std::move(coefficients)), taps_(std::move(taps)) {}

    const PrimeField& field() const noexcept { return field_; }
    std::uint64_t q() const noexcept { return field_.q(); }
    std::size_t degree() const noexcept { return taps_.size(); }

    /// k_0 .. k_m, ascending.
    const std::vector<Elem>& coefficients() const noexcept { return k_; }

    /// c_0 .. c_{m-1}; the new cell is sum c_i * a_{p+i}.
    const std::vector<Elem>& taps() const noexcept { return taps_; }

    friend bool operator==(const FeedbackPoly&, const FeedbackPoly&) = default;

private:
    PrimeField field_;
    std::vector<Elem> k_;
    std::vector<Elem> taps_;
};

/// Validates K(x) (ascending k_0..k_m) and derives the feedback taps.
inline FeedbackPoly derive_taps(std::span<const std::uint64_t> k, const PrimeField& f) {
    if (k.size() < 2) throw ValidationError("K(x) needs degree >= 1 (at least two coefficients)");
    for (std::size_t i = 0; i < k.size(); ++i)
        if (!f.contains(k[i]))
            throw ValidationError("coefficient k_" + std::to_string(i) + " = " + std::to_string(k[i]) +
                                  " is outside [0, " + std::to_string(f.q()) + ")");
    const std::size_t m = k.size() - 1;
    if (k[m] != 1)
        throw ValidationError("leading coefficient k_" + std::to_string(m) + " = " + std::to_string(k[m]) +
                              " must be 1");
    if (k[0] == 0) throw ValidationError("coefficient k_0 must be nonzero");

    std::vector<Elem> taps(m);
    for (std::size_t i = 0; i < m; ++i) taps[i] = f.neg(k[i]);
    return FeedbackPoly(f, std::vector<Elem>(k.begin(), k.end()), std::move(taps));
}

/// Register contents (a_{p+m-1}, ..., a_{p+1}, a_p): highest index first.
struct LfsrState {
    std::vector<Elem> cells;

    bool degenerate() const noexcept {
        return std::all_of(cells.begin(), cells.end(), [](Elem e) { return e == 0; });
    }

    friend bool operator==(const LfsrState&, const LfsrState&) = default;
};

inline void validate_state(const LfsrState& s, const FeedbackPoly& fp) {
    if (s.cells.size() != fp.degree())
        throw ValidationError("state has " + std::to_string(s.cells.size()) + " cells, expected " +
                              std::to_string(fp.degree()));
    for (std::size_t i = 0; i < s.cells.size(); ++i)
        if (!fp.field().contains(s.cells[i]))
            throw ValidationError("state cell " + std::to_string(i) + " = " + std::to_string(s.cells[i]) +
                                  " is outside the field");
}

struct StepResult {
    LfsrState next;
    Elem emitted;
};

/// Feedback value a_{p+m} for a state; the state is not modified.
inline Elem feedback(const LfsrState& s, const FeedbackPoly& fp) noexcept {
    const auto& f = fp.field();
    const std::size_t m = fp.degree();
    Elem acc = 0;
    // cells[m-1-i] holds a_{p+i}
    for (std::size_t i = 0; i < m; ++i) acc = f.add(acc, f.mul(fp.taps()[i], s.cells[m - 1 - i]));
    return acc;
}

/// One clock: a_{p+m} enters at the high end, a_p leaves as output.
inline StepResult step(const LfsrState& s, const FeedbackPoly& fp) {
    const std::size_t m = fp.degree();
    StepResult out{LfsrState{std::vector<Elem>(m)}, s.cells[m - 1]};
    out.next.cells[0] = feedback(s, fp);
    std::copy(s.cells.begin(), s.cells.end() - 1, out.next.cells.begin() + 1);
    return out;
}

/// First n output elements starting from seed (the seed contents come out first, a_0 first).
inline std::vector<Elem> generate(LfsrState seed, const FeedbackPoly& fp, std::size_t n) {
    validate_state(seed, fp);
    std::vector<Elem> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        auto r = step(seed, fp);
        out.push_back(r.emitted);
        seed = std::move(r.next);
    }
    return out;
}

/// The state (0, ..., 0, 1): a_p = 1, everything else zero.
inline LfsrState unit_state(std::size_t m) {
    LfsrState s{std::vector<Elem>(m, 0)};
    s.cells[m - 1] = 1;
    return s;
}

/// q^m - 1, refusing when it exceeds the exhaustion limit.
inline std::uint64_t nonzero_state_count(std::uint64_t q, std::size_t m, std::uint64_t limit) {
    const std::uint64_t total = checked_pow(q, m);
    if (total - 1 > limit)
        throw LimitError("q^m - 1 = " + std::to_string(total - 1) + " exceeds the exhaustion limit " +
                         std::to_string(limit));
    return total - 1;
}

/// Cycle length of the orbit of the unit state. Since k_0 != 0 the step map is a
/// permutation, so the orbit is a pure cycle of length at most q^m - 1.
inline std::uint64_t period(const FeedbackPoly& fp, std::uint64_t limit = kDefaultExhaustionLimit) {
    const std::uint64_t bound = nonzero_state_count(fp.q(), fp.degree(), limit);
    const LfsrState start = unit_state(fp.degree());
    LfsrState s = start;
    for (std::uint64_t n = 1; n <= bound; ++n) {
        s = step(s, fp).next;
        if (s == start) return n;
    }
    throw SoundnessError("orbit of the unit state did not close within q^m - 1 steps");
}

inline bool is_primitive(const FeedbackPoly& fp, std::uint64_t limit = kDefaultExhaustionLimit) {
    return period(fp, limit) == checked_pow(fp.q(), fp.degree()) - 1;
}

/// First primitive K(x) of degree m in lexicographic order of (k_0, ..., k_{m-1}),
/// least significant coefficient varying fastest.
inline std::optional<FeedbackPoly> find_primitive(const PrimeField& f, std::size_t m,
                                                  std::uint64_t limit = kDefaultExhaustionLimit) {
    if (m == 0) throw ValidationError("degree must be positive");
    nonzero_state_count(f.q(), m, limit);
    std::vector<std::uint64_t> k(m + 1, 0);
    k[m] = 1;
    k[0] = 1;
    while (true) {
        auto fp = derive_taps(k, f);
        if (is_primitive(fp, limit)) return fp;
        std::size_t i = 0;
        for (; i < m; ++i) {
            if (++k[i] < f.q()) break;
            k[i] = (i == 0) ? 1 : 0;
        }
        if (i == m) return std::nullopt;
    }
}

} // namespace qprs
