/**************************************************************************
 * fault_lab.hpp
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
#include <atomic>
#include <exception>
#include <map>
#include <mutex>
#include <random>
#include <thread>

#include "suite.hpp"

// Fault injection against every generator backend and guard.
//
// A trial runs a generator for a fixed number of steps from a start block while
// one or more FaultSpecs corrupt an internal value. The faulty trace is compared
// against a fault-free run of the same backend. A step of the serial backend
// emits one element; a step of every other backend emits the next block.

namespace qprs {

enum class FaultTarget { register_cell, residue_channel, poly_coefficient, linear_block_symbol, output_stream };
enum class FaultModel { set_to, add_delta };

inline constexpr FaultTarget kAllTargets[] = {FaultTarget::register_cell, FaultTarget::residue_channel,
                                              FaultTarget::poly_coefficient, FaultTarget::linear_block_symbol,
                                              FaultTarget::output_stream};

inline std::string_view to_string(FaultTarget t) noexcept {
    switch (t) {
    case FaultTarget::register_cell: return "register-cell";
    case FaultTarget::residue_channel: return "residue-channel";
    case FaultTarget::poly_coefficient: return "poly-coefficient";
    case FaultTarget::linear_block_symbol: return "linear-block-symbol";
    case FaultTarget::output_stream: return "output-stream";
    }
    return "?";
}

inline FaultTarget parse_fault_target(std::string_view name) {
    for (auto t : kAllTargets)
        if (to_string(t) == name) return t;
    throw ValidationError("unknown fault target '" + std::string(name) + "'");
}

inline std::string_view to_string(FaultModel m) noexcept { return m == FaultModel::set_to ? "set-to" : "add-delta"; }

inline FaultModel parse_fault_model(std::string_view name) {
    if (name == "set-to") return FaultModel::set_to;
    if (name == "add-delta") return FaultModel::add_delta;
    throw ValidationError("unknown fault model '" + std::string(name) + "'");
}

/// Either a single step or every step with probability rho.
struct FaultTiming {
    std::optional<std::size_t> at_step;
    double rho = 0.0;

    static FaultTiming at(std::size_t step) { return {step, 0.0}; }
    static FaultTiming every(double rho) { return {std::nullopt, rho}; }
};

struct FaultSpec {
    FaultTarget target;
    FaultModel model;
    std::uint64_t magnitude;
    std::size_t location;
    FaultTiming timing;
};

inline bool compatible(FaultTarget t, Backend b) noexcept {
    switch (t) {
    case FaultTarget::register_cell:
    case FaultTarget::output_stream: return true;
    case FaultTarget::residue_channel: return b == Backend::guarded_rns;
    case FaultTarget::poly_coefficient: return b == Backend::lnp || b == Backend::guarded_rns;
    case FaultTarget::linear_block_symbol: return b == Backend::coded_block;
    }
    return false;
}

inline std::size_t step_width(const GeneratorSuite& s, Backend b) noexcept { return b == Backend::serial ? 1 : s.m(); }

/// Dense monomial count q^m: poly-coefficient locations cover absent (zero) coefficients too.
inline std::uint64_t monomial_count(const GeneratorSuite& s) { return checked_pow(s.field().q(), s.m()); }

/// Number of valid locations for a target on a backend.
inline std::uint64_t location_count(const GeneratorSuite& s, Backend b, FaultTarget t) {
    switch (t) {
    case FaultTarget::register_cell: return s.m();
    case FaultTarget::output_stream: return step_width(s, b);
    case FaultTarget::residue_channel: return s.rns.psi();
    case FaultTarget::poly_coefficient: return b == Backend::guarded_rns ? s.rns.psi() * monomial_count(s) : monomial_count(s);
    case FaultTarget::linear_block_symbol: return s.m() + s.cm.r();
    }
    return 0;
}

/// Modulus of the value a fault at this location corrupts.
inline std::uint64_t value_modulus(const GeneratorSuite& s, Backend b, FaultTarget t, std::size_t location) {
    switch (t) {
    case FaultTarget::register_cell:
    case FaultTarget::output_stream:
    case FaultTarget::linear_block_symbol: return s.field().q();
    case FaultTarget::residue_channel: return s.rns.moduli()[location];
    case FaultTarget::poly_coefficient:
        return b == Backend::guarded_rns ? s.rns.moduli()[location / monomial_count(s)] : s.pp.modulus();
    }
    return 0;
}

inline void validate_fault(const GeneratorSuite& s, Backend b, const FaultSpec& f) {
    if (!compatible(f.target, b))
        throw ValidationError("fault target " + std::string(to_string(f.target)) + " does not apply to backend " +
                              std::string(to_string(b)));
    if (f.location >= location_count(s, b, f.target))
        throw ValidationError("fault location " + std::to_string(f.location) + " out of range for " +
                              std::string(to_string(f.target)));
    const std::uint64_t mod = value_modulus(s, b, f.target, f.location);
    if (f.model == FaultModel::add_delta && f.magnitude % mod == 0)
        throw ValidationError("add-delta fault needs a nonzero delta mod " + std::to_string(mod));
    if (f.model == FaultModel::set_to && f.magnitude >= mod)
        throw ValidationError("set-to value " + std::to_string(f.magnitude) + " is outside [0, " + std::to_string(mod) + ")");
    if (!f.timing.at_step && !(f.timing.rho >= 0.0 && f.timing.rho <= 1.0))
        throw ValidationError("fault probability must lie in [0, 1]");
}

struct StepRecord {
    std::vector<Elem> emitted;
    bool activated = false;
    GuardStatus status = GuardStatus::ok;
    std::optional<CorrectionKind> correction;
};

namespace detail {

/// Uniform double in [0, 1) from the top 53 bits; portable across standard libraries.
inline double unit_double(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

/// Uniform integer in [0, n) by rejection; portable across standard libraries.
inline std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t n) {
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % n;
    std::uint64_t x;
    do {
        x = rng();
    } while (x >= limit);
    return x % n;
}

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t corrupt(std::uint64_t value, const FaultSpec& f, std::uint64_t mod) {
    return f.model == FaultModel::set_to ? f.magnitude : (value + f.magnitude % mod) % mod;
}

} // namespace detail

/// A generator with faults wired into it. Deterministic given the trial seed.
class FaultyGenerator {
public:
    FaultyGenerator(const GeneratorSuite& suite, Backend backend, std::vector<FaultSpec> faults, std::uint64_t trial_seed,
                    bool correct, Block start)
        : suite_(&suite), backend_(backend), faults_(std::move(faults)), rng_(trial_seed), correct_(correct),
          cur_(std::move(start)) {
        validate_state(cur_.to_state(), suite.fp);
        for (const auto& f : faults_) validate_fault(suite, backend, f);
    }

    Backend backend() const noexcept { return backend_; }
    const Block& current() const noexcept { return cur_; }

    StepRecord next() {
        StepRecord rec;
        // Decide which faults fire on this step; rho draws happen in spec order.
        std::vector<const FaultSpec*> live;
        for (const auto& f : faults_) {
            const bool fire = f.timing.at_step ? *f.timing.at_step == step_ : detail::unit_double(rng_) < f.timing.rho;
            if (fire) live.push_back(&f);
        }
        rec.activated = !live.empty();
        auto active = [&](FaultTarget t) {
            std::vector<const FaultSpec*> out;
            for (auto* f : live)
                if (f->target == t) out.push_back(f);
            return out;
        };

        const auto& s = *suite_;
        const auto& field = s.field();
        const std::size_t m = s.m();
        for (auto* f : active(FaultTarget::register_cell)) {
            auto& cell = cur_.elems[f->location];
            cell = detail::corrupt(cell, *f, field.q());
        }

        switch (backend_) {
        case Backend::serial: {
            auto r = step(cur_.to_state(), s.fp);
            rec.emitted = {r.emitted};
            cur_ = Block::from_state(r.next);
            break;
        }
        case Backend::block:
            cur_ = block_step(s.bm, cur_);
            rec.emitted = {cur_.elems.rbegin(), cur_.elems.rend()};
            break;
        case Backend::lnp: {
            const auto vars = ascending_vars(cur_);
            std::uint64_t d = eval_packed_vars(s.pp, vars).d_value;
            const std::uint64_t mod = s.pp.modulus();
            for (auto* f : active(FaultTarget::poly_coefficient)) {
                const auto e = exponents_at(f->location);
                const std::uint64_t old = lookup(s.pp.base.coeffs, e);
                const std::uint64_t diff = (detail::corrupt(old, *f, mod) + mod - old) % mod;
                d = (d + mul_mod(diff, monomial_mod(e, vars, mod), mod)) % mod;
            }
            cur_ = unpack_block(d, field.q(), m);
            rec.emitted = {cur_.elems.rbegin(), cur_.elems.rend()};
            break;
        }
        case Backend::guarded_rns: {
            const auto vars = ascending_vars(cur_);
            auto cw = eval_channels(s.tables, cur_, s.rns);
            const std::uint64_t dense = monomial_count(s);
            for (auto* f : active(FaultTarget::poly_coefficient)) {
                const std::size_t ch = f->location / dense;
                const std::uint64_t mod = s.rns.moduli()[ch];
                const auto e = exponents_at(f->location % dense);
                const std::uint64_t old = channel_coeff(ch, e);
                const std::uint64_t diff = (detail::corrupt(old, *f, mod) + mod - old) % mod;
                cw.residues[ch] = (cw.residues[ch] + mul_mod(diff, monomial_mod(e, vars, mod), mod)) % mod;
            }
            for (auto* f : active(FaultTarget::residue_channel))
                cw.residues[f->location] = detail::corrupt(cw.residues[f->location], *f, s.rns.moduli()[f->location]);
            auto g = guard_codeword(cw, s.pp, s.rns, correct_);
            rec.status = g.status;
            if (g.correction) rec.correction = g.correction->kind;
            cur_ = std::move(g.block);
            rec.emitted = {cur_.elems.rbegin(), cur_.elems.rend()};
            break;
        }
        case Backend::coded_block: {
            auto cb = encode_block(s.bm, s.cm, cur_);
            for (auto* f : active(FaultTarget::linear_block_symbol)) {
                auto& sym = f->location < m ? cb.info.elems[f->location] : cb.checks[f->location - m];
                sym = detail::corrupt(sym, *f, field.q());
            }
            if (!check_block(cb, s.cm.p_mat, field).clean()) rec.status = GuardStatus::detected;
            cur_ = std::move(cb.info);
            rec.emitted = {cur_.elems.rbegin(), cur_.elems.rend()};
            break;
        }
        }

        for (auto* f : active(FaultTarget::output_stream)) {
            auto& e = rec.emitted[f->location];
            e = detail::corrupt(e, *f, field.q());
        }
        ++step_;
        return rec;
    }

private:
    Exponents exponents_at(std::uint64_t dense_index) const {
        const auto digits = grid_point(dense_index, suite_->field().q(), suite_->m());
        return Exponents(digits.begin(), digits.end());
    }

    static std::uint64_t lookup(const std::map<Exponents, std::uint64_t>& coeffs, const Exponents& e) {
        const auto it = coeffs.find(e);
        return it == coeffs.end() ? 0 : it->second;
    }

    std::uint64_t channel_coeff(std::size_t ch, const Exponents& e) const {
        const auto& t = suite_->tables;
        for (std::size_t i = 0; i < t.exponents.size(); ++i)
            if (t.exponents[i] == e) return t.residues[ch][i];
        return 0;
    }

    const GeneratorSuite* suite_;
    Backend backend_;
    std::vector<FaultSpec> faults_;
    std::mt19937_64 rng_;
    bool correct_;
    Block cur_;
    std::size_t step_ = 0;
};

/// Wires faults into a generator of the given backend. Throws ValidationError for
/// incompatible target/backend pairs or malformed specs.
inline FaultyGenerator inject(const GeneratorSuite& suite, Backend backend, std::vector<FaultSpec> faults,
                              std::uint64_t trial_seed, Block start, bool correct = false) {
    return FaultyGenerator(suite, backend, std::move(faults), trial_seed, correct, std::move(start));
}

struct Trial {
    Block start;
    std::vector<FaultSpec> faults;
    std::size_t steps = 1;
    std::uint64_t seed = 0;
};

struct TrialOutcome {
    bool activated = false;
    std::size_t first_activation = 0;
    bool alarm = false;
    std::size_t first_alarm = 0;
    bool halted = false;         // an alarm that was not corrected stops the generator
    bool any_correction = false;
    bool ambiguous = false;
    bool output_differs = false;
    bool guard_passed_all = true;

    friend bool operator==(const TrialOutcome&, const TrialOutcome&) = default;
};

inline TrialOutcome run_trial(const GeneratorSuite& suite, Backend backend, const Trial& trial, bool correct) {
    auto faulty = inject(suite, backend, trial.faults, trial.seed, trial.start, correct);
    auto clean = inject(suite, backend, {}, trial.seed, trial.start, false);
    TrialOutcome out;
    for (std::size_t t = 0; t < trial.steps; ++t) {
        const auto rec = faulty.next();
        const auto ref = clean.next();
        if (ref.status != GuardStatus::ok) throw SoundnessError("guard fired on the fault-free reference run");
        if (rec.activated && !out.activated) {
            out.activated = true;
            out.first_activation = t;
        }
        if (rec.status != GuardStatus::ok) {
            out.guard_passed_all = false;
            if (!out.alarm) {
                out.alarm = true;
                out.first_alarm = t;
            }
            if (rec.correction == CorrectionKind::ambiguous) out.ambiguous = true;
            if (rec.status == GuardStatus::corrected) out.any_correction = true;
        }
        if (rec.emitted != ref.emitted) out.output_differs = true;
        if (rec.status == GuardStatus::detected) {
            out.halted = true;
            break;
        }
    }
    return out;
}

struct ClassCounts {
    std::uint64_t injected = 0;
    std::uint64_t detected = 0;
    std::uint64_t missed = 0;
    std::uint64_t masked = 0;       // activated, no alarm, output unaffected
    std::uint64_t corrected = 0;    // subset of detected: output restored exactly
    std::uint64_t ambiguous = 0;    // subset of detected: projection found several candidates
    std::uint64_t miscorrected = 0; // subset of detected: corrected but output still wrong

    friend bool operator==(const ClassCounts&, const ClassCounts&) = default;
};

struct DetectionReport {
    std::string config_digest;
    std::string backend;
    bool correction = false;
    std::uint64_t trials = 0;
    std::uint64_t idle = 0; // trials in which no fault fired
    ClassCounts totals;
    std::map<std::uint64_t, std::uint64_t> detection_latency;
    std::map<std::string, ClassCounts> by_class;

    friend bool operator==(const DetectionReport&, const DetectionReport&) = default;
};

namespace detail {

inline void tally(ClassCounts& c, const TrialOutcome& o) {
    ++c.injected;
    if (o.alarm) {
        ++c.detected;
        if (o.ambiguous) ++c.ambiguous;
        if (!o.halted && o.any_correction) {
            if (o.output_differs)
                ++c.miscorrected;
            else
                ++c.corrected;
        }
    } else if (o.output_differs) {
        ++c.missed;
    } else {
        ++c.masked;
    }
}

/// A miss must be reproducible, pass every guard check, and really change the output.
inline void verify_miss(const GeneratorSuite& suite, Backend backend, const Trial& trial, bool correct,
                        const TrialOutcome& first) {
    const auto replay = run_trial(suite, backend, trial, correct);
    if (!(replay == first)) throw SoundnessError("missed fault did not replay identically");
    if (!replay.guard_passed_all || !replay.output_differs)
        throw SoundnessError("missed fault is not an undetectable-by-construction pattern");
}

inline DetectionReport aggregate(const GeneratorSuite& suite, Backend backend, bool correct,
                                 const std::vector<Trial>& trials, unsigned threads) {
    std::vector<TrialOutcome> outcomes(trials.size());
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(trials.size(), 1)));
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mu;
    auto worker = [&] {
        for (std::size_t i; (i = next.fetch_add(1)) < trials.size();) {
            try {
                outcomes[i] = run_trial(suite, backend, trials[i], correct);
                const auto& o = outcomes[i];
                if (o.activated && !o.alarm && o.output_differs) verify_miss(suite, backend, trials[i], correct, o);
            } catch (...) {
                std::lock_guard lock(failure_mu);
                if (!failure) failure = std::current_exception();
                next = trials.size();
            }
        }
    };
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    if (failure) std::rethrow_exception(failure);

    DetectionReport r;
    r.config_digest = suite_digest(suite);
    r.backend = std::string(to_string(backend));
    r.correction = correct;
    r.trials = trials.size();
    for (std::size_t i = 0; i < trials.size(); ++i) {
        const auto& o = outcomes[i];
        if (!o.activated) {
            ++r.idle;
            continue;
        }
        tally(r.totals, o);
        // attributed to the first fault spec of the trial
        tally(r.by_class[std::string(to_string(trials[i].faults.front().target))], o);
        if (o.alarm) ++r.detection_latency[o.first_alarm - o.first_activation];
    }
    return r;
}

} // namespace detail

/// Random fault law for run_campaign.
struct FaultDistribution {
    std::map<FaultTarget, double> weights;
    FaultModel model = FaultModel::add_delta;
    std::optional<std::uint64_t> magnitude; // nullopt: uniform over valid values
    double rho = 0.0;                       // 0: one activation at a uniform step; > 0: every step w.p. rho
    std::size_t steps = 1;
    std::size_t faults_per_trial = 1;
};

inline void validate_distribution(const GeneratorSuite& s, Backend b, const FaultDistribution& d) {
    double total = 0;
    for (const auto& [t, w] : d.weights) {
        if (!(w >= 0.0)) throw ValidationError("fault target weights must be nonnegative");
        if (w > 0 && !compatible(t, b))
            throw ValidationError("fault target " + std::string(to_string(t)) + " does not apply to backend " +
                                  std::string(to_string(b)));
        total += w;
    }
    if (!(total > 0.0)) throw ValidationError("fault target weights are all zero");
    if (!(d.rho >= 0.0 && d.rho <= 1.0)) throw ValidationError("rho must lie in [0, 1]");
    if (d.steps == 0) throw ValidationError("steps per trial must be positive");
    if (d.faults_per_trial == 0) throw ValidationError("faults per trial must be positive");
    if (d.magnitude && d.model == FaultModel::add_delta && *d.magnitude == 0)
        throw ValidationError("add-delta magnitude must be nonzero");
    (void)s;
}

/// Trial i draws from mt19937_64 seeded with splitmix64(master_seed + i).
inline Trial draw_trial(const GeneratorSuite& s, Backend b, const FaultDistribution& d, std::uint64_t master_seed,
                        std::uint64_t index) {
    const std::uint64_t seed = detail::splitmix64(detail::splitmix64(master_seed) ^ index);
    std::mt19937_64 rng(seed);
    Trial trial;
    trial.steps = d.steps;
    trial.seed = detail::splitmix64(seed);
    trial.start.elems.resize(s.m());
    for (auto& e : trial.start.elems) e = detail::uniform_below(rng, s.field().q());

    double total = 0;
    for (const auto& [t, w] : d.weights) total += w;
    for (std::size_t k = 0; k < d.faults_per_trial; ++k) {
        FaultSpec f{};
        const double pick = detail::unit_double(rng) * total;
        double acc = 0;
        // rounding at the top end falls through to the last positive weight
        for (const auto& [t, w] : d.weights) {
            if (w <= 0) continue;
            f.target = t;
            acc += w;
            if (pick < acc) break;
        }
        f.model = d.model;
        f.location = detail::uniform_below(rng, location_count(s, b, f.target));
        const std::uint64_t mod = value_modulus(s, b, f.target, f.location);
        if (d.magnitude)
            f.magnitude = d.model == FaultModel::set_to ? *d.magnitude % mod : *d.magnitude;
        else
            f.magnitude = d.model == FaultModel::set_to ? detail::uniform_below(rng, mod) : 1 + detail::uniform_below(rng, mod - 1);
        f.timing = d.rho > 0 ? FaultTiming::every(d.rho) : FaultTiming::at(detail::uniform_below(rng, d.steps));
        trial.faults.push_back(f);
    }
    return trial;
}

/// Deterministic given (suite, backend, distribution, trials, master_seed) regardless of threads.
inline DetectionReport run_campaign(const GeneratorSuite& s, Backend backend, bool correct, const FaultDistribution& d,
                                    std::size_t trials, std::uint64_t master_seed, unsigned threads = 0) {
    validate_distribution(s, backend, d);
    std::vector<Trial> all;
    all.reserve(trials);
    for (std::size_t i = 0; i < trials; ++i) all.push_back(draw_trial(s, backend, d, master_seed, i));
    return detail::aggregate(s, backend, correct, all, threads);
}

/// Every start block x every location x every admissible magnitude, one activation at step 0.
inline DetectionReport run_exhaustive_campaign(const GeneratorSuite& s, Backend backend, FaultTarget target, FaultModel model,
                                               bool correct, std::size_t steps = 1, unsigned threads = 0) {
    if (!compatible(target, backend))
        throw ValidationError("fault target " + std::string(to_string(target)) + " does not apply to backend " +
                              std::string(to_string(backend)));
    if (steps == 0) throw ValidationError("steps per trial must be positive");
    const std::uint64_t states = monomial_count(s);
    const std::uint64_t locations = location_count(s, backend, target);
    std::vector<Trial> all;
    for (std::uint64_t st = 0; st < states; ++st) {
        const auto vars = grid_point(st, s.field().q(), s.m());
        const Block start{std::vector<Elem>(vars.rbegin(), vars.rend())};
        for (std::uint64_t loc = 0; loc < locations; ++loc) {
            const std::uint64_t mod = value_modulus(s, backend, target, loc);
            for (std::uint64_t mag = model == FaultModel::add_delta ? 1 : 0; mag < mod; ++mag)
                all.push_back(Trial{start, {FaultSpec{target, model, mag, loc, FaultTiming::at(0)}}, steps, all.size()});
        }
    }
    return detail::aggregate(s, backend, correct, all, threads);
}

enum class Modification { identical, element_change, insertion, deletion, reordering };

inline std::string_view to_string(Modification m) noexcept {
    switch (m) {
    case Modification::identical: return "identical";
    case Modification::element_change: return "element-change";
    case Modification::insertion: return "insertion";
    case Modification::deletion: return "deletion";
    case Modification::reordering: return "reordering";
    }
    return "?";
}

namespace detail {

inline bool is_subsequence(std::span<const Elem> needle, std::span<const Elem> hay) {
    std::size_t i = 0;
    for (std::size_t j = 0; j < hay.size() && i < needle.size(); ++j)
        if (hay[j] == needle[i]) ++i;
    return i == needle.size();
}

} // namespace detail

/// Sequence-diff heuristic over the modification classes of a generated sequence.
inline Modification classify_modification(std::span<const Elem> reference, std::span<const Elem> observed) {
    if (std::equal(reference.begin(), reference.end(), observed.begin(), observed.end())) return Modification::identical;
    if (reference.size() == observed.size()) {
        std::vector<Elem> a(reference.begin(), reference.end()), b(observed.begin(), observed.end());
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        return a == b ? Modification::reordering : Modification::element_change;
    }
    if (observed.size() > reference.size() && detail::is_subsequence(reference, observed)) return Modification::insertion;
    if (observed.size() < reference.size() && detail::is_subsequence(observed, reference)) return Modification::deletion;
    return Modification::element_change;
}

} // namespace qprs
