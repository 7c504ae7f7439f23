/**************************************************************************
 * cli.hpp
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

#include <cstdlib>
#include <iostream>

#include "io.hpp"

// Subcommands of the qprs tool. Each returns a process exit code:
// 0 success, 1 verification failure, 2 invalid input or config,
// 3 internal soundness violation.

namespace qprs::cli {

enum ExitCode : int { kOk = 0, kVerifyFailed = 1, kBadInput = 2, kInternal = 3 };

/// QPRS_EXHAUSTION_LIMIT overrides the default bound on exhaustive enumerations.
inline std::uint64_t exhaustion_limit_from_env() {
    const char* v = std::getenv("QPRS_EXHAUSTION_LIMIT");
    if (v == nullptr || *v == '\0') return kDefaultExhaustionLimit;
    return io::parse_u64(v, "QPRS_EXHAUSTION_LIMIT");
}

struct DeriveOptions {
    std::uint64_t q = 0;
    std::string poly; // k_0,k_1,...,k_m
    std::size_t r = 1;
    std::size_t rns_extras = 1;
    std::string out;
    std::uint64_t limit = kDefaultExhaustionLimit;
};

inline int cmd_derive(const DeriveOptions& o, std::ostream& out, std::ostream& err) {
    try {
        const PrimeField f(o.q);
        const auto k = io::parse_list(o.poly, "--poly");
        auto art = io::make_artifact(derive_suite(f, k, o.r, o.rns_extras, o.limit), o.limit);
        if (!art.primitive)
            err << "warning: K(x) is not primitive (period " << art.period << " < " << checked_pow(o.q, k.size() - 1) - 1
                << ")\n";
        io::write_file(o.out, io::dump(io::to_json(art)));
        out << "wrote " << o.out << ": q=" << o.q << " m=" << art.suite.m() << " period=" << art.period
            << " primitive=" << (art.primitive ? "true" : "false") << " moduli=" << art.suite.rns.moduli().size()
            << " (eta=" << art.suite.rns.eta() << ")\n";
        return kOk;
    } catch (const SoundnessError& e) {
        err << "internal error: " << e.what() << "\n";
        return kInternal;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kBadInput;
    }
}

struct GenOptions {
    std::string artifact;
    std::string backend = "serial";
    std::string seed; // cells a_{m-1},...,a_0
    std::size_t n = 0;
    std::string format = "text";
    std::string out; // empty: standard output
};

inline std::string encode_sequence(std::span<const Elem> seq, std::string_view format, std::uint64_t q) {
    std::string bytes;
    if (format == "text") {
        for (std::size_t i = 0; i < seq.size(); ++i) {
            if (i) bytes.push_back(' ');
            bytes += std::to_string(seq[i]);
        }
        if (!seq.empty()) bytes.push_back('\n');
    } else if (format == "bin16") {
        if (q > 65521) throw ValidationError("bin16 output needs q <= 65521");
        for (Elem e : seq) {
            bytes.push_back(static_cast<char>(e & 0xff));
            bytes.push_back(static_cast<char>((e >> 8) & 0xff));
        }
    } else {
        throw ValidationError("unknown format '" + std::string(format) + "' (text, bin16)");
    }
    return bytes;
}

inline int cmd_gen(const GenOptions& o, std::ostream& out, std::ostream& err) {
    try {
        const auto art = io::load_artifact(o.artifact);
        const auto backend = parse_backend(o.backend);
        const auto cells = io::parse_list(o.seed, "--seed");
        const Block seed{cells};
        validate_state(seed.to_state(), art.suite.fp);
        if (o.format != "text" && o.format != "bin16") throw ValidationError("unknown format '" + o.format + "' (text, bin16)");
        if (o.format == "bin16" && art.suite.field().q() > 65521) throw ValidationError("bin16 output needs q <= 65521");
        const auto seq = generate_stream(art.suite, backend, seed, o.n);
        const auto bytes = encode_sequence(seq, o.format, art.suite.field().q());
        if (o.out.empty())
            out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
        else
            io::write_file(o.out, bytes);
        return kOk;
    } catch (const SoundnessError& e) {
        err << "internal error: " << e.what() << "\n";
        return kInternal;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kBadInput;
    }
}

struct VerifyOptions {
    std::string artifact;
    std::vector<std::string> checks; // empty: all
    std::uint64_t limit = kDefaultExhaustionLimit;
};

inline int cmd_verify(const VerifyOptions& o, std::ostream& out, std::ostream& err) {
    std::optional<io::Artifact> loaded;
    try {
        loaded = io::load_artifact(o.artifact);
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kBadInput;
    }
    const auto& art = *loaded;
    std::vector<std::string> checks = o.checks;
    if (checks.empty()) checks = {"consistency", "full-period", "cross-backend"};
    for (const auto& c : checks)
        if (c != "consistency" && c != "full-period" && c != "cross-backend") {
            err << "error: unknown check '" << c << "' (consistency, full-period, cross-backend)\n";
            return kBadInput;
        }

    const auto& s = art.suite;
    bool all_ok = true;
    auto report = [&](const std::string& name, bool ok, const std::string& detail) {
        out << (ok ? "PASS " : "FAIL ") << name << ": " << detail << "\n";
        all_ok = all_ok && ok;
    };
    for (const auto& c : checks) {
        try {
            if (c == "consistency") {
                auto issues = consistency_issues(s, o.limit);
                const auto& crt = s.rns.crt();
                for (std::size_t d = 0; d < crt.size(); ++d)
                    if (!(art.declared_crt[d] == crt[d]))
                        issues.push_back("CRT constant " + std::to_string(d) + " is wrong");
                const auto per = period(s.fp, o.limit);
                if (per != art.period) issues.push_back("recorded period differs from the recurrence");
                if ((per == checked_pow(s.field().q(), s.m()) - 1) != art.primitive)
                    issues.push_back("recorded primitivity flag is wrong");
                std::string detail = issues.empty() ? "all derived data matches" : "";
                for (std::size_t i = 0; i < issues.size(); ++i) detail += (i ? "; " : "") + issues[i];
                report(c, issues.empty(), detail);
            } else if (c == "full-period") {
                const auto per = period(s.fp, o.limit);
                const auto full = checked_pow(s.field().q(), s.m()) - 1;
                report(c, per == full, "period " + std::to_string(per) + " of " + std::to_string(full));
            } else {
                const auto per = period(s.fp, o.limit);
                const std::size_t n = static_cast<std::size_t>(per) + s.m();
                const Block seed = Block::from_state(unit_state(s.m()));
                const auto ref = generate_stream(s, Backend::serial, seed, n);
                std::string bad;
                for (auto b : {Backend::block, Backend::lnp, Backend::guarded_rns, Backend::coded_block}) {
                    std::string name(to_string(b));
                    try {
                        if (generate_stream(s, b, seed, n) != ref) bad += (bad.empty() ? "" : ", ") + name;
                    } catch (const Error& e) {
                        bad += (bad.empty() ? "" : ", ") + name + " (" + e.what() + ")";
                    }
                }
                report(c, bad.empty(),
                       bad.empty() ? "5 backends agree over " + std::to_string(n) + " elements" : "mismatch: " + bad);
            }
        } catch (const Error& e) {
            report(c, false, e.what());
        }
    }
    return all_ok ? kOk : kVerifyFailed;
}

struct CampaignOptions {
    std::string config;
    std::string out;
};

inline int cmd_campaign(const CampaignOptions& o, std::ostream& out, std::ostream& err) {
    io::CampaignConfig cfg;
    std::optional<io::Artifact> loaded;
    try {
        const std::filesystem::path cfg_path(o.config);
        cfg = io::campaign_from_json(io::parse_json(io::read_file(cfg_path), o.config), cfg_path.parent_path());
        loaded = io::load_artifact(cfg.artifact);
        if (cfg.exhaustive) {
            for (const auto& [t, w] : cfg.distribution.weights)
                if (w > 0 && !compatible(t, cfg.backend))
                    throw ValidationError("fault target " + std::string(to_string(t)) + " does not apply to backend " +
                                          std::string(to_string(cfg.backend)));
        } else {
            validate_distribution(loaded->suite, cfg.backend, cfg.distribution);
        }
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kBadInput;
    }
    const auto& art = *loaded;
    try {
        DetectionReport rep;
        if (cfg.exhaustive) {
            FaultTarget target{};
            for (const auto& [t, w] : cfg.distribution.weights)
                if (w > 0) target = t;
            rep = run_exhaustive_campaign(art.suite, cfg.backend, target, cfg.distribution.model, cfg.correction,
                                          cfg.distribution.steps, cfg.threads);
        } else {
            rep = run_campaign(art.suite, cfg.backend, cfg.correction, cfg.distribution, cfg.trials, cfg.master_seed,
                               cfg.threads);
        }
        io::write_file(o.out, io::dump(io::to_json(rep)));
        out << "injected=" << rep.totals.injected << " detected=" << rep.totals.detected << " missed=" << rep.totals.missed
            << " masked=" << rep.totals.masked << " corrected=" << rep.totals.corrected
            << " ambiguous=" << rep.totals.ambiguous << " miscorrected=" << rep.totals.miscorrected << "\n";
        return kOk;
    } catch (const SoundnessError& e) {
        err << "internal error: " << e.what() << "\n";
        return kInternal;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kBadInput;
    }
}

} // namespace qprs::cli
