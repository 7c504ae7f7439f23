/**************************************************************************
 * io.hpp
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

#include <charconv>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "fault_lab.hpp"

// JSON documents exchanged by the command-line tool: the artifact file, the
// campaign configuration and the detection report. docs/artifact-schema.md is
// the normative description; values that can exceed 2^53 are decimal strings.

namespace qprs::io {

using nlohmann::json;

inline constexpr std::string_view kArtifactVersion = "qprs-artifact/1";
inline constexpr std::string_view kReportVersion = "qprs-report/1";
inline constexpr std::string_view kCampaignVersion = "qprs-campaign/1";

/// In-memory artifact. Loading never recomputes derived data, so a tampered file
/// loads fine and is caught by verification instead.
struct Artifact {
    GeneratorSuite suite;
    bool primitive = false;
    std::uint64_t period = 0;
    std::vector<CrtConstant> declared_crt;

    friend bool operator==(const Artifact&, const Artifact&) = default;
};

inline std::uint64_t parse_u64(std::string_view text, std::string_view what) {
    std::uint64_t v = 0;
    const auto* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, v);
    if (ec != std::errc{} || ptr != end || text.empty())
        throw ValidationError(std::string(what) + ": '" + std::string(text) + "' is not a nonnegative integer");
    return v;
}

/// Comma-separated nonnegative integers, e.g. "2,1,1".
inline std::vector<std::uint64_t> parse_list(std::string_view text, std::string_view what) {
    std::vector<std::uint64_t> out;
    if (text.empty()) return out;
    std::size_t pos = 0;
    while (true) {
        const auto comma = text.find(',', pos);
        out.push_back(parse_u64(text.substr(pos, comma - pos), what));
        if (comma == std::string_view::npos) break;
        pos = comma + 1;
    }
    return out;
}

namespace detail {

inline std::uint64_t big(const json& j, std::string_view what) {
    if (j.is_string()) return parse_u64(j.get<std::string>(), what);
    if (j.is_number_unsigned()) return j.get<std::uint64_t>();
    throw ValidationError(std::string(what) + " must be a decimal string or unsigned integer");
}

inline const json& field(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw ValidationError(std::string("missing field '") + key + "'");
    return j.at(key);
}

template <typename T>
T get(const json& j, const char* key) {
    try {
        return field(j, key).get<T>();
    } catch (const json::exception& e) {
        throw ValidationError(std::string("field '") + key + "' has the wrong type: " + e.what());
    }
}

inline json matrix_json(const FieldMatrix& m) { return m.to_rows(); }

inline FieldMatrix matrix_from(const json& j, const char* what) {
    try {
        return FieldMatrix::from_rows(j.get<std::vector<std::vector<Elem>>>());
    } catch (const json::exception& e) {
        throw ValidationError(std::string(what) + " must be a matrix of unsigned integers: " + e.what());
    }
}

} // namespace detail

inline json to_json(const Artifact& a) {
    const auto& s = a.suite;
    json terms = json::array();
    for (const auto& [e, v] : s.pp.base.coeffs) terms.push_back({{"exp", e}, {"coeff", v}});
    json crt = json::array();
    for (const auto& c : a.declared_crt) crt.push_back({{"cofactor", std::to_string(c.cofactor)}, {"mu", c.mu}});
    json tables = json::array();
    for (const auto& ch : s.tables.residues) tables.push_back(ch);

    return json{
        {"version", kArtifactVersion},
        {"q", s.field().q()},
        {"m", s.m()},
        {"poly", s.fp.coefficients()},
        {"taps", s.fp.taps()},
        {"primitive", a.primitive},
        {"period", std::to_string(a.period)},
        {"g_inf", detail::matrix_json(s.bm.g_inf())},
        {"check", {{"r", s.cm.r()}, {"p_mat", detail::matrix_json(s.cm.p_mat)}, {"c_rows", detail::matrix_json(s.cm.c_rows)}}},
        {"packed",
         {{"modulus", s.pp.modulus()},
          {"weights", s.pp.weights},
          {"value_bound", std::to_string(s.pp.value_bound)},
          {"terms", terms}}},
        {"rns",
         {{"moduli", s.rns.moduli()},
          {"eta", s.rns.eta()},
          {"s_eta", std::to_string(s.rns.s_eta())},
          {"s_psi", std::to_string(s.rns.s_psi())},
          {"crt", crt},
          {"tables", tables}}},
    };
}

inline Artifact artifact_from_json(const json& j) {
    using detail::field;
    using detail::get;
    if (!j.is_object()) throw ValidationError("artifact must be a JSON object");
    if (get<std::string>(j, "version") != kArtifactVersion)
        throw ValidationError("unrecognized artifact version '" + get<std::string>(j, "version") + "'");

    const PrimeField f(get<std::uint64_t>(j, "q"));
    const auto m = get<std::size_t>(j, "m");
    auto k = get<std::vector<std::uint64_t>>(j, "poly");
    auto taps = get<std::vector<std::uint64_t>>(j, "taps");
    if (k.size() != m + 1 || taps.size() != m) throw ValidationError("poly/taps lengths do not match m");
    for (auto v : taps)
        if (!f.contains(v)) throw ValidationError("tap outside the field");
    FeedbackPoly fp(f, std::move(k), std::move(taps));

    auto g_inf = detail::matrix_from(field(j, "g_inf"), "g_inf");
    if (g_inf.rows() != m) throw ValidationError("g_inf must be m x m");
    BlockMatrix bm(f, std::move(g_inf));

    const auto& chk = field(j, "check");
    CheckMatrix cm{detail::matrix_from(field(chk, "p_mat"), "p_mat"), detail::matrix_from(field(chk, "c_rows"), "c_rows")};
    if (cm.p_mat.cols() != m || cm.c_rows.cols() != m || cm.c_rows.rows() != cm.p_mat.rows() ||
        get<std::size_t>(chk, "r") != cm.r())
        throw ValidationError("check matrices have inconsistent shapes");
    if (!cm.p_mat.canonical_in(f) || !cm.c_rows.canonical_in(f)) throw ValidationError("check matrix entry outside the field");

    const auto& pk = field(j, "packed");
    PackedArithPoly pp{ArithPoly{f.q(), m, get<std::uint64_t>(pk, "modulus"), {}}, get<std::vector<std::uint64_t>>(pk, "weights"),
                       detail::big(field(pk, "value_bound"), "value_bound")};
    if (pp.modulus() != checked_pow(f.q(), m)) throw ValidationError("packed modulus must be q^m");
    if (pp.weights.size() != m) throw ValidationError("packed weights must have m entries");
    for (const auto& t : field(pk, "terms")) {
        auto e = get<Exponents>(t, "exp");
        const auto c = get<std::uint64_t>(t, "coeff");
        if (e.size() != m) throw ValidationError("exponent tuple length must be m");
        for (auto x : e)
            if (x >= f.q()) throw ValidationError("exponent outside [0, q)");
        if (c == 0 || c >= pp.modulus()) throw ValidationError("packed coefficient must lie in [1, q^m)");
        if (!pp.base.coeffs.emplace(std::move(e), c).second) throw ValidationError("duplicate exponent tuple");
    }

    const auto& rj = field(j, "rns");
    RnsParams rns(get<std::vector<std::uint64_t>>(rj, "moduli"), get<std::size_t>(rj, "eta"), pp.value_bound);
    if (detail::big(field(rj, "s_eta"), "s_eta") != rns.s_eta() || detail::big(field(rj, "s_psi"), "s_psi") != rns.s_psi())
        throw ValidationError("s_eta / s_psi disagree with the moduli");
    std::vector<CrtConstant> crt;
    for (const auto& c : field(rj, "crt")) crt.push_back({detail::big(field(c, "cofactor"), "cofactor"), get<std::uint64_t>(c, "mu")});
    if (crt.size() != rns.psi()) throw ValidationError("crt must list one constant per modulus");

    ChannelTables tables;
    for (const auto& [e, v] : pp.base.coeffs) tables.exponents.push_back(e);
    try {
        tables.residues = field(rj, "tables").get<std::vector<std::vector<std::uint64_t>>>();
    } catch (const json::exception& e) {
        throw ValidationError(std::string("rns.tables must be integer rows: ") + e.what());
    }
    if (tables.residues.size() != rns.psi()) throw ValidationError("one channel table per modulus is required");
    for (std::size_t d = 0; d < rns.psi(); ++d) {
        if (tables.residues[d].size() != tables.exponents.size())
            throw ValidationError("channel table " + std::to_string(d) + " does not align with packed terms");
        for (auto v : tables.residues[d])
            if (v >= rns.moduli()[d]) throw ValidationError("channel table entry is not canonical");
    }

    return Artifact{GeneratorSuite{std::move(fp), std::move(bm), std::move(cm), std::move(pp), std::move(rns), std::move(tables)},
                    get<bool>(j, "primitive"), detail::big(field(j, "period"), "period"), std::move(crt)};
}

inline Artifact make_artifact(GeneratorSuite suite, std::uint64_t limit = kDefaultExhaustionLimit) {
    const auto per = period(suite.fp, limit);
    const bool prim = per == checked_pow(suite.field().q(), suite.m()) - 1;
    auto crt = suite.rns.crt();
    return Artifact{std::move(suite), prim, per, std::move(crt)};
}

inline std::string read_file(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw ValidationError("cannot open '" + p.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_file(const std::filesystem::path& p, std::string_view text) {
    std::ofstream out(p, std::ios::binary);
    if (!out) throw ValidationError("cannot write '" + p.string() + "'");
    out << text;
    if (!out) throw ValidationError("write to '" + p.string() + "' failed");
}

inline json parse_json(std::string_view text, std::string_view what) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw ValidationError(std::string(what) + " is not valid JSON: " + e.what());
    }
}

inline std::string dump(const json& j) { return j.dump(2) + "\n"; }

inline Artifact load_artifact(const std::filesystem::path& p) { return artifact_from_json(parse_json(read_file(p), p.string())); }

inline json to_json(const ClassCounts& c) {
    return json{{"injected", c.injected},   {"detected", c.detected},   {"missed", c.missed},
                {"masked", c.masked},       {"corrected", c.corrected}, {"ambiguous", c.ambiguous},
                {"miscorrected", c.miscorrected}};
}

inline json to_json(const DetectionReport& r) {
    json latency = json::object();
    for (const auto& [k, v] : r.detection_latency) latency[std::to_string(k)] = v;
    json by_class = json::object();
    for (const auto& [k, v] : r.by_class) by_class[k] = to_json(v);
    json j = to_json(r.totals);
    j["version"] = kReportVersion;
    j["config_digest"] = r.config_digest;
    j["backend"] = r.backend;
    j["correction"] = r.correction;
    j["trials"] = r.trials;
    j["idle"] = r.idle;
    j["detection_latency"] = latency;
    j["by_class"] = by_class;
    return j;
}

struct CampaignConfig {
    std::filesystem::path artifact;
    Backend backend = Backend::guarded_rns;
    bool correction = false;
    bool exhaustive = false;
    FaultDistribution distribution;
    std::size_t trials = 1;
    std::uint64_t master_seed = 0;
    unsigned threads = 0;
};

/// Relative artifact paths resolve against the directory of the config file.
inline CampaignConfig campaign_from_json(const json& j, const std::filesystem::path& base_dir) {
    using detail::get;
    if (!j.is_object()) throw ValidationError("campaign config must be a JSON object");
    if (j.contains("version") && j.at("version") != kCampaignVersion)
        throw ValidationError("unrecognized campaign config version");
    CampaignConfig c;
    std::filesystem::path art = get<std::string>(j, "artifact");
    c.artifact = art.is_absolute() ? art : base_dir / art;
    c.backend = parse_backend(get<std::string>(j, "backend"));
    if (j.contains("correction")) c.correction = get<bool>(j, "correction");
    if (j.contains("mode")) {
        const auto mode = get<std::string>(j, "mode");
        if (mode != "random" && mode != "exhaustive") throw ValidationError("mode must be 'random' or 'exhaustive'");
        c.exhaustive = mode == "exhaustive";
    }
    const auto& targets = detail::field(j, "targets");
    if (!targets.is_object()) throw ValidationError("targets must map fault targets to weights");
    for (const auto& [name, w] : targets.items()) {
        if (!w.is_number()) throw ValidationError("weight of '" + name + "' must be a number");
        c.distribution.weights[parse_fault_target(name)] = w.get<double>();
    }
    if (j.contains("model")) c.distribution.model = parse_fault_model(get<std::string>(j, "model"));
    if (j.contains("magnitude")) {
        const auto& mag = j.at("magnitude");
        if (mag.is_string() && mag.get<std::string>() == "uniform")
            c.distribution.magnitude.reset();
        else if (mag.is_number_unsigned())
            c.distribution.magnitude = mag.get<std::uint64_t>();
        else
            throw ValidationError("magnitude must be \"uniform\" or an unsigned integer");
    }
    if (j.contains("rho")) c.distribution.rho = get<double>(j, "rho");
    if (j.contains("steps")) c.distribution.steps = get<std::size_t>(j, "steps");
    if (j.contains("faults_per_trial")) c.distribution.faults_per_trial = get<std::size_t>(j, "faults_per_trial");
    if (j.contains("threads")) c.threads = get<unsigned>(j, "threads");
    c.trials = get<std::size_t>(j, "trials");
    c.master_seed = detail::big(detail::field(j, "master_seed"), "master_seed");

    double total = 0;
    for (const auto& [t, w] : c.distribution.weights) {
        if (!(w >= 0.0)) throw ValidationError("fault target weights must be nonnegative");
        total += w;
    }
    if (!(total > 0.0)) throw ValidationError("fault target weights are all zero");
    if (c.trials < 1) throw ValidationError("trials must be at least 1");
    if (c.exhaustive) {
        std::size_t positive = 0;
        for (const auto& [t, w] : c.distribution.weights) positive += w > 0;
        if (positive != 1) throw ValidationError("exhaustive mode needs exactly one target with positive weight");
    }
    return c;
}

} // namespace qprs::io
