/**************************************************************************
 * acceptance.cpp
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

// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>

#include "qprs/cli.hpp"

#include "oracles.hpp"

using namespace qprs;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

struct Config {
    std::uint64_t q;
    std::size_t m;
};

const std::vector<Config> kPeriodConfigs{{2, 4}, {3, 2}, {3, 3}, {5, 2}, {7, 2}};

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt_s(double s) {
    std::ostringstream os;
    os.precision(3);
    os << std::fixed << s << "s";
    return os.str();
}

bool g_all = true;

void verdict(int id, const std::string& name, bool ok, const std::string& detail) {
    std::cout << (ok ? "PASS" : "FAIL") << " [" << id << "] " << name << ": " << detail << std::endl;
    g_all = g_all && ok;
}

void run_criterion(int id, const std::string& name, const std::function<std::pair<bool, std::string>()>& body) {
    try {
        const auto [ok, detail] = body();
        verdict(id, name, ok, detail);
    } catch (const std::exception& e) {
        verdict(id, name, false, std::string("exception: ") + e.what());
    }
}

Block block_of(std::uint64_t idx, std::uint64_t q, std::size_t m) {
    const auto vars = grid_point(idx, q, m); // ascending a_p .. a_{p+m-1}
    return Block{{vars.rbegin(), vars.rend()}};
}

std::vector<std::int64_t> signed_k(const FeedbackPoly& fp) { return {fp.coefficients().begin(), fp.coefficients().end()}; }

std::pair<int, std::string> run_tool(const std::string& args) {
    const std::string cmd = "\"" QPRS_CLI_PATH "\" " + args + " 2>&1";
    FILE* p = popen(cmd.c_str(), "r");
    if (!p) return {-1, ""};
    std::string out;
    char buf[4096];
    for (std::size_t n; (n = fread(buf, 1, sizeof buf, p)) > 0;) out.append(buf, n);
    const int status = pclose(p);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

int main() {
    // 1. period q^m - 1 and every nonzero state once per period
    run_criterion(1, "period", [] {
        std::ostringstream detail;
        bool ok = true;
        for (const auto& c : kPeriodConfigs) {
            const auto t0 = Clock::now();
            const auto fp = find_primitive(PrimeField(c.q), c.m);
            if (!fp) return std::pair{false, "no primitive polynomial found for q=" + std::to_string(c.q)};
            const std::uint64_t want = checked_pow(c.q, c.m) - 1;
            const std::uint64_t measured = period(*fp);
            const std::uint64_t oracle_period = oracle::period(static_cast<std::int64_t>(c.q), signed_k(*fp));
            std::set<std::vector<Elem>> seen;
            LfsrState s = unit_state(c.m);
            bool once = true;
            for (std::uint64_t i = 0; i < want; ++i) {
                once = once && !s.degenerate() && seen.insert(s.cells).second;
                s = step(s, *fp).next;
            }
            once = once && seen.size() == want && s == unit_state(c.m);
            const double dt = seconds_since(t0);
            const bool this_ok = measured == want && oracle_period == want && once && dt < 1.0;
            ok = ok && this_ok;
            detail << "(" << c.q << "," << c.m << ") P=" << measured << "/" << want << (once ? " states-once" : " states-REPEAT")
                   << " " << fmt_s(dt) << "; ";
        }
        return std::pair{ok, detail.str()};
    });

    // 2. serial, block and packed-polynomial backends agree over a full period
    run_criterion(2, "backend-equivalence", [] {
        const auto t0 = Clock::now();
        std::size_t compared = 0;
        bool ok = true;
        for (const auto& c : kPeriodConfigs) {
            const auto fp = *find_primitive(PrimeField(c.q), c.m);
            const auto bm = build_ginf(fp);
            const auto pp = compile_lnp(fp);
            const std::size_t n = static_cast<std::size_t>(checked_pow(c.q, c.m) - 1);
            const Block seed = Block::from_state(unit_state(c.m));
            const auto ser = generate(seed.to_state(), fp, n);
            ok = ok && generate_block_stream(seed, bm, n) == ser && generate_lnp_stream(seed, pp, n) == ser;
            compared += n;
        }
        const double dt = seconds_since(t0);
        return std::pair{ok && dt < 5.0, std::to_string(compared) + " elements compared, " + fmt_s(dt)};
    });

    // 3. digits of the packed evaluation are the next m elements
    run_criterion(3, "lnp-digit-recovery", [] {
        std::size_t mismatches = 0, states = 0;
        for (std::size_t m : {2u, 3u}) {
            const auto fp = *find_primitive(PrimeField(3), m);
            const auto pp = compile_lnp(fp);
            for (std::uint64_t idx = 0; idx < checked_pow(3, m); ++idx, ++states) {
                const auto vars = grid_point(idx, 3, m);
                const auto ref = oracle::sequence(3, signed_k(fp), std::vector<std::int64_t>(vars.begin(), vars.end()), 2 * m);
                const auto d = eval_packed_vars(pp, vars).d_value;
                for (std::size_t w = 0; w < m; ++w) mismatches += unmask(d, w, 3, m) != static_cast<Elem>(ref[m + w]);
            }
        }
        return std::pair{mismatches == 0, std::to_string(states) + " states, " + std::to_string(mismatches) + " mismatches"};
    });

    // 4. every single residue-channel fault detected
    run_criterion(4, "rns-single-fault-detection", [] {
        const auto t0 = Clock::now();
        const auto s = derive_suite(PrimeField(3), std::vector<std::uint64_t>{2, 1, 1}, 1, 1);
        const auto r = run_exhaustive_campaign(s, Backend::guarded_rns, FaultTarget::residue_channel, FaultModel::add_delta, false);
        std::uint64_t expected = 0;
        for (auto sd : s.rns.moduli()) expected += 9 * (sd - 1);
        const double dt = seconds_since(t0);
        const bool ok = s.rns.psi() == s.rns.eta() + 1 && r.totals.injected == expected && r.totals.detected == expected &&
                        r.totals.missed == 0 && dt < 10.0;
        return std::pair{ok, "injected=" + std::to_string(r.totals.injected) + " detected=" + std::to_string(r.totals.detected) +
                                 " missed=" + std::to_string(r.totals.missed) + " " + fmt_s(dt)};
    });

    // 5. CRT round trip over (5,7,11), eta = 2
    run_criterion(5, "crt-round-trip", [] {
        const RnsParams p({5, 7, 11}, 2, 34);
        std::size_t bad = 0;
        for (std::uint64_t u = 0; u < 35; ++u) {
            const auto cw = to_residues(u, p);
            bad += crt_reconstruct(cw, p) != u || oracle::crt_search(cw.residues, p.moduli()) != u;
        }
        const auto u = crt_reconstruct(RnsCodeword{{4, 2, 1}}, p);
        const bool ok = bad == 0 && u == 254 && !range_check(u, p);
        return std::pair{ok, "35 values, " + std::to_string(bad) + " failures; (4,2,1) -> " + std::to_string(u) +
                                 (range_check(u, p) ? " in range" : " flagged")};
    });

    // 6. linear code: all single-symbol errors, and weight-2 for the Vandermonde code
    run_criterion(6, "linear-code-detection", [] {
        const auto s1 = derive_suite(PrimeField(3), std::vector<std::uint64_t>{2, 1, 1}, 1, 1);
        const auto fp5 = *find_primitive(PrimeField(5), 3);
        const auto s2 = derive_suite(PrimeField(5), fp5.coefficients(), 2, 1);
        std::ostringstream detail;
        bool ok = true;
        for (const auto* s : {&s1, &s2}) {
            const auto r = run_exhaustive_campaign(*s, Backend::coded_block, FaultTarget::linear_block_symbol, FaultModel::add_delta,
                                                   false);
            ok = ok && r.totals.missed == 0 && r.totals.detected == r.totals.injected && r.totals.injected > 0;
            detail << "q=" << s->field().q() << " r=" << s->cm.r() << " single: " << r.totals.detected << "/" << r.totals.injected
                   << "; ";
        }
        // weight 2, r = 2: every pair of positions, every pair of nonzero deltas, every previous block
        const std::uint64_t q = 5;
        const std::size_t m = 3, n = m + s2.cm.r();
        std::uint64_t patterns = 0, undetected = 0;
        for (std::uint64_t idx = 0; idx < checked_pow(q, m); ++idx) {
            const auto clean = encode_block(s2.bm, s2.cm, block_of(idx, q, m));
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = i + 1; j < n; ++j)
                    for (Elem di = 1; di < q; ++di)
                        for (Elem dj = 1; dj < q; ++dj) {
                            auto cb = clean;
                            auto sym = [&](std::size_t k) -> Elem& { return k < m ? cb.info.elems[k] : cb.checks[k - m]; };
                            sym(i) = (sym(i) + di) % q;
                            sym(j) = (sym(j) + dj) % q;
                            ++patterns;
                            undetected += check_block(cb, s2.cm.p_mat, s2.field()).clean();
                        }
        }
        ok = ok && undetected == 0;
        detail << "weight-2: " << patterns - undetected << "/" << patterns;
        return std::pair{ok, detail.str()};
    });

    // 7. projection correction never silently wrong
    run_criterion(7, "projection-correction", [] {
        const auto s = derive_suite(PrimeField(3), std::vector<std::uint64_t>{2, 1, 1}, 1, 2);
        const auto r = run_exhaustive_campaign(s, Backend::guarded_rns, FaultTarget::residue_channel, FaultModel::add_delta, true, 4);
        // direct check on the decoder: every corrected value equals the original raw evaluation
        std::uint64_t wrong = 0;
        for (std::uint64_t idx = 0; idx < 9; ++idx) {
            const auto st = block_of(idx, 3, 2);
            const auto raw = eval_packed(s.pp, st).raw;
            const auto clean = eval_channels(s.tables, st, s.rns);
            for (std::size_t d = 0; d < s.rns.psi(); ++d)
                for (std::uint64_t delta = 1; delta < s.rns.moduli()[d]; ++delta) {
                    auto cw = clean;
                    cw.residues[d] = (cw.residues[d] + delta) % s.rns.moduli()[d];
                    const auto c = correct_single(cw, s.rns);
                    wrong += c.kind == CorrectionKind::uncorrectable || (c.kind == CorrectionKind::corrected && c.value != raw);
                }
        }
        const bool ok = s.rns.psi() == s.rns.eta() + 2 && r.totals.missed == 0 && r.totals.miscorrected == 0 &&
                        r.totals.corrected + r.totals.ambiguous == r.totals.injected && wrong == 0;
        return std::pair{ok, "injected=" + std::to_string(r.totals.injected) + " corrected=" + std::to_string(r.totals.corrected) +
                                 " ambiguous=" + std::to_string(r.totals.ambiguous) + " miscorrected=" +
                                 std::to_string(r.totals.miscorrected) + " decoder-wrong=" + std::to_string(wrong)};
    });

    // 8. byte-identical reports and gen output
    run_criterion(8, "determinism", [] {
        const auto s = derive_suite(PrimeField(3), std::vector<std::uint64_t>{2, 1, 1}, 1, 1);
        FaultDistribution d;
        d.weights = {{FaultTarget::residue_channel, 2}, {FaultTarget::poly_coefficient, 1}, {FaultTarget::register_cell, 1}};
        d.steps = 6;
        d.faults_per_trial = 3;
        d.rho = 0.15;
        const auto a = io::dump(io::to_json(run_campaign(s, Backend::guarded_rns, false, d, 100, 2026, 1)));
        const auto b = io::dump(io::to_json(run_campaign(s, Backend::guarded_rns, false, d, 100, 2026, 8)));

        const fs::path dir = fs::temp_directory_path() / "qprs-acceptance";
        fs::remove_all(dir);
        fs::create_directories(dir);
        const auto art = (dir / "gf3.json").string();
        bool tool_ok = run_tool("derive --q 3 --poly 2,1,1 --r 1 --rns-extras 1 --out " + art).first == 0;
        io::write_file(dir / "c.json", R"({"artifact": "gf3.json", "backend": "guarded-rns",
            "targets": {"residue-channel": 1, "output-stream": 1}, "faults_per_trial": 2, "steps": 4,
            "trials": 100, "master_seed": 7})");
        tool_ok = tool_ok && run_tool("campaign " + (dir / "c.json").string() + " --out " + (dir / "r1.json").string()).first == 0;
        tool_ok = tool_ok && run_tool("campaign " + (dir / "c.json").string() + " --out " + (dir / "r2.json").string()).first == 0;
        const bool reports_equal = tool_ok && slurp(dir / "r1.json") == slurp(dir / "r2.json");
        bool gen_equal = true;
        for (const char* backend : {"serial", "block", "lnp", "guarded-rns"}) {
            const auto g1 = run_tool("gen " + art + " --backend " + backend + " --seed 0,1 -n 64");
            const auto g2 = run_tool("gen " + art + " --backend " + backend + " --seed 0,1 -n 64");
            gen_equal = gen_equal && g1.first == 0 && g1 == g2;
        }
        fs::remove_all(dir);
        const bool ok = a == b && reports_equal && gen_equal;
        return std::pair{ok, std::string("library reports ") + (a == b ? "identical" : "DIFFER") + ", cli reports " +
                                 (reports_equal ? "identical" : "DIFFER") + ", gen " + (gen_equal ? "identical" : "DIFFER")};
    });

    return g_all ? 0 : 1;
}
