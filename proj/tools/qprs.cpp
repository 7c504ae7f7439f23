/**************************************************************************
 * qprs.cpp
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

#include "CLI11.hpp"

#include "qprs/cli.hpp"

int main(int argc, char** argv) {
    using namespace qprs::cli;

    CLI::App app{"qprs: q-valued pseudo-random sequences with fault-detecting guards"};
    app.require_subcommand(1);

    std::uint64_t limit = qprs::kDefaultExhaustionLimit;
    try {
        limit = exhaustion_limit_from_env();
    } catch (const qprs::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kBadInput;
    }

    DeriveOptions derive;
    derive.limit = limit;
    auto* d = app.add_subcommand("derive", "Derive an artifact file from a generating polynomial");
    d->add_option("--q", derive.q, "Prime field size")->required();
    d->add_option("--poly", derive.poly, "Coefficients k_0,k_1,...,k_m of K(x), ascending; k_m must be 1")->required();
    d->add_option("--r", derive.r, "Check symbols per block of the linear code")->capture_default_str();
    d->add_option("--rns-extras", derive.rns_extras, "Redundant RNS moduli")->capture_default_str();
    d->add_option("--out", derive.out, "Artifact path")->required();

    GenOptions gen;
    auto* g = app.add_subcommand("gen", "Generate a sequence from an artifact");
    g->add_option("artifact,--artifact", gen.artifact, "Artifact path")->required();
    g->add_option("--backend", gen.backend, "serial, block, lnp, guarded-rns or coded-block")->capture_default_str();
    g->add_option("--seed", gen.seed, "Initial cells a_{m-1},...,a_1,a_0 (highest index first)")->required();
    g->add_option("-n", gen.n, "Number of elements")->required();
    g->add_option("--format", gen.format, "text or bin16 (little-endian 16-bit)")->capture_default_str();
    g->add_option("--out", gen.out, "Output file (default: standard output)");

    VerifyOptions verify;
    verify.limit = limit;
    auto* v = app.add_subcommand("verify", "Check an artifact");
    v->add_option("artifact,--artifact", verify.artifact, "Artifact path")->required();
    v->add_option("--check", verify.checks, "consistency, full-period, cross-backend (default: all)")->delimiter(',');

    CampaignOptions campaign;
    auto* c = app.add_subcommand("campaign", "Run a fault-injection campaign");
    c->add_option("config,--config", campaign.config, "Campaign config path")->required();
    c->add_option("--out", campaign.out, "Report path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kOk : kBadInput;
    }

    if (d->parsed()) return cmd_derive(derive, std::cout, std::cerr);
    if (g->parsed()) return cmd_gen(gen, std::cout, std::cerr);
    if (v->parsed()) return cmd_verify(verify, std::cout, std::cerr);
    return cmd_campaign(campaign, std::cout, std::cerr);
}
