// Copyright 2026 The parahsp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// parahsp run | verify | table. Exit status is 0 iff every verification
// passes, 1 if one fails, 2 on bad input.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "parahsp/errors.hpp"
#include "parahsp/experiment.hpp"

namespace {

using parahsp::ExperimentRecord;

ExperimentRecord load(const std::string &path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) {
        throw parahsp::ParseError("cannot open '" + path + "'");
    }
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(is);
    } catch (const nlohmann::json::exception &e) {
        throw parahsp::ParseError(path + ": " + e.what());
    }
    return ExperimentRecord::from_json(j);
}

bool report(const std::string &name, const parahsp::VerifyReport &v) {
    for (const std::string &issue : v.issues) {
        std::cerr << name << ": " << issue << '\n';
    }
    std::cerr << name << ": " << (v.ok ? "verified" : "FAILED verification") << '\n';
    return v.ok;
}

void emit(const std::string &text, const std::string &out) {
    if (out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream os(out, std::ios::binary);
    if (!os) {
        throw parahsp::InvalidConfig("out: cannot open '" + out + "' for writing");
    }
    os << text;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Simulated quantum hidden subgroup algorithms over GL_n(F_q)"};
    app.require_subcommand(1);

    parahsp::ExperimentConfig cfg;
    CLI::App *run = app.add_subcommand("run", "run trials and write a record");
    run->add_option("--problem", cfg.problem,
                    "parabolic, parabolic-dual, max-parabolic, unipotent, complement, abelian, adversary")
        ->required();
    run->add_option("--p", cfg.p, "field characteristic")->capture_default_str();
    run->add_option("--r", cfg.r, "field degree, q = p^r")->capture_default_str();
    run->add_option("--n", cfg.n, "matrix size")->capture_default_str();
    run->add_option("--params", cfg.params, "instance shape or 'random'")->capture_default_str();
    run->add_option("--trials", cfg.trials)->capture_default_str();
    run->add_option("--seed", cfg.seed)->capture_default_str();
    run->add_option("--out", cfg.out, "record path (default stdout)");
    run->add_option("--format", cfg.format, "json or csv")->capture_default_str();
    run->add_option("--budget", cfg.budget, "largest dense state q^(n^2)")->capture_default_str();
    run->add_option("--threads", cfg.threads, "trial workers")->capture_default_str();
    run->add_flag("--timing", cfg.timing, "record wall time per trial");

    std::vector<std::string> verify_files;
    CLI::App *verify = app.add_subcommand("verify", "re-check JSON records against their seeds");
    verify->add_option("records", verify_files)->required()->check(CLI::ExistingFile);

    std::vector<std::string> table_files;
    std::string table_format = "csv", table_out;
    CLI::App *table = app.add_subcommand("table", "summarize JSON records");
    table->add_option("records", table_files)->required()->check(CLI::ExistingFile);
    table->add_option("--format", table_format, "csv or json")->capture_default_str();
    table->add_option("--out", table_out, "output path (default stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*run) {
            const ExperimentRecord rec = parahsp::run(cfg);
            if (cfg.out.empty()) {
                std::cout << rec.serialize();
            }
            const auto rate = rec.success_rate();
            std::cerr << cfg.problem << " q=" << cfg.q() << " n=" << cfg.n << ": " << rec.successes() << "/"
                      << rec.trials.size() << " succeeded"
                      << (rate ? "" : " (no trials)") << '\n';
            return report("run", parahsp::verify_record(rec)) ? 0 : 1;
        }
        if (*verify) {
            bool ok = true;
            for (const std::string &f : verify_files) {
                ok = report(f, parahsp::verify_record(load(f))) && ok;
            }
            return ok ? 0 : 1;
        }
        std::vector<ExperimentRecord> recs;
        bool ok = true;
        for (const std::string &f : table_files) {
            recs.push_back(load(f));
            ok = report(f, parahsp::verify_record(recs.back())) && ok;
        }
        emit(parahsp::summary_table(recs, table_format), table_out);
        return ok ? 0 : 1;
    } catch (const parahsp::Error &e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}
