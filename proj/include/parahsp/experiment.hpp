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

// Batch experiments: seeded hidden instances, runs, records, re-verification.
// The record layout is documented in docs/FORMAT.md.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "parahsp/qsim.hpp"

namespace parahsp {

struct ExperimentConfig {
    /// parabolic, parabolic-dual, max-parabolic, unipotent, complement,
    /// abelian or adversary.
    std::string problem = "parabolic";
    unsigned p = 2, r = 1;
    std::size_t n = 2;
    /// Instance shape, or "random". Flag problems: block sizes "2,1".
    /// max-parabolic: dim U. abelian: dim K. adversary: d.
    std::string params = "random";
    std::size_t trials = 10;
    std::uint64_t seed = 1;
    /// Largest dense state dimension q^{n^2} a quantum problem may use.
    double budget = double(kDenseBudget);
    std::string format = "json"; // json or csv
    std::string out;             // empty: not written
    std::size_t threads = 1;     // trial workers
    bool timing = false;         // record wall time (breaks byte-identical replay)

    unsigned q() const;
    /// Throws InvalidConfig naming the offending field.
    void validate() const;
};

nlohmann::json config_to_json(const ExperimentConfig &c);
/// Throws InvalidConfig on missing or mistyped fields.
ExperimentConfig config_from_json(const nlohmann::json &j);

struct TrialRecord {
    std::size_t index = 0;
    std::string side;
    std::string hidden;    // encoding of the hidden instance
    std::string recovered; // encoding of the answer, empty if none
    bool success = false;
    std::uint64_t queries = 0;
    std::size_t attempts = 0; // guess/verify rounds, adversary: fresh answers
    std::string error;
    std::optional<double> wall_ms;
};

struct ExperimentRecord {
    ExperimentConfig config;
    std::vector<TrialRecord> trials;

    std::size_t successes() const;
    /// successes / trials, nullopt when trials == 0.
    std::optional<double> success_rate() const;
    std::optional<double> mean_queries() const;

    nlohmann::json to_json() const;
    /// Throws ParseError.
    static ExperimentRecord from_json(const nlohmann::json &j);
    /// JSON (sorted keys, 2-space indent) or CSV, per config.format.
    std::string serialize() const;
};

/// Runs every trial. Deterministic given the config when timing is off.
/// Throws InvalidConfig or BudgetExceeded.
ExperimentRecord run_experiment(const ExperimentConfig &config);
/// run_experiment, then writes the record to config.out if set.
ExperimentRecord run(const ExperimentConfig &config);

struct VerifyReport {
    bool ok = true;
    std::vector<std::string> issues;
};

/// Regenerates the hidden instances from the config and re-checks every
/// trial: the hidden encoding must match, and a trial counts as verified iff
/// its claimed success agrees with an independent comparison of the
/// recovered object against the instance. `ok` also requires every trial to
/// have succeeded.
VerifyReport verify_record(const ExperimentRecord &record);

/// One summary row per record: problem,q,n,params,trials,successes,
/// success_rate,mean_queries,max_queries. CSV or a JSON array. CSV over
/// adversary records only gives one q,n,d,threshold_N,accountant row per trial.
std::string summary_table(const std::vector<ExperimentRecord> &records, const std::string &format);

} // namespace parahsp
