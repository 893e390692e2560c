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

#include <gtest/gtest.h>

#include "parahsp/encoding.hpp"
#include "parahsp/errors.hpp"
#include "parahsp/experiment.hpp"
#include "parahsp/oracles.hpp"
#include "support/brute.hpp"

namespace parahsp {
namespace {

ExperimentConfig cfg(const std::string &problem, unsigned p, std::size_t n, std::size_t trials) {
    ExperimentConfig c;
    c.problem = problem;
    c.p = p;
    c.n = n;
    c.trials = trials;
    c.seed = 7;
    return c;
}

TEST(experiment, parabolic_all_succeed_and_check_by_brute_force) {
    const ExperimentRecord rec = run_experiment(cfg("parabolic", 2, 2, 50));
    ASSERT_EQ(rec.trials.size(), 50u);
    ASSERT_TRUE(rec.success_rate().has_value());
    EXPECT_DOUBLE_EQ(*rec.success_rate(), 1.0);
    auto f = FieldCtx::make(2, 1);
    for (const TrialRecord &t : rec.trials) {
        // Same group by exhaustive membership, independent of flag equality.
        const SubgroupSpec hidden = SubgroupSpec::parabolic(parse_flag(f, t.hidden));
        const SubgroupSpec got = SubgroupSpec::parabolic(parse_flag(f, t.recovered));
        for_each_invertible(f, 2, [&](const Matrix &x) { EXPECT_EQ(membership(x, hidden), membership(x, got)); });
    }
    EXPECT_TRUE(verify_record(rec).ok);
}

TEST(experiment, zero_trials_gives_null_rate) {
    const ExperimentRecord rec = run_experiment(cfg("parabolic", 2, 2, 0));
    EXPECT_FALSE(rec.success_rate().has_value());
    const auto j = rec.to_json();
    EXPECT_TRUE(j["aggregate"]["success_rate"].is_null());
    EXPECT_TRUE(j["aggregate"]["mean_queries"].is_null());
    EXPECT_TRUE(verify_record(rec).ok);
}

TEST(experiment, replay_is_byte_identical) {
    for (const char *problem : {"parabolic", "unipotent", "max-parabolic", "complement", "abelian", "adversary"}) {
        ExperimentConfig c = cfg(problem, 3, problem == std::string("adversary") ? 4 : 2, 6);
        for (const char *format : {"json", "csv"}) {
            c.format = format;
            EXPECT_EQ(run_experiment(c).serialize(), run_experiment(c).serialize()) << problem << " " << format;
        }
    }
}

TEST(experiment, thread_count_does_not_change_the_record) {
    ExperimentConfig c = cfg("parabolic", 3, 2, 12);
    const std::string one = run_experiment(c).serialize();
    c.threads = 3;
    EXPECT_EQ(run_experiment(c).serialize(), one);
}

TEST(experiment, json_round_trip) {
    const ExperimentRecord rec = run_experiment(cfg("unipotent", 2, 3, 4));
    const ExperimentRecord back = ExperimentRecord::from_json(nlohmann::json::parse(rec.serialize()));
    EXPECT_EQ(back.serialize(), rec.serialize());
    EXPECT_THROW(ExperimentRecord::from_json(nlohmann::json::parse("{\"format_version\": 1}")), ParseError);
}

TEST(experiment, corrupted_records_fail_verification) {
    const ExperimentRecord rec = run_experiment(cfg("parabolic", 3, 3, 5));
    ASSERT_TRUE(verify_record(rec).ok);
    {
        ExperimentRecord bad = rec;
        auto f = FieldCtx::make(3, 1);
        Flag fl = parse_flag(f, bad.trials[2].recovered);
        const Flag other = fl.image_under(Matrix::from_rows(f, {{0, 1, 0}, {1, 0, 0}, {0, 0, 1}}));
        bad.trials[2].recovered = encode_flag(other == fl ? Flag::trivial(f, 3) : other);
        const VerifyReport v = verify_record(bad);
        EXPECT_FALSE(v.ok);
        ASSERT_EQ(v.issues.size(), 1u);
        EXPECT_NE(v.issues[0].find("trial 2"), std::string::npos);
    }
    {
        ExperimentRecord bad = rec;
        bad.trials[0].hidden = "3";
        EXPECT_FALSE(verify_record(bad).ok);
    }
    {
        ExperimentRecord bad = rec;
        bad.trials[1].success = false;
        EXPECT_FALSE(verify_record(bad).ok);
    }
    {
        ExperimentRecord bad = rec;
        bad.trials.pop_back();
        EXPECT_FALSE(verify_record(bad).ok);
    }
}

TEST(experiment, adversary_thresholds_grow_with_q) {
    double prev = 0;
    for (auto [p, r] : std::vector<std::pair<unsigned, unsigned>>{{2, 1}, {3, 1}, {2, 2}, {5, 1}}) {
        ExperimentConfig c = cfg("adversary", p, 4, 5);
        c.r = r;
        c.params = "2";
        const ExperimentRecord rec = run_experiment(c);
        EXPECT_DOUBLE_EQ(*rec.success_rate(), 1.0);
        EXPECT_GE(*rec.mean_queries(), prev) << c.q();
        prev = *rec.mean_queries();
        EXPECT_TRUE(verify_record(rec).ok);
    }
}

TEST(experiment, adversary_tampering_detected) {
    ExperimentConfig c = cfg("adversary", 2, 4, 3);
    ExperimentRecord rec = run_experiment(c);
    rec.trials[1].queries += 1;
    EXPECT_FALSE(verify_record(rec).ok);
}

void expect_invalid(ExperimentConfig c, const std::string &field) {
    try {
        c.validate();
        ADD_FAILURE() << "accepted invalid " << field;
    } catch (const InvalidConfig &e) {
        EXPECT_NE(std::string(e.what()).find(field + ":"), std::string::npos) << e.what();
    }
}

TEST(experiment, invalid_configs_name_the_field) {
    ExperimentConfig c = cfg("parabolic", 2, 2, 1);
    c.problem = "nope";
    expect_invalid(c, "problem");
    c = cfg("parabolic", 4, 2, 1);
    expect_invalid(c, "p/r");
    c = cfg("parabolic", 5, 4, 1);
    expect_invalid(c, "budget");
    c = cfg("parabolic", 2, 3, 1);
    c.params = "1,1";
    expect_invalid(c, "params");
    c.params = "x";
    expect_invalid(c, "params");
    c = cfg("adversary", 2, 4, 1);
    c.params = "3";
    expect_invalid(c, "params");
    c = cfg("unipotent", 2, 3, 1);
    c.params = "2";
    expect_invalid(c, "params");
    c = cfg("parabolic", 2, 2, 1);
    c.format = "xml";
    expect_invalid(c, "format");
    c = cfg("parabolic", 2, 1, 1);
    expect_invalid(c, "n");
    EXPECT_THROW(run_experiment(c), InvalidConfig);
}

TEST(experiment, fixed_shapes) {
    ExperimentConfig c = cfg("parabolic", 2, 4, 3);
    c.params = "1,2,1";
    const ExperimentRecord rec = run_experiment(c);
    auto f = FieldCtx::make(2, 1);
    for (const TrialRecord &t : rec.trials) {
        EXPECT_EQ(parse_flag(f, t.hidden).parameter(), (std::vector<std::size_t>{1, 2, 1}));
    }
    EXPECT_TRUE(verify_record(rec).ok);
    c = cfg("max-parabolic", 2, 3, 3);
    c.params = "2";
    for (const TrialRecord &t : run_experiment(c).trials) {
        EXPECT_EQ(parse_subspace(f, t.hidden).dim(), 2u);
    }
}

TEST(experiment, summary_table_rows) {
    const ExperimentRecord a = run_experiment(cfg("parabolic", 2, 2, 3));
    const std::string csv = summary_table({a}, "csv");
    EXPECT_EQ(csv.substr(0, csv.find('\n')), "problem,q,n,params,trials,successes,success_rate,mean_queries,max_queries");
    EXPECT_NE(csv.find("\nparabolic,2,2,random,3,3,1.0,"), std::string::npos);
    EXPECT_TRUE(nlohmann::json::parse(summary_table({a}, "json")).is_array());
    ExperimentConfig c = cfg("adversary", 2, 4, 2);
    const std::string rows = summary_table({run_experiment(c)}, "csv");
    EXPECT_EQ(rows.substr(0, rows.find('\n')), "q,n,d,threshold_N,accountant");
    EXPECT_THROW(summary_table({a}, "xml"), InvalidConfig);
}

} // namespace
} // namespace parahsp
