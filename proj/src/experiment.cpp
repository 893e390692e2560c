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

#include "parahsp/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include "parahsp/bounds.hpp"
#include "parahsp/encoding.hpp"
#include "parahsp/errors.hpp"
#include "parahsp/hsp.hpp"

namespace parahsp {

namespace {

using nlohmann::json;

constexpr std::size_t kAdversaryQueryCap = 4096;

bool is_adversary(const ExperimentConfig &c) { return c.problem == "adversary"; }

std::vector<std::size_t> parse_sizes(const std::string &text, const char *field) {
    std::vector<std::size_t> out;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            std::size_t used = 0;
            const unsigned long v = std::stoul(tok, &used);
            if (used != tok.size()) {
                throw std::invalid_argument(tok);
            }
            out.push_back(v);
        } catch (const std::exception &) {
            throw InvalidConfig(std::string(field) + ": '" + text + "' is not a list of non-negative integers");
        }
    }
    if (out.empty()) {
        throw InvalidConfig(std::string(field) + ": empty");
    }
    return out;
}

/// The single integer in params, or nullopt for "random".
std::optional<std::size_t> param_int(const ExperimentConfig &c) {
    if (c.params == "random") {
        return std::nullopt;
    }
    const auto v = parse_sizes(c.params, "params");
    if (v.size() != 1) {
        throw InvalidConfig("params: expected one integer for " + c.problem);
    }
    return v[0];
}

std::size_t adversary_d(const ExperimentConfig &c) { return param_int(c).value_or(c.n / 2); }

std::vector<std::size_t> random_composition(std::size_t n, Rng &rng) {
    std::vector<std::size_t> sizes{1};
    for (std::size_t i = 1; i < n; ++i) {
        if (rng.below(2)) {
            sizes.push_back(1);
        } else {
            ++sizes.back();
        }
    }
    return sizes;
}

/// A hidden instance and the object a correct run recovers.
struct Instance {
    Side side = Side::Left;
    std::optional<SubgroupSpec> spec;
    std::variant<std::monostate, Subspace, Flag, Vec> truth;
    std::string hidden;
};

Instance make_instance(const ExperimentConfig &c, const FieldPtr &ctx, Rng &rng) {
    const std::size_t n = c.n;
    Instance in;
    if (is_adversary(c)) {
        in.hidden = "d=" + std::to_string(adversary_d(c));
        return in;
    }
    in.side = rng.below(2) ? Side::Right : Side::Left;
    const Problem prob = parse_problem(c.problem);
    switch (prob) {
    case Problem::Parabolic:
    case Problem::ParabolicDual: {
        const auto sizes = c.params == "random" ? random_composition(n, rng) : parse_sizes(c.params, "params");
        const Flag f = Flag::from_basis(random_invertible(ctx, n, rng), sizes);
        in.spec = SubgroupSpec::parabolic(f);
        in.truth = f;
        in.hidden = encode_flag(f);
        break;
    }
    case Problem::Unipotent: {
        const Flag f = Flag::from_basis(random_invertible(ctx, n, rng), std::vector<std::size_t>(n, 1));
        in.spec = SubgroupSpec::unipotent(f);
        in.truth = f;
        in.hidden = encode_flag(f);
        break;
    }
    case Problem::MaxParabolic: {
        const std::size_t d = param_int(c).value_or(1 + rng.below(n - 1));
        const Subspace u = random_subspace(ctx, n, d, rng);
        in.spec = SubgroupSpec::setwise(u);
        in.truth = u;
        in.hidden = encode_subspace(u);
        break;
    }
    case Problem::Complement: {
        Vec v(n - 1);
        for (Elem &e : v) {
            e = Elem(rng.below(ctx->q()));
        }
        in.spec = SubgroupSpec::affine_complement(ctx, v);
        in.truth = v;
        in.hidden = encode_vector(v);
        break;
    }
    case Problem::Abelian: {
        const std::size_t k = param_int(c).value_or(rng.below(n));
        const Subspace tail = random_subspace(ctx, n - 1, k, rng);
        std::vector<Vec> lifted;
        for (const Vec &b : tail.basis_vectors()) {
            Vec v(n, 0);
            std::copy(b.begin(), b.end(), v.begin() + 1);
            lifted.push_back(v);
        }
        const Subspace kk = Subspace::span(ctx, n, lifted);
        Vec e1(n, 0);
        e1[0] = 1;
        in.spec = SubgroupSpec::setwise(kk.sum(Subspace::span(ctx, n, {e1})));
        in.truth = kk;
        in.hidden = encode_subspace(kk);
        break;
    }
    }
    return in;
}

std::string encode_recovered(const std::variant<std::monostate, Subspace, Flag, Vec> &r) {
    if (auto *s = std::get_if<Subspace>(&r)) {
        return encode_subspace(*s);
    }
    if (auto *f = std::get_if<Flag>(&r)) {
        return encode_flag(*f);
    }
    if (auto *v = std::get_if<Vec>(&r)) {
        return encode_vector(*v);
    }
    return "";
}

struct AdversaryRun {
    std::vector<Matrix> queries;
    GameOutcome game;
};

AdversaryRun play_adversary(const ExperimentConfig &c, const FieldPtr &ctx, Rng &rng) {
    const std::size_t d = adversary_d(c);
    AdversaryRun a;
    a.queries = random_queries(ctx, c.n, kAdversaryQueryCap, rng.next());
    const Strategy s = consistent_guess_strategy(ctx, c.n, d, a.queries);
    a.game = adversary_game(s, ctx, c.n, d, kAdversaryQueryCap);
    return a;
}

std::string encode_adversary(const GameOutcome &g) {
    std::string out = std::string(accountant_name(g.accountant));
    for (const Subspace &w : g.witnesses) {
        out += " " + encode_subspace(w);
    }
    return out;
}

TrialRecord run_trial(const ExperimentConfig &c, const FieldPtr &ctx, std::size_t index) {
    const auto start = std::chrono::steady_clock::now();
    Rng rng = Rng::for_stream(c.seed, index);
    const Instance in = make_instance(c, ctx, rng);
    TrialRecord t;
    t.index = index;
    t.hidden = in.hidden;
    if (is_adversary(c)) {
        t.side = "-";
        const AdversaryRun a = play_adversary(c, ctx, rng);
        t.success = a.game.threshold.has_value() &&
                    (a.game.accountant == Accountant::Certificate || a.game.witnesses.size() == 2);
        t.queries = a.game.threshold.value_or(0);
        t.attempts = a.game.queries;
        t.recovered = encode_adversary(a.game);
        if (!a.game.threshold) {
            t.error = "adversary never forced within " + std::to_string(kAdversaryQueryCap) + " queries";
        }
    } else {
        t.side = side_name(in.side);
        const HidingOracle oracle(*in.spec, in.side);
        const AlgoConfig algo;
        const HSPResult r = solve(parse_problem(c.problem), oracle, algo, rng);
        t.recovered = encode_recovered(r.recovered);
        t.success = r.error.empty() && r.recovered == in.truth;
        t.queries = r.queries;
        t.attempts = r.trials;
        t.error = r.error;
    }
    if (c.timing) {
        t.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    }
    return t;
}

std::string csv_field(const std::string &s) {
    if (s.find_first_of(",\"\n") == std::string::npos) {
        return s;
    }
    std::string out = "\"";
    for (char ch : s) {
        out += ch == '"' ? std::string("\"\"") : std::string(1, ch);
    }
    return out + "\"";
}

template <typename T>
T field(const json &j, const char *key) {
    if (!j.contains(key)) {
        throw ParseError(std::string("record is missing '") + key + "'");
    }
    try {
        return j.at(key).get<T>();
    } catch (const json::exception &e) {
        throw ParseError(std::string("record field '") + key + "': " + e.what());
    }
}

} // namespace

// ---------------------------------------------------------------------------

unsigned ExperimentConfig::q() const {
    unsigned q = 1;
    for (unsigned i = 0; i < r; ++i) {
        q *= p;
    }
    return q;
}

void ExperimentConfig::validate() const {
    static const char *kProblems[] = {"parabolic", "parabolic-dual", "max-parabolic", "unipotent",
                                      "complement", "abelian", "adversary"};
    if (std::find(std::begin(kProblems), std::end(kProblems), problem) == std::end(kProblems)) {
        throw InvalidConfig("problem: unknown problem '" + problem + "'");
    }
    try {
        FieldCtx::make(p, r);
    } catch (const std::invalid_argument &e) {
        throw InvalidConfig(std::string("p/r: ") + e.what());
    }
    if (n < 2) {
        throw InvalidConfig("n: must be at least 2");
    }
    if (format != "json" && format != "csv") {
        throw InvalidConfig("format: expected json or csv, got '" + format + "'");
    }
    if (threads == 0) {
        throw InvalidConfig("threads: must be positive");
    }
    if (!(budget > 0)) {
        throw InvalidConfig("budget: must be positive");
    }
    if (is_adversary(*this)) {
        const std::size_t d = adversary_d(*this);
        if (d == 0 || 2 * d > n) {
            throw InvalidConfig("params: adversary needs 1 <= d <= n/2");
        }
        return;
    }
    if (std::pow(double(q()), double(n * n)) > budget) {
        throw InvalidConfig("budget: q^(n^2) = " + std::to_string(q()) + "^" + std::to_string(n * n) +
                            " exceeds the dense budget");
    }
    const Problem prob = parse_problem(problem);
    if (params == "random") {
        return;
    }
    if (prob == Problem::Parabolic || prob == Problem::ParabolicDual) {
        std::size_t sum = 0;
        for (std::size_t s : parse_sizes(params, "params")) {
            if (s == 0) {
                throw InvalidConfig("params: block sizes must be positive");
            }
            sum += s;
        }
        if (sum != n) {
            throw InvalidConfig("params: block sizes must sum to n");
        }
    } else if (prob == Problem::MaxParabolic) {
        const std::size_t d = *param_int(*this);
        if (d == 0 || d >= n) {
            throw InvalidConfig("params: max-parabolic needs 0 < dim U < n");
        }
    } else if (prob == Problem::Abelian) {
        if (*param_int(*this) >= n) {
            throw InvalidConfig("params: abelian needs dim K < n");
        }
    } else {
        throw InvalidConfig("params: " + problem + " takes no parameters");
    }
}

json config_to_json(const ExperimentConfig &c) {
    return json{{"problem", c.problem}, {"p", c.p},           {"r", c.r},           {"q", c.q()},
                {"n", c.n},             {"params", c.params}, {"trials", c.trials}, {"seed", c.seed},
                {"budget", c.budget},   {"format", c.format}, {"timing", c.timing}};
}

ExperimentConfig config_from_json(const json &j) {
    ExperimentConfig c;
    try {
        c.problem = field<std::string>(j, "problem");
        c.p = field<unsigned>(j, "p");
        c.r = field<unsigned>(j, "r");
        c.n = field<std::size_t>(j, "n");
        c.params = field<std::string>(j, "params");
        c.trials = field<std::size_t>(j, "trials");
        c.seed = field<std::uint64_t>(j, "seed");
        c.budget = field<double>(j, "budget");
        c.format = field<std::string>(j, "format");
        c.timing = field<bool>(j, "timing");
    } catch (const ParseError &e) {
        throw InvalidConfig(e.what());
    }
    return c;
}

std::size_t ExperimentRecord::successes() const {
    std::size_t s = 0;
    for (const TrialRecord &t : trials) {
        s += t.success;
    }
    return s;
}

std::optional<double> ExperimentRecord::success_rate() const {
    if (trials.empty()) {
        return std::nullopt;
    }
    return double(successes()) / double(trials.size());
}

std::optional<double> ExperimentRecord::mean_queries() const {
    if (trials.empty()) {
        return std::nullopt;
    }
    double sum = 0;
    for (const TrialRecord &t : trials) {
        sum += double(t.queries);
    }
    return sum / double(trials.size());
}

json ExperimentRecord::to_json() const {
    json ts = json::array();
    for (const TrialRecord &t : trials) {
        json jt{{"index", t.index},         {"side", t.side},       {"hidden", t.hidden},
                {"recovered", t.recovered}, {"success", t.success}, {"queries", t.queries},
                {"attempts", t.attempts},   {"error", t.error}};
        if (t.wall_ms) {
            jt["wall_ms"] = *t.wall_ms;
        }
        ts.push_back(std::move(jt));
    }
    const auto rate = success_rate();
    const auto mean = mean_queries();
    return json{{"format_version", 1},
                {"config", config_to_json(config)},
                {"trials", std::move(ts)},
                {"aggregate",
                 {{"successes", successes()},
                  {"success_rate", rate ? json(*rate) : json(nullptr)},
                  {"mean_queries", mean ? json(*mean) : json(nullptr)}}}};
}

ExperimentRecord ExperimentRecord::from_json(const json &j) {
    if (!j.is_object()) {
        throw ParseError("record must be a JSON object");
    }
    if (field<int>(j, "format_version") != 1) {
        throw ParseError("unsupported format_version");
    }
    ExperimentRecord rec;
    try {
        rec.config = config_from_json(field<json>(j, "config"));
    } catch (const InvalidConfig &e) {
        throw ParseError(e.what());
    }
    for (const json &jt : field<json>(j, "trials")) {
        TrialRecord t;
        t.index = field<std::size_t>(jt, "index");
        t.side = field<std::string>(jt, "side");
        t.hidden = field<std::string>(jt, "hidden");
        t.recovered = field<std::string>(jt, "recovered");
        t.success = field<bool>(jt, "success");
        t.queries = field<std::uint64_t>(jt, "queries");
        t.attempts = field<std::size_t>(jt, "attempts");
        t.error = field<std::string>(jt, "error");
        if (jt.contains("wall_ms")) {
            t.wall_ms = field<double>(jt, "wall_ms");
        }
        rec.trials.push_back(std::move(t));
    }
    return rec;
}

std::string ExperimentRecord::serialize() const {
    if (config.format == "json") {
        return to_json().dump(2) + "\n";
    }
    std::ostringstream os;
    os << "index,side,hidden,recovered,success,queries,attempts,error";
    if (config.timing) {
        os << ",wall_ms";
    }
    os << '\n';
    for (const TrialRecord &t : trials) {
        os << t.index << ',' << t.side << ',' << csv_field(t.hidden) << ',' << csv_field(t.recovered) << ','
           << (t.success ? 1 : 0) << ',' << t.queries << ',' << t.attempts << ',' << csv_field(t.error);
        if (t.wall_ms) {
            os << ',' << *t.wall_ms;
        }
        os << '\n';
    }
    return os.str();
}

ExperimentRecord run_experiment(const ExperimentConfig &config) {
    config.validate();
    const FieldPtr ctx = FieldCtx::make(config.p, config.r);
    ExperimentRecord rec;
    rec.config = config;
    rec.trials.resize(config.trials);
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mu;
    auto worker = [&] {
        for (std::size_t i = next++; i < config.trials; i = next++) {
            try {
                rec.trials[i] = run_trial(config, ctx, i);
            } catch (...) {
                std::lock_guard lock(failure_mu);
                if (!failure) {
                    failure = std::current_exception();
                }
            }
        }
    };
    const std::size_t workers = std::min(config.threads, std::max<std::size_t>(config.trials, 1));
    std::vector<std::thread> pool;
    for (std::size_t w = 1; w < workers; ++w) {
        pool.emplace_back(worker);
    }
    worker();
    for (std::thread &t : pool) {
        t.join();
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
    return rec;
}

ExperimentRecord run(const ExperimentConfig &config) {
    ExperimentRecord rec = run_experiment(config);
    if (!config.out.empty()) {
        std::ofstream os(config.out, std::ios::binary);
        if (!os) {
            throw InvalidConfig("out: cannot open '" + config.out + "' for writing");
        }
        os << rec.serialize();
    }
    return rec;
}

// ---------------------------------------------------------------------------

namespace {

bool uncovered_by_quotients(const std::vector<Matrix> &qs, std::size_t len, const Subspace &u) {
    for (std::size_t j = 0; j < len; ++j) {
        const Matrix inv = qs[j].inverse();
        for (std::size_t i = 0; i < j; ++i) {
            const Matrix g = inv * qs[i];
            if (!g.is_scalar() && u.image_under(g) == u) {
                return false;
            }
        }
    }
    return true;
}

/// True iff the recovered text equals the instance's answer.
bool matches(const FieldPtr &ctx, const Instance &in, const std::string &text) {
    if (text.empty()) {
        return false;
    }
    try {
        if (auto *f = std::get_if<Flag>(&in.truth)) {
            return parse_flag(ctx, text) == *f;
        }
        if (auto *s = std::get_if<Subspace>(&in.truth)) {
            return parse_subspace(ctx, text) == *s;
        }
        if (auto *v = std::get_if<Vec>(&in.truth)) {
            return parse_vector(ctx, text) == *v;
        }
    } catch (const Error &) {
        return false;
    }
    return false;
}

} // namespace

VerifyReport verify_record(const ExperimentRecord &record) {
    VerifyReport rep;
    const ExperimentConfig &c = record.config;
    auto fail = [&](std::size_t i, const std::string &why) {
        rep.ok = false;
        rep.issues.push_back("trial " + std::to_string(i) + ": " + why);
    };
    try {
        c.validate();
    } catch (const InvalidConfig &e) {
        rep.ok = false;
        rep.issues.push_back(e.what());
        return rep;
    }
    if (record.trials.size() != c.trials) {
        rep.ok = false;
        rep.issues.push_back("record has " + std::to_string(record.trials.size()) + " trials, config says " +
                             std::to_string(c.trials));
    }
    const FieldPtr ctx = FieldCtx::make(c.p, c.r);
    for (std::size_t i = 0; i < record.trials.size(); ++i) {
        const TrialRecord &t = record.trials[i];
        if (t.index != i) {
            fail(i, "index out of order");
            continue;
        }
        Rng rng = Rng::for_stream(c.seed, i);
        const Instance in = make_instance(c, ctx, rng);
        if (t.hidden != in.hidden) {
            fail(i, "hidden instance does not match the seed");
            continue;
        }
        bool correct;
        if (is_adversary(c)) {
            const AdversaryRun a = play_adversary(c, ctx, rng);
            correct = a.game.threshold && *a.game.threshold == t.queries && encode_adversary(a.game) == t.recovered;
            if (correct) {
                const std::size_t answered = *a.game.threshold - 1;
                for (const Subspace &w : a.game.witnesses) {
                    correct = correct && uncovered_by_quotients(a.queries, answered, w);
                }
                correct = correct && (a.game.witnesses.size() == 2 ? !(a.game.witnesses[0] == a.game.witnesses[1])
                                                                   : a.game.accountant == Accountant::Certificate);
            }
        } else {
            correct = matches(ctx, in, t.recovered);
        }
        if (t.success != correct) {
            fail(i, t.success ? "claimed success does not verify" : "claimed failure but the answer is correct");
        } else if (!t.success) {
            fail(i, "trial failed" + (t.error.empty() ? std::string() : ": " + t.error));
        }
    }
    return rep;
}

std::string summary_table(const std::vector<ExperimentRecord> &records, const std::string &format) {
    if (format != "csv" && format != "json") {
        throw InvalidConfig("format: expected json or csv, got '" + format + "'");
    }
    const bool thresholds = !records.empty() && std::all_of(records.begin(), records.end(), [](const auto &r) {
        return is_adversary(r.config);
    });
    if (format == "csv" && thresholds) {
        std::vector<ThresholdRow> rows;
        for (const ExperimentRecord &r : records) {
            for (const TrialRecord &t : r.trials) {
                const Accountant a = t.recovered.rfind("certificate", 0) == 0 ? Accountant::Certificate
                                                                               : Accountant::Exact;
                rows.push_back({r.config.q(), r.config.n, adversary_d(r.config), std::size_t(t.queries), a});
            }
        }
        std::ostringstream os;
        write_threshold_csv(os, rows);
        return os.str();
    }
    json rows = json::array();
    std::ostringstream os;
    os << "problem,q,n,params,trials,successes,success_rate,mean_queries,max_queries\n";
    for (const ExperimentRecord &r : records) {
        std::uint64_t max_q = 0;
        for (const TrialRecord &t : r.trials) {
            max_q = std::max(max_q, t.queries);
        }
        const auto rate = r.success_rate();
        const auto mean = r.mean_queries();
        json row{{"problem", r.config.problem},
                 {"q", r.config.q()},
                 {"n", r.config.n},
                 {"params", r.config.params},
                 {"trials", r.trials.size()},
                 {"successes", r.successes()},
                 {"success_rate", rate ? json(*rate) : json(nullptr)},
                 {"mean_queries", mean ? json(*mean) : json(nullptr)},
                 {"max_queries", max_q}};
        os << r.config.problem << ',' << r.config.q() << ',' << r.config.n << ',' << csv_field(r.config.params) << ','
           << r.trials.size() << ',' << r.successes() << ',' << (rate ? row["success_rate"].dump() : "") << ','
           << (mean ? row["mean_queries"].dump() : "") << ',' << max_q << '\n';
        rows.push_back(std::move(row));
    }
    return format == "csv" ? os.str() : rows.dump(2) + "\n";
}

} // namespace parahsp
