#include "heapsel/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <thread>
#include <tuple>

#include "heapsel/errors.hpp"
#include "heapsel/workspace.hpp"

namespace heapsel {

std::string algorithm_name(Algorithm a) {
    return a == Algorithm::Select ? "select" : "best-first";
}

namespace {

Algorithm parse_algorithm(const std::string& name) {
    if (name == "select") return Algorithm::Select;
    if (name == "best-first") return Algorithm::BestFirst;
    throw InvalidParam("unknown algorithm '" + name + "'");
}

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : text) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else if (!std::isspace(static_cast<unsigned char>(c))) {
            cur.push_back(c);
        }
    }
    out.push_back(cur);
    std::erase_if(out, [](const std::string& s) { return s.empty(); });
    return out;
}

std::uint64_t parse_u64(const std::string& s, const std::string& what) {
    try {
        std::size_t used = 0;
        std::uint64_t v = std::stoull(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw ParseError("bad integer '" + s + "' for " + what);
    }
}

std::uint64_t rounded_mean(std::uint64_t sum, std::uint64_t count) {
    return (sum + count / 2) / count;
}

double ratio_denominator(std::uint64_t n) {
    const double lg = std::log2(static_cast<double>(n));
    return static_cast<double>(n) * lg * lg * lg;
}

}  // namespace

void ExperimentPlan::validate() const {
    if (families.empty()) throw InvalidParam("plan needs at least one family");
    if (n_values.empty()) throw InvalidParam("plan needs at least one n");
    if (!std::is_sorted(n_values.begin(), n_values.end()))
        throw InvalidParam("plan n_values must be ascending");
    for (std::uint64_t n : n_values)
        if (n == 0) throw InvalidParam("plan n values must be >= 1");
    if (trials == 0) throw InvalidParam("plan needs trials >= 1");
    if (algorithms.empty()) throw InvalidParam("plan needs at least one algorithm");
}

ExperimentPlan ExperimentPlan::parse(std::istream& in) {
    ExperimentPlan plan;
    plan.algorithms.clear();
    bool saw_algorithms = false;

    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
        auto eq = line.find('=');
        std::string key, value;
        if (eq != std::string::npos) {
            key = line.substr(0, eq);
            value = line.substr(eq + 1);
        } else {
            key = line;
        }
        auto trim = [](std::string& s) {
            while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.erase(s.begin());
            while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
        };
        trim(key);
        trim(value);
        if (key.empty()) continue;
        if (eq == std::string::npos)
            throw ParseError("plan line " + std::to_string(lineno) + ": expected 'key = value'");

        try {
            if (key == "families") {
                for (const auto& tok : split_list(value)) plan.families.push_back(FamilySpec::parse(tok));
            } else if (key == "n_values") {
                for (const auto& tok : split_list(value)) plan.n_values.push_back(parse_u64(tok, key));
            } else if (key == "trials") {
                plan.trials = parse_u64(value, key);
            } else if (key == "algorithms") {
                saw_algorithms = true;
                for (const auto& tok : split_list(value)) plan.algorithms.push_back(parse_algorithm(tok));
            } else if (key == "base_seed") {
                plan.base_seed = parse_u64(value, key);
            } else if (key == "threads") {
                plan.threads = parse_u64(value, key);
            } else {
                throw ParseError("unknown plan key '" + key + "'");
            }
        } catch (const InvalidParam& e) {
            throw ParseError("plan line " + std::to_string(lineno) + ": " + e.what());
        }
    }
    if (!saw_algorithms) plan.algorithms = {Algorithm::Select};
    try {
        plan.validate();
    } catch (const InvalidParam& e) {
        throw ParseError(std::string("invalid plan: ") + e.what());
    }
    return plan;
}

ExperimentPlan ExperimentPlan::parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(path + ": cannot open");
    return parse(in);
}

TrialRow run_trial(const FamilySpec& family, const SourcePtr& source, Algorithm algorithm,
                   std::uint64_t n, std::uint64_t seed, RunStats* stats, const RunConfig& cfg) {
    WorkspaceLedger ledger;
    ExplorationCursor cursor(source, ledger);
    RunReport report = algorithm == Algorithm::Select
                           ? select(cursor, n, seed, cfg, stats)
                           : best_first_select(cursor, n);
    TrialRow row;
    row.family = family.label();
    row.seed = seed;
    row.n = n;
    row.algorithm = algorithm_name(algorithm);
    row.travel = report.travel;
    row.peak_workspace = report.peak_workspace;
    row.outer_iterations = report.outer_iterations;
    row.recursive_calls = report.recursive_calls;
    row.result_key = report.result;
    return row;
}

PlanResult run_plan(const ExperimentPlan& plan) {
    plan.validate();

    struct Task {
        const FamilySpec* family;
        SourcePtr source;
        Algorithm algorithm;
        std::uint64_t n;
        std::uint64_t seed;
    };

    std::vector<Task> tasks;
    std::vector<SourcePtr> sources;
    sources.reserve(plan.families.size());
    for (const FamilySpec& fam : plan.families) sources.push_back(make_source(fam));

    for (std::size_t f = 0; f < plan.families.size(); ++f) {
        for (Algorithm alg : plan.algorithms) {
            for (std::uint64_t n : plan.n_values) {
                for (std::uint64_t t = 0; t < plan.trials; ++t) {
                    tasks.push_back(Task{&plan.families[f], sources[f], alg, n, plan.base_seed + t});
                }
            }
        }
    }

    std::vector<TrialRow> rows(tasks.size());
    std::size_t workers = plan.threads != 0 ? plan.threads : std::thread::hardware_concurrency();
    workers = std::max<std::size_t>(1, std::min(workers, tasks.size()));

    if (workers == 1) {
        for (std::size_t i = 0; i < tasks.size(); ++i) {
            const Task& t = tasks[i];
            rows[i] = run_trial(*t.family, t.source, t.algorithm, t.n, t.seed);
        }
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        std::vector<std::exception_ptr> errors(workers);
        for (std::size_t w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                try {
                    for (;;) {
                        std::size_t i = next.fetch_add(1);
                        if (i >= tasks.size()) return;
                        const Task& t = tasks[i];
                        rows[i] = run_trial(*t.family, t.source, t.algorithm, t.n, t.seed);
                    }
                } catch (...) {
                    errors[w] = std::current_exception();
                }
            });
        }
        for (auto& th : pool) th.join();
        for (auto& e : errors)
            if (e) std::rethrow_exception(e);
    }

    auto row_key = [](const TrialRow& r) {
        return std::tie(r.family, r.algorithm, r.n, r.seed);
    };
    std::sort(rows.begin(), rows.end(),
              [&](const TrialRow& a, const TrialRow& b) { return row_key(a) < row_key(b); });

    PlanResult result;
    result.trials = std::move(rows);

    for (std::size_t i = 0; i < result.trials.size();) {
        std::size_t j = i;
        std::uint64_t sum_travel = 0, max_travel = 0, sum_peak = 0, sum_outer = 0, sum_calls = 0;
        const TrialRow& head = result.trials[i];
        while (j < result.trials.size()) {
            const TrialRow& r = result.trials[j];
            if (r.family != head.family || r.algorithm != head.algorithm || r.n != head.n) break;
            sum_travel += r.travel;
            max_travel = std::max(max_travel, r.travel);
            sum_peak += r.peak_workspace;
            sum_outer += r.outer_iterations;
            sum_calls += r.recursive_calls;
            ++j;
        }
        const std::uint64_t count = j - i;
        AggregateRow agg;
        agg.family = head.family;
        agg.n = head.n;
        agg.algorithm = head.algorithm;
        agg.trials = count;
        agg.mean_travel = rounded_mean(sum_travel, count);
        agg.max_travel = max_travel;
        agg.mean_peak_workspace = rounded_mean(sum_peak, count);
        agg.mean_outer_iterations = rounded_mean(sum_outer, count);
        agg.mean_recursive_calls = rounded_mean(sum_calls, count);
        agg.travel_ratio =
            head.n >= 2 ? static_cast<double>(agg.mean_travel) / ratio_denominator(head.n) : -1.0;
        result.aggregates.push_back(std::move(agg));
        i = j;
    }

    return result;
}

std::string trial_csv_header() {
    return "family,seed,n,algorithm,travel,peak_workspace,outer_iterations,recursive_calls,"
           "result_key";
}

std::string trial_csv_row(const TrialRow& r) {
    std::ostringstream out;
    out << r.family << ',' << r.seed << ',' << r.n << ',' << r.algorithm << ',' << r.travel << ','
        << r.peak_workspace << ',' << r.outer_iterations << ',' << r.recursive_calls << ','
        << r.result_key;
    return out.str();
}

std::string trial_csv(const std::vector<TrialRow>& rows) {
    std::string out = trial_csv_header() + "\n";
    for (const TrialRow& r : rows) {
        out += trial_csv_row(r);
        out += '\n';
    }
    return out;
}

std::string aggregate_csv(const std::vector<AggregateRow>& rows) {
    std::string out =
        "family,n,algorithm,trials,mean_travel,max_travel,mean_peak_workspace,"
        "mean_outer_iterations,mean_recursive_calls,travel_ratio\n";
    for (const AggregateRow& r : rows) {
        std::ostringstream line;
        line << r.family << ',' << r.n << ',' << r.algorithm << ',' << r.trials << ','
             << r.mean_travel << ',' << r.max_travel << ',' << r.mean_peak_workspace << ','
             << r.mean_outer_iterations << ',' << r.mean_recursive_calls << ',';
        if (r.travel_ratio >= 0.0) {
            char buf[64];
            std::snprintf(buf, sizeof buf, "%.6f", r.travel_ratio);
            line << buf;
        }
        out += line.str();
        out += '\n';
    }
    return out;
}

IterationBoundReport iteration_bound_check(const FamilySpec& family, std::uint64_t n,
                                           std::uint64_t trials, std::uint64_t base_seed) {
    if (n < 2) throw InvalidParam("iteration_bound_check needs n >= 2");
    if (trials < 1) throw InvalidParam("iteration_bound_check needs trials >= 1");

    SourcePtr source = make_source(family);
    RunConfig cfg;
    cfg.record_extend_entries = true;

    std::uint64_t entries = 0;
    double sum_iters = 0.0;
    double sum_roots = 0.0;
    for (std::uint64_t t = 0; t < trials; ++t) {
        RunStats stats;
        WorkspaceLedger ledger;
        ExplorationCursor cursor(source, ledger);
        select(cursor, n, base_seed + t, cfg, &stats);
        for (const ExtendEntryRecord& rec : stats.entries) {
            if (rec.depth != 1) continue;  // growth rounds driven from the top
            ++entries;
            sum_iters += static_cast<double>(rec.iterations);
            sum_roots += static_cast<double>(rec.roots_at_entry);
        }
    }

    IterationBoundReport report;
    report.entries = entries;
    if (entries > 0) {
        report.mean_iterations = sum_iters / static_cast<double>(entries);
        report.mean_roots_at_entry = sum_roots / static_cast<double>(entries);
        report.bound = 2.0 * std::log2(std::max(report.mean_roots_at_entry, 1.0)) + 2.0;
    }
    return report;
}

double SpaceCalibration::budget(std::uint64_t n) const {
    return static_cast<double>(w) * std::log2(static_cast<double>(std::max<std::uint64_t>(n, 2))) +
           static_cast<double>(w0);
}

SpaceCalibration calibrate_space(double peak_at_n0, std::uint64_t n0) {
    SpaceCalibration cal;
    cal.calibrated_at_n = n0;
    const double lg = std::log2(static_cast<double>(std::max<std::uint64_t>(n0, 2)));
    cal.w = static_cast<std::uint64_t>(std::ceil(peak_at_n0 / lg));
    cal.w0 = cal.w;
    return cal;
}

}  // namespace heapsel
