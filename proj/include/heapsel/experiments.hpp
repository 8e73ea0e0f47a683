#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "heapsel/generators.hpp"
#include "heapsel/selection.hpp"

namespace heapsel {

enum class Algorithm { Select, BestFirst };

std::string algorithm_name(Algorithm a);

struct ExperimentPlan {
    std::vector<FamilySpec> families;
    std::vector<std::uint64_t> n_values;  // ascending
    std::uint64_t trials = 1;
    std::vector<Algorithm> algorithms = {Algorithm::Select};
    std::uint64_t base_seed = 1;
    std::size_t threads = 0;  // 0 = ask the hardware

    void validate() const;  // throws InvalidParam

    // Flat "key = value" text, '#' comments. Keys: families, n_values,
    // trials, algorithms, base_seed, threads.
    static ExperimentPlan parse(std::istream& in);
    static ExperimentPlan parse_file(const std::string& path);
};

struct TrialRow {
    std::string family;
    std::uint64_t seed = 0;
    std::uint64_t n = 0;
    std::string algorithm;
    std::uint64_t travel = 0;
    std::uint64_t peak_workspace = 0;
    std::uint64_t outer_iterations = 0;
    std::uint64_t recursive_calls = 0;
    Key result_key = 0;
};

struct AggregateRow {
    std::string family;
    std::uint64_t n = 0;
    std::string algorithm;
    std::uint64_t trials = 0;
    std::uint64_t mean_travel = 0;  // rounded to nearest
    std::uint64_t max_travel = 0;
    std::uint64_t mean_peak_workspace = 0;
    std::uint64_t mean_outer_iterations = 0;
    std::uint64_t mean_recursive_calls = 0;
    double travel_ratio = -1.0;  // mean_travel / (n * log2(n)^3); < 0 = undefined (n = 1)
};

struct PlanResult {
    std::vector<TrialRow> trials;
    std::vector<AggregateRow> aggregates;
};

// Runs trials with seeds base_seed, base_seed+1, ...; deterministic given
// the plan. Rows come back sorted by (family, algorithm, n), trials by seed
// within that. Independent trials may run on several threads; aggregation
// is a deterministic fold in seed order either way.
PlanResult run_plan(const ExperimentPlan& plan);

// One (family, algorithm, n, seed) execution on a fresh cursor.
TrialRow run_trial(const FamilySpec& family, const SourcePtr& source, Algorithm algorithm,
                   std::uint64_t n, std::uint64_t seed, RunStats* stats = nullptr,
                   const RunConfig& cfg = RunConfig{});

// Exact CSV renderings (LF newlines, integer fields, travel_ratio with six
// fractional digits, empty when undefined).
std::string trial_csv(const std::vector<TrialRow>& rows);
std::string trial_csv_row(const TrialRow& row);
std::string trial_csv_header();
std::string aggregate_csv(const std::vector<AggregateRow>& rows);

// Outer-iteration accounting for the growth rounds driven from the top of
// a run: how many iterations each round took versus how many active roots
// it saw on entry.
struct IterationBoundReport {
    std::uint64_t entries = 0;
    double mean_iterations = 0.0;
    double mean_roots_at_entry = 0.0;
    double bound = 0.0;  // 2*log2(mean roots) + 2

    bool within(double slack) const { return mean_iterations <= slack * bound; }
};

IterationBoundReport iteration_bound_check(const FamilySpec& family, std::uint64_t n,
                                           std::uint64_t trials, std::uint64_t base_seed = 1);

// Two-coefficient fit for the space audit: W is the measured peak at the
// calibration point divided by log2(n0), rounded up, and W0 repeats W as
// the additive slack. Peaks that grow like a*log2(n)+b always stay under
// W*log2(n)+W0 for n above the calibration point.
struct SpaceCalibration {
    std::uint64_t w = 0;
    std::uint64_t w0 = 0;
    std::uint64_t calibrated_at_n = 0;

    double budget(std::uint64_t n) const;
    bool admits(double peak, std::uint64_t n) const { return peak <= budget(n); }
};

SpaceCalibration calibrate_space(double peak_at_n0, std::uint64_t n0);

}  // namespace heapsel
