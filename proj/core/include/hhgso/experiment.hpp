#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "hhgso/engine.hpp"

namespace hhgso::bench {

enum class ProblemKind { kTeam, kCoveringArray };
enum class ReportFormat { kCsv, kJson };

std::string_view to_string(ProblemKind kind);

/// A fully-resolved experiment: one problem, `runs` seeded repetitions with
/// seeds seed, seed+1, ..., aggregation into best/worst/mean statistics.
struct ExperimentConfig {
    ProblemKind problem = ProblemKind::kTeam;

    // Team formation inputs.
    std::string dataset_path;
    std::vector<std::string> required_skills;

    // Covering-array inputs.
    std::string ca_spec;
    bool verify_arrays = false;

    EngineConfig engine;
    std::size_t runs = 30;
    std::size_t workers = 1;
    bool write_traces = false;
    ReportFormat format = ReportFormat::kCsv;
    std::string out_path;       // empty writes the report to stdout
    std::string array_out_path; // optional: best generated array (ca only)

    void validate() const;
};

/// One run's record. A failed run keeps ok == false with the error message;
/// its numeric fields are meaningless and excluded from the summary.
struct RunRecord {
    std::string problem;
    std::uint64_t seed = 0;
    bool ok = false;
    std::string error;

    double best_cost = 0.0;
    double size_metric = 0.0; // team members, or covering-array rows
    std::uint64_t evaluations = 0;
    double time_ms = 0.0;
    std::array<double, kAlgorithmCount> fractions{}; // indexed by AlgorithmId

    /// Convergence trace: (step, value). Engine iterations and best cost for
    /// team runs; committed rows and remaining uncovered tuples for arrays.
    std::vector<std::pair<std::uint64_t, double>> trace;
};

struct Summary {
    std::size_t run_count = 0; // successful runs only
    double best_cost = 0.0;
    double worst_cost = 0.0;
    double mean_cost = 0.0;
    double stddev_cost = 0.0; // population standard deviation
    double mean_time_ms = 0.0;
    std::array<double, kAlgorithmCount> mean_fractions{};
};

/// Recomputes the summary from the records (failed runs skipped).
Summary summarize(const std::vector<RunRecord>& records);

struct ExperimentReport {
    ExperimentConfig config;
    std::vector<RunRecord> records; // ordered by seed
    Summary summary;

    bool all_failed() const;
};

using RunFn = std::function<RunRecord(std::uint64_t seed)>;

/// Seed-ladder driver: executes runner for seeds seed..seed+runs-1, possibly
/// on a worker pool, records failures per run, and orders records by seed
/// regardless of worker scheduling.
ExperimentReport run_experiment_with(const ExperimentConfig& config, const RunFn& runner);

/// Builds the configured problem (loads the dataset / parses the spec) and
/// drives run_experiment_with. Wall time is measured around the solver call
/// only, not around input loading.
ExperimentReport run_experiment(const ExperimentConfig& config);

/// Stable CSV column order:
/// problem,seed,best_cost,size_metric,evaluations,time_ms,
/// frac_HenryGas,frac_Jaya,frac_SootyTern,frac_Butterfly,frac_Owl.
/// Failed runs leave the numeric fields empty.
void write_csv(const ExperimentReport& report, std::ostream& out);

/// Parses write_csv output back into records (summary is recomputable via
/// summarize). Throws ParseError on malformed input.
std::vector<RunRecord> read_records_csv(std::istream& in);

/// JSON report with per-run field names matching the CSV headers, plus the
/// summary block.
void write_json(const ExperimentReport& report, std::ostream& out);

/// Writes the report to `config.out_path` (stdout when empty) in the
/// configured format. I/O failures carry the path in the message.
void emit_report(const ExperimentReport& report);

/// Writes `<out_path>.run<k>.trace.csv` (columns iteration,best_cost) for
/// each successful run. Requires a non-empty out_path.
void emit_traces(const ExperimentReport& report);

} // namespace hhgso::bench
