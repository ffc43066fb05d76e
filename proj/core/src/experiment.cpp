#include "hhgso/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "hhgso/covering_array.hpp"
#include "hhgso/team.hpp"

namespace hhgso::bench {

namespace {

constexpr std::array<const char*, kAlgorithmCount> kFractionHeaders = {
    "frac_HenryGas", "frac_Jaya", "frac_SootyTern", "frac_Butterfly", "frac_Owl"};

double elapsed_ms(std::chrono::steady_clock::time_point start) {
    const auto end = std::chrono::steady_clock::now();
    return std::chrono::duration<double, std::milli>(end - start).count();
}

} // namespace

std::string_view to_string(ProblemKind kind) {
    return kind == ProblemKind::kTeam ? "team" : "ca";
}

void ExperimentConfig::validate() const {
    if (runs == 0) {
        throw std::invalid_argument("experiment: runs must be >= 1");
    }
    if (workers == 0) {
        throw std::invalid_argument("experiment: workers must be >= 1");
    }
    if (write_traces && out_path.empty()) {
        throw std::invalid_argument("experiment: traces need an output path");
    }
    engine.validate();
    if (problem == ProblemKind::kTeam) {
        if (dataset_path.empty()) {
            throw std::invalid_argument("experiment: team runs need a dataset");
        }
        if (required_skills.empty()) {
            throw std::invalid_argument("experiment: team runs need required skills");
        }
    } else if (ca_spec.empty()) {
        throw std::invalid_argument("experiment: ca runs need a spec");
    }
}

Summary summarize(const std::vector<RunRecord>& records) {
    Summary summary;
    for (const RunRecord& record : records) {
        if (!record.ok) {
            continue;
        }
        ++summary.run_count;
        if (summary.run_count == 1) {
            summary.best_cost = record.best_cost;
            summary.worst_cost = record.best_cost;
        } else {
            summary.best_cost = std::min(summary.best_cost, record.best_cost);
            summary.worst_cost = std::max(summary.worst_cost, record.best_cost);
        }
        summary.mean_cost += record.best_cost;
        summary.mean_time_ms += record.time_ms;
        for (std::size_t i = 0; i < kAlgorithmCount; ++i) {
            summary.mean_fractions[i] += record.fractions[i];
        }
    }
    if (summary.run_count == 0) {
        return summary;
    }
    const auto n = static_cast<double>(summary.run_count);
    summary.mean_cost /= n;
    summary.mean_time_ms /= n;
    for (double& fraction : summary.mean_fractions) {
        fraction /= n;
    }
    double variance = 0.0;
    for (const RunRecord& record : records) {
        if (record.ok) {
            const double diff = record.best_cost - summary.mean_cost;
            variance += diff * diff;
        }
    }
    summary.stddev_cost = std::sqrt(variance / n);
    return summary;
}

bool ExperimentReport::all_failed() const {
    return std::none_of(records.begin(), records.end(),
                        [](const RunRecord& r) { return r.ok; });
}

ExperimentReport run_experiment_with(const ExperimentConfig& config, const RunFn& runner) {
    config.validate();

    ExperimentReport report;
    report.config = config;
    report.records.resize(config.runs);

    const auto execute = [&](std::size_t index) {
        const std::uint64_t seed = config.engine.seed + index;
        try {
            report.records[index] = runner(seed);
        } catch (const std::exception& error) {
            RunRecord failed;
            failed.problem = std::string(to_string(config.problem));
            failed.seed = seed;
            failed.ok = false;
            failed.error = error.what();
            report.records[index] = std::move(failed);
        }
    };

    if (config.workers <= 1 || config.runs <= 1) {
        for (std::size_t i = 0; i < config.runs; ++i) {
            execute(i);
        }
    } else {
        std::atomic<std::size_t> next{0};
        const std::size_t worker_count = std::min(config.workers, config.runs);
        std::vector<std::thread> workers;
        workers.reserve(worker_count);
        for (std::size_t w = 0; w < worker_count; ++w) {
            workers.emplace_back([&] {
                while (true) {
                    const std::size_t index = next.fetch_add(1);
                    if (index >= config.runs) {
                        return;
                    }
                    execute(index);
                }
            });
        }
        for (std::thread& worker : workers) {
            worker.join();
        }
    }

    report.summary = summarize(report.records);
    return report;
}

namespace {

RunFn make_team_runner(const ExperimentConfig& config) {
    std::ifstream in(config.dataset_path);
    if (!in) {
        throw std::runtime_error("cannot open dataset `" + config.dataset_path + "`");
    }
    auto pool = std::make_shared<const team::ExpertPool>(team::load_expert_pool(in));
    auto instance =
        std::make_shared<const team::TeamInstance>(pool, config.required_skills);
    auto objective = std::shared_ptr<const Objective>(team::make_objective(instance));
    const EngineConfig engine = config.engine;

    return [instance, objective, engine](std::uint64_t seed) {
        EngineConfig run_config = engine;
        run_config.seed = seed;

        const auto start = std::chrono::steady_clock::now();
        const RunResult run_result = run(run_config, *objective);
        const double ms = elapsed_ms(start);

        RunRecord record;
        record.problem = "team";
        record.seed = seed;
        record.ok = true;
        record.best_cost = run_result.best_cost;
        record.size_metric = static_cast<double>(
            team::decode(run_result.best.position, *instance).members.size());
        record.evaluations = run_result.evaluations_used;
        record.time_ms = ms;
        record.fractions = run_result.execution_fractions();
        record.trace.reserve(run_result.trace.size());
        for (std::size_t i = 0; i < run_result.trace.size(); ++i) {
            record.trace.emplace_back(i, run_result.trace[i]);
        }
        return record;
    };
}

RunFn make_ca_runner(const ExperimentConfig& config) {
    const ca::CoveringSpec spec = ca::parse_spec(config.ca_spec);
    const EngineConfig engine = config.engine;
    const bool verify = config.verify_arrays;

    return [spec, engine, verify](std::uint64_t seed) {
        EngineConfig run_config = engine;
        run_config.seed = seed;

        const auto start = std::chrono::steady_clock::now();
        const ca::GenerationResult generated = ca::generate_array(spec, run_config);
        const double ms = elapsed_ms(start);

        if (verify) {
            const auto check = ca::verify_array(generated.array);
            if (!check.covered) {
                throw InternalError("generated array misses " +
                                    check.missing->to_string());
            }
        }

        RunRecord record;
        record.problem = "ca";
        record.seed = seed;
        record.ok = true;
        record.best_cost = static_cast<double>(generated.array.row_count());
        record.size_metric = record.best_cost;
        record.evaluations = generated.evaluations_used;
        record.time_ms = ms;
        std::uint64_t total_ticks = 0;
        for (const std::uint64_t ticks : generated.execution_counts) {
            total_ticks += ticks;
        }
        if (total_ticks > 0) {
            for (std::size_t i = 0; i < kAlgorithmCount; ++i) {
                record.fractions[i] = static_cast<double>(generated.execution_counts[i]) /
                                      static_cast<double>(total_ticks);
            }
        }
        record.trace.reserve(generated.coverage_trace.size());
        for (std::size_t row = 0; row < generated.coverage_trace.size(); ++row) {
            record.trace.emplace_back(row + 1,
                                      static_cast<double>(generated.coverage_trace[row]));
        }
        return record;
    };
}

} // namespace

ExperimentReport run_experiment(const ExperimentConfig& config) {
    config.validate();
    const RunFn runner = config.problem == ProblemKind::kTeam ? make_team_runner(config)
                                                              : make_ca_runner(config);
    return run_experiment_with(config, runner);
}

void write_csv(const ExperimentReport& report, std::ostream& out) {
    out << "problem,seed,best_cost,size_metric,evaluations,time_ms";
    for (const char* header : kFractionHeaders) {
        out << ',' << header;
    }
    out << '\n';
    out << std::setprecision(17);
    for (const RunRecord& record : report.records) {
        out << record.problem << ',' << record.seed << ',';
        if (record.ok) {
            out << record.best_cost << ',' << record.size_metric << ','
                << record.evaluations << ',' << record.time_ms;
            for (const double fraction : record.fractions) {
                out << ',' << fraction;
            }
        } else {
            out << ",,,,,,,,"; // failure marker: empty numeric fields
        }
        out << '\n';
    }
}

std::vector<RunRecord> read_records_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) {
        throw ParseError("report csv: missing header");
    }
    std::vector<RunRecord> records;
    std::size_t line_number = 1;
    while (std::getline(in, line)) {
        ++line_number;
        if (line.empty()) {
            continue;
        }
        std::vector<std::string> fields;
        std::stringstream row(line);
        std::string field;
        while (std::getline(row, field, ',')) {
            fields.push_back(field);
        }
        while (fields.size() < 6 + kAlgorithmCount) {
            fields.emplace_back();
        }
        RunRecord record;
        record.problem = fields[0];
        try {
            record.seed = std::stoull(fields[1]);
            record.ok = !fields[2].empty();
            if (record.ok) {
                record.best_cost = std::stod(fields[2]);
                record.size_metric = std::stod(fields[3]);
                record.evaluations = std::stoull(fields[4]);
                record.time_ms = std::stod(fields[5]);
                for (std::size_t i = 0; i < kAlgorithmCount; ++i) {
                    record.fractions[i] = std::stod(fields[6 + i]);
                }
            }
        } catch (const std::exception&) {
            throw ParseError("report csv: malformed line " + std::to_string(line_number));
        }
        records.push_back(std::move(record));
    }
    return records;
}

namespace {

nlohmann::json fractions_json(const std::array<double, kAlgorithmCount>& fractions) {
    nlohmann::json object = nlohmann::json::object();
    for (std::size_t i = 0; i < kAlgorithmCount; ++i) {
        object[kFractionHeaders[i]] = fractions[i];
    }
    return object;
}

} // namespace

void write_json(const ExperimentReport& report, std::ostream& out) {
    nlohmann::json doc;
    doc["problem"] = std::string(to_string(report.config.problem));
    doc["runs"] = nlohmann::json::array();
    for (const RunRecord& record : report.records) {
        nlohmann::json entry;
        entry["problem"] = record.problem;
        entry["seed"] = record.seed;
        if (record.ok) {
            entry["best_cost"] = record.best_cost;
            entry["size_metric"] = record.size_metric;
            entry["evaluations"] = record.evaluations;
            entry["time_ms"] = record.time_ms;
            for (std::size_t i = 0; i < kAlgorithmCount; ++i) {
                entry[kFractionHeaders[i]] = record.fractions[i];
            }
        } else {
            entry["error"] = record.error;
        }
        doc["runs"].push_back(std::move(entry));
    }
    doc["summary"] = {
        {"run_count", report.summary.run_count},
        {"best_cost", report.summary.best_cost},
        {"worst_cost", report.summary.worst_cost},
        {"mean_cost", report.summary.mean_cost},
        {"stddev_cost", report.summary.stddev_cost},
        {"mean_time_ms", report.summary.mean_time_ms},
        {"mean_distribution", fractions_json(report.summary.mean_fractions)},
    };
    out << doc.dump(2) << '\n';
}

void emit_report(const ExperimentReport& report) {
    const auto write = [&](std::ostream& out) {
        if (report.config.format == ReportFormat::kCsv) {
            write_csv(report, out);
        } else {
            write_json(report, out);
        }
    };
    if (report.config.out_path.empty()) {
        write(std::cout);
        return;
    }
    std::ofstream out(report.config.out_path);
    if (!out) {
        throw std::runtime_error("cannot open report output `" + report.config.out_path +
                                 "`");
    }
    write(out);
    if (!out) {
        throw std::runtime_error("failed writing report to `" + report.config.out_path +
                                 "`");
    }
}

void emit_traces(const ExperimentReport& report) {
    if (report.config.out_path.empty()) {
        throw std::invalid_argument("traces need a report output path");
    }
    for (std::size_t i = 0; i < report.records.size(); ++i) {
        const RunRecord& record = report.records[i];
        if (!record.ok) {
            continue;
        }
        const std::string path =
            report.config.out_path + ".run" + std::to_string(i) + ".trace.csv";
        std::ofstream out(path);
        if (!out) {
            throw std::runtime_error("cannot open trace output `" + path + "`");
        }
        out << "iteration,best_cost\n" << std::setprecision(17);
        for (const auto& [step, value] : record.trace) {
            out << step << ',' << value << '\n';
        }
    }
}

} // namespace hhgso::bench
