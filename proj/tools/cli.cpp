#include "cli.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "hhgso/covering_array.hpp"
#include "hhgso/team.hpp"

namespace hhgso::cli {

namespace {

std::vector<AlgorithmId> parse_roster(const std::string& list) {
    std::vector<AlgorithmId> roster;
    std::stringstream stream(list);
    std::string token;
    while (std::getline(stream, token, ',')) {
        if (token.empty()) {
            continue;
        }
        const auto id = parse_algorithm_id(token);
        if (!id.has_value()) {
            throw UsageError("unknown algorithm `" + token +
                             "` (expected HenryGas, Jaya, SootyTern, Butterfly or Owl)");
        }
        if (std::find(roster.begin(), roster.end(), *id) != roster.end()) {
            throw UsageError("algorithm `" + token + "` listed twice");
        }
        roster.push_back(*id);
    }
    if (roster.empty()) {
        throw UsageError("--algorithms needs at least one name");
    }
    return roster;
}

void add_engine_and_run_flags(CLI::App& cmd, bench::ExperimentConfig& config,
                              std::string& algorithms, std::size_t default_pop,
                              std::uint64_t default_evals) {
    config.engine.population_size = default_pop;
    config.engine.max_fitness_evaluations = default_evals;
    cmd.add_option("--pop", config.engine.population_size, "Population size")
        ->capture_default_str();
    cmd.add_option("--iters", config.engine.max_iterations, "Maximum iterations")
        ->capture_default_str();
    cmd.add_option("--evals", config.engine.max_fitness_evaluations,
                   "Fitness-evaluation budget")
        ->capture_default_str();
    cmd.add_option("--clusters", config.engine.cluster_count, "Cluster count")
        ->capture_default_str();
    cmd.add_option("--algorithms", algorithms,
                   "Comma-separated roster (HenryGas,Jaya,SootyTern,Butterfly,Owl)");
    cmd.add_option("--runs", config.runs, "Seeded repetitions")->capture_default_str();
    cmd.add_option("--seed", config.engine.seed, "Base seed (env HHGSO_SEED)")
        ->envname("HHGSO_SEED")
        ->capture_default_str();
    cmd.add_option("--workers", config.workers, "Parallel run workers")
        ->capture_default_str();
    cmd.add_option("--out", config.out_path, "Report output path (default stdout)");
    cmd.add_option("--format", config.format, "Report format")
        ->transform(CLI::CheckedTransformer(
            std::map<std::string, bench::ReportFormat>{
                {"csv", bench::ReportFormat::kCsv}, {"json", bench::ReportFormat::kJson}},
            CLI::ignore_case));
    cmd.add_flag("--trace", config.write_traces,
                 "Write per-run convergence traces next to the report");
}

} // namespace

std::vector<std::string> resolve_skills(const std::string& argument) {
    std::vector<std::string> skills;
    if (std::filesystem::exists(argument) &&
        std::filesystem::is_regular_file(argument)) {
        std::ifstream in(argument);
        if (!in) {
            throw UsageError("cannot read skills file `" + argument + "`");
        }
        std::string line;
        while (std::getline(in, line)) {
            while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) {
                line.pop_back();
            }
            if (!line.empty()) {
                skills.push_back(line);
            }
        }
    } else {
        std::stringstream stream(argument);
        std::string token;
        while (std::getline(stream, token, ',')) {
            if (!token.empty()) {
                skills.push_back(token);
            }
        }
    }
    if (skills.empty()) {
        throw UsageError("--skills resolved to an empty list");
    }
    return skills;
}

CliCommand parse_cli(const std::vector<std::string>& args) {
    CliCommand command;
    bench::ExperimentConfig& config = command.experiment;

    CLI::App app{"hhgso - hybrid metaheuristic optimizer and benchmark harness"};
    app.require_subcommand(1);

    std::string team_skills;
    std::string team_algorithms;
    CLI::App* team = app.add_subcommand("team", "Minimum-interaction team formation");
    team->add_option("--dataset", config.dataset_path, "Expert pool file (name<TAB>skill;skill;...)")
        ->required()
        ->check(CLI::ExistingFile);
    team->add_option("--skills", team_skills, "Required skills: file or comma-list")
        ->required();
    add_engine_and_run_flags(*team, config, team_algorithms, 50, 2500);

    std::string ca_algorithms;
    CLI::App* ca = app.add_subcommand("ca", "Covering-array generation");
    ca->add_option("--spec", config.ca_spec, "Array spec, e.g. \"CA(2, 3^4)\"")->required();
    ca->add_flag("--verify", config.verify_arrays, "Re-check every generated array");
    ca->add_option("--array-out", config.array_out_path,
                   "Write the best run's array to this path");
    add_engine_and_run_flags(*ca, config, ca_algorithms, 20, 2000);

    CLI::App* convert =
        app.add_subcommand("convert-dataset", "Normalize a dataset to the tab format");
    convert->add_option("--in", command.convert.in_path, "Input dataset")
        ->required()
        ->check(CLI::ExistingFile);
    convert->add_option("--out", command.convert.out_path, "Normalized output")->required();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& help) {
        std::ostringstream text;
        text << app.help();
        throw HelpRequested(text.str());
    } catch (const CLI::ParseError& error) {
        throw UsageError(error.what());
    }

    if (convert->parsed()) {
        command.kind = CliCommand::Kind::kConvert;
        return command;
    }

    command.kind = CliCommand::Kind::kExperiment;
    std::string algorithms;
    if (team->parsed()) {
        config.problem = bench::ProblemKind::kTeam;
        config.required_skills = resolve_skills(team_skills);
        algorithms = team_algorithms;
    } else {
        config.problem = bench::ProblemKind::kCoveringArray;
        algorithms = ca_algorithms;
    }
    if (!algorithms.empty()) {
        config.engine.roster = parse_roster(algorithms);
    }
    try {
        config.validate();
    } catch (const std::invalid_argument& error) {
        throw UsageError(error.what());
    }
    return command;
}

namespace {

int run_convert(const ConvertConfig& config) {
    std::ifstream in(config.in_path);
    if (!in) {
        std::cerr << "error: cannot open `" << config.in_path << "`\n";
        return 2;
    }
    std::ofstream out(config.out_path);
    if (!out) {
        std::cerr << "error: cannot open `" << config.out_path << "`\n";
        return 2;
    }
    const std::size_t written = team::convert_dataset(in, out);
    std::cout << "normalized " << written << " experts into " << config.out_path << "\n";
    return 0;
}

void write_best_array(const bench::ExperimentReport& report) {
    const auto& config = report.config;
    const bench::RunRecord* best = nullptr;
    for (const auto& record : report.records) {
        if (record.ok && (best == nullptr || record.best_cost < best->best_cost)) {
            best = &record;
        }
    }
    if (best == nullptr) {
        return;
    }
    // Regenerate deterministically from the winning seed.
    EngineConfig engine = config.engine;
    engine.seed = best->seed;
    const auto generated = ca::generate_array(ca::parse_spec(config.ca_spec), engine);
    std::ofstream out(config.array_out_path);
    if (!out) {
        throw std::runtime_error("cannot open array output `" + config.array_out_path +
                                 "`");
    }
    ca::write_text(generated.array, out);
}

int run_experiment_command(const bench::ExperimentConfig& config) {
    const bench::ExperimentReport report = bench::run_experiment(config);
    bench::emit_report(report);
    if (config.write_traces) {
        bench::emit_traces(report);
    }
    if (config.problem == bench::ProblemKind::kCoveringArray &&
        !config.array_out_path.empty()) {
        write_best_array(report);
    }

    std::size_t failed = 0;
    for (const auto& record : report.records) {
        if (!record.ok) {
            ++failed;
            std::cerr << "run seed=" << record.seed << " failed: " << record.error << "\n";
        }
    }
    if (report.all_failed()) {
        std::cerr << "error: all runs failed\n";
        return 2;
    }
    if (!report.config.out_path.empty()) {
        std::cerr << "best=" << report.summary.best_cost
                  << " mean=" << report.summary.mean_cost
                  << " worst=" << report.summary.worst_cost << " over "
                  << report.summary.run_count << " runs -> " << report.config.out_path
                  << "\n";
    }
    return 0;
}

} // namespace

int run_cli(int argc, const char* const* argv) {
    std::vector<std::string> args;
    args.reserve(argc > 0 ? static_cast<std::size_t>(argc - 1) : 0);
    for (int i = 1; i < argc; ++i) {
        args.emplace_back(argv[i]);
    }

    try {
        const CliCommand command = parse_cli(args);
        if (command.kind == CliCommand::Kind::kConvert) {
            return run_convert(command.convert);
        }
        return run_experiment_command(command.experiment);
    } catch (const HelpRequested& help) {
        std::cout << help.what();
        return 0;
    } catch (const UsageError& error) {
        std::cerr << "usage error: " << error.what() << "\n";
        return 1;
    } catch (const std::exception& error) {
        std::cerr << "error: " << error.what() << "\n";
        return 2;
    }
}

} // namespace hhgso::cli
