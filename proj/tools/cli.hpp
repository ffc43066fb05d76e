#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "hhgso/experiment.hpp"

namespace hhgso::cli {

/// Bad flags, missing arguments, unreadable inputs. Exit code 1.
class UsageError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Thrown when --help (or a bare invocation) printed text and nothing should
/// run. Exit code 0.
class HelpRequested : public std::runtime_error {
  public:
    explicit HelpRequested(std::string text) : std::runtime_error(std::move(text)) {}
};

struct ConvertConfig {
    std::string in_path;
    std::string out_path;
};

struct CliCommand {
    enum class Kind { kExperiment, kConvert };
    Kind kind = Kind::kExperiment;
    bench::ExperimentConfig experiment;
    ConvertConfig convert;
};

/// Parses `team`, `ca`, and `convert-dataset` invocations into a resolved
/// command, applying the per-problem engine defaults (team: population 50,
/// 2500 evaluations; ca: population 20, 2000 evaluations; both: 100
/// iterations, 5 clusters, 30 runs). The seed falls back to $HHGSO_SEED and
/// then to 1. Throws UsageError / HelpRequested.
CliCommand parse_cli(const std::vector<std::string>& args);

/// Skill-list resolution used by --skills: an existing file is read one skill
/// per line; otherwise the argument splits on commas.
std::vector<std::string> resolve_skills(const std::string& argument);

/// Full tool behavior; returns the process exit code
/// (0 ok, 1 usage, 2 runtime failure).
int run_cli(int argc, const char* const* argv);

} // namespace hhgso::cli
