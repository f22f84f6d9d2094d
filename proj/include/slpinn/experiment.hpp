#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "slpinn/metrics.hpp"
#include "slpinn/model.hpp"
#include "slpinn/optimizer.hpp"
#include "slpinn/problem.hpp"
#include "slpinn/sampling.hpp"

namespace slpinn {

inline constexpr const char* kToolVersion = "slpinn 0.1.0";

struct ExperimentConfig {
    std::string problem_id = "ex1";
    std::vector<double> epsilon_grid = {1e-2, 1e-4, 1e-6, 1e-8, 1e-10};
    int trials = 5;
    int hidden = 0;            // 0 = per-problem default (50; 35 for ex6/ex7)
    SampleCounts counts;       // zeros = per-problem defaults
    LmConfig lm;
    std::uint64_t seed_base = 2024;
    std::string output_dir = "out";
    bool emit_fields = false;
    bool irregular_full_inputs = false;
    double sigma_mult = 1.0;
    bool save_models = false;
};

/// Reads a config from JSON text; unknown keys are rejected.
ExperimentConfig config_from_json_text(const std::string& text);
ExperimentConfig config_from_json_file(const std::string& path);

/// FNV-1a hash of the canonical serialized config (stamped on output files).
std::uint64_t config_hash(const ExperimentConfig& config);

int effective_hidden(const ExperimentConfig& config, const ProblemSpec& problem);
SampleCounts effective_counts(const ExperimentConfig& config, const ProblemSpec& problem);

/// Builds a model matching the problem's geometry.
SolutionModel make_model(const ProblemSpec& problem, int hidden, double epsilon,
                         std::uint64_t init_seed, bool irregular_full_inputs = false);

/// One (problem, epsilon) sweep cell: per trial sample -> build -> train ->
/// evaluate. Keeps the trained models so diagnostics can inspect them.
struct CellResult {
    double epsilon = 0.0;
    ErrorReport errors;                 // empty when the problem has no exact solution
    std::vector<TrainReport> reports;   // one per trial
    std::vector<SolutionModel> models;  // one per trial
};
CellResult run_cell(const ExperimentConfig& config, const ProblemSpec& problem, double epsilon);

/// Full experiment: every epsilon in the grid. Writes the error-table CSV,
/// per-trial loss traces, and optional field dumps / checkpoints into
/// output_dir. Returns the cell results.
std::vector<CellResult> run_experiment(const ExperimentConfig& config);

/// Registry listing ("id dim n exact description"), one problem per line.
void list_problems(std::ostream& out);

/// Error-table CSV row (the on-disk format of an aggregated ErrorReport).
struct ErrorTableRow {
    std::string problem;
    int component = 1;  // 1-based
    double epsilon = 0.0;
    double rel_l2_mean = 0.0;
    double rel_linf_mean = 0.0;
    int trials = 0;
};
std::vector<ErrorTableRow> read_error_table(const std::string& path);

/// Writes the solution-field dump for a trained model: a 1001-point uniform
/// grid per axis plus, for each layer side, a geometric grid inside
/// [boundary, boundary + 10 eps]. Columns: coords..., component, u_pred and,
/// when exact is available, u_exact, abs_err.
void write_field_dump(const std::string& path, const ProblemSpec& problem,
                      const SolutionModel& model, double epsilon, const std::string& header);

}  // namespace slpinn
