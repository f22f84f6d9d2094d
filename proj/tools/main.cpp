#include <cstdio>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "slpinn/errors.hpp"
#include "slpinn/experiment.hpp"

namespace {

struct CliOpts {
    std::string config_path;
    std::string problem;
    double eps = 0.0;
    int trials = 0;
    std::uint64_t seed = 0;
    int hidden = 0;
    int max_iters = 0;
    std::string out;
    double sigma_mult = 0.0;
    bool emit_fields = false;
    bool save_models = false;
    bool full_inputs = false;
};

void add_common_options(CLI::App* cmd, CliOpts& o) {
    cmd->add_option("--config", o.config_path, "JSON config file");
    cmd->add_option("--problem", o.problem, "problem id (ex1..ex7)");
    cmd->add_option("--eps", o.eps, "perturbation parameter (replaces the config grid)");
    cmd->add_option("--trials", o.trials, "independent trials per cell (1..5)");
    cmd->add_option("--seed", o.seed, "seed base; trial t uses seed_base + t");
    cmd->add_option("--hidden", o.hidden, "hidden width per block (0 = per-problem default)");
    cmd->add_option("--max-iters", o.max_iters, "LM iteration cap");
    cmd->add_option("--out", o.out, "output directory");
    cmd->add_option("--sigma-mult", o.sigma_mult, "layer sampling stddev = sigma_mult * eps");
    cmd->add_flag("--emit-fields", o.emit_fields, "write solution-field dumps (trial 0)");
    cmd->add_flag("--save-models", o.save_models, "write model checkpoints");
    cmd->add_flag("--full-inputs", o.full_inputs,
                  "irregular domains: feed the scaled level-set coordinate to the regular block");
}

slpinn::ExperimentConfig build_config(const CLI::App* cmd, const CliOpts& o) {
    slpinn::ExperimentConfig cfg = o.config_path.empty()
                                       ? slpinn::ExperimentConfig{}
                                       : slpinn::config_from_json_file(o.config_path);
    if (cmd->count("--problem")) cfg.problem_id = o.problem;
    if (cmd->count("--eps")) cfg.epsilon_grid = {o.eps};
    if (cmd->count("--trials")) cfg.trials = o.trials;
    if (cmd->count("--seed")) cfg.seed_base = o.seed;
    if (cmd->count("--hidden")) cfg.hidden = o.hidden;
    if (cmd->count("--max-iters")) cfg.lm.max_iters = o.max_iters;
    if (cmd->count("--out")) cfg.output_dir = o.out;
    if (cmd->count("--sigma-mult")) cfg.sigma_mult = o.sigma_mult;
    if (o.emit_fields) cfg.emit_fields = true;
    if (o.save_models) cfg.save_models = true;
    if (o.full_inputs) cfg.irregular_full_inputs = true;
    return cfg;
}

void report_cells(const slpinn::ExperimentConfig& cfg,
                  const std::vector<slpinn::CellResult>& cells) {
    char buf[160];
    for (const slpinn::CellResult& cell : cells) {
        for (std::size_t t = 0; t < cell.reports.size(); ++t) {
            const slpinn::TrainReport& rep = cell.reports[t];
            std::snprintf(buf, sizeof buf, "%s eps=%g trial %zu: loss=%.3e iters=%d stop=%s",
                          cfg.problem_id.c_str(), cell.epsilon, t, rep.final_loss, rep.iterations,
                          slpinn::stop_reason_name(rep.stop_reason).c_str());
            std::cout << buf << "\n";
        }
        if (cell.errors.trials > 0) {
            for (Eigen::Index c = 0; c < cell.errors.rel_l2_mean.size(); ++c) {
                std::snprintf(buf, sizeof buf,
                              "%s eps=%g component %d: mean rel_l2=%.3e mean rel_linf=%.3e",
                              cfg.problem_id.c_str(), cell.epsilon, static_cast<int>(c) + 1,
                              cell.errors.rel_l2_mean[c], cell.errors.rel_linf_mean[c]);
                std::cout << buf << "\n";
            }
        }
    }
    std::cout << "outputs written to " << cfg.output_dir << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"trains decomposed sigmoid networks on singularly perturbed boundary-layer PDEs"};
    app.require_subcommand(1);

    CliOpts run_opts, sweep_opts;
    CLI::App* run_cmd = app.add_subcommand("run", "train one (problem, epsilon) cell");
    add_common_options(run_cmd, run_opts);
    CLI::App* sweep_cmd = app.add_subcommand("sweep", "train every epsilon in the grid");
    add_common_options(sweep_cmd, sweep_opts);
    CLI::App* list_cmd = app.add_subcommand("list", "list the registered problems");

    std::string model_path, fields_out;
    CliOpts dump_opts;
    CLI::App* dump_cmd =
        app.add_subcommand("dump-fields", "evaluate a saved model on the plotting grids");
    dump_cmd->add_option("--model", model_path, "model checkpoint JSON")->required();
    dump_cmd->add_option("--problem", dump_opts.problem, "problem id")->required();
    dump_cmd->add_option("--eps", dump_opts.eps, "override the checkpoint epsilon");
    dump_cmd->add_option("--out", fields_out, "output CSV path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (app.got_subcommand(list_cmd)) {
            slpinn::list_problems(std::cout);
            return 0;
        }
        if (app.got_subcommand(run_cmd)) {
            slpinn::ExperimentConfig cfg = build_config(run_cmd, run_opts);
            if (cfg.epsilon_grid.size() != 1)
                throw slpinn::ConfigError(
                    "run trains a single cell: pass --eps or a one-entry epsilon_grid "
                    "(use sweep for grids)");
            report_cells(cfg, slpinn::run_experiment(cfg));
            return 0;
        }
        if (app.got_subcommand(sweep_cmd)) {
            slpinn::ExperimentConfig cfg = build_config(sweep_cmd, sweep_opts);
            report_cells(cfg, slpinn::run_experiment(cfg));
            return 0;
        }
        const slpinn::ProblemSpec& problem = slpinn::problem_by_id(dump_opts.problem);
        slpinn::SolutionModel model = slpinn::load_checkpoint(model_path, problem.domain().phi);
        const double eps = dump_cmd->count("--eps") ? dump_opts.eps : model.epsilon;
        if (!(eps > 0.0)) throw slpinn::ConfigError("epsilon must be positive");
        slpinn::ExperimentConfig stamp;
        stamp.problem_id = dump_opts.problem;
        stamp.epsilon_grid = {eps};
        char hdr[128];
        std::snprintf(hdr, sizeof hdr, "# config=%016llx seed=%llu tool=%s\n",
                      static_cast<unsigned long long>(slpinn::config_hash(stamp)), 0ull,
                      slpinn::kToolVersion);
        slpinn::write_field_dump(fields_out, problem, model, eps, hdr);
        std::cout << "fields written to " << fields_out << "\n";
        return 0;
    } catch (const slpinn::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const slpinn::TrainAbort& e) {
        std::cerr << "training aborted: " << e.what() << "\n";
        return 3;
    } catch (const slpinn::IoError& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return 4;
    }
}
