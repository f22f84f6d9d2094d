#include "slpinn/experiment.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "slpinn/errors.hpp"
#include "slpinn/loss.hpp"
#include "slpinn/rng.hpp"

namespace slpinn {

namespace {

using nlohmann::json;

void reject_unknown_keys(const json& j, std::initializer_list<const char*> known,
                         const std::string& where) {
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool ok = false;
        for (const char* k : known)
            if (it.key() == k) ok = true;
        if (!ok) throw ConfigError("unknown config key '" + it.key() + "' in " + where);
    }
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string eps_label(double eps) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%.0e", eps);
    return buf;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    return out;
}

void finish_out(std::ofstream& out, const std::string& path) {
    out.flush();
    if (!out.good()) throw IoError("write failed for '" + path + "'");
}

}  // namespace

ExperimentConfig config_from_json_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw ConfigError("config root must be a JSON object");
    reject_unknown_keys(j,
                        {"problem", "epsilon_grid", "trials", "hidden", "counts", "lm",
                         "seed_base", "output_dir", "emit_fields", "irregular_full_inputs",
                         "sigma_mult", "save_models"},
                        "config");
    ExperimentConfig c;
    c.counts = {0, 0, 0};
    try {
        if (j.contains("problem")) c.problem_id = j["problem"].get<std::string>();
        if (j.contains("epsilon_grid")) c.epsilon_grid = j["epsilon_grid"].get<std::vector<double>>();
        if (j.contains("trials")) c.trials = j["trials"].get<int>();
        if (j.contains("hidden")) c.hidden = j["hidden"].get<int>();
        if (j.contains("counts")) {
            const json& jc = j["counts"];
            reject_unknown_keys(jc, {"interior", "layer_per_side", "boundary"}, "counts");
            if (jc.contains("interior")) c.counts.interior = jc["interior"].get<int>();
            if (jc.contains("layer_per_side"))
                c.counts.layer_per_side = jc["layer_per_side"].get<int>();
            if (jc.contains("boundary")) c.counts.boundary = jc["boundary"].get<int>();
        }
        if (j.contains("lm")) {
            const json& jl = j["lm"];
            reject_unknown_keys(jl,
                                {"max_iters", "loss_tol", "lambda_init", "lambda_up", "lambda_down",
                                 "min_lambda", "max_lambda", "step_tol", "max_rejects_per_iter"},
                                "lm");
            if (jl.contains("max_iters")) c.lm.max_iters = jl["max_iters"].get<int>();
            if (jl.contains("loss_tol")) c.lm.loss_tol = jl["loss_tol"].get<double>();
            if (jl.contains("lambda_init")) c.lm.lambda_init = jl["lambda_init"].get<double>();
            if (jl.contains("lambda_up")) c.lm.lambda_up = jl["lambda_up"].get<double>();
            if (jl.contains("lambda_down")) c.lm.lambda_down = jl["lambda_down"].get<double>();
            if (jl.contains("min_lambda")) c.lm.min_lambda = jl["min_lambda"].get<double>();
            if (jl.contains("max_lambda")) c.lm.max_lambda = jl["max_lambda"].get<double>();
            if (jl.contains("step_tol")) c.lm.step_tol = jl["step_tol"].get<double>();
            if (jl.contains("max_rejects_per_iter"))
                c.lm.max_rejects_per_iter = jl["max_rejects_per_iter"].get<int>();
        }
        if (j.contains("seed_base")) c.seed_base = j["seed_base"].get<std::uint64_t>();
        if (j.contains("output_dir")) c.output_dir = j["output_dir"].get<std::string>();
        if (j.contains("emit_fields")) c.emit_fields = j["emit_fields"].get<bool>();
        if (j.contains("irregular_full_inputs"))
            c.irregular_full_inputs = j["irregular_full_inputs"].get<bool>();
        if (j.contains("sigma_mult")) c.sigma_mult = j["sigma_mult"].get<double>();
        if (j.contains("save_models")) c.save_models = j["save_models"].get<bool>();
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config field has the wrong type: ") + e.what());
    }
    return c;
}

ExperimentConfig config_from_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return config_from_json_text(ss.str());
}

std::uint64_t config_hash(const ExperimentConfig& c) {
    // canonical text excludes output_dir so relocating output keeps the stamp
    std::string s = "problem=" + c.problem_id + "|eps=";
    for (double e : c.epsilon_grid) s += fmt(e) + ",";
    s += "|trials=" + std::to_string(c.trials) + "|hidden=" + std::to_string(c.hidden);
    s += "|counts=" + std::to_string(c.counts.interior) + "," +
         std::to_string(c.counts.layer_per_side) + "," + std::to_string(c.counts.boundary);
    s += "|lm=" + std::to_string(c.lm.max_iters) + "," + fmt(c.lm.loss_tol) + "," +
         fmt(c.lm.lambda_init) + "," + fmt(c.lm.lambda_up) + "," + fmt(c.lm.lambda_down) + "," +
         fmt(c.lm.min_lambda) + "," + fmt(c.lm.max_lambda) + "," + fmt(c.lm.step_tol) + "," +
         std::to_string(c.lm.max_rejects_per_iter);
    s += "|seed=" + std::to_string(c.seed_base) + "|fields=" + std::to_string(c.emit_fields ? 1 : 0);
    s += "|full=" + std::to_string(c.irregular_full_inputs ? 1 : 0) +
         "|sigma=" + fmt(c.sigma_mult) + "|save=" + std::to_string(c.save_models ? 1 : 0);

    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char b : s) {
        h ^= b;
        h *= 1099511628211ull;
    }
    return h;
}

int effective_hidden(const ExperimentConfig& config, const ProblemSpec& problem) {
    if (config.hidden > 0) return config.hidden;
    if (problem.id() == "ex6" || problem.id() == "ex7") return 35;
    return 50;
}

SampleCounts effective_counts(const ExperimentConfig& config, const ProblemSpec& problem) {
    const SampleCounts def = default_counts(problem);
    SampleCounts out;
    out.interior = config.counts.interior > 0 ? config.counts.interior : def.interior;
    out.layer_per_side =
        config.counts.layer_per_side > 0 ? config.counts.layer_per_side : def.layer_per_side;
    out.boundary = config.counts.boundary > 0 ? config.counts.boundary : def.boundary;
    return out;
}

SolutionModel make_model(const ProblemSpec& problem, int hidden, double epsilon,
                         std::uint64_t init_seed, bool irregular_full_inputs) {
    Geometry geometry = Geometry::OneD;
    switch (problem.domain().kind) {
        case DomainDesc::Kind::Interval: geometry = Geometry::OneD; break;
        case DomainDesc::Kind::Rectangle: geometry = Geometry::TwoDRegular; break;
        case DomainDesc::Kind::LevelSet: geometry = Geometry::TwoDIrregular; break;
    }
    return build_model(geometry, problem.n_components(), hidden, problem.domain().bounds,
                       problem.domain().phi, epsilon, InitConfig{init_seed},
                       irregular_full_inputs);
}

namespace {

void check_experiment_config(const ExperimentConfig& config) {
    if (config.trials < 1 || config.trials > 5)
        throw ConfigError("trials must lie in 1..5");
    if (config.epsilon_grid.empty()) throw ConfigError("epsilon_grid must not be empty");
    for (double e : config.epsilon_grid)
        if (!(e > 0.0 && e < 1.0))
            throw ConfigError("epsilon_grid entries must lie in (0, 1), got " + fmt(e));
    if (!(config.sigma_mult > 0.0)) throw ConfigError("sigma_mult must be positive");
    if (config.hidden < 0) throw ConfigError("hidden must be >= 0");
}

constexpr std::uint64_t kInitStream = 11;
constexpr std::uint64_t kTestStream = 12101;

}  // namespace

CellResult run_cell(const ExperimentConfig& config, const ProblemSpec& problem, double epsilon) {
    check_experiment_config(config);
    const int hidden = effective_hidden(config, problem);
    const SampleCounts counts = effective_counts(config, problem);

    CellResult cell;
    cell.epsilon = epsilon;
    std::vector<ErrorReport> trial_errors;

    for (int trial = 0; trial < config.trials; ++trial) {
        const std::uint64_t trial_seed = config.seed_base + static_cast<std::uint64_t>(trial);
        SolutionModel model = make_model(problem, hidden, epsilon, Rng::mix(trial_seed, kInitStream),
                                         config.irregular_full_inputs);
        const CollocationSet colloc =
            sample_collocation(problem, epsilon, counts, trial_seed, config.sigma_mult);
        TrainReport report = train(problem, model, colloc, config.lm);
        report.seed = trial_seed;

        if (problem.has_exact()) {
            const CollocationSet test = sample_test_set(problem, epsilon, counts,
                                                        Rng::mix(trial_seed, kTestStream),
                                                        config.sigma_mult);
            const int n = problem.n_components();
            const int m = test.m();
            Eigen::MatrixXd exact(m, n), pred(m, n);
            int row = 0;
            auto fill = [&](const std::vector<Eigen::Vector2d>& pts) {
                for (const auto& pt : pts) {
                    exact.row(row) = problem.exact(pt, epsilon).transpose();
                    pred.row(row) = forward(model, pt, epsilon).transpose();
                    ++row;
                }
            };
            fill(test.interior);
            fill(test.layer);

            ErrorReport er;
            er.n_test = m;
            er.trials = 1;
            Eigen::VectorXd l2, linf;
            relative_errors(exact, pred, l2, linf);
            er.per_trial_l2.push_back(l2);
            er.per_trial_linf.push_back(linf);
            er.rel_l2_mean = l2;
            er.rel_linf_mean = linf;
            trial_errors.push_back(std::move(er));
        }

        cell.reports.push_back(std::move(report));
        cell.models.push_back(std::move(model));
    }

    if (!trial_errors.empty()) cell.errors = aggregate_trials(trial_errors);
    return cell;
}

std::vector<CellResult> run_experiment(const ExperimentConfig& config) {
    check_experiment_config(config);
    const ProblemSpec& problem = problem_by_id(config.problem_id);

    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(config.output_dir, ec);
    if (ec) throw IoError("cannot create output directory '" + config.output_dir + "': " +
                          ec.message());

    char hdr[128];
    std::snprintf(hdr, sizeof hdr, "# config=%016llx seed=%llu tool=%s\n",
                  static_cast<unsigned long long>(config_hash(config)),
                  static_cast<unsigned long long>(config.seed_base), kToolVersion);
    const std::string header(hdr);
    const std::string base = config.output_dir + "/";

    std::vector<CellResult> cells;
    for (double eps : config.epsilon_grid) {
        CellResult cell = run_cell(config, problem, eps);
        const std::string elab = eps_label(eps);
        for (int t = 0; t < config.trials; ++t) {
            const std::string stem =
                base + problem.id() + "_eps" + elab + "_trial" + std::to_string(t);
            write_trace_csv(stem + "_trace.csv", cell.reports[t], header);
            if (config.save_models) save_checkpoint(cell.models[t], stem + "_model.json");
            if (config.emit_fields && t == 0)
                write_field_dump(stem + "_fields.csv", problem, cell.models[t], eps, header);
        }
        cells.push_back(std::move(cell));
    }

    {
        const std::string path = base + "summary_" + problem.id() + ".csv";
        std::ofstream out = open_out(path);
        out << header << "problem,epsilon,trial,seed,final_loss,iterations,stop_reason\n";
        for (std::size_t k = 0; k < cells.size(); ++k)
            for (int t = 0; t < config.trials; ++t) {
                const TrainReport& rep = cells[k].reports[t];
                out << problem.id() << ',' << fmt(config.epsilon_grid[k]) << ',' << t << ','
                    << rep.seed << ',' << fmt(rep.final_loss) << ',' << rep.iterations << ','
                    << stop_reason_name(rep.stop_reason) << '\n';
            }
        finish_out(out, path);
    }

    if (problem.has_exact()) {
        const std::string path = base + "errors_" + problem.id() + ".csv";
        std::ofstream out = open_out(path);
        out << header << "problem,component,epsilon,rel_l2_mean,rel_linf_mean,trials\n";
        for (std::size_t k = 0; k < cells.size(); ++k) {
            const ErrorReport& er = cells[k].errors;
            for (int c = 0; c < problem.n_components(); ++c)
                out << problem.id() << ',' << c + 1 << ',' << fmt(config.epsilon_grid[k]) << ','
                    << fmt(er.rel_l2_mean[c]) << ',' << fmt(er.rel_linf_mean[c]) << ','
                    << er.trials << '\n';
        }
        finish_out(out, path);
    }
    return cells;
}

void list_problems(std::ostream& out) {
    for (const ProblemSpec* p : all_problems())
        out << p->id() << " dim=" << p->dim() << " n=" << p->n_components() << " "
            << (p->has_exact() ? "exact" : "no-exact") << " " << p->description() << "\n";
}

std::vector<ErrorTableRow> read_error_table(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open error table '" + path + "'");
    std::vector<ErrorTableRow> rows;
    std::string line;
    bool saw_columns = false;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (!saw_columns) {
            if (line != "problem,component,epsilon,rel_l2_mean,rel_linf_mean,trials")
                throw IoError("unexpected error-table columns in '" + path + "': " + line);
            saw_columns = true;
            continue;
        }
        ErrorTableRow row;
        std::stringstream ss(line);
        std::string field;
        auto next = [&]() {
            if (!std::getline(ss, field, ','))
                throw IoError("truncated error-table row in '" + path + "': " + line);
            return field;
        };
        row.problem = next();
        row.component = std::stoi(next());
        row.epsilon = std::strtod(next().c_str(), nullptr);
        row.rel_l2_mean = std::strtod(next().c_str(), nullptr);
        row.rel_linf_mean = std::strtod(next().c_str(), nullptr);
        row.trials = std::stoi(next());
        rows.push_back(std::move(row));
    }
    if (!saw_columns) throw IoError("error table '" + path + "' has no column header");
    return rows;
}

namespace {

/// 1001 offsets: 0, then a geometric ramp ending exactly at 10*eps.
std::vector<double> layer_offsets(double eps) {
    std::vector<double> off(1001);
    off[0] = 0.0;
    const double top = 10.0 * eps;
    const double q = std::pow(1e-6, 1.0 / 999.0);
    for (int i = 1; i <= 1000; ++i) off[i] = top * std::pow(q, 1000 - i);
    return off;
}

}  // namespace

void write_field_dump(const std::string& path, const ProblemSpec& problem,
                      const SolutionModel& model, double epsilon, const std::string& header) {
    std::ofstream out = open_out(path);
    out << header;
    const bool exact = problem.has_exact();
    const int n = problem.n_components();
    const Bounds& b = problem.domain().bounds;
    const bool two_d = problem.dim() == 2;

    out << (two_d ? "x,y,component,u_pred" : "x,component,u_pred");
    out << (exact ? ",u_exact,abs_err\n" : "\n");

    char buf[160];
    auto emit = [&](const Eigen::Vector2d& p) {
        const Eigen::VectorXd u = forward(model, p, epsilon);
        Eigen::VectorXd ue;
        if (exact) ue = problem.exact(p, epsilon);
        for (int c = 0; c < n; ++c) {
            if (two_d)
                std::snprintf(buf, sizeof buf, "%.17g,%.17g,%d,%.17g", p[0], p[1], c + 1, u[c]);
            else
                std::snprintf(buf, sizeof buf, "%.17g,%d,%.17g", p[0], c + 1, u[c]);
            out << buf;
            if (exact) {
                std::snprintf(buf, sizeof buf, ",%.17g,%.17g", ue[c], std::abs(u[c] - ue[c]));
                out << buf;
            }
            out << '\n';
        }
    };

    constexpr int kUniform = 1001;
    constexpr int kTangent = 101;
    const std::vector<double> off = layer_offsets(epsilon);

    switch (problem.domain().kind) {
        case DomainDesc::Kind::Interval: {
            for (int i = 0; i < kUniform; ++i)
                emit({b.a + (b.b - b.a) * i / (kUniform - 1.0), 0.0});
            for (double o : off) emit({b.a + o, 0.0});
            for (double o : off) emit({b.b - o, 0.0});
            break;
        }
        case DomainDesc::Kind::Rectangle: {
            for (int i = 0; i < kUniform; ++i)
                for (int j = 0; j < kUniform; ++j)
                    emit({b.a + (b.b - b.a) * i / (kUniform - 1.0),
                          b.c + (b.d - b.c) * j / (kUniform - 1.0)});
            for (int j = 0; j < kTangent; ++j) {
                const double ty = b.c + (b.d - b.c) * j / (kTangent - 1.0);
                const double tx = b.a + (b.b - b.a) * j / (kTangent - 1.0);
                for (double o : off) {
                    emit({b.a + o, ty});
                    emit({b.b - o, ty});
                    emit({tx, b.c + o});
                    emit({tx, b.d - o});
                }
            }
            break;
        }
        case DomainDesc::Kind::LevelSet: {
            const LevelSetFn& phi = problem.domain().phi;
            for (int i = 0; i < kUniform; ++i)
                for (int j = 0; j < kUniform; ++j) {
                    const double x = b.a + (b.b - b.a) * i / (kUniform - 1.0);
                    const double y = b.c + (b.d - b.c) * j / (kUniform - 1.0);
                    if (phi(x, y).v <= 0.0) emit({x, y});
                }
            for (int j = 0; j < kTangent; ++j) {
                const Eigen::Vector2d base =
                    problem.domain().boundary_point(static_cast<double>(j) / kTangent);
                const PhiJet pj = phi(base[0], base[1]);
                const double gn = std::sqrt(pj.dx * pj.dx + pj.dy * pj.dy);
                if (!(gn > 0.0) || !std::isfinite(gn)) continue;
                const Eigen::Vector2d dir(-pj.dx / gn, -pj.dy / gn);
                for (double o : off) {
                    const Eigen::Vector2d p = base + o * dir;
                    if (phi(p[0], p[1]).v <= 1e-12) emit(p);
                }
            }
            break;
        }
    }
    finish_out(out, path);
}

}  // namespace slpinn
