// proxboost command line: synthetic data, model fitting, evaluation, grid
// search and a proximal-point rate demo. Exit codes: 0 ok, 1 usage error,
// 2 data error, 3 numeric failure.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <algorithm>
#include <future>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "proxboost/boosting.hpp"
#include "proxboost/data.hpp"
#include "proxboost/model_io.hpp"
#include "proxboost/pprox.hpp"

namespace pb = proxboost;
using nlohmann::json;

namespace {

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    }
};

std::uint64_t default_seed() {
    if (const char* env = std::getenv("PROXBOOST_SEED")) {
        try {
            return std::stoull(env);
        } catch (const std::exception&) {
            throw pb::usage_error("PROXBOOST_SEED must be an unsigned integer");
        }
    }
    return 0;
}

struct LossFlags {
    std::string name = "least_squares";
    double tau = 0.9;
    double beta = 1.0;

    void attach(CLI::App* cmd) {
        cmd->add_option("--loss", name,
                        "least_squares|lad|pinball|exponential|logistic|hinge")
            ->capture_default_str();
        cmd->add_option("--tau", tau, "pinball quantile level")->capture_default_str();
        cmd->add_option("--beta", beta, "exponential loss scale")->capture_default_str();
    }

    pb::Loss make() const { return pb::loss_from_name(name, tau, beta); }
};

struct FitFlags {
    std::string variant = "proximal";
    int T = 100;
    double nu = 0.1;
    double lambda = 1.0;
    int depth = 3;
    int min_leaf = 1;
    std::string line_search = "leaf";
    std::uint64_t seed = default_seed();

    void attach(CLI::App* cmd) {
        cmd->add_option("--variant", variant,
                        "gradient|gradient-accelerated|proximal|proximal-accelerated|"
                        "gradient-residual")
            ->capture_default_str();
        cmd->add_option("--T", T, "boosting iterations")->capture_default_str();
        cmd->add_option("--nu", nu, "shrinkage in (0,1]")->capture_default_str();
        cmd->add_option("--lambda", lambda, "proximal step")->capture_default_str();
        cmd->add_option("--depth", depth, "max tree depth")->capture_default_str();
        cmd->add_option("--min-leaf", min_leaf, "min samples per leaf")
            ->capture_default_str();
        cmd->add_option("--line-search", line_search, "global|leaf")
            ->capture_default_str();
        cmd->add_option("--seed", seed, "rng seed (PROXBOOST_SEED fallback)")
            ->capture_default_str();
    }

    pb::BoostConfig make() const {
        pb::BoostConfig c;
        c.variant = pb::variant_from_name(variant);
        c.iterations = T;
        c.nu = nu;
        c.lambda = lambda;
        c.max_depth = depth;
        c.min_samples_leaf = min_leaf;
        if (line_search == "global")
            c.line_search = pb::LineSearchMode::Global;
        else if (line_search == "leaf")
            c.line_search = pb::LineSearchMode::PerLeaf;
        else
            throw pb::usage_error("--line-search must be 'global' or 'leaf'");
        c.seed = seed;
        return c;
    }
};

pb::DatasetSplit load_dataset(const std::string& path, const std::string& target,
                              pb::Task task) {
    return pb::load_csv(path, target, task);
}

void finish_manifest(const std::string& out_path, const std::string& command,
                     const json& args, const Timer& timer) {
    pb::write_manifest(out_path + ".manifest.json", command, args.dump(),
                       timer.seconds());
}

// ---- synth ----------------------------------------------------------------

int cmd_synth(const std::string& model, const std::string& design, int n, int d,
              std::uint64_t seed, const std::string& out) {
    Timer timer;
    pb::SynthSpec spec;
    spec.model = model == "classification" ? pb::SynthModel::Classification
                                           : pb::SynthModel::Regression;
    if (model != "regression" && model != "classification")
        throw pb::usage_error("--model must be 'regression' or 'classification'");
    if (design == "correlated")
        spec.design = pb::Design::Correlated;
    else if (design == "uncorrelated")
        spec.design = pb::Design::Uncorrelated;
    else
        throw pb::usage_error("--design must be 'correlated' or 'uncorrelated'");
    if (n > 0) spec.n = n;
    else if (model == "classification") spec.n = 1500;
    if (d > 0) spec.d = d;
    else if (model == "classification") spec.d = 50;
    spec.seed = seed;

    const pb::DatasetSplit ds = pb::generate(spec);
    pb::write_csv(ds, out);

    json args{{"model", model}, {"design", design}, {"n", spec.n}, {"d", spec.d},
              {"seed", seed},   {"out", out}};
    finish_manifest(out, "synth", args, timer);
    std::cerr << "wrote " << ds.n() << "x" << (ds.d() + 1) << " CSV to " << out << "\n";
    return 0;
}

// ---- fit ------------------------------------------------------------------

int cmd_fit(const std::string& data_path, const std::string& target,
            const LossFlags& loss_flags, const FitFlags& fit_flags, double val_fraction,
            const std::string& curves, const std::string& model_out) {
    Timer timer;
    const pb::Loss loss = loss_flags.make();
    const pb::BoostConfig config = fit_flags.make();
    config.validate();

    pb::DatasetSplit ds = load_dataset(data_path, target, loss.task());
    const pb::DatasetSplit* train = &ds;
    std::array<pb::DatasetSplit, 3> parts;
    const pb::Matrix* val_features = nullptr;
    std::span<const double> val_targets;
    if (val_fraction > 0.0) {
        if (val_fraction >= 1.0) throw pb::usage_error("--val-fraction must be < 1");
        parts = pb::split(ds, 1.0 - val_fraction, val_fraction, 0.0, config.seed);
        // rounding remainder goes back to the training part
        for (std::size_t i = 0; i < parts[2].n(); ++i) {
            parts[0].features.values.insert(parts[0].features.values.end(),
                                            parts[2].features.row(i).begin(),
                                            parts[2].features.row(i).end());
            parts[0].targets.push_back(parts[2].targets[i]);
            ++parts[0].features.rows;
        }
        train = &parts[0];
        val_features = &parts[1].features;
        val_targets = parts[1].targets;
    }

    pb::FitTrace trace;
    int exit_code = 0;
    try {
        pb::FitResult result =
            pb::fit(config, loss, train->features, train->targets, val_features, val_targets);
        trace = std::move(result.trace);
        if (!model_out.empty()) pb::save_model(result.model, model_out);
        std::cerr << "final train loss " << trace.rows.back().train_loss << " after "
                  << config.iterations << " iterations\n";
    } catch (const pb::fit_divergence_error& e) {
        trace = e.trace;
        std::cerr << "error: " << e.what() << " (partial trace kept)\n";
        exit_code = 3;
    }

    int clamped = 0;
    for (const auto& row : trace.rows) clamped += row.gamma_clamped ? 1 : 0;
    if (clamped > 0)
        std::cerr << "warning: line search clamped to |gamma| <= 1e6 in " << clamped
                  << " iteration(s)\n";

    if (!curves.empty()) pb::write_trace_csv(trace, curves);

    json args{{"data", data_path},
              {"target", target},
              {"loss", loss_flags.name},
              {"tau", loss_flags.tau},
              {"beta", loss_flags.beta},
              {"variant", fit_flags.variant},
              {"T", fit_flags.T},
              {"nu", fit_flags.nu},
              {"lambda", fit_flags.lambda},
              {"depth", fit_flags.depth},
              {"min_leaf", fit_flags.min_leaf},
              {"line_search", fit_flags.line_search},
              {"seed", fit_flags.seed},
              {"val_fraction", val_fraction}};
    if (!model_out.empty()) finish_manifest(model_out, "fit", args, timer);
    else if (!curves.empty()) finish_manifest(curves, "fit", args, timer);
    return exit_code;
}

// ---- eval -----------------------------------------------------------------

int cmd_eval(const std::string& model_path, const std::string& data_path,
             const std::string& target) {
    const pb::Ensemble model = pb::load_model(model_path);
    const pb::Loss& loss = model.loss();
    const pb::DatasetSplit ds = load_dataset(data_path, target, loss.task());

    const std::vector<double> preds = model.predict(ds.features);
    json report;
    report["n"] = ds.n();
    report["loss"] = loss.name();
    report["loss_value"] = loss.risk(ds.targets, preds);
    if (loss.task() == pb::Task::Classification) {
        std::size_t wrong = 0;
        for (std::size_t i = 0; i < preds.size(); ++i) {
            const double label = preds[i] < 0.0 ? -1.0 : 1.0;
            if (label != ds.targets[i]) ++wrong;
        }
        report["misclassification_rate"] =
            static_cast<double>(wrong) / static_cast<double>(ds.n());
    }
    std::cout << report.dump(2) << "\n";
    return 0;
}

// ---- grid -----------------------------------------------------------------

struct GridCell {
    int depth;
    double nu;
    double lambda;
};

struct GridOutcome {
    bool ok = false;
    int best_t = 0;
    double val_loss = 0.0;
    std::string error;
};

int cmd_grid(const std::string& data_path, const std::string& target,
             const LossFlags& loss_flags, const std::string& variant, int T_max,
             std::vector<int> depths, std::vector<double> nus, std::vector<double> lambdas,
             std::uint64_t seed, int jobs, int repeats, const std::string& out_csv,
             const std::string& best_out, const std::string& model_out) {
    Timer timer;
    const pb::Loss loss = loss_flags.make();
    const pb::Variant var = pb::variant_from_name(variant);
    if (depths.empty() || nus.empty()) throw pb::usage_error("grid axes must be non-empty");
    if (!pb::variant_is_proximal(var)) lambdas = {0.0};  // lambda not a parameter
    if (lambdas.empty()) throw pb::usage_error("grid axes must be non-empty");
    if (T_max < 1) throw pb::usage_error("--T must be >= 1");
    if (jobs < 1) jobs = 1;
    if (repeats < 1) repeats = 1;

    const pb::DatasetSplit full = load_dataset(data_path, target, loss.task());
    std::sort(depths.begin(), depths.end());
    std::sort(nus.begin(), nus.end());
    std::sort(lambdas.begin(), lambdas.end());

    std::ofstream csv;
    if (!out_csv.empty()) {
        csv.open(out_csv, std::ios::binary);
        if (!csv) throw pb::data_error("cannot write grid results '" + out_csv + "'");
        csv << (repeats > 1 ? "repeat,depth,T,nu,lambda,error,status\n"
                            : "depth,T,nu,lambda,error,status\n");
    }

    json best_report = json::array();
    int usable_cells = 0;

    for (int rep = 0; rep < repeats; ++rep) {
        const std::uint64_t rep_seed = seed + static_cast<std::uint64_t>(rep);
        // Paper-style protocol: half train, quarter validation, quarter test.
        const auto parts = pb::split(full, 0.5, 0.25, 0.25, rep_seed);
        const pb::DatasetSplit& train = parts[0];
        const pb::DatasetSplit& val = parts[1];
        const pb::DatasetSplit& test = parts[2];
        if (train.n() == 0 || val.n() == 0)
            throw pb::data_error("grid: dataset too small for a 50/25/25 split");

        std::vector<GridCell> cells;
        for (int depth : depths)
            for (double nu : nus)
                for (double lambda : lambdas) cells.push_back({depth, nu, lambda});

        const auto run_cell = [&](const GridCell& cell) {
            GridOutcome out;
            try {
                pb::BoostConfig c;
                c.variant = var;
                c.iterations = T_max;
                c.nu = cell.nu;
                c.lambda = cell.lambda;
                c.max_depth = cell.depth;
                c.seed = rep_seed;
                const pb::FitResult res = pb::fit(c, loss, train.features, train.targets,
                                                  &val.features, val.targets);
                out.best_t = pb::early_stop_select(res.trace);
                out.val_loss = *res.trace.rows[out.best_t].val_loss;
                out.ok = true;
            } catch (const std::exception& e) {
                out.error = e.what();
            }
            return out;
        };

        std::vector<GridOutcome> outcomes(cells.size());
        for (std::size_t base = 0; base < cells.size(); base += jobs) {
            const std::size_t stop = std::min(cells.size(), base + jobs);
            std::vector<std::future<GridOutcome>> batch;
            for (std::size_t k = base; k < stop; ++k)
                batch.push_back(std::async(std::launch::async, run_cell, cells[k]));
            for (std::size_t k = base; k < stop; ++k) outcomes[k] = batch[k - base].get();
        }

        int best_idx = -1;
        for (std::size_t k = 0; k < cells.size(); ++k) {
            const auto& o = outcomes[k];
            if (csv.is_open()) {
                if (repeats > 1) csv << rep << ",";
                csv << cells[k].depth << "," << (o.ok ? o.best_t : 0) << ","
                    << pb::format_double_repr(cells[k].nu) << ",";
                if (pb::variant_is_proximal(var))
                    csv << pb::format_double_repr(cells[k].lambda);
                else
                    csv << "-";
                csv << ",";
                if (o.ok) csv << pb::format_double_repr(o.val_loss);
                csv << "," << (o.ok ? "ok" : "failed") << "\n";
            }
            if (!o.ok) {
                std::cerr << "cell depth=" << cells[k].depth << " nu=" << cells[k].nu
                          << " lambda=" << cells[k].lambda << " failed: " << o.error
                          << "\n";
                continue;
            }
            ++usable_cells;
            if (best_idx < 0 || o.val_loss < outcomes[best_idx].val_loss) best_idx = static_cast<int>(k);
            // Lexicographic tie-break on (depth, nu, lambda, T): cells are
            // enumerated in that order, so strictly-smaller wins keep the first.
        }
        if (best_idx < 0) continue;

        // Refit on train + validation at the selected configuration.
        const GridCell& sel = cells[best_idx];
        pb::BoostConfig c;
        c.variant = var;
        c.iterations = std::max(1, outcomes[best_idx].best_t);
        c.nu = sel.nu;
        c.lambda = sel.lambda;
        c.max_depth = sel.depth;
        c.seed = rep_seed;

        pb::DatasetSplit trainval;
        trainval.task = full.task;
        trainval.features = pb::Matrix(train.n() + val.n(), full.d());
        trainval.targets.resize(train.n() + val.n());
        for (std::size_t i = 0; i < train.n(); ++i) {
            std::copy(train.features.row(i).begin(), train.features.row(i).end(),
                      trainval.features.row(i).begin());
            trainval.targets[i] = train.targets[i];
        }
        for (std::size_t i = 0; i < val.n(); ++i) {
            std::copy(val.features.row(i).begin(), val.features.row(i).end(),
                      trainval.features.row(train.n() + i).begin());
            trainval.targets[train.n() + i] = val.targets[i];
        }
        const pb::FitResult refit =
            pb::fit(c, loss, trainval.features, trainval.targets, nullptr, {});
        if (!model_out.empty() && rep == 0) pb::save_model(refit.model, model_out);

        json entry{{"repeat", rep},
                   {"depth", sel.depth},
                   {"T", c.iterations},
                   {"nu", sel.nu},
                   {"val_loss", outcomes[best_idx].val_loss}};
        if (pb::variant_is_proximal(var)) entry["lambda"] = sel.lambda;
        if (test.n() > 0) {
            const std::vector<double> preds = refit.model.predict(test.features);
            entry["test_loss"] = loss.risk(test.targets, preds);
            if (loss.task() == pb::Task::Classification) {
                std::size_t wrong = 0;
                for (std::size_t i = 0; i < preds.size(); ++i)
                    if ((preds[i] < 0.0 ? -1.0 : 1.0) != test.targets[i]) ++wrong;
                entry["test_misclassification"] =
                    static_cast<double>(wrong) / static_cast<double>(test.n());
            }
        }
        best_report.push_back(std::move(entry));
    }

    if (usable_cells == 0) throw pb::numeric_error("grid: every cell failed");

    const std::string best_text =
        (repeats == 1 && !best_report.empty()) ? best_report[0].dump(2) : best_report.dump(2);
    if (!best_out.empty()) {
        std::ofstream out(best_out, std::ios::binary);
        if (!out) throw pb::data_error("cannot write best-config file '" + best_out + "'");
        out << best_text << "\n";
    } else {
        std::cout << best_text << "\n";
    }

    json args{{"data", data_path}, {"target", target},   {"loss", loss_flags.name},
              {"variant", variant}, {"T", T_max},         {"depths", depths},
              {"nus", nus},         {"lambdas", lambdas}, {"seed", seed},
              {"jobs", jobs},       {"repeats", repeats}};
    if (!out_csv.empty()) finish_manifest(out_csv, "grid", args, timer);
    return 0;
}

// ---- pprox-demo -------------------------------------------------------------

int cmd_pprox_demo(int dim, double kappa, double L, double zeta, int T,
                   std::uint64_t seed, const std::string& out) {
    Timer timer;
    if (dim < 1) throw pb::usage_error("--dim must be >= 1");
    if (!(kappa > 0.0) || !(L > 0.0) || kappa > L)
        throw pb::usage_error("need 0 < kappa <= L");
    if (!(zeta > 0.0 && zeta <= 1.0)) throw pb::usage_error("--zeta must lie in (0, 1]");
    if (T < 1) throw pb::usage_error("--T must be >= 1");

    // Random spectrum in [kappa, L] (endpoints pinned) and a random center;
    // masked coordinates start at their optimum so the declared edge holds
    // along the whole run.
    pb::Rng rng(pb::splitmix64(seed ^ 0x9e37ULL));
    std::vector<double> scales(dim), center(dim), x0(dim);
    for (int i = 0; i < dim; ++i) {
        scales[i] = kappa + (L - kappa) * rng.uniform();
        center[i] = rng.uniform(-2.0, 2.0);
    }
    if (dim >= 2) {
        scales[0] = kappa;
        scales[1] = L;
    }
    const pb::ApproxOperator mask =
        pb::coordinate_mask_operator(dim, zeta * zeta, seed);
    const std::vector<bool> keep = pb::mask_of(mask, dim);
    for (int i = 0; i < dim; ++i)
        x0[i] = keep[i] ? center[i] + rng.uniform(0.5, 1.5) : center[i];

    const pb::Objective obj = pb::diagonal_quadratic(scales, center);
    const double lambda = zeta * zeta / (8.0 * L);
    const pb::ProxPointResult run = pb::prox_point_iterate(obj, mask, x0, lambda, T);

    std::ofstream csv(out, std::ios::binary);
    if (!csv) throw pb::data_error("cannot write '" + out + "'");
    csv << "t,loss,bound\n";
    const double rate = 1.0 - zeta * zeta * kappa / (9.0 * L);
    double bound = run.losses[0];
    for (std::size_t t = 0; t < run.losses.size(); ++t) {
        csv << t << "," << pb::format_double_repr(run.losses[t]) << ","
            << pb::format_double_repr(bound) << "\n";
        bound *= rate;
    }

    const bool ok = pb::verify_rate(run.losses, zeta, L, kappa, 0.0);
    std::cerr << (ok ? "rate bound holds at every iteration\n"
                     : "rate bound violated\n");

    json args{{"dim", dim}, {"kappa", kappa}, {"L", L},
              {"zeta", zeta}, {"T", T}, {"seed", seed}, {"out", out}};
    finish_manifest(out, "pprox-demo", args, timer);
    return ok ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"proximal and gradient boosting with decision-tree weak learners"};
    app.require_subcommand(1);

    // synth
    auto* synth = app.add_subcommand("synth", "generate a synthetic dataset CSV");
    std::string synth_model = "regression", synth_design = "correlated",
                synth_out = "dataset.csv";
    int synth_n = 0, synth_d = 0;
    std::uint64_t synth_seed = default_seed();
    synth->add_option("--model", synth_model, "regression|classification")
        ->capture_default_str();
    synth->add_option("--design", synth_design, "correlated|uncorrelated")
        ->capture_default_str();
    synth->add_option("--n", synth_n, "sample count (model default when 0)");
    synth->add_option("--d", synth_d, "feature count (model default when 0)");
    synth->add_option("--seed", synth_seed, "rng seed")->capture_default_str();
    synth->add_option("--out", synth_out, "output CSV path")->capture_default_str();

    // fit
    auto* fit = app.add_subcommand("fit", "fit a boosting model");
    std::string fit_data, fit_target = "y", fit_curves, fit_model;
    double fit_val_fraction = 0.0;
    LossFlags fit_loss;
    FitFlags fit_flags;
    fit->add_option("--data", fit_data, "training CSV")->required();
    fit->add_option("--target", fit_target, "target column name")->capture_default_str();
    fit_loss.attach(fit);
    fit_flags.attach(fit);
    fit->add_option("--val-fraction", fit_val_fraction,
                    "fraction held out for validation")
        ->capture_default_str();
    fit->add_option("--curves", fit_curves, "write per-iteration losses CSV here");
    fit->add_option("--model", fit_model, "write fitted model JSON here");

    // eval
    auto* eval = app.add_subcommand("eval", "evaluate a model on a dataset");
    std::string eval_model, eval_data, eval_target = "y";
    eval->add_option("--model", eval_model, "model JSON")->required();
    eval->add_option("--data", eval_data, "dataset CSV")->required();
    eval->add_option("--target", eval_target, "target column name")->capture_default_str();

    // grid
    auto* grid = app.add_subcommand("grid", "grid search with early stopping");
    std::string grid_data, grid_target = "y", grid_variant = "proximal";
    std::string grid_csv = "grid_results.csv", grid_best, grid_model;
    LossFlags grid_loss;
    std::vector<int> grid_depths{1, 3, 5};
    std::vector<double> grid_nus{1e-4, 1e-3, 1e-2, 1e-1};
    std::vector<double> grid_lambdas{1e-3, 1e-2, 1e-1, 1.0, 1e1, 1e2};
    int grid_T = 200, grid_jobs = 1, grid_repeats = 1;
    std::uint64_t grid_seed = default_seed();
    grid->add_option("--data", grid_data, "dataset CSV")->required();
    grid->add_option("--target", grid_target, "target column name")->capture_default_str();
    grid_loss.attach(grid);
    grid->add_option("--variant", grid_variant, "boosting variant")->capture_default_str();
    grid->add_option("--T", grid_T, "max iterations per cell")->capture_default_str();
    grid->add_option("--depths", grid_depths, "tree depth grid")->delimiter(',');
    grid->add_option("--nus", grid_nus, "shrinkage grid")->delimiter(',');
    grid->add_option("--lambdas", grid_lambdas, "proximal step grid")->delimiter(',');
    grid->add_option("--seed", grid_seed, "rng seed")->capture_default_str();
    grid->add_option("--jobs", grid_jobs, "parallel cells")->capture_default_str();
    grid->add_option("--repeats", grid_repeats, "random split repetitions")
        ->capture_default_str();
    grid->add_option("--out", grid_csv, "full results CSV")->capture_default_str();
    grid->add_option("--best", grid_best, "best-config JSON path (stdout when empty)");
    grid->add_option("--model", grid_model, "write refitted best model here");

    // pprox-demo
    auto* demo = app.add_subcommand("pprox-demo",
                                    "approximated proximal point rate check on a quadratic");
    int demo_dim = 20, demo_T = 100;
    double demo_kappa = 1.0, demo_L = 10.0, demo_zeta = 0.8;
    std::uint64_t demo_seed = default_seed();
    std::string demo_out = "pprox.csv";
    demo->add_option("--dim", demo_dim, "problem dimension")->capture_default_str();
    demo->add_option("--kappa", demo_kappa, "strong convexity")->capture_default_str();
    demo->add_option("--L", demo_L, "smoothness")->capture_default_str();
    demo->add_option("--zeta", demo_zeta, "target edge in (0,1]")->capture_default_str();
    demo->add_option("--T", demo_T, "iterations")->capture_default_str();
    demo->add_option("--seed", demo_seed, "rng seed")->capture_default_str();
    demo->add_option("--out", demo_out, "output CSV")->capture_default_str();

    try {
        app.parse(argc, argv);
        if (synth->parsed())
            return cmd_synth(synth_model, synth_design, synth_n, synth_d, synth_seed,
                             synth_out);
        if (fit->parsed())
            return cmd_fit(fit_data, fit_target, fit_loss, fit_flags, fit_val_fraction,
                           fit_curves, fit_model);
        if (eval->parsed()) return cmd_eval(eval_model, eval_data, eval_target);
        if (grid->parsed())
            return cmd_grid(grid_data, grid_target, grid_loss, grid_variant, grid_T,
                            grid_depths, grid_nus, grid_lambdas, grid_seed, grid_jobs,
                            grid_repeats, grid_csv, grid_best, grid_model);
        if (demo->parsed())
            return cmd_pprox_demo(demo_dim, demo_kappa, demo_L, demo_zeta, demo_T,
                                  demo_seed, demo_out);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    } catch (const pb::usage_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const pb::invalid_target_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const pb::data_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const pb::numeric_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 1;
}
