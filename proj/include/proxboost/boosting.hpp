#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "proxboost/common.hpp"
#include "proxboost/loss.hpp"
#include "proxboost/tree.hpp"

namespace proxboost {

enum class Variant {
    Gradient,
    GradientAccelerated,
    Proximal,
    ProximalAccelerated,
    GradientResidual,
};

enum class LineSearchMode { Global, PerLeaf };

bool variant_is_accelerated(Variant v);
bool variant_is_proximal(Variant v);
std::string variant_name(Variant v);
Variant variant_from_name(const std::string& name);

struct BoostConfig {
    Variant variant = Variant::Proximal;
    int iterations = 100;  // T
    double nu = 0.1;       // shrinkage in (0, 1]
    double lambda = 1.0;   // prox step, proximal variants only
    int max_depth = 3;
    int min_samples_leaf = 1;
    LineSearchMode line_search = LineSearchMode::PerLeaf;
    std::uint64_t seed = 0;
    bool record_weight_snapshots = false;  // test hook: keep w^(t) per iteration

    void validate() const;
};

// Momentum sequence beta_{t+1} = (1 + sqrt(1 + 4 beta_t^2)) / 2,
// alpha_{t+1} = (beta_t - 1) / beta_{t+1}, forced to 0 for steps <= 1.
struct NesterovState {
    double beta = 0.0;
    double alpha = 0.0;
    int step = 0;
};

NesterovState nesterov_next(const NesterovState& state);

struct TraceRow {
    int t = 0;
    double train_loss = 0.0;
    std::optional<double> val_loss;
    double gamma = 0.0;
    double alpha = 0.0;
    bool gamma_clamped = false;
    std::vector<double> leaf_gammas;  // PerLeaf mode only
};

struct FitTrace {
    std::vector<TraceRow> rows;
    // Populated when BoostConfig::record_weight_snapshots is set: per-iteration
    // weight vectors w^(t) and train predictions x_t, index-aligned with rows.
    std::vector<std::vector<double>> weight_snapshots;
    std::vector<std::vector<double>> iterate_snapshots;
};

// Thrown when predictions stop being finite mid-fit; keeps the progress so far.
class fit_divergence_error : public numeric_error {
public:
    fit_divergence_error(int iteration, FitTrace trace)
        : numeric_error("non-finite predictions at boosting iteration " +
                        std::to_string(iteration)),
          iteration(iteration),
          trace(std::move(trace)) {}

    int iteration;
    FitTrace trace;
};

// f_T = w_0 g_0 + sum_t w_t g_t with g_0 the constant initial estimator.
class Ensemble {
public:
    Ensemble(Loss loss, BoostConfig config, double initial_constant,
             std::size_t n_features = 0)
        : loss_(std::move(loss)), config_(config), initial_(initial_constant),
          n_features_(n_features), weights_{1.0} {}

    void append(RegressionTree tree) { trees_.push_back(std::move(tree)); }
    void set_weights(std::vector<double> w);

    double predict_row(std::span<const double> x) const;
    std::vector<double> predict(const Matrix& features) const;
    std::vector<double> classify(const Matrix& features) const;  // sign, sign(0)=+1

    double initial_constant() const { return initial_; }
    const std::vector<RegressionTree>& trees() const { return trees_; }
    const std::vector<double>& weights() const { return weights_; }
    const Loss& loss() const { return loss_; }
    const BoostConfig& config() const { return config_; }
    std::size_t size() const { return trees_.size() + 1; }  // learners incl. constant
    std::size_t n_features() const { return n_features_; }

private:
    Loss loss_;
    BoostConfig config_;
    double initial_;
    std::size_t n_features_ = 0;  // 0 = unknown
    std::vector<RegressionTree> trees_;
    std::vector<double> weights_;
};

struct FitResult {
    Ensemble model;
    FitTrace trace;
};

// Pseudo-residual direction at `point` for the requested variant. For
// GradientResidual, prev_error (may be null on the first iteration) is added;
// the caller owns the error update after the tree fit.
std::vector<double> compute_direction(Variant variant, const Loss& loss,
                                      std::span<const double> targets,
                                      std::span<const double> point, double lambda,
                                      const std::vector<double>* prev_error);

FitResult fit(const BoostConfig& config, const Loss& loss, const Matrix& train_features,
              std::span<const double> train_targets, const Matrix* val_features = nullptr,
              std::span<const double> val_targets = {});

// Ensemble weights from the (gamma_1..gamma_T, alpha_1..alpha_T) sequences:
// closed form and the recursive update, which must agree.
std::vector<double> closed_form_weights(std::span<const double> gammas,
                                        std::span<const double> alphas, double nu);
std::vector<double> recursive_weights(std::span<const double> gammas,
                                      std::span<const double> alphas, double nu);

// argmin_t val_loss (ties to the smallest t). Throws data_error without val data.
int early_stop_select(const FitTrace& trace);

}  // namespace proxboost
