#include "proxboost/boosting.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace proxboost {

bool variant_is_accelerated(Variant v) {
    return v == Variant::GradientAccelerated || v == Variant::ProximalAccelerated;
}

bool variant_is_proximal(Variant v) {
    return v == Variant::Proximal || v == Variant::ProximalAccelerated;
}

std::string variant_name(Variant v) {
    switch (v) {
        case Variant::Gradient: return "gradient";
        case Variant::GradientAccelerated: return "gradient-accelerated";
        case Variant::Proximal: return "proximal";
        case Variant::ProximalAccelerated: return "proximal-accelerated";
        case Variant::GradientResidual: return "gradient-residual";
    }
    return "unknown";
}

Variant variant_from_name(const std::string& name) {
    if (name == "gradient") return Variant::Gradient;
    if (name == "gradient-accelerated") return Variant::GradientAccelerated;
    if (name == "proximal") return Variant::Proximal;
    if (name == "proximal-accelerated") return Variant::ProximalAccelerated;
    if (name == "gradient-residual") return Variant::GradientResidual;
    throw usage_error("unknown variant '" + name + "'");
}

void BoostConfig::validate() const {
    if (iterations < 1) throw usage_error("iterations must be >= 1");
    if (!(nu > 0.0 && nu <= 1.0)) throw usage_error("nu must lie in (0, 1]");
    if (variant_is_proximal(variant) && !(lambda > 0.0))
        throw usage_error("lambda must be positive for proximal variants");
    if (max_depth < 1) throw usage_error("max_depth must be >= 1");
    if (min_samples_leaf < 1) throw usage_error("min_samples_leaf must be >= 1");
}

NesterovState nesterov_next(const NesterovState& state) {
    NesterovState next;
    next.step = state.step + 1;
    next.beta = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * state.beta * state.beta));
    next.alpha = next.step <= 1 ? 0.0 : (state.beta - 1.0) / next.beta;
    return next;
}

void Ensemble::set_weights(std::vector<double> w) {
    if (w.size() != trees_.size() + 1)
        throw data_error("ensemble weights must have one entry per learner");
    if (w[0] != 1.0) throw data_error("ensemble weight w_0 must be 1");
    weights_ = std::move(w);
}

double Ensemble::predict_row(std::span<const double> x) const {
    double acc = weights_[0] * initial_;
    for (std::size_t t = 0; t < trees_.size(); ++t)
        acc += weights_[t + 1] * trees_[t].predict(x);
    return acc;
}

std::vector<double> Ensemble::predict(const Matrix& features) const {
    if (n_features_ > 0 && features.cols != n_features_)
        throw data_error("feature dimension mismatch: model expects " +
                         std::to_string(n_features_) + " columns, got " +
                         std::to_string(features.cols));
    std::vector<double> out(features.rows);
    for (std::size_t i = 0; i < features.rows; ++i) out[i] = predict_row(features.row(i));
    return out;
}

std::vector<double> Ensemble::classify(const Matrix& features) const {
    std::vector<double> out = predict(features);
    for (double& v : out) v = v < 0.0 ? -1.0 : 1.0;
    return out;
}

std::vector<double> compute_direction(Variant variant, const Loss& loss,
                                      std::span<const double> targets,
                                      std::span<const double> point, double lambda,
                                      const std::vector<double>* prev_error) {
    if (variant_is_proximal(variant)) return loss.prox_residual(targets, point, lambda);

    // Negative subgradient rescaled by n so gradient and prox directions feed
    // the tree fitter targets of the same magnitude.
    std::vector<double> r = loss.subgradient(targets, point);
    const double n = static_cast<double>(targets.size());
    for (double& v : r) v = -n * v;
    if (variant == Variant::GradientResidual && prev_error != nullptr) {
        if (prev_error->size() != r.size())
            throw data_error("previous-error vector has wrong length");
        for (std::size_t i = 0; i < r.size(); ++i) r[i] += (*prev_error)[i];
    }
    return r;
}

namespace {

// Weight recursion of the accelerated update
// w_j^(t+1) = (w_j^(t) - w_j^(t-1)) (1 + alpha_t) + w_j^(t-1), with the
// convention that w_1^(0) equals w_1^(1) and unborn weights are zero.
class WeightTracker {
public:
    WeightTracker() : cur_{1.0} {}

    void push(double step_weight, double alpha_t) {
        const int t = static_cast<int>(cur_.size()) - 1;  // current iteration index
        std::vector<double> next = cur_;
        for (int j = 1; j <= t; ++j) {
            const double prev_j =
                j < static_cast<int>(prev_.size()) ? prev_[j] : (j == 1 ? cur_[1] : 0.0);
            next[j] = (cur_[j] - prev_j) * (1.0 + alpha_t) + prev_j;
        }
        next.push_back(step_weight);
        prev_ = std::move(cur_);
        cur_ = std::move(next);
    }

    const std::vector<double>& weights() const { return cur_; }

private:
    std::vector<double> cur_;   // w^(t)
    std::vector<double> prev_;  // w^(t-1)
};

}  // namespace

std::vector<double> recursive_weights(std::span<const double> gammas,
                                      std::span<const double> alphas, double nu) {
    if (gammas.size() != alphas.size())
        throw data_error("gamma and alpha sequences must have equal length");
    // Sequences are (gamma_1..gamma_T, alpha_1..alpha_T); the update producing
    // w^(t+1) uses alpha_t, and the first push applies no alpha at all.
    WeightTracker w;
    for (std::size_t t = 0; t < gammas.size(); ++t)
        w.push(nu * gammas[t], t == 0 ? 0.0 : alphas[t - 1]);
    return w.weights();
}

std::vector<double> closed_form_weights(std::span<const double> gammas,
                                        std::span<const double> alphas, double nu) {
    if (gammas.size() != alphas.size())
        throw data_error("gamma and alpha sequences must have equal length");
    const int T = static_cast<int>(gammas.size());
    std::vector<double> w(T + 1);
    w[0] = 1.0;
    if (T >= 1) w[1] = nu * gammas[0];
    for (int t = 2; t <= T; ++t) {
        // w_t = (1 + sum_{j=t}^{T-1} prod_{k=t}^{j} alpha_k) nu gamma_t;
        // alphas[k-1] holds alpha_k. Empty sum for t = T gives w_T = nu gamma_T.
        double acc = 0.0;
        double prod = 1.0;
        for (int j = t; j <= T - 1; ++j) {
            prod *= alphas[j - 1];
            acc += prod;
        }
        w[t] = (1.0 + acc) * nu * gammas[t - 1];
    }
    return w;
}

int early_stop_select(const FitTrace& trace) {
    int best_t = -1;
    double best = 0.0;
    for (const auto& row : trace.rows) {
        if (!row.val_loss.has_value()) continue;
        if (best_t < 0 || *row.val_loss < best) {
            best_t = row.t;
            best = *row.val_loss;
        }
    }
    if (best_t < 0) throw data_error("early stopping requires validation losses");
    return best_t;
}

FitResult fit(const BoostConfig& config, const Loss& loss, const Matrix& train_features,
              std::span<const double> train_targets, const Matrix* val_features,
              std::span<const double> val_targets) {
    config.validate();
    if (train_features.rows == 0) throw data_error("fit: empty training set");
    if (train_features.rows != train_targets.size())
        throw data_error("fit: features and targets disagree on n");
    loss.validate_targets(train_targets);
    const bool has_val = val_features != nullptr && val_features->rows > 0;
    if (has_val && val_features->rows != val_targets.size())
        throw data_error("fit: validation features and targets disagree on n");
    if (has_val) loss.validate_targets(val_targets);

    const std::size_t n = train_features.rows;
    const bool accelerated = variant_is_accelerated(config.variant);

    const double c0 = loss.initial_constant(train_targets);
    Ensemble model(loss, config, c0, train_features.cols);
    FitTrace trace;

    std::vector<double> x(n, c0), v(n, c0);
    std::vector<double> xv, vv;
    if (has_val) {
        xv.assign(val_features->rows, c0);
        vv = xv;
    }

    WeightTracker weights;
    if (config.record_weight_snapshots) {
        trace.weight_snapshots.push_back(weights.weights());
        trace.iterate_snapshots.push_back(x);
    }

    TraceRow row0;
    row0.t = 0;
    row0.train_loss = loss.risk(train_targets, x);
    if (has_val) row0.val_loss = loss.risk(val_targets, xv);
    trace.rows.push_back(row0);

    TreeFitter fitter(train_features);
    std::vector<double> prev_error;
    if (config.variant == Variant::GradientResidual) prev_error.assign(n, 0.0);

    NesterovState ns;           // state at index t
    double alpha_t = 0.0;       // alpha used by this iteration's f-update
    double alpha_next = 0.0;    // alpha_{t+1} for the v-update

    for (int t = 0; t < config.iterations; ++t) {
        std::vector<double> direction =
            compute_direction(config.variant, loss, train_targets, v, config.lambda,
                              config.variant == Variant::GradientResidual ? &prev_error
                                                                          : nullptr);

        RegressionTree tree =
            fitter.fit(direction, config.max_depth, config.min_samples_leaf);

        if (config.variant == Variant::GradientResidual) {
            const std::vector<double> fitted = tree.predict_all(train_features);
            for (std::size_t i = 0; i < n; ++i) prev_error[i] = direction[i] - fitted[i];
        }

        // Line search anchored at f_t (the x iterate), never at v_t.
        double step_weight = 0.0;
        double trace_gamma = 0.0;
        bool clamped = false;
        std::vector<double> leaf_gammas;
        if (config.line_search == LineSearchMode::PerLeaf) {
            const LeafAssignment assign = assign_leaves(tree, train_features);
            std::map<int, std::vector<std::size_t>> members;
            for (std::size_t i = 0; i < n; ++i) members[assign.leaf_of_sample[i]].push_back(i);
            for (int leaf : tree.leaf_ids()) {
                const double dir_value = tree.leaf_value(leaf);
                const auto it = members.find(leaf);
                double gamma_leaf = 0.0;
                if (it != members.end() && dir_value != 0.0) {
                    const auto& idx = it->second;
                    std::vector<double> yl(idx.size()), pl(idx.size()),
                        dl(idx.size(), dir_value);
                    for (std::size_t k = 0; k < idx.size(); ++k) {
                        yl[k] = train_targets[idx[k]];
                        pl[k] = x[idx[k]];
                    }
                    const LineSearchResult res = loss.line_search_ex(yl, pl, dl);
                    gamma_leaf = res.gamma;
                    clamped = clamped || res.clamped;
                }
                leaf_gammas.push_back(gamma_leaf);
                tree.set_leaf_value(leaf, config.nu * gamma_leaf * dir_value);
            }
            step_weight = 1.0;
            trace_gamma = 1.0;
        } else {
            const std::vector<double> g = tree.predict_all(train_features);
            const LineSearchResult res = loss.line_search_ex(train_targets, x, g);
            clamped = res.clamped;
            trace_gamma = res.gamma;
            step_weight = config.nu * res.gamma;
        }

        const std::vector<double> g_train = tree.predict_all(train_features);
        std::vector<double> x_next(n);
        for (std::size_t i = 0; i < n; ++i) x_next[i] = v[i] + step_weight * g_train[i];
        if (!all_finite(x_next)) throw fit_divergence_error(t + 1, std::move(trace));

        if (accelerated) {
            ns = nesterov_next(ns);
            alpha_next = ns.alpha;
        } else {
            alpha_next = 0.0;
        }

        std::vector<double> v_next(n);
        for (std::size_t i = 0; i < n; ++i)
            v_next[i] = x_next[i] + alpha_next * (x_next[i] - x[i]);

        TraceRow row;
        row.t = t + 1;
        row.train_loss = loss.risk(train_targets, x_next);
        row.gamma = trace_gamma;
        row.alpha = alpha_next;
        row.gamma_clamped = clamped;
        row.leaf_gammas = std::move(leaf_gammas);

        if (has_val) {
            // Validation twin of the iterate/interpolation recursion.
            const std::vector<double> g_val = tree.predict_all(*val_features);
            std::vector<double> xv_next(xv.size());
            for (std::size_t i = 0; i < xv.size(); ++i)
                xv_next[i] = vv[i] + step_weight * g_val[i];
            std::vector<double> vv_next(xv.size());
            for (std::size_t i = 0; i < xv.size(); ++i)
                vv_next[i] = xv_next[i] + alpha_next * (xv_next[i] - xv[i]);
            xv = std::move(xv_next);
            vv = std::move(vv_next);
            row.val_loss = loss.risk(val_targets, xv);
        }

        weights.push(step_weight, alpha_t);
        if (config.record_weight_snapshots) {
            trace.weight_snapshots.push_back(weights.weights());
            trace.iterate_snapshots.push_back(x_next);
        }
        model.append(std::move(tree));

        x = std::move(x_next);
        v = std::move(v_next);
        alpha_t = alpha_next;

        trace.rows.push_back(std::move(row));
    }

    model.set_weights(weights.weights());
    return FitResult{std::move(model), std::move(trace)};
}

}  // namespace proxboost
