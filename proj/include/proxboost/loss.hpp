#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "proxboost/common.hpp"

namespace proxboost {

enum class Task { Regression, Classification };

enum class LossKind {
    LeastSquares,
    LeastAbsoluteDeviations,
    Pinball,
    Exponential,
    Logistic,
    Hinge,
};

struct LineSearchResult {
    double gamma = 0.0;
    bool clamped = false;  // |gamma| hit the +-1e6 safety range
};

// Convex per-sample loss bundle: value, subgradient, proximal map, initial
// constant and exact line search. Immutable after construction; every method
// is a pure function.
class Loss {
public:
    static Loss least_squares() { return Loss(LossKind::LeastSquares); }
    static Loss least_absolute_deviations() { return Loss(LossKind::LeastAbsoluteDeviations); }
    static Loss pinball(double tau);
    static Loss exponential(double beta);
    static Loss logistic() { return Loss(LossKind::Logistic); }
    static Loss hinge() { return Loss(LossKind::Hinge); }

    LossKind kind() const { return kind_; }
    Task task() const;
    double tau() const { return tau_; }
    double beta() const { return beta_; }
    std::string name() const;

    // ell(y, p) per sample.
    double value(double y, double p) const;

    // (1/n) sum_i ell(Y_i, p_i): the empirical risk D(preds).
    double risk(std::span<const double> targets, std::span<const double> preds) const;

    // An element of the subdifferential of D at preds (carries the 1/n factor).
    std::vector<double> subgradient(std::span<const double> targets,
                                    std::span<const double> preds) const;

    // argmin_u lambda * ell(y, u) + (u - z)^2 / 2.
    double prox_pointwise(double y, double z, double lambda) const;

    // (prox_pointwise(Y_i, preds_i, lambda) - preds_i) / lambda, coordinatewise.
    std::vector<double> prox_residual(std::span<const double> targets,
                                      std::span<const double> preds, double lambda) const;

    // Best constant model for this loss.
    double initial_constant(std::span<const double> targets) const;

    // gamma* minimizing risk(preds + gamma * direction).
    double line_search(std::span<const double> targets, std::span<const double> preds,
                       std::span<const double> direction) const;
    LineSearchResult line_search_ex(std::span<const double> targets,
                                    std::span<const double> preds,
                                    std::span<const double> direction) const;

    // Throws data_error unless all targets are valid for this loss's task.
    void validate_targets(std::span<const double> targets) const;

private:
    explicit Loss(LossKind kind) : kind_(kind) {}

    LossKind kind_;
    double tau_ = 0.5;   // pinball only
    double beta_ = 1.0;  // exponential only
};

Loss loss_from_name(const std::string& name, std::optional<double> tau,
                    std::optional<double> beta);

}  // namespace proxboost
