#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "proxboost/common.hpp"

namespace proxboost {

// Objective on plain vectors with a prox oracle. smoothness (L) and
// strong_convexity (kappa) are declared metadata consumed by rate checks only.
struct Objective {
    std::function<double(std::span<const double>)> value;
    std::function<std::vector<double>(std::span<const double>, double)> prox;
    std::function<std::vector<double>(std::span<const double>)> gradient;  // optional
    double smoothness = 0.0;
    double strong_convexity = 0.0;
    double minimum = 0.0;  // F(x*), when known
};

struct ApproxOperator {
    std::function<std::vector<double>(std::span<const double>)> apply;
    double zeta = 1.0;  // declared edge, test metadata
};

struct ProxPointResult {
    std::vector<double> x;
    std::vector<double> losses;     // F(x_0) .. F(x_T)
    std::vector<double> step_zeta;  // per-step measured edge, 1 when g_t = 0
};

// x_{t+1} = x_t - lambda * P(g_t) with g_t = (x_t - prox(x_t, lambda)) / lambda.
ProxPointResult prox_point_iterate(const Objective& obj, const ApproxOperator& P,
                                   std::span<const double> x0, double lambda, int T);

// True iff losses[t] - f_star <= (1 - zeta^2 kappa / (9 L))^t (losses[0] - f_star)
// for every t, within `slack`.
bool verify_rate(std::span<const double> losses, double zeta, double L, double kappa,
                 double f_star = 0.0, double slack = 1e-10);

ApproxOperator identity_operator();

// Zeroes a fixed random subset of coordinates, keeping ceil(keep_fraction * dim)
// of them. On uniformly spread inputs this realizes zeta^2 ~ keep_fraction.
ApproxOperator coordinate_mask_operator(int dim, double keep_fraction,
                                        std::uint64_t seed);
ApproxOperator coordinate_mask_from(std::vector<bool> keep);
std::vector<bool> mask_of(const ApproxOperator& op, int dim);  // probes unit vectors

// Worst-case edge over a probe batch: min_g sqrt(1 - |g - Pg|^2 / |g|^2).
double measure_zeta(const ApproxOperator& op,
                    const std::vector<std::vector<double>>& probes);

// F(x) = 1/2 sum_i scale_i (x_i - center_i)^2, with closed-form prox.
Objective diagonal_quadratic(std::vector<double> scales, std::vector<double> center);

}  // namespace proxboost
