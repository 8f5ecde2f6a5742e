#include "proxboost/pprox.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numeric>
#include <string>

namespace proxboost {

namespace {

double norm_sq(std::span<const double> v) {
    double acc = 0.0;
    for (double x : v) acc += x * x;
    return acc;
}

}  // namespace

ProxPointResult prox_point_iterate(const Objective& obj, const ApproxOperator& P,
                                   std::span<const double> x0, double lambda, int T) {
    if (!(lambda > 0.0)) throw usage_error("prox_point_iterate: lambda must be positive");
    if (T < 1) throw usage_error("prox_point_iterate: T must be >= 1");

    ProxPointResult res;
    res.x.assign(x0.begin(), x0.end());
    res.losses.reserve(T + 1);
    res.losses.push_back(obj.value(res.x));

    for (int t = 0; t < T; ++t) {
        const std::vector<double> px = obj.prox(res.x, lambda);
        std::vector<double> g(res.x.size());
        for (std::size_t i = 0; i < g.size(); ++i) g[i] = (res.x[i] - px[i]) / lambda;

        const std::vector<double> pg = P.apply(g);
        double err = 0.0;
        for (std::size_t i = 0; i < g.size(); ++i) err += (g[i] - pg[i]) * (g[i] - pg[i]);
        const double gsq = norm_sq(g);
        res.step_zeta.push_back(gsq > 0.0 ? std::sqrt(std::max(0.0, 1.0 - err / gsq))
                                          : 1.0);

        for (std::size_t i = 0; i < g.size(); ++i) res.x[i] -= lambda * pg[i];
        const double f = obj.value(res.x);
        if (!std::isfinite(f))
            throw numeric_error("prox_point_iterate: non-finite objective at step " +
                                std::to_string(t + 1));
        res.losses.push_back(f);
    }
    return res;
}

bool verify_rate(std::span<const double> losses, double zeta, double L, double kappa,
                 double f_star, double slack) {
    if (losses.empty()) return false;
    const double rate = 1.0 - zeta * zeta * kappa / (9.0 * L);
    const double excess0 = losses[0] - f_star;
    double bound = excess0;
    for (std::size_t t = 0; t < losses.size(); ++t) {
        if (losses[t] - f_star > bound + slack) return false;
        bound *= rate;
    }
    return true;
}

ApproxOperator identity_operator() {
    ApproxOperator op;
    op.apply = [](std::span<const double> g) {
        return std::vector<double>(g.begin(), g.end());
    };
    op.zeta = 1.0;
    return op;
}

ApproxOperator coordinate_mask_from(std::vector<bool> keep) {
    ApproxOperator op;
    double kept = 0.0;
    for (bool k : keep)
        if (k) kept += 1.0;
    op.zeta = keep.empty() ? 1.0 : std::sqrt(kept / static_cast<double>(keep.size()));
    op.apply = [keep = std::move(keep)](std::span<const double> g) {
        if (g.size() != keep.size())
            throw data_error("coordinate mask dimension mismatch");
        std::vector<double> out(g.size());
        for (std::size_t i = 0; i < g.size(); ++i) out[i] = keep[i] ? g[i] : 0.0;
        return out;
    };
    return op;
}

ApproxOperator coordinate_mask_operator(int dim, double keep_fraction,
                                        std::uint64_t seed) {
    if (dim < 1) throw usage_error("coordinate mask: dim must be >= 1");
    if (!(keep_fraction > 0.0 && keep_fraction <= 1.0))
        throw usage_error("coordinate mask: keep_fraction must lie in (0, 1]");
    const int kept = std::clamp(
        static_cast<int>(std::lround(keep_fraction * static_cast<double>(dim))), 1, dim);
    std::vector<int> idx(dim);
    std::iota(idx.begin(), idx.end(), 0);
    Rng rng(splitmix64(seed));
    shuffle_inplace(idx, rng);
    std::vector<bool> keep(dim, false);
    for (int k = 0; k < kept; ++k) keep[idx[k]] = true;
    return coordinate_mask_from(std::move(keep));
}

std::vector<bool> mask_of(const ApproxOperator& op, int dim) {
    std::vector<bool> keep(dim, false);
    std::vector<double> e(dim, 0.0);
    for (int i = 0; i < dim; ++i) {
        e[i] = 1.0;
        keep[i] = op.apply(e)[i] != 0.0;
        e[i] = 0.0;
    }
    return keep;
}

double measure_zeta(const ApproxOperator& op,
                    const std::vector<std::vector<double>>& probes) {
    double worst = 1.0;
    for (const auto& g : probes) {
        const double gsq = norm_sq(g);
        if (gsq == 0.0) continue;
        const std::vector<double> pg = op.apply(g);
        double err = 0.0;
        for (std::size_t i = 0; i < g.size(); ++i) err += (g[i] - pg[i]) * (g[i] - pg[i]);
        worst = std::min(worst, std::sqrt(std::max(0.0, 1.0 - err / gsq)));
    }
    return worst;
}

Objective diagonal_quadratic(std::vector<double> scales, std::vector<double> center) {
    if (scales.size() != center.size() || scales.empty())
        throw usage_error("diagonal_quadratic: scales and center must match and be nonempty");
    for (double s : scales)
        if (!(s > 0.0)) throw usage_error("diagonal_quadratic: scales must be positive");

    Objective obj;
    obj.smoothness = *std::max_element(scales.begin(), scales.end());
    obj.strong_convexity = *std::min_element(scales.begin(), scales.end());
    obj.minimum = 0.0;

    auto sc = std::make_shared<std::vector<double>>(std::move(scales));
    auto ct = std::make_shared<std::vector<double>>(std::move(center));

    obj.value = [sc, ct](std::span<const double> x) {
        double acc = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            const double d = x[i] - (*ct)[i];
            acc += 0.5 * (*sc)[i] * d * d;
        }
        return acc;
    };
    obj.gradient = [sc, ct](std::span<const double> x) {
        std::vector<double> g(x.size());
        for (std::size_t i = 0; i < x.size(); ++i) g[i] = (*sc)[i] * (x[i] - (*ct)[i]);
        return g;
    };
    obj.prox = [sc, ct](std::span<const double> x, double lambda) {
        // argmin_u lambda/2 s (u - c)^2 + 1/2 (u - x)^2 = (x + lambda s c) / (1 + lambda s)
        std::vector<double> u(x.size());
        for (std::size_t i = 0; i < x.size(); ++i)
            u[i] = (x[i] + lambda * (*sc)[i] * (*ct)[i]) / (1.0 + lambda * (*sc)[i]);
        return u;
    };
    return obj;
}

}  // namespace proxboost
