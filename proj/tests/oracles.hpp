// Test-only reference implementations, kept independent of the library code
// they check.
#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <span>
#include <vector>

namespace oracles {

// Golden-section search for the minimizer of a strictly unimodal scalar
// function on [lo, hi].
inline double golden_section(const std::function<double(double)>& f, double lo, double hi,
                             double tol = 1e-11) {
    constexpr double invphi = 0.6180339887498948482;
    double a = lo, b = hi;
    double c = b - invphi * (b - a);
    double d = a + invphi * (b - a);
    double fc = f(c), fd = f(d);
    while (b - a > tol) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - invphi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + invphi * (b - a);
            fd = f(d);
        }
    }
    return 0.5 * (a + b);
}

inline double central_difference(const std::function<double(double)>& f, double x,
                                 double h = 1e-5) {
    return (f(x + h) - f(x - h)) / (2.0 * h);
}

struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
};

inline LinearFit least_squares_line(std::span<const double> xs, std::span<const double> ys) {
    const double n = static_cast<double>(xs.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
        syy += ys[i] * ys[i];
    }
    LinearFit fit;
    const double den = n * sxx - sx * sx;
    fit.slope = (n * sxy - sx * sy) / den;
    fit.intercept = (sy - fit.slope * sx) / n;
    const double var = n * syy - sy * sy;
    fit.r_squared = var > 0.0 ? (n * sxy - sx * sy) * (n * sxy - sx * sy) / (den * var) : 0.0;
    return fit;
}

// Exhaustive best first split: scans every (feature, midpoint threshold) pair
// and returns the one minimizing total child SSE, ties resolved by lowest
// feature then smallest threshold.
struct BruteSplit {
    bool found = false;
    int feature = -1;
    double threshold = 0.0;
    double total_sse = std::numeric_limits<double>::infinity();
};

inline double sse_about_mean(const std::vector<double>& v) {
    if (v.empty()) return 0.0;
    double mean = 0.0;
    for (double x : v) mean += x;
    mean /= static_cast<double>(v.size());
    double acc = 0.0;
    for (double x : v) acc += (x - mean) * (x - mean);
    return acc;
}

inline BruteSplit brute_force_split(const std::vector<std::vector<double>>& rows,
                                    const std::vector<double>& residual,
                                    int min_samples_leaf = 1) {
    BruteSplit best;
    const std::size_t n = rows.size();
    const std::size_t d = rows.empty() ? 0 : rows[0].size();
    for (std::size_t j = 0; j < d; ++j) {
        std::vector<double> vals;
        for (const auto& r : rows) vals.push_back(r[j]);
        std::vector<double> sorted = vals;
        std::sort(sorted.begin(), sorted.end());
        for (std::size_t k = 0; k + 1 < n; ++k) {
            if (sorted[k] == sorted[k + 1]) continue;
            const double thr = sorted[k] + 0.5 * (sorted[k + 1] - sorted[k]);
            std::vector<double> left, right;
            for (std::size_t i = 0; i < n; ++i)
                (vals[i] <= thr ? left : right).push_back(residual[i]);
            if (static_cast<int>(left.size()) < min_samples_leaf ||
                static_cast<int>(right.size()) < min_samples_leaf)
                continue;
            const double sse = sse_about_mean(left) + sse_about_mean(right);
            if (sse < best.total_sse - 1e-15) {
                best.found = true;
                best.feature = static_cast<int>(j);
                best.threshold = thr;
                best.total_sse = sse;
            }
        }
    }
    return best;
}

}  // namespace oracles
