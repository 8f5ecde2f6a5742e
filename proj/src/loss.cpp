#include "proxboost/loss.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

namespace proxboost {

namespace {

constexpr double kLn2 = 0.6931471805599453094172321214582;
constexpr double kGammaLimit = 1e6;

double sign_of(double x) { return x < 0.0 ? -1.0 : (x > 0.0 ? 1.0 : 0.0); }

// log(1 + exp(t)) without overflow.
double softplus(double t) {
    if (t > 36.0) return t + std::exp(-t);
    if (t < -36.0) return std::exp(t);
    return std::log1p(std::exp(t));
}

// 1 / (1 + exp(t)) without overflow.
double inv1pexp(double t) {
    if (t > 36.0) return std::exp(-t);
    return 1.0 / (1.0 + std::exp(t));
}

double quantile_order_stat(std::vector<double> v, double tau) {
    const std::size_t n = v.size();
    std::size_t k = static_cast<std::size_t>(std::ceil(tau * static_cast<double>(n)));
    if (k < 1) k = 1;
    if (k > n) k = n;
    std::nth_element(v.begin(), v.begin() + (k - 1), v.end());
    return v[k - 1];
}

double median(std::vector<double> v) {
    const std::size_t n = v.size();
    const std::size_t mid = n / 2;
    std::nth_element(v.begin(), v.begin() + mid, v.end());
    const double hi = v[mid];
    if (n % 2 == 1) return hi;
    const double lo = *std::max_element(v.begin(), v.begin() + mid);
    return 0.5 * (lo + hi);
}

// Safeguarded Newton on a strictly increasing derivative: finds the root of
// deriv in [lo, hi] (deriv(lo) <= 0 <= deriv(hi)). A Newton step is taken only
// when it stays inside the bracket and at least halves it; otherwise bisection
// guarantees progress (rtsafe-style).
double newton_root(const std::function<double(double)>& deriv,
                   const std::function<double(double)>& second, double lo, double hi,
                   double start) {
    double x = std::clamp(start, lo, hi);
    double width = hi - lo;
    for (int it = 0; it < 200; ++it) {
        const double d = deriv(x);
        if (std::abs(d) <= 1e-13 * std::max(1.0, std::abs(x))) return x;
        if (d > 0.0)
            hi = x;
        else
            lo = x;
        if (hi - lo <= 1e-12 * std::max(1.0, std::abs(lo) + std::abs(hi)))
            return 0.5 * (lo + hi);
        const double h = second(x);
        double next = (std::isfinite(d) && std::isfinite(h) && h > 0.0) ? x - d / h
                                                                        : 0.5 * (lo + hi);
        if (!(next > lo && next < hi) || hi - lo > 0.5 * width) next = 0.5 * (lo + hi);
        width = hi - lo;
        if (std::abs(next - x) <= 1e-12 * std::max(1.0, std::abs(x))) return next;
        x = next;
    }
    throw numeric_error("scalar Newton solver failed to converge");
}

}  // namespace

Loss Loss::pinball(double tau) {
    if (!(tau > 0.0 && tau < 1.0)) throw usage_error("pinball tau must lie in (0, 1)");
    Loss l(LossKind::Pinball);
    l.tau_ = tau;
    return l;
}

Loss Loss::exponential(double beta) {
    if (!(beta > 0.0)) throw usage_error("exponential beta must be positive");
    Loss l(LossKind::Exponential);
    l.beta_ = beta;
    return l;
}

Task Loss::task() const {
    switch (kind_) {
        case LossKind::LeastSquares:
        case LossKind::LeastAbsoluteDeviations:
        case LossKind::Pinball:
            return Task::Regression;
        default:
            return Task::Classification;
    }
}

std::string Loss::name() const {
    switch (kind_) {
        case LossKind::LeastSquares: return "least_squares";
        case LossKind::LeastAbsoluteDeviations: return "lad";
        case LossKind::Pinball: return "pinball";
        case LossKind::Exponential: return "exponential";
        case LossKind::Logistic: return "logistic";
        case LossKind::Hinge: return "hinge";
    }
    return "unknown";
}

void Loss::validate_targets(std::span<const double> targets) const {
    for (std::size_t i = 0; i < targets.size(); ++i) {
        const double y = targets[i];
        if (!std::isfinite(y)) throw data_error("target " + std::to_string(i) + " is not finite");
        if (task() == Task::Classification && y != 1.0 && y != -1.0)
            throw invalid_target_error("classification target " + std::to_string(i) +
                                       " must be -1 or +1, got " + std::to_string(y));
    }
}

double Loss::value(double y, double p) const {
    switch (kind_) {
        case LossKind::LeastSquares: {
            const double d = y - p;
            return 0.5 * d * d;
        }
        case LossKind::LeastAbsoluteDeviations:
            return std::abs(y - p);
        case LossKind::Pinball: {
            const double u = y - p;
            return u >= 0.0 ? tau_ * u : (tau_ - 1.0) * u;
        }
        case LossKind::Exponential:
            return std::exp(-beta_ * y * p);
        case LossKind::Logistic:
            return softplus(-y * p) / kLn2;
        case LossKind::Hinge:
            return std::max(0.0, 1.0 - y * p);
    }
    return 0.0;
}

double Loss::risk(std::span<const double> targets, std::span<const double> preds) const {
    if (targets.size() != preds.size() || targets.empty())
        throw data_error("risk: targets and predictions must have equal nonzero length");
    double acc = 0.0;
    for (std::size_t i = 0; i < targets.size(); ++i) acc += value(targets[i], preds[i]);
    return acc / static_cast<double>(targets.size());
}

std::vector<double> Loss::subgradient(std::span<const double> targets,
                                      std::span<const double> preds) const {
    if (targets.size() != preds.size() || targets.empty())
        throw data_error("subgradient: targets and predictions must have equal nonzero length");
    validate_targets(targets);
    const double n = static_cast<double>(targets.size());
    std::vector<double> g(targets.size());
    for (std::size_t i = 0; i < targets.size(); ++i) {
        const double y = targets[i];
        const double p = preds[i];
        double gi = 0.0;
        switch (kind_) {
            case LossKind::LeastSquares:
                gi = p - y;
                break;
            case LossKind::LeastAbsoluteDeviations:
                gi = sign_of(p - y);
                break;
            case LossKind::Pinball: {
                const double u = y - p;
                gi = u > 0.0 ? -tau_ : (u < 0.0 ? 1.0 - tau_ : 0.0);
                break;
            }
            case LossKind::Exponential:
                gi = -beta_ * y * std::exp(-beta_ * y * p);
                break;
            case LossKind::Logistic:
                gi = -y * inv1pexp(y * p) / kLn2;
                break;
            case LossKind::Hinge:
                gi = (y * p < 1.0) ? -y : 0.0;
                break;
        }
        g[i] = gi / n;
    }
    return g;
}

double Loss::prox_pointwise(double y, double z, double lambda) const {
    if (!(lambda > 0.0)) throw usage_error("prox step lambda must be positive");
    switch (kind_) {
        case LossKind::LeastSquares:
            return (lambda * y + z) / (1.0 + lambda);
        case LossKind::LeastAbsoluteDeviations: {
            const double d = z - y;
            if (std::abs(d) <= lambda) return y;
            return z - lambda * sign_of(d);
        }
        case LossKind::Pinball: {
            const double u = y - z;
            if (u > lambda * tau_) return z + lambda * tau_;
            if (u < lambda * (tau_ - 1.0)) return z + lambda * (tau_ - 1.0);
            return y;
        }
        case LossKind::Hinge: {
            if (y * z < 1.0 - lambda) return z + lambda * y;
            if (y * z > 1.0) return z;
            return y;  // y in {-1, +1}, so 1/y == y
        }
        case LossKind::Exponential: {
            const double m = beta_ * y;
            // h'(u) = u - z - lambda*m*exp(-m*u); root bracketed on the side of z
            // the prox moves toward, with |prox - z| <= lambda*|ell'(z)|.
            const auto deriv = [&](double u) { return u - z - lambda * m * std::exp(-m * u); };
            const auto second = [&](double u) {
                return 1.0 + lambda * m * m * std::exp(-m * u);
            };
            double move = lambda * std::abs(m) * std::exp(std::min(700.0, -m * z));
            if (!std::isfinite(move)) move = std::numeric_limits<double>::max() / 4.0;
            double lo = z, hi = z;
            if (m > 0.0)
                hi = z + move;
            else
                lo = z - move;
            while (deriv(hi) < 0.0) hi += std::max(1.0, hi - lo);
            while (deriv(lo) > 0.0) lo -= std::max(1.0, hi - lo);
            return newton_root(deriv, second, lo, hi, z);
        }
        case LossKind::Logistic: {
            const auto deriv = [&](double u) {
                return u - z - lambda * y * inv1pexp(y * u) / kLn2;
            };
            const auto second = [&](double u) {
                const double s = inv1pexp(y * u);
                return 1.0 + lambda * s * (1.0 - s) / kLn2;
            };
            const double move = lambda / kLn2 + 1.0;
            return newton_root(deriv, second, z - move, z + move, z);
        }
    }
    return z;
}

std::vector<double> Loss::prox_residual(std::span<const double> targets,
                                        std::span<const double> preds, double lambda) const {
    if (targets.size() != preds.size() || targets.empty())
        throw data_error("prox_residual: targets and predictions must have equal nonzero length");
    validate_targets(targets);
    std::vector<double> r(targets.size());
    for (std::size_t i = 0; i < targets.size(); ++i)
        r[i] = (prox_pointwise(targets[i], preds[i], lambda) - preds[i]) / lambda;
    return r;
}

double Loss::initial_constant(std::span<const double> targets) const {
    if (targets.empty()) throw data_error("initial_constant: empty targets");
    validate_targets(targets);
    const double n = static_cast<double>(targets.size());
    switch (kind_) {
        case LossKind::LeastSquares: {
            double s = 0.0;
            for (double y : targets) s += y;
            return s / n;
        }
        case LossKind::LeastAbsoluteDeviations:
            return median(std::vector<double>(targets.begin(), targets.end()));
        case LossKind::Pinball:
            return quantile_order_stat(std::vector<double>(targets.begin(), targets.end()), tau_);
        case LossKind::Exponential:
        case LossKind::Logistic: {
            double p = 0.0;
            for (double y : targets)
                if (y > 0.0) p += 1.0;
            if (p == 0.0 || p == n)
                throw data_error("initial constant undefined: all targets belong to one class");
            const double logit = std::log(p / (n - p));
            return kind_ == LossKind::Exponential ? logit / (2.0 * beta_) : logit;
        }
        case LossKind::Hinge: {
            double s = 0.0;
            for (double y : targets) s += y;
            return s < 0.0 ? -1.0 : 1.0;  // sign(0) := +1
        }
    }
    return 0.0;
}

LineSearchResult Loss::line_search_ex(std::span<const double> targets,
                                      std::span<const double> preds,
                                      std::span<const double> direction) const {
    if (targets.size() != preds.size() || targets.size() != direction.size() || targets.empty())
        throw data_error("line_search: inconsistent lengths");

    bool has_direction = false;
    for (double d : direction)
        if (d != 0.0) {
            has_direction = true;
            break;
        }
    if (!has_direction) return {0.0, false};

    LineSearchResult out;
    switch (kind_) {
        case LossKind::LeastSquares: {
            double num = 0.0, den = 0.0;
            for (std::size_t i = 0; i < targets.size(); ++i) {
                num += (targets[i] - preds[i]) * direction[i];
                den += direction[i] * direction[i];
            }
            out.gamma = den > 0.0 ? num / den : 0.0;
            break;
        }
        case LossKind::LeastAbsoluteDeviations:
        case LossKind::Pinball:
        case LossKind::Hinge: {
            // Breakpoint enumeration: the risk is piecewise linear in gamma, so a
            // minimizer sits on {0} union the per-sample kink locations.
            const auto eval = [&](double gamma) {
                double acc = 0.0;
                for (std::size_t i = 0; i < targets.size(); ++i)
                    acc += value(targets[i], preds[i] + gamma * direction[i]);
                return acc;
            };
            double best_gamma = 0.0;
            double best_risk = eval(0.0);
            const auto consider = [&](double gamma) {
                if (!std::isfinite(gamma)) return;
                const double r = eval(gamma);
                if (r < best_risk ||
                    (r == best_risk && std::abs(gamma) < std::abs(best_gamma))) {
                    best_risk = r;
                    best_gamma = gamma;
                }
            };
            for (std::size_t i = 0; i < targets.size(); ++i) {
                if (direction[i] == 0.0) continue;
                if (kind_ == LossKind::Hinge)
                    consider((1.0 - targets[i] * preds[i]) / (targets[i] * direction[i]));
                else
                    consider((targets[i] - preds[i]) / direction[i]);
            }
            out.gamma = best_gamma;
            break;
        }
        case LossKind::Exponential:
        case LossKind::Logistic: {
            validate_targets(targets);
            const auto deriv = [&](double gamma) {
                double acc = 0.0;
                for (std::size_t i = 0; i < targets.size(); ++i) {
                    const double y = targets[i];
                    const double u = preds[i] + gamma * direction[i];
                    if (kind_ == LossKind::Exponential)
                        acc += direction[i] * (-beta_ * y * std::exp(-beta_ * y * u));
                    else
                        acc += direction[i] * (-y * inv1pexp(y * u) / kLn2);
                }
                return acc / static_cast<double>(targets.size());
            };
            const auto second = [&](double gamma) {
                double acc = 0.0;
                for (std::size_t i = 0; i < targets.size(); ++i) {
                    const double y = targets[i];
                    const double u = preds[i] + gamma * direction[i];
                    const double d2 = direction[i] * direction[i];
                    if (kind_ == LossKind::Exponential)
                        acc += d2 * beta_ * beta_ * std::exp(-beta_ * y * u);
                    else {
                        const double s = inv1pexp(y * u);
                        acc += d2 * s * (1.0 - s) / kLn2;
                    }
                }
                return acc / static_cast<double>(targets.size());
            };
            // Bracket a sign change of the derivative, growing geometrically; if
            // none exists within the safety range the search is unbounded below.
            const double d0 = deriv(0.0);
            if (d0 == 0.0) return {0.0, false};
            double lo = 0.0, hi = 0.0;
            bool bracketed = false;
            double step = 1.0;
            if (d0 < 0.0) {
                lo = 0.0;
                for (hi = step; hi <= kGammaLimit; hi *= 2.0) {
                    if (deriv(hi) >= 0.0) {
                        bracketed = true;
                        break;
                    }
                    lo = hi;
                }
            } else {
                hi = 0.0;
                for (lo = -step; lo >= -kGammaLimit; lo *= 2.0) {
                    if (deriv(lo) <= 0.0) {
                        bracketed = true;
                        break;
                    }
                    hi = lo;
                }
            }
            if (!bracketed) {
                out.gamma = d0 < 0.0 ? kGammaLimit : -kGammaLimit;
                out.clamped = true;
                return out;
            }
            out.gamma = newton_root(deriv, second, lo, hi, 0.5 * (lo + hi));
            // Never accept a step worse than staying put.
            std::vector<double> probe(preds.size());
            for (std::size_t i = 0; i < preds.size(); ++i)
                probe[i] = preds[i] + out.gamma * direction[i];
            if (risk(targets, probe) > risk(targets, preds)) out.gamma = 0.0;
            break;
        }
    }
    if (out.gamma > kGammaLimit) {
        out.gamma = kGammaLimit;
        out.clamped = true;
    } else if (out.gamma < -kGammaLimit) {
        out.gamma = -kGammaLimit;
        out.clamped = true;
    }
    return out;
}

double Loss::line_search(std::span<const double> targets, std::span<const double> preds,
                         std::span<const double> direction) const {
    return line_search_ex(targets, preds, direction).gamma;
}

Loss loss_from_name(const std::string& name, std::optional<double> tau,
                    std::optional<double> beta) {
    if (name == "least_squares" || name == "ls") return Loss::least_squares();
    if (name == "lad" || name == "least_absolute_deviations")
        return Loss::least_absolute_deviations();
    if (name == "pinball") return Loss::pinball(tau.value_or(0.9));
    if (name == "exponential") return Loss::exponential(beta.value_or(1.0));
    if (name == "logistic") return Loss::logistic();
    if (name == "hinge") return Loss::hinge();
    throw usage_error("unknown loss '" + name + "'");
}

}  // namespace proxboost
