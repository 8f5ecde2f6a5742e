#include <doctest.h>

#include <cmath>
#include <vector>

#include "oracles.hpp"
#include "proxboost/boosting.hpp"
#include "proxboost/data.hpp"

using namespace proxboost;

namespace {

Matrix from_rows(const std::vector<std::vector<double>>& rows) {
    Matrix m(rows.size(), rows.empty() ? 0 : rows[0].size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = rows[i][j];
    return m;
}

}  // namespace

TEST_CASE("nesterov sequence with the k <= 1 override") {
    NesterovState s;  // beta_0 = 0
    s = nesterov_next(s);
    CHECK(s.beta == doctest::Approx(1.0));
    CHECK(s.alpha == 0.0);  // forced for step 1
    s = nesterov_next(s);
    CHECK(s.beta == doctest::Approx(0.5 * (1.0 + std::sqrt(5.0))));
    CHECK(s.alpha == doctest::Approx(0.0));
    s = nesterov_next(s);
    // direct recursion: beta_3 = (1 + sqrt(1 + 4 phi^2)) / 2, alpha_3 = (phi - 1) / beta_3
    const double phi = 0.5 * (1.0 + std::sqrt(5.0));
    const double beta3 = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * phi * phi));
    CHECK(s.beta == doctest::Approx(beta3));
    CHECK(s.alpha == doctest::Approx((phi - 1.0) / beta3));
    CHECK(s.beta == doctest::Approx(2.19353).epsilon(1e-5));
    CHECK(s.alpha == doctest::Approx(0.28175).epsilon(1e-4));
    // alpha stays in [0, 1)
    for (int k = 0; k < 500; ++k) {
        s = nesterov_next(s);
        CHECK(s.alpha >= 0.0);
        CHECK(s.alpha < 1.0);
    }
}

TEST_CASE("closed-form weights: hand-expanded cases") {
    {
        // all alphas zero: w_t = nu gamma_t
        const std::vector<double> g{2.0, 3.0, 4.0}, a{0.0, 0.0, 0.0};
        const auto w = closed_form_weights(g, a, 0.5);
        CHECK(w == std::vector<double>{1.0, 1.0, 1.5, 2.0});
    }
    {
        // T=2: w_2 = nu gamma_2 regardless of alpha
        const std::vector<double> g{1.0, 5.0}, a{0.3, 0.9};
        const auto w = closed_form_weights(g, a, 1.0);
        CHECK(w[2] == doctest::Approx(5.0));
    }
    {
        // T=3, nu=1, gammas 1, alphas (alpha_1..alpha_3) = (0, 0, 0.5): only
        // alpha_1, alpha_2 enter the sums for T=3, so the hand expansion gives
        // w = [1, 1, 1 + alpha_2, 1] = [1, 1, 1, 1].
        const std::vector<double> g{1.0, 1.0, 1.0}, a{0.0, 0.0, 0.5};
        const auto w = closed_form_weights(g, a, 1.0);
        CHECK(w == std::vector<double>{1.0, 1.0, 1.0, 1.0});
    }
    {
        // T=4, nu=1, gammas 1, alphas (0, 0.5, 0.25, 0.8):
        // w_2 = 1 + a2 + a2 a3 = 1.625, w_3 = 1 + a3 = 1.25, w_4 = 1.
        const std::vector<double> g{1.0, 1.0, 1.0, 1.0}, a{0.0, 0.5, 0.25, 0.8};
        const auto w = closed_form_weights(g, a, 1.0);
        CHECK(w[0] == doctest::Approx(1.0));
        CHECK(w[1] == doctest::Approx(1.0));
        CHECK(w[2] == doctest::Approx(1.625));
        CHECK(w[3] == doctest::Approx(1.25));
        CHECK(w[4] == doctest::Approx(1.0));
    }
}

TEST_CASE("closed form equals the recursion for random sequences") {
    Rng rng(31);
    for (int rep = 0; rep < 100; ++rep) {
        const int T = 1 + static_cast<int>(rng.below(50));
        std::vector<double> g(T), a(T);
        for (double& v : g) v = rng.uniform(-2, 2);
        for (double& v : a) v = rng.uniform(0, 1);  // arbitrary, even alpha_1 != 0
        const double nu = rng.uniform(0.05, 1.0);
        const auto cf = closed_form_weights(g, a, nu);
        const auto rec = recursive_weights(g, a, nu);
        REQUIRE(cf.size() == rec.size());
        for (std::size_t i = 0; i < cf.size(); ++i)
            CHECK(cf[i] == doctest::Approx(rec[i]).epsilon(1e-10).scale(1.0));
    }
}

TEST_CASE("compute_direction per variant") {
    const Loss ls = Loss::least_squares();
    const std::vector<double> t{1.0}, point{3.0};
    {
        const auto r = compute_direction(Variant::Gradient, ls, t, point, 0.0, nullptr);
        CHECK(r[0] == doctest::Approx(-2.0));
    }
    {
        const auto r = compute_direction(Variant::Proximal, ls, t, point, 1.0, nullptr);
        CHECK(r[0] == doctest::Approx(-1.0));
    }
    {
        const std::vector<double> zero{0.0};
        const auto a = compute_direction(Variant::GradientResidual, ls, t, point, 0.0, &zero);
        const auto b = compute_direction(Variant::Gradient, ls, t, point, 0.0, nullptr);
        CHECK(a[0] == doctest::Approx(b[0]));
    }
}

TEST_CASE("single iteration with full-depth tree interpolates a toy set") {
    const Matrix X = from_rows({{0.0}, {1.0}, {2.0}, {3.0}});
    const std::vector<double> y{0.5, -1.0, 2.0, 0.0};
    BoostConfig c;
    c.variant = Variant::Gradient;
    c.iterations = 1;
    c.nu = 1.0;
    c.max_depth = 4;
    const FitResult r = fit(c, Loss::least_squares(), X, y);
    CHECK(r.model.size() == 2);  // constant + one tree
    CHECK(r.trace.rows.size() == 2);
    CHECK(r.trace.rows.back().train_loss == doctest::Approx(0.0).epsilon(1e-12));
    const auto preds = r.model.predict(X);
    for (std::size_t i = 0; i < y.size(); ++i)
        CHECK(preds[i] == doctest::Approx(y[i]).epsilon(1e-12));
}

TEST_CASE("constant-only ensemble predicts the constant") {
    Ensemble e(Loss::least_squares(), BoostConfig{}, 2.0);
    const Matrix X = from_rows({{0.0}, {5.0}, {-1.0}});
    for (double v : e.predict(X)) CHECK(v == doctest::Approx(2.0));
}

TEST_CASE("predict rejects a feature-dimension mismatch") {
    const Matrix X = from_rows({{0.0, 1.0}, {1.0, 0.0}});
    const std::vector<double> y{0.0, 1.0};
    BoostConfig c;
    c.variant = Variant::Gradient;
    c.iterations = 2;
    const FitResult r = fit(c, Loss::least_squares(), X, y);
    const Matrix narrow = from_rows({{0.5}});
    CHECK_THROWS_AS(r.model.predict(narrow), data_error);
}

TEST_CASE("gradient and proximal boosting coincide under least squares") {
    SynthSpec spec = SynthSpec::regression();
    spec.n = 150;
    spec.seed = 33;
    const DatasetSplit ds = generate(spec);
    BoostConfig cg;
    cg.variant = Variant::Gradient;
    cg.iterations = 40;
    cg.nu = 0.2;
    const FitResult g = fit(cg, Loss::least_squares(), ds.features, ds.targets);
    for (double lambda : {0.01, 1.0, 100.0}) {
        BoostConfig cp = cg;
        cp.variant = Variant::Proximal;
        cp.lambda = lambda;
        const FitResult p = fit(cp, Loss::least_squares(), ds.features, ds.targets);
        const auto pg = g.model.predict(ds.features);
        const auto pp = p.model.predict(ds.features);
        for (std::size_t i = 0; i < pg.size(); ++i)
            CHECK(pg[i] == doctest::Approx(pp[i]).epsilon(1e-9).scale(1.0));
        REQUIRE(p.model.weights().size() == g.model.weights().size());
        for (std::size_t i = 0; i < g.model.weights().size(); ++i)
            CHECK(p.model.weights()[i] ==
                  doctest::Approx(g.model.weights()[i]).epsilon(1e-9).scale(1.0));
    }
}

TEST_CASE("non-accelerated variants never increase the train loss") {
    SynthSpec rspec = SynthSpec::regression();
    rspec.n = 120;
    rspec.seed = 34;
    const DatasetSplit reg = generate(rspec);
    SynthSpec cspec = SynthSpec::classification();
    cspec.n = 120;
    cspec.seed = 34;
    const DatasetSplit cls = generate(cspec);

    const std::vector<Loss> losses{Loss::least_squares(), Loss::least_absolute_deviations(),
                                   Loss::pinball(0.9),    Loss::exponential(1.0),
                                   Loss::logistic(),      Loss::hinge()};
    for (const Loss& loss : losses) {
        const DatasetSplit& ds = loss.task() == Task::Classification ? cls : reg;
        for (Variant v : {Variant::Gradient, Variant::Proximal, Variant::GradientResidual}) {
            BoostConfig c;
            c.variant = v;
            c.lambda = 1.0;
            c.iterations = 40;
            c.nu = 0.5;
            const FitResult r = fit(c, loss, ds.features, ds.targets);
            for (std::size_t t = 1; t < r.trace.rows.size(); ++t)
                CHECK(r.trace.rows[t].train_loss <=
                      r.trace.rows[t - 1].train_loss + 1e-8);
        }
    }
}

TEST_CASE("weight snapshots replay the tracked iterate") {
    SynthSpec spec = SynthSpec::regression();
    spec.n = 80;
    spec.seed = 35;
    const DatasetSplit ds = generate(spec);
    BoostConfig c;
    c.variant = Variant::ProximalAccelerated;
    c.lambda = 2.0;
    c.iterations = 60;
    c.nu = 0.1;
    c.record_weight_snapshots = true;
    const Loss loss = Loss::least_absolute_deviations();
    const FitResult r = fit(c, loss, ds.features, ds.targets);

    std::vector<std::vector<double>> tree_preds;
    for (const auto& tree : r.model.trees()) tree_preds.push_back(tree.predict_all(ds.features));

    REQUIRE(r.trace.weight_snapshots.size() == static_cast<std::size_t>(c.iterations + 1));
    for (std::size_t t = 0; t < r.trace.weight_snapshots.size(); ++t) {
        const auto& w = r.trace.weight_snapshots[t];
        std::vector<double> x(ds.n(), w[0] * r.model.initial_constant());
        for (std::size_t j = 1; j < w.size(); ++j)
            for (std::size_t i = 0; i < ds.n(); ++i) x[i] += w[j] * tree_preds[j - 1][i];
        CHECK(loss.risk(ds.targets, x) ==
              doctest::Approx(r.trace.rows[t].train_loss).epsilon(1e-8).scale(1.0));
    }
    // final snapshot = deployed weights; predict() reproduces the last iterate
    const auto final_w = r.trace.weight_snapshots.back();
    for (std::size_t j = 0; j < final_w.size(); ++j)
        CHECK(final_w[j] == doctest::Approx(r.model.weights()[j]));
}

TEST_CASE("global-mode accelerated trace matches the closed-form weights") {
    SynthSpec spec = SynthSpec::regression();
    spec.n = 80;
    spec.seed = 36;
    const DatasetSplit ds = generate(spec);
    BoostConfig c;
    c.variant = Variant::GradientAccelerated;
    c.iterations = 30;
    c.nu = 0.3;
    c.line_search = LineSearchMode::Global;
    const FitResult r = fit(c, Loss::least_squares(), ds.features, ds.targets);

    std::vector<double> gammas, alphas;
    for (std::size_t t = 1; t < r.trace.rows.size(); ++t) {
        gammas.push_back(r.trace.rows[t].gamma);
        alphas.push_back(r.trace.rows[t].alpha);
    }
    const auto cf = closed_form_weights(gammas, alphas, c.nu);
    REQUIRE(cf.size() == r.model.weights().size());
    for (std::size_t j = 0; j < cf.size(); ++j)
        CHECK(cf[j] == doctest::Approx(r.model.weights()[j]).epsilon(1e-10).scale(1.0));
}

TEST_CASE("closed-form and recursive weights give identical predictions") {
    // six accelerated global-mode iterations; rebuild the ensemble weights both
    // ways and compare the deployed predictors
    SynthSpec spec = SynthSpec::regression();
    spec.n = 90;
    spec.seed = 39;
    const DatasetSplit ds = generate(spec);
    BoostConfig c;
    c.variant = Variant::ProximalAccelerated;
    c.lambda = 1.0;
    c.iterations = 6;
    c.nu = 0.4;
    c.line_search = LineSearchMode::Global;
    const FitResult r = fit(c, Loss::least_absolute_deviations(), ds.features, ds.targets);

    std::vector<double> gammas, alphas;
    for (std::size_t t = 1; t < r.trace.rows.size(); ++t) {
        gammas.push_back(r.trace.rows[t].gamma);
        alphas.push_back(r.trace.rows[t].alpha);
    }
    Ensemble closed(r.model.loss(), c, r.model.initial_constant());
    Ensemble recursive(r.model.loss(), c, r.model.initial_constant());
    for (const auto& tree : r.model.trees()) {
        closed.append(RegressionTree(tree.nodes()));
        recursive.append(RegressionTree(tree.nodes()));
    }
    closed.set_weights(closed_form_weights(gammas, alphas, c.nu));
    recursive.set_weights(recursive_weights(gammas, alphas, c.nu));
    const auto a = closed.predict(ds.features);
    const auto b = recursive.predict(ds.features);
    const auto m = r.model.predict(ds.features);
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i] == doctest::Approx(b[i]).epsilon(1e-12));
        CHECK(a[i] == doctest::Approx(m[i]).epsilon(1e-10));
    }
}

TEST_CASE("acceleration reaches the slow variant's loss level sooner") {
    SynthSpec spec = SynthSpec::regression();
    spec.n = 200;
    spec.seed = 37;
    const DatasetSplit ds = generate(spec);
    BoostConfig cs;
    cs.variant = Variant::Gradient;
    cs.iterations = 400;
    cs.nu = 0.01;
    const FitResult slow = fit(cs, Loss::least_squares(), ds.features, ds.targets);
    BoostConfig cf = cs;
    cf.variant = Variant::GradientAccelerated;
    const FitResult fast = fit(cf, Loss::least_squares(), ds.features, ds.targets);
    const double target = 1.05 * slow.trace.rows.back().train_loss;
    int hit = -1;
    for (std::size_t t = 0; t < fast.trace.rows.size(); ++t)
        if (fast.trace.rows[t].train_loss <= target) {
            hit = static_cast<int>(t);
            break;
        }
    REQUIRE(hit >= 0);
    CHECK(hit < cs.iterations);
}

TEST_CASE("geometric decay of the train loss in the strong-learner regime") {
    // depth-15 trees approximate the direction almost exactly; with a small
    // shrinkage the loss decays log-linearly over a long window
    SynthSpec spec = SynthSpec::regression();
    spec.n = 200;
    spec.seed = 38;
    const DatasetSplit ds = generate(spec);
    BoostConfig c;
    c.variant = Variant::Proximal;
    c.lambda = 1.0;
    c.iterations = 100;
    c.nu = 0.01;
    c.max_depth = 15;
    const FitResult r = fit(c, Loss::least_squares(), ds.features, ds.targets);
    std::vector<double> ts, logs;
    for (int t = 10; t <= 100; ++t) {
        ts.push_back(t);
        logs.push_back(std::log(r.trace.rows[t].train_loss));
    }
    const auto fit_line = oracles::least_squares_line(ts, logs);
    CHECK(fit_line.slope < 0.0);
    CHECK(fit_line.r_squared >= 0.95);
}

TEST_CASE("early stopping selects the smallest argmin") {
    FitTrace trace;
    const std::vector<double> vals{3, 2, 2, 4};
    for (int t = 0; t < 4; ++t) {
        TraceRow row;
        row.t = t;
        row.val_loss = vals[t];
        trace.rows.push_back(row);
    }
    CHECK(early_stop_select(trace) == 1);

    FitTrace mono;
    for (int t = 0; t < 5; ++t) {
        TraceRow row;
        row.t = t;
        row.val_loss = 10.0 - t;
        mono.rows.push_back(row);
    }
    CHECK(early_stop_select(mono) == 4);

    FitTrace single;
    TraceRow row;
    row.t = 0;
    row.val_loss = 1.0;
    single.rows.push_back(row);
    CHECK(early_stop_select(single) == 0);

    FitTrace none;
    none.rows.push_back(TraceRow{});
    CHECK_THROWS_AS(early_stop_select(none), data_error);
}

TEST_CASE("config validation") {
    BoostConfig c;
    c.variant = Variant::Proximal;
    c.lambda = 0.0;
    CHECK_THROWS_AS(c.validate(), usage_error);
    c.lambda = 1.0;
    c.nu = 0.0;
    CHECK_THROWS_AS(c.validate(), usage_error);
    c.nu = 1.5;
    CHECK_THROWS_AS(c.validate(), usage_error);
    c.nu = 0.5;
    c.iterations = 0;
    CHECK_THROWS_AS(c.validate(), usage_error);
}

TEST_CASE("classification targets validated before fitting") {
    const Matrix X = from_rows({{0.0}, {1.0}});
    const std::vector<double> bad{1.0, 0.0};
    BoostConfig c;
    c.variant = Variant::Gradient;
    c.iterations = 2;
    CHECK_THROWS_AS(fit(c, Loss::hinge(), X, bad), invalid_target_error);
}
