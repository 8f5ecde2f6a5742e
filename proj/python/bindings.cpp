#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>

#include "proxboost/boosting.hpp"
#include "proxboost/data.hpp"
#include "proxboost/model_io.hpp"
#include "proxboost/pprox.hpp"

namespace py = pybind11;
using namespace proxboost;

namespace {

Matrix matrix_from_numpy(const py::array_t<double, py::array::c_style | py::array::forcecast>& arr) {
    if (arr.ndim() != 2) throw usage_error("feature array must be 2-D");
    Matrix m(static_cast<std::size_t>(arr.shape(0)), static_cast<std::size_t>(arr.shape(1)));
    const double* src = arr.data();
    std::copy(src, src + m.rows * m.cols, m.values.begin());
    return m;
}

std::vector<double> vector_from_numpy(
    const py::array_t<double, py::array::c_style | py::array::forcecast>& arr) {
    if (arr.ndim() != 1) throw usage_error("target array must be 1-D");
    return std::vector<double>(arr.data(), arr.data() + arr.shape(0));
}

py::array_t<double> to_numpy(const std::vector<double>& v) {
    py::array_t<double> out(static_cast<py::ssize_t>(v.size()));
    std::copy(v.begin(), v.end(), out.mutable_data());
    return out;
}

py::array_t<double> matrix_to_numpy(const Matrix& m) {
    py::array_t<double> out({static_cast<py::ssize_t>(m.rows), static_cast<py::ssize_t>(m.cols)});
    std::copy(m.values.begin(), m.values.end(), out.mutable_data());
    return out;
}

py::dict trace_to_dict(const FitTrace& trace) {
    std::vector<double> t, train, val, gamma, alpha;
    bool has_val = false;
    for (const auto& row : trace.rows) has_val = has_val || row.val_loss.has_value();
    for (const auto& row : trace.rows) {
        t.push_back(row.t);
        train.push_back(row.train_loss);
        gamma.push_back(row.gamma);
        alpha.push_back(row.alpha);
        if (has_val)
            val.push_back(row.val_loss.value_or(std::numeric_limits<double>::quiet_NaN()));
    }
    py::dict d;
    d["t"] = to_numpy(t);
    d["train_loss"] = to_numpy(train);
    d["gamma"] = to_numpy(gamma);
    d["alpha"] = to_numpy(alpha);
    if (has_val) d["val_loss"] = to_numpy(val);
    return d;
}

BoostConfig make_config(const std::string& variant, int iterations, double nu, double lambda,
                        int max_depth, int min_samples_leaf, const std::string& line_search,
                        std::uint64_t seed) {
    BoostConfig c;
    c.variant = variant_from_name(variant);
    c.iterations = iterations;
    c.nu = nu;
    c.lambda = lambda;
    c.max_depth = max_depth;
    c.min_samples_leaf = min_samples_leaf;
    if (line_search == "global")
        c.line_search = LineSearchMode::Global;
    else if (line_search == "leaf")
        c.line_search = LineSearchMode::PerLeaf;
    else
        throw usage_error("line_search must be 'global' or 'leaf'");
    c.seed = seed;
    c.validate();
    return c;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "proximal and gradient boosting with decision-tree weak learners";

    py::register_exception<usage_error>(m, "UsageError", PyExc_ValueError);
    py::register_exception<data_error>(m, "DataError", PyExc_ValueError);
    py::register_exception<numeric_error>(m, "NumericError", PyExc_ArithmeticError);

    py::class_<Loss>(m, "Loss")
        .def_static("least_squares", &Loss::least_squares)
        .def_static("least_absolute_deviations", &Loss::least_absolute_deviations)
        .def_static("pinball", &Loss::pinball, py::arg("tau"))
        .def_static("exponential", &Loss::exponential, py::arg("beta"))
        .def_static("logistic", &Loss::logistic)
        .def_static("hinge", &Loss::hinge)
        .def_property_readonly("name", &Loss::name)
        .def("value", &Loss::value, py::arg("y"), py::arg("p"))
        .def("risk",
             [](const Loss& loss, py::array_t<double> targets, py::array_t<double> preds) {
                 return loss.risk(vector_from_numpy(targets), vector_from_numpy(preds));
             })
        .def("subgradient",
             [](const Loss& loss, py::array_t<double> targets, py::array_t<double> preds) {
                 return to_numpy(
                     loss.subgradient(vector_from_numpy(targets), vector_from_numpy(preds)));
             })
        .def("prox", &Loss::prox_pointwise, py::arg("y"), py::arg("z"), py::arg("lam"))
        .def("prox_residual",
             [](const Loss& loss, py::array_t<double> targets, py::array_t<double> preds,
                double lam) {
                 return to_numpy(loss.prox_residual(vector_from_numpy(targets),
                                                    vector_from_numpy(preds), lam));
             },
             py::arg("targets"), py::arg("preds"), py::arg("lam"))
        .def("initial_constant",
             [](const Loss& loss, py::array_t<double> targets) {
                 return loss.initial_constant(vector_from_numpy(targets));
             })
        .def("line_search",
             [](const Loss& loss, py::array_t<double> targets, py::array_t<double> preds,
                py::array_t<double> direction) {
                 return loss.line_search(vector_from_numpy(targets), vector_from_numpy(preds),
                                         vector_from_numpy(direction));
             });

    m.def("loss_by_name",
          [](const std::string& name, std::optional<double> tau, std::optional<double> beta) {
              return loss_from_name(name, tau, beta);
          },
          py::arg("name"), py::arg("tau") = std::nullopt, py::arg("beta") = std::nullopt);

    py::class_<Ensemble>(m, "Ensemble")
        .def_property_readonly("initial_constant", &Ensemble::initial_constant)
        .def_property_readonly("weights", [](const Ensemble& e) { return to_numpy(e.weights()); })
        .def_property_readonly("n_learners", &Ensemble::size)
        .def("predict",
             [](const Ensemble& e, py::array_t<double> X) {
                 return to_numpy(e.predict(matrix_from_numpy(X)));
             })
        .def("classify",
             [](const Ensemble& e, py::array_t<double> X) {
                 return to_numpy(e.classify(matrix_from_numpy(X)));
             })
        .def("save",
             [](const Ensemble& e, const std::string& path) { save_model(e, path); },
             py::arg("path"))
        .def("to_json", [](const Ensemble& e) { return model_to_json_string(e); });

    m.def("load_model", &load_model, py::arg("path"));

    m.def(
        "fit",
        [](py::array_t<double> X, py::array_t<double> y, const Loss& loss,
           const std::string& variant, int iterations, double nu, double lambda, int max_depth,
           int min_samples_leaf, const std::string& line_search, std::uint64_t seed,
           std::optional<py::array_t<double>> X_val, std::optional<py::array_t<double>> y_val) {
            const BoostConfig config = make_config(variant, iterations, nu, lambda, max_depth,
                                                   min_samples_leaf, line_search, seed);
            const Matrix features = matrix_from_numpy(X);
            const std::vector<double> targets = vector_from_numpy(y);
            Matrix val_features;
            std::vector<double> val_targets;
            const bool has_val = X_val.has_value() && y_val.has_value();
            if (has_val) {
                val_features = matrix_from_numpy(*X_val);
                val_targets = vector_from_numpy(*y_val);
            }
            const FitResult result =
                fit(config, loss, features, targets, has_val ? &val_features : nullptr,
                    val_targets);
            return py::make_tuple(result.model, trace_to_dict(result.trace));
        },
        py::arg("X"), py::arg("y"), py::arg("loss"), py::arg("variant") = "proximal",
        py::arg("iterations") = 100, py::arg("nu") = 0.1, py::arg("lam") = 1.0,
        py::arg("max_depth") = 3, py::arg("min_samples_leaf") = 1,
        py::arg("line_search") = "leaf", py::arg("seed") = 0,
        py::arg("X_val") = std::nullopt, py::arg("y_val") = std::nullopt);

    m.def(
        "generate",
        [](const std::string& model, const std::string& design, int n, int d,
           std::uint64_t seed) {
            SynthSpec spec;
            if (model == "regression")
                spec.model = SynthModel::Regression;
            else if (model == "classification")
                spec.model = SynthModel::Classification;
            else
                throw usage_error("model must be 'regression' or 'classification'");
            if (design == "correlated")
                spec.design = Design::Correlated;
            else if (design == "uncorrelated")
                spec.design = Design::Uncorrelated;
            else
                throw usage_error("design must be 'correlated' or 'uncorrelated'");
            spec.n = n > 0 ? n : (spec.model == SynthModel::Classification ? 1500 : 800);
            spec.d = d > 0 ? d : (spec.model == SynthModel::Classification ? 50 : 100);
            spec.seed = seed;
            const DatasetSplit ds = generate(spec);
            return py::make_tuple(matrix_to_numpy(ds.features), to_numpy(ds.targets));
        },
        py::arg("model") = "regression", py::arg("design") = "correlated", py::arg("n") = 0,
        py::arg("d") = 0, py::arg("seed") = 0);

    m.def(
        "split",
        [](py::array_t<double> X, py::array_t<double> y, double f_train, double f_val,
           double f_test, std::uint64_t seed) {
            DatasetSplit ds;
            ds.features = matrix_from_numpy(X);
            ds.targets = vector_from_numpy(y);
            const auto parts = split(ds, f_train, f_val, f_test, seed);
            py::list out;
            for (const auto& part : parts)
                out.append(py::make_tuple(matrix_to_numpy(part.features),
                                          to_numpy(part.targets)));
            return out;
        },
        py::arg("X"), py::arg("y"), py::arg("f_train"), py::arg("f_val"), py::arg("f_test"),
        py::arg("seed") = 0);

    m.def("closed_form_weights",
          [](py::array_t<double> gammas, py::array_t<double> alphas, double nu) {
              return to_numpy(closed_form_weights(vector_from_numpy(gammas),
                                                  vector_from_numpy(alphas), nu));
          });
    m.def("recursive_weights",
          [](py::array_t<double> gammas, py::array_t<double> alphas, double nu) {
              return to_numpy(recursive_weights(vector_from_numpy(gammas),
                                                vector_from_numpy(alphas), nu));
          });
    m.def("nesterov_sequence", [](int T) {
        std::vector<double> alphas;
        NesterovState s;
        for (int t = 0; t < T; ++t) {
            s = nesterov_next(s);
            alphas.push_back(s.alpha);
        }
        return to_numpy(alphas);
    });

    m.def(
        "rate_demo",
        [](int dim, double kappa, double L, double zeta, int T, std::uint64_t seed) {
            if (!(kappa > 0.0) || kappa > L) throw usage_error("need 0 < kappa <= L");
            if (!(zeta > 0.0 && zeta <= 1.0)) throw usage_error("zeta must lie in (0, 1]");
            Rng rng(splitmix64(seed ^ 0x9e37ULL));
            std::vector<double> scales(dim), center(dim), x0(dim);
            for (int i = 0; i < dim; ++i) {
                scales[i] = kappa + (L - kappa) * rng.uniform();
                center[i] = rng.uniform(-2.0, 2.0);
            }
            if (dim >= 2) {
                scales[0] = kappa;
                scales[1] = L;
            }
            const ApproxOperator mask = coordinate_mask_operator(dim, zeta * zeta, seed);
            const std::vector<bool> keep = mask_of(mask, dim);
            for (int i = 0; i < dim; ++i)
                x0[i] = keep[i] ? center[i] + rng.uniform(0.5, 1.5) : center[i];
            const Objective obj = diagonal_quadratic(scales, center);
            const ProxPointResult run =
                prox_point_iterate(obj, mask, x0, zeta * zeta / (8.0 * L), T);
            std::vector<double> bounds;
            const double rate = 1.0 - zeta * zeta * kappa / (9.0 * L);
            double bound = run.losses[0];
            for (std::size_t t = 0; t < run.losses.size(); ++t) {
                bounds.push_back(bound);
                bound *= rate;
            }
            py::dict out;
            out["losses"] = to_numpy(run.losses);
            out["bounds"] = to_numpy(bounds);
            out["holds"] = verify_rate(run.losses, zeta, L, kappa);
            return out;
        },
        py::arg("dim") = 20, py::arg("kappa") = 1.0, py::arg("L") = 10.0,
        py::arg("zeta") = 0.8, py::arg("T") = 100, py::arg("seed") = 0);

#ifdef PROXBOOST_VERSION
    m.attr("__version__") = PROXBOOST_VERSION;
#else
    m.attr("__version__") = "dev";
#endif
}
