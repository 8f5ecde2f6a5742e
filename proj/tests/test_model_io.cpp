#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <string>

#include "proxboost/data.hpp"
#include "proxboost/model_io.hpp"

using namespace proxboost;

TEST_CASE("model json round trip preserves predictions and text") {
    SynthSpec spec = SynthSpec::regression();
    spec.n = 60;
    spec.seed = 61;
    const DatasetSplit ds = generate(spec);
    BoostConfig c;
    c.variant = Variant::ProximalAccelerated;
    c.lambda = 0.5;
    c.iterations = 15;
    c.nu = 0.2;
    const FitResult r = fit(c, Loss::pinball(0.7), ds.features, ds.targets);

    const std::string text = model_to_json_string(r.model);
    const Ensemble back = model_from_json_string(text);
    const auto a = r.model.predict(ds.features);
    const auto b = back.predict(ds.features);
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i] == b[i]);
    CHECK(back.loss().name() == "pinball");
    CHECK(back.loss().tau() == doctest::Approx(0.7));
    // serialization is stable text -> model -> identical text
    CHECK(model_to_json_string(back) == text);
}

TEST_CASE("model files survive a disk round trip") {
    const std::string path = "pbtest_model.json";
    SynthSpec spec = SynthSpec::classification();
    spec.n = 60;
    spec.seed = 62;
    const DatasetSplit ds = generate(spec);
    BoostConfig c;
    c.variant = Variant::Gradient;
    c.iterations = 5;
    c.nu = 0.5;
    const FitResult r = fit(c, Loss::hinge(), ds.features, ds.targets);
    save_model(r.model, path);
    const Ensemble back = load_model(path);
    const auto a = r.model.classify(ds.features);
    const auto b = back.classify(ds.features);
    CHECK(a == b);
    std::remove(path.c_str());
    CHECK_THROWS_AS(load_model("does_not_exist.json"), data_error);
}

TEST_CASE("trace csv carries the pinned header and counts iteration zero") {
    const std::string path = "pbtest_trace.csv";
    FitTrace trace;
    for (int t = 0; t < 3; ++t) {
        TraceRow row;
        row.t = t;
        row.train_loss = 1.0 / (t + 1);
        if (t > 0) row.val_loss = 2.0 / t;
        row.gamma = t * 0.5;
        row.alpha = 0.0;
        trace.rows.push_back(row);
    }
    write_trace_csv(trace, path);
    std::ifstream in(path);
    std::string line;
    std::getline(in, line);
    CHECK(line == "t,train_loss,val_loss,gamma,alpha");
    int rows = 0;
    while (std::getline(in, line)) ++rows;
    CHECK(rows == 3);
    std::remove(path.c_str());
}

TEST_CASE("corrupt model text raises a data error") {
    CHECK_THROWS_AS(model_from_json_string("not json"), data_error);
    CHECK_THROWS_AS(model_from_json_string("{\"format_version\": 99}"), data_error);
}
