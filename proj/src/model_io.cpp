#include "proxboost/model_io.hpp"

#include <cstdio>
#include <fstream>

#include <json.hpp>

namespace proxboost {

using nlohmann::json;

namespace {

json loss_to_json(const Loss& loss) {
    json j;
    j["loss"] = loss.name();
    if (loss.kind() == LossKind::Pinball) j["tau"] = loss.tau();
    if (loss.kind() == LossKind::Exponential) j["beta"] = loss.beta();
    return j;
}

Loss loss_from_json(const json& j) {
    std::optional<double> tau, beta;
    if (j.contains("tau")) tau = j.at("tau").get<double>();
    if (j.contains("beta")) beta = j.at("beta").get<double>();
    return loss_from_name(j.at("loss").get<std::string>(), tau, beta);
}

json config_to_json(const BoostConfig& c) {
    json j;
    j["variant"] = variant_name(c.variant);
    j["iterations"] = c.iterations;
    j["nu"] = c.nu;
    if (variant_is_proximal(c.variant)) j["lambda"] = c.lambda;
    j["max_depth"] = c.max_depth;
    j["min_samples_leaf"] = c.min_samples_leaf;
    j["line_search"] = c.line_search == LineSearchMode::PerLeaf ? "leaf" : "global";
    j["seed"] = c.seed;
    return j;
}

BoostConfig config_from_json(const json& j) {
    BoostConfig c;
    c.variant = variant_from_name(j.at("variant").get<std::string>());
    c.iterations = j.at("iterations").get<int>();
    c.nu = j.at("nu").get<double>();
    if (j.contains("lambda")) c.lambda = j.at("lambda").get<double>();
    c.max_depth = j.at("max_depth").get<int>();
    c.min_samples_leaf = j.at("min_samples_leaf").get<int>();
    c.line_search = j.at("line_search").get<std::string>() == "global"
                        ? LineSearchMode::Global
                        : LineSearchMode::PerLeaf;
    c.seed = j.at("seed").get<std::uint64_t>();
    return c;
}

// Preorder node array with explicit child indices.
json tree_to_json(const RegressionTree& tree) {
    json nodes = json::array();
    for (const TreeNode& nd : tree.nodes()) {
        json n;
        if (nd.is_leaf()) {
            n["value"] = nd.value;
        } else {
            n["feature"] = nd.feature;
            n["threshold"] = nd.threshold;
            n["left"] = nd.left;
            n["right"] = nd.right;
        }
        nodes.push_back(std::move(n));
    }
    return nodes;
}

RegressionTree tree_from_json(const json& arr) {
    std::vector<TreeNode> nodes;
    nodes.reserve(arr.size());
    for (const auto& n : arr) {
        TreeNode nd;
        if (n.contains("value")) {
            nd.value = n.at("value").get<double>();
        } else {
            nd.feature = n.at("feature").get<int>();
            nd.threshold = n.at("threshold").get<double>();
            nd.left = n.at("left").get<int>();
            nd.right = n.at("right").get<int>();
        }
        nodes.push_back(nd);
    }
    return RegressionTree(std::move(nodes));
}

}  // namespace

std::string model_to_json_string(const Ensemble& model) {
    json j;
    j["format_version"] = kModelFormatVersion;
    j["loss"] = loss_to_json(model.loss());
    j["config"] = config_to_json(model.config());
    j["initial_constant"] = model.initial_constant();
    j["n_features"] = model.n_features();
    json trees = json::array();
    for (const auto& tree : model.trees()) trees.push_back(tree_to_json(tree));
    j["trees"] = std::move(trees);
    j["weights"] = model.weights();
    return j.dump(2);
}

Ensemble model_from_json_string(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const std::exception& e) {
        throw data_error(std::string("model JSON parse failure: ") + e.what());
    }
    if (j.at("format_version").get<int>() != kModelFormatVersion)
        throw data_error("unsupported model format version");
    Ensemble model(loss_from_json(j.at("loss")), config_from_json(j.at("config")),
                   j.at("initial_constant").get<double>(),
                   j.value("n_features", std::size_t{0}));
    for (const auto& t : j.at("trees")) model.append(tree_from_json(t));
    model.set_weights(j.at("weights").get<std::vector<double>>());
    return model;
}

void save_model(const Ensemble& model, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw data_error("cannot write model file '" + path + "'");
    out << model_to_json_string(model) << "\n";
    if (!out) throw data_error("failed while writing '" + path + "'");
}

Ensemble load_model(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw data_error("cannot open model file '" + path + "'");
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return model_from_json_string(text);
}

std::string format_double_repr(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_trace_csv(const FitTrace& trace, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw data_error("cannot write trace file '" + path + "'");
    out << "t,train_loss,val_loss,gamma,alpha\n";
    for (const TraceRow& row : trace.rows) {
        out << row.t << "," << format_double_repr(row.train_loss) << ",";
        if (row.val_loss.has_value()) out << format_double_repr(*row.val_loss);
        out << "," << format_double_repr(row.gamma) << "," << format_double_repr(row.alpha)
            << "\n";
    }
    if (!out) throw data_error("failed while writing '" + path + "'");
}

void write_manifest(const std::string& path, const std::string& command,
                    const std::string& args_json, double duration_seconds) {
    json j;
    j["tool"] = "proxboost";
    j["version"] = kToolVersion;
    j["command"] = command;
    j["args"] = json::parse(args_json);
    j["duration_seconds"] = duration_seconds;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw data_error("cannot write manifest '" + path + "'");
    out << j.dump(2) << "\n";
}

}  // namespace proxboost
