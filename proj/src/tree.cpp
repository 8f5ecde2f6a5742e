#include "proxboost/tree.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

namespace proxboost {

RegressionTree::RegressionTree(std::vector<TreeNode> nodes) : nodes_(std::move(nodes)) {
    if (nodes_.empty()) throw data_error("regression tree must have at least one node");
    for (int i = 0; i < static_cast<int>(nodes_.size()); ++i)
        if (nodes_[i].is_leaf()) leaf_ids_.push_back(i);
    leaf_count_ = static_cast<int>(leaf_ids_.size());
}

int RegressionTree::route(std::span<const double> x) const {
    int id = 0;
    while (!nodes_[id].is_leaf()) {
        const TreeNode& nd = nodes_[id];
        id = x[nd.feature] <= nd.threshold ? nd.left : nd.right;
    }
    return id;
}

int RegressionTree::depth() const {
    // Iterative depth over the preorder array.
    std::vector<std::pair<int, int>> stack{{0, 0}};
    int best = 0;
    while (!stack.empty()) {
        auto [id, d] = stack.back();
        stack.pop_back();
        best = std::max(best, d);
        if (!nodes_[id].is_leaf()) {
            stack.push_back({nodes_[id].left, d + 1});
            stack.push_back({nodes_[id].right, d + 1});
        }
    }
    return best;
}

void RegressionTree::set_leaf_value(int node_id, double v) {
    if (node_id < 0 || node_id >= static_cast<int>(nodes_.size()) ||
        !nodes_[node_id].is_leaf())
        throw data_error("set_leaf_value: not a leaf node");
    nodes_[node_id].value = v;
}

std::vector<double> RegressionTree::predict_all(const Matrix& features) const {
    std::vector<double> out(features.rows);
    for (std::size_t i = 0; i < features.rows; ++i) out[i] = predict(features.row(i));
    return out;
}

LeafAssignment assign_leaves(const RegressionTree& tree, const Matrix& features) {
    LeafAssignment a;
    a.leaf_of_sample.resize(features.rows);
    for (std::size_t i = 0; i < features.rows; ++i)
        a.leaf_of_sample[i] = tree.route(features.row(i));
    return a;
}

TreeFitter::TreeFitter(const Matrix& features) : features_(features) {
    if (features.rows == 0 || features.cols == 0)
        throw data_error("fit_tree: empty feature matrix");
    sorted_by_feature_.resize(features.cols);
    for (std::size_t j = 0; j < features.cols; ++j) {
        auto& order = sorted_by_feature_[j];
        order.resize(features.rows);
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](int a, int b) {
            const double va = features(a, j), vb = features(b, j);
            return va < vb || (va == vb && a < b);
        });
    }
}

namespace {

struct BestSplit {
    bool found = false;
    int feature = -1;
    double threshold = 0.0;
    double decrease = 0.0;
};

}  // namespace

RegressionTree TreeFitter::fit(std::span<const double> residual, int max_depth,
                               int min_samples_leaf) const {
    if (residual.size() != features_.rows)
        throw data_error("fit_tree: residual length does not match feature rows");
    if (max_depth < 1) throw usage_error("fit_tree: max_depth must be >= 1");
    if (min_samples_leaf < 1) throw usage_error("fit_tree: min_samples_leaf must be >= 1");
    if (!all_finite(residual)) throw numeric_error("fit_tree: residual contains non-finite values");

    const std::size_t d = features_.cols;
    std::vector<TreeNode> nodes;
    std::vector<char> goes_left(features_.rows, 0);

    // orders[j] holds this node's samples in feature-j sorted order.
    const std::function<int(std::vector<std::vector<int>>&, int)> build =
        [&](std::vector<std::vector<int>>& orders, int depth) -> int {
        const std::vector<int>& samples = orders[0];
        const double m = static_cast<double>(samples.size());
        double total = 0.0;
        double rmin = residual[samples[0]], rmax = rmin;
        for (int i : samples) {
            total += residual[i];
            rmin = std::min(rmin, residual[i]);
            rmax = std::max(rmax, residual[i]);
        }
        const double mean = total / m;

        const auto make_leaf = [&]() -> int {
            nodes.push_back(TreeNode{-1, 0.0, -1, -1, mean});
            return static_cast<int>(nodes.size()) - 1;
        };

        const bool pure = rmin == rmax;
        if (depth >= max_depth || pure ||
            samples.size() < 2 * static_cast<std::size_t>(min_samples_leaf))
            return make_leaf();

        // Best split = max SSE decrease; ties keep the first candidate found,
        // i.e. lowest feature index then smallest threshold.
        BestSplit best;
        const double parent_term = total * total / m;
        for (std::size_t j = 0; j < d; ++j) {
            const auto& order = orders[j];
            double left_sum = 0.0;
            for (std::size_t k = 0; k + 1 < order.size(); ++k) {
                left_sum += residual[order[k]];
                const double xk = features_(order[k], j);
                const double xn = features_(order[k + 1], j);
                if (xk == xn) continue;
                const double ml = static_cast<double>(k + 1);
                const double mr = m - ml;
                if (ml < min_samples_leaf || mr < min_samples_leaf) continue;
                const double right_sum = total - left_sum;
                const double decrease =
                    left_sum * left_sum / ml + right_sum * right_sum / mr - parent_term;
                if (!best.found || decrease > best.decrease) {
                    best.found = true;
                    best.feature = static_cast<int>(j);
                    best.threshold = xk + 0.5 * (xn - xk);
                    best.decrease = decrease;
                }
            }
        }
        if (!best.found || !(best.decrease > 0.0)) return make_leaf();

        for (int i : samples)
            goes_left[i] = features_(i, best.feature) <= best.threshold ? 1 : 0;

        std::vector<std::vector<int>> left_orders(d), right_orders(d);
        for (std::size_t j = 0; j < d; ++j) {
            left_orders[j].reserve(samples.size());
            right_orders[j].reserve(samples.size());
            for (int i : orders[j])
                (goes_left[i] ? left_orders[j] : right_orders[j]).push_back(i);
        }
        orders.clear();
        orders.shrink_to_fit();

        const int id = static_cast<int>(nodes.size());
        nodes.push_back(TreeNode{best.feature, best.threshold, -1, -1, 0.0});
        nodes[id].left = build(left_orders, depth + 1);
        nodes[id].right = build(right_orders, depth + 1);
        return id;
    };

    std::vector<std::vector<int>> root_orders = sorted_by_feature_;
    build(root_orders, 0);
    return RegressionTree(std::move(nodes));
}

RegressionTree fit_tree(const Matrix& features, std::span<const double> residual,
                        int max_depth, int min_samples_leaf) {
    return TreeFitter(features).fit(residual, max_depth, min_samples_leaf);
}

}  // namespace proxboost
