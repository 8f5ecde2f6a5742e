#pragma once

#include <span>
#include <vector>

#include "proxboost/common.hpp"

namespace proxboost {

// Axis-aligned binary regression tree node. feature < 0 marks a leaf.
struct TreeNode {
    int feature = -1;
    double threshold = 0.0;
    int left = -1;
    int right = -1;
    double value = 0.0;

    bool is_leaf() const { return feature < 0; }
};

// Piecewise-constant predictor; routing rule: go left iff x[feature] <= threshold.
class RegressionTree {
public:
    RegressionTree() = default;
    explicit RegressionTree(std::vector<TreeNode> nodes);

    double predict(std::span<const double> x) const { return nodes_[route(x)].value; }
    int route(std::span<const double> x) const;  // leaf node index containing x

    const std::vector<TreeNode>& nodes() const { return nodes_; }
    int leaf_count() const { return leaf_count_; }
    int depth() const;

    const std::vector<int>& leaf_ids() const { return leaf_ids_; }
    double leaf_value(int node_id) const { return nodes_[node_id].value; }
    void set_leaf_value(int node_id, double v);

    std::vector<double> predict_all(const Matrix& features) const;

private:
    std::vector<TreeNode> nodes_;  // preorder
    std::vector<int> leaf_ids_;
    int leaf_count_ = 0;
};

struct LeafAssignment {
    std::vector<int> leaf_of_sample;  // node index of the leaf per row
};

LeafAssignment assign_leaves(const RegressionTree& tree, const Matrix& features);

// Greedy variance-reduction CART fitter. Per-feature sample orders are sorted
// once and partitioned down the tree, so repeated fits on the same feature
// matrix (as in boosting) skip the presort.
class TreeFitter {
public:
    explicit TreeFitter(const Matrix& features);

    RegressionTree fit(std::span<const double> residual, int max_depth,
                       int min_samples_leaf) const;

private:
    const Matrix& features_;
    std::vector<std::vector<int>> sorted_by_feature_;
};

RegressionTree fit_tree(const Matrix& features, std::span<const double> residual,
                        int max_depth, int min_samples_leaf);

}  // namespace proxboost
