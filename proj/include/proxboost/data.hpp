#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "proxboost/common.hpp"
#include "proxboost/loss.hpp"

namespace proxboost {

struct DatasetSplit {
    Matrix features;
    std::vector<double> targets;
    Task task = Task::Regression;

    std::size_t n() const { return features.rows; }
    std::size_t d() const { return features.cols; }
};

enum class SynthModel { Regression, Classification };
enum class Design { Correlated, Uncorrelated };

struct SynthSpec {
    SynthModel model = SynthModel::Regression;
    Design design = Design::Correlated;
    int n = 800;
    int d = 100;
    std::uint64_t seed = 0;

    static SynthSpec regression() { return SynthSpec{SynthModel::Regression, Design::Correlated, 800, 100, 0}; }
    static SynthSpec classification() { return SynthSpec{SynthModel::Classification, Design::Correlated, 1500, 50, 0}; }
};

// Synthetic regression/classification samples. Correlated design draws the
// AR(1) chain X_1 ~ N(0,1), X_{j+1} = X_j / 2 + sqrt(3)/2 eps_j, whose
// covariance is exactly 2^{-|i-j|}. Noise subscripts are (mean, variance).
DatasetSplit generate(const SynthSpec& spec);

// Numeric CSV with a header row; every non-target column becomes a feature,
// in header order.
DatasetSplit load_csv(const std::string& path, const std::string& target_column,
                      Task task);

void write_csv(const DatasetSplit& ds, const std::string& path);

// Seeded uniform shuffle then contiguous cut; train gets floor(n*f_train),
// val floor(n*f_val), test the remainder.
std::array<DatasetSplit, 3> split(const DatasetSplit& ds, double f_train, double f_val,
                                  double f_test, std::uint64_t seed);

}  // namespace proxboost
