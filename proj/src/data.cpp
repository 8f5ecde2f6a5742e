#include "proxboost/data.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <sstream>

namespace proxboost {

namespace {

constexpr double kAr1Rho = 0.5;

void fill_row_features(std::span<double> row, Design design, Rng& rng) {
    if (design == Design::Uncorrelated) {
        for (double& v : row) v = rng.uniform(-1.0, 1.0);
        return;
    }
    // AR(1) recursion with rho = 1/2 reproduces Sigma_ij = 2^{-|i-j|} exactly.
    const double carry = std::sqrt(1.0 - kAr1Rho * kAr1Rho);
    double prev = rng.normal();
    row[0] = prev;
    for (std::size_t j = 1; j < row.size(); ++j) {
        prev = kAr1Rho * prev + carry * rng.normal();
        row[j] = prev;
    }
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

DatasetSplit generate(const SynthSpec& spec) {
    if (spec.n < 1) throw usage_error("generate: n must be >= 1");
    const int min_d = spec.model == SynthModel::Regression ? 4 : 18;
    if (spec.d < min_d)
        throw usage_error("generate: d must be >= " + std::to_string(min_d) + " for this model");

    DatasetSplit ds;
    ds.task = spec.model == SynthModel::Regression ? Task::Regression : Task::Classification;
    ds.features = Matrix(spec.n, spec.d);
    ds.targets.resize(spec.n);

    for (int i = 0; i < spec.n; ++i) {
        // Counter-based per-sample seeding keeps rows independent of any
        // parallel generation order.
        Rng rng(splitmix64(spec.seed ^ splitmix64(static_cast<std::uint64_t>(i) + 1)));
        auto row = ds.features.row(static_cast<std::size_t>(i));
        fill_row_features(row, spec.design, rng);
        if (spec.model == SynthModel::Regression) {
            const double noise = rng.normal(0.0, std::sqrt(0.5));
            ds.targets[i] = -std::sin(2.0 * row[0]) + row[1] * row[1] + row[2] -
                            std::exp(-row[3]) + noise;
        } else {
            const double noise = rng.normal(0.0, std::sqrt(0.1));
            const double score = row[0] + row[3] * row[3] * row[3] + row[8] +
                                 std::sin(row[11] * row[17]) + noise;
            ds.targets[i] = score > 0.38 ? 1.0 : -1.0;
        }
    }
    return ds;
}

DatasetSplit load_csv(const std::string& path, const std::string& target_column,
                      Task task) {
    std::ifstream in(path);
    if (!in) throw data_error("cannot open CSV file '" + path + "'");

    std::string line;
    if (!std::getline(in, line)) throw data_error("CSV file '" + path + "' is empty");
    if (!line.empty() && line.back() == '\r') line.pop_back();

    std::vector<std::string> header;
    {
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) header.push_back(cell);
    }
    int target_idx = -1;
    for (std::size_t j = 0; j < header.size(); ++j)
        if (header[j] == target_column) target_idx = static_cast<int>(j);
    if (target_idx < 0)
        throw data_error("target column '" + target_column + "' not found in '" + path + "'");
    if (header.size() < 2) throw data_error("CSV needs at least one feature column");

    std::vector<double> flat;
    std::vector<double> targets;
    std::size_t rows = 0;
    const std::size_t d = header.size() - 1;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string cell;
        std::size_t col = 0;
        while (std::getline(ss, cell, ',')) {
            if (col >= header.size())
                throw data_error("row " + std::to_string(rows + 2) + " has too many cells");
            std::size_t used = 0;
            double value = 0.0;
            try {
                value = std::stod(cell, &used);
            } catch (const std::exception&) {
                used = 0;
            }
            if (used != cell.size() || cell.empty())
                throw data_error("non-numeric cell '" + cell + "' at row " +
                                 std::to_string(rows + 2) + ", column '" + header[col] + "'");
            if (static_cast<int>(col) == target_idx)
                targets.push_back(value);
            else
                flat.push_back(value);
            ++col;
        }
        if (col != header.size())
            throw data_error("row " + std::to_string(rows + 2) + " has " +
                             std::to_string(col) + " cells, expected " +
                             std::to_string(header.size()));
        ++rows;
    }
    if (rows == 0) throw data_error("CSV file '" + path + "' has no data rows");

    DatasetSplit ds;
    ds.task = task;
    ds.features.rows = rows;
    ds.features.cols = d;
    ds.features.values = std::move(flat);
    ds.targets = std::move(targets);
    if (task == Task::Classification)
        for (std::size_t i = 0; i < ds.targets.size(); ++i)
            if (ds.targets[i] != 1.0 && ds.targets[i] != -1.0)
                throw invalid_target_error(
                    "classification target at data row " + std::to_string(i + 1) +
                    " must be -1 or +1, got " + format_double(ds.targets[i]));
    for (double v : ds.features.values)
        if (!std::isfinite(v)) throw data_error("CSV contains non-finite feature values");
    return ds;
}

void write_csv(const DatasetSplit& ds, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw data_error("cannot write CSV file '" + path + "'");
    for (std::size_t j = 0; j < ds.features.cols; ++j) out << "x" << (j + 1) << ",";
    out << "y\n";
    for (std::size_t i = 0; i < ds.features.rows; ++i) {
        const auto row = ds.features.row(i);
        for (double v : row) out << format_double(v) << ",";
        out << format_double(ds.targets[i]) << "\n";
    }
    if (!out) throw data_error("failed while writing '" + path + "'");
}

std::array<DatasetSplit, 3> split(const DatasetSplit& ds, double f_train, double f_val,
                                  double f_test, std::uint64_t seed) {
    if (f_train < 0.0 || f_val < 0.0 || f_test < 0.0)
        throw usage_error("split fractions must be non-negative");
    if (f_train + f_val + f_test > 1.0 + 1e-9)
        throw usage_error("split fractions must sum to at most 1");

    const std::size_t n = ds.n();
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    Rng rng(splitmix64(seed ^ 0x5eedULL));
    shuffle_inplace(perm, rng);

    const std::size_t n_train = static_cast<std::size_t>(std::floor(f_train * n));
    const std::size_t n_val = static_cast<std::size_t>(std::floor(f_val * n));

    const auto take = [&](std::size_t begin, std::size_t count) {
        DatasetSplit part;
        part.task = ds.task;
        part.features = Matrix(count, ds.d());
        part.targets.resize(count);
        for (std::size_t k = 0; k < count; ++k) {
            const std::size_t src = perm[begin + k];
            std::copy(ds.features.row(src).begin(), ds.features.row(src).end(),
                      part.features.row(k).begin());
            part.targets[k] = ds.targets[src];
        }
        return part;
    };

    return {take(0, n_train), take(n_train, n_val),
            take(n_train + n_val, n - n_train - n_val)};
}

}  // namespace proxboost
