#pragma once

#include <string>

#include "proxboost/boosting.hpp"

namespace proxboost {

inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr int kModelFormatVersion = 1;

// Model file: JSON {format_version, loss, config, initial_constant, trees, weights}.
void save_model(const Ensemble& model, const std::string& path);
Ensemble load_model(const std::string& path);

std::string model_to_json_string(const Ensemble& model);
Ensemble model_from_json_string(const std::string& text);

// Trace file: CSV with header t,train_loss,val_loss,gamma,alpha (row per
// iteration, starting at the constant model t = 0).
void write_trace_csv(const FitTrace& trace, const std::string& path);

// Run manifest written alongside every CLI output.
void write_manifest(const std::string& path, const std::string& command,
                    const std::string& args_json, double duration_seconds);

std::string format_double_repr(double v);  // shortest round-trip-safe form

}  // namespace proxboost
