#pragma once

#include <cstdint>
#include <filesystem>
#include <json.hpp>

#include "loadsense/classifiers.hpp"

namespace loadsense {

inline constexpr int kModelFormatVersion = 1;

/// {"format_version", "seed", "model": {kind, classes, scaler, params}}.
/// Doubles are written with round-trip precision, so a reloaded model
/// predicts identically.
nlohmann::json model_to_json(const TrainedModel& model, std::uint64_t seed);
TrainedModel model_from_json(const nlohmann::json& doc);

void save_model(const std::filesystem::path& path, const TrainedModel& model, std::uint64_t seed);
TrainedModel load_model(const std::filesystem::path& path);

}  // namespace loadsense
