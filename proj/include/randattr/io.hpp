#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include <json.hpp>

#include "randattr/cloud.hpp"
#include "randattr/cocycle.hpp"
#include "randattr/construct.hpp"
#include "randattr/verify.hpp"

namespace randattr {

using json = nlohmann::ordered_json;

json to_json(const NoiseSpec& spec);
NoiseSpec noise_from_json(const json& j);

/// Builds a zoo system from {"system": name, "params": {...}}.
SystemSpec system_from_json(const json& j);

json to_json(const Box& box);
Box box_from_json(const json& j);

json to_json(const PointCloud& cloud);
PointCloud cloud_from_json(const json& j);

json to_json(const Schedule& sched);
json to_json(const CriterionReport& rep);
json to_json(const ModeReport& rep);

std::string cloud_to_csv(const PointCloud& cloud);
PointCloud cloud_from_csv(const std::string& text);

void write_file(const std::filesystem::path& path, const std::string& content);
std::string read_file(const std::filesystem::path& path);

/// FNV-1a 64-bit over raw bytes, hex string. Used for run manifests.
std::string content_hash(const std::string& bytes);

}  // namespace randattr
