#pragma once

#include <string>

#include <json.hpp>

#include "rsscflp/instance.hpp"

namespace rsscflp {

// Versioned on-disk formats. Both carry "format": "rsscflp-1"; readers
// reject anything else. Serialization uses ordered JSON and a fixed dump
// style so identical data produces identical bytes.
inline constexpr const char* kFormatTag = "rsscflp-1";

nlohmann::ordered_json instance_to_json(const Instance& inst);
Instance instance_from_json(const nlohmann::json& j);

Instance load_instance(const std::string& path);
void save_instance(const Instance& inst, const std::string& path);

// Solution files store the assignment plus solver status; extra keys (stats,
// config) are allowed and ignored by readers.
struct SolutionFile {
  std::string status;  // "optimal", "time-limit", "infeasible"
  bool has_assignment = false;
  Assignment assignment;
  std::int64_t objective = 0;
};

nlohmann::ordered_json solution_to_json(const Instance& inst, const SolutionFile& sol);
SolutionFile solution_from_json(const nlohmann::json& j, int m, int n);

SolutionFile load_solution(const std::string& path, int m, int n);

// Writes any JSON document with the canonical dump style (2-space indent,
// trailing newline).
void write_json_file(const nlohmann::ordered_json& j, const std::string& path);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& text, const std::string& path);

}  // namespace rsscflp
