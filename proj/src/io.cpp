#include "rsscflp/io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace rsscflp {

namespace {

void check_format(const nlohmann::json& j) {
  if (!j.contains("format") || j["format"] != kFormatTag)
    throw std::runtime_error("unsupported file format, expected \"" +
                             std::string(kFormatTag) + "\"");
}

}  // namespace

nlohmann::ordered_json instance_to_json(const Instance& inst) {
  nlohmann::ordered_json j;
  j["format"] = kFormatTag;
  j["m"] = inst.m;
  j["n"] = inst.n;
  j["facilities"] = nlohmann::ordered_json::array();
  for (int i = 0; i < inst.m; ++i) {
    nlohmann::ordered_json f;
    f["fixed_cost"] = inst.fixed_cost[i];
    f["capacity"] = inst.capacity[i];
    f["gamma"] = inst.gamma[i];
    j["facilities"].push_back(std::move(f));
  }
  j["customers"] = nlohmann::ordered_json::array();
  for (int jj = 0; jj < inst.n; ++jj) {
    nlohmann::ordered_json c;
    c["demand"] = inst.demand[jj];
    c["deviation"] = inst.deviation[jj];
    j["customers"].push_back(std::move(c));
  }
  j["assign_cost"] = inst.assign_cost;
  return j;
}

Instance instance_from_json(const nlohmann::json& j) {
  check_format(j);
  Instance inst;
  inst.m = j.at("m").get<int>();
  inst.n = j.at("n").get<int>();
  if (inst.m <= 0 || inst.n <= 0)
    throw std::runtime_error("instance: m and n must be positive");
  for (const auto& f : j.at("facilities")) {
    inst.fixed_cost.push_back(f.at("fixed_cost").get<std::int64_t>());
    inst.capacity.push_back(f.at("capacity").get<std::int64_t>());
    // The budget never usefully exceeds the number of customers; clamp on load.
    inst.gamma.push_back(std::min(f.at("gamma").get<int>(), inst.n));
  }
  for (const auto& c : j.at("customers")) {
    inst.demand.push_back(c.at("demand").get<std::int64_t>());
    inst.deviation.push_back(c.at("deviation").get<std::int64_t>());
  }
  inst.assign_cost = j.at("assign_cost").get<std::vector<std::vector<std::int64_t>>>();
  inst.validate();
  return inst;
}

Instance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open instance file: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error("malformed JSON in " + path + ": " + e.what());
  }
  return instance_from_json(j);
}

void save_instance(const Instance& inst, const std::string& path) {
  write_json_file(instance_to_json(inst), path);
}

nlohmann::ordered_json solution_to_json(const Instance& inst, const SolutionFile& sol) {
  nlohmann::ordered_json j;
  j["format"] = kFormatTag;
  j["status"] = sol.status;
  if (sol.has_assignment) {
    j["objective"] = sol.objective;
    nlohmann::ordered_json open = nlohmann::ordered_json::array();
    for (int i = 0; i < inst.m; ++i)
      if (sol.assignment.open[i]) open.push_back(i);
    j["open"] = std::move(open);
    j["facility_of"] = sol.assignment.facility_of;
  }
  return j;
}

SolutionFile solution_from_json(const nlohmann::json& j, int m, int n) {
  check_format(j);
  SolutionFile sol;
  sol.status = j.at("status").get<std::string>();
  if (!j.contains("objective")) return sol;
  sol.has_assignment = true;
  sol.objective = j.at("objective").get<std::int64_t>();
  sol.assignment.facility_of = j.at("facility_of").get<std::vector<int>>();
  if (static_cast<int>(sol.assignment.facility_of.size()) != n)
    throw std::runtime_error("solution: facility_of size mismatch");
  sol.assignment.open.assign(m, 0);
  for (int i : j.at("open").get<std::vector<int>>()) {
    if (i < 0 || i >= m) throw std::runtime_error("solution: open facility index out of range");
    sol.assignment.open[i] = 1;
  }
  return sol;
}

SolutionFile load_solution(const std::string& path, int m, int n) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open solution file: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error("malformed JSON in " + path + ": " + e.what());
  }
  return solution_from_json(j, m, n);
}

void write_json_file(const nlohmann::ordered_json& j, const std::string& path) {
  write_text_file(j.dump(2) + "\n", path);
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& text, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write file: " + path);
  out << text;
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace rsscflp
