// Copyright 2026 The mecoff Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "mecoff/instance_io.hpp"

#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>

#include "json.hpp"
#include "mecoff/nominal.hpp"

namespace mecoff {
namespace {

using nlohmann::json;

void RejectUnknownKeys(const json& obj, std::initializer_list<const char*> known,
                       const std::string& where) {
  if (!obj.is_object()) throw InstanceFormatError(where + " must be an object");
  for (const auto& [key, value] : obj.items()) {
    bool ok = false;
    for (const char* k : known) ok = ok || key == k;
    if (!ok) throw InstanceFormatError("unknown field '" + key + "' in " + where);
  }
}

double Number(const json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) {
    throw InstanceFormatError("missing field '" + std::string(key) + "' in " +
                              where);
  }
  if (!it->is_number()) {
    throw InstanceFormatError("field '" + std::string(key) + "' in " + where +
                              " must be a number");
  }
  return it->get<double>();
}

double NumberOr(const json& obj, const char* key, double fallback,
                const std::string& where) {
  return obj.contains(key) ? Number(obj, key, where) : fallback;
}

}  // namespace

Instance ParseInstance(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw InstanceFormatError(std::string("malformed JSON: ") + e.what());
  }
  RejectUnknownKeys(doc, {"tasks", "nodes", "cloud"}, "instance");
  if (!doc.contains("tasks") || !doc["tasks"].is_array()) {
    throw InstanceFormatError("'tasks' must be an array");
  }
  if (!doc.contains("nodes") || !doc["nodes"].is_array()) {
    throw InstanceFormatError("'nodes' must be an array");
  }
  if (!doc.contains("cloud")) throw InstanceFormatError("missing 'cloud'");

  const NominalParameters nominal;
  Instance instance;
  int index = 0;
  for (const json& t : doc["tasks"]) {
    const std::string where = "tasks[" + std::to_string(index) + "]";
    RejectUnknownKeys(t,
                      {"input_mb", "output_mb", "cycles_g", "deadline_s",
                       "local_rate_gcps", "energy_j_per_gcycle",
                       "tx_energy_j_per_mbit", "rx_energy_j_per_mbit"},
                      where);
    Task task;
    task.id = index;
    task.input_bits = units::MegabytesToBits(Number(t, "input_mb", where));
    task.output_bits = units::MegabytesToBits(Number(t, "output_mb", where));
    task.cycles = units::GigacyclesToCycles(Number(t, "cycles_g", where));
    task.deadline_s = Number(t, "deadline_s", where);
    task.local_rate = units::GigacyclesToCycles(
        NumberOr(t, "local_rate_gcps", nominal.local_rate_gcps, where));
    task.energy_per_cycle = units::JoulesPerGigacycleToPerCycle(NumberOr(
        t, "energy_j_per_gcycle", nominal.energy_j_per_gcycle, where));
    task.tx_energy_per_bit = units::JoulesPerMegabitToPerBit(NumberOr(
        t, "tx_energy_j_per_mbit", nominal.tx_energy_j_per_mbit, where));
    task.rx_energy_per_bit = units::JoulesPerMegabitToPerBit(NumberOr(
        t, "rx_energy_j_per_mbit", nominal.rx_energy_j_per_mbit, where));
    instance.tasks.push_back(task);
    ++index;
  }
  index = 0;
  for (const json& n : doc["nodes"]) {
    const std::string where = "nodes[" + std::to_string(index) + "]";
    RejectUnknownKeys(n, {"uplink_mbps", "downlink_mbps", "cpu_gcps"}, where);
    EdgeNode node;
    node.id = index;
    node.uplink_cap = units::MegabitsToBits(Number(n, "uplink_mbps", where));
    node.downlink_cap = units::MegabitsToBits(Number(n, "downlink_mbps", where));
    node.cpu_cap = units::GigacyclesToCycles(Number(n, "cpu_gcps", where));
    instance.nodes.push_back(node);
    ++index;
  }
  const json& c = doc["cloud"];
  RejectUnknownKeys(c, {"fog_cloud_mbps", "cpu_gcps"}, "cloud");
  instance.cloud.fog_cloud_rate =
      units::MegabitsToBits(Number(c, "fog_cloud_mbps", "cloud"));
  instance.cloud.cloud_cpu_rate =
      units::GigacyclesToCycles(Number(c, "cpu_gcps", "cloud"));
  return instance;
}

Instance LoadInstance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InstanceFormatError("cannot open " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return ParseInstance(buffer.str());
}

std::string InstanceToJson(const Instance& instance) {
  json doc;
  doc["tasks"] = json::array();
  for (const Task& t : instance.tasks) {
    doc["tasks"].push_back({
        {"input_mb", units::BitsToMegabytes(t.input_bits)},
        {"output_mb", units::BitsToMegabytes(t.output_bits)},
        {"cycles_g", units::CyclesToGigacycles(t.cycles)},
        {"deadline_s", t.deadline_s},
        {"local_rate_gcps", units::CyclesToGigacycles(t.local_rate)},
        {"energy_j_per_gcycle",
         units::JoulesPerCycleToPerGigacycle(t.energy_per_cycle)},
        {"tx_energy_j_per_mbit",
         units::JoulesPerBitToPerMegabit(t.tx_energy_per_bit)},
        {"rx_energy_j_per_mbit",
         units::JoulesPerBitToPerMegabit(t.rx_energy_per_bit)},
    });
  }
  doc["nodes"] = json::array();
  for (const EdgeNode& n : instance.nodes) {
    doc["nodes"].push_back({
        {"uplink_mbps", units::BitsToMegabits(n.uplink_cap)},
        {"downlink_mbps", units::BitsToMegabits(n.downlink_cap)},
        {"cpu_gcps", units::CyclesToGigacycles(n.cpu_cap)},
    });
  }
  doc["cloud"] = {
      {"fog_cloud_mbps", units::BitsToMegabits(instance.cloud.fog_cloud_rate)},
      {"cpu_gcps", units::CyclesToGigacycles(instance.cloud.cloud_cpu_rate)},
  };
  return doc.dump(2) + "\n";
}

void SaveInstance(const Instance& instance, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw InstanceFormatError("cannot write " + path);
  out << InstanceToJson(instance);
}

}  // namespace mecoff
