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

#ifndef MECOFF_INSTANCE_IO_HPP_
#define MECOFF_INSTANCE_IO_HPP_

#include <stdexcept>
#include <string>

#include "mecoff/model.hpp"

namespace mecoff {

class InstanceFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Instance documents use human units:
//
//   {
//     "tasks": [{"input_mb": 15, "output_mb": 1.5, "cycles_g": 13.5,
//                "deadline_s": 40,
//                "local_rate_gcps": 0.5,            // optional
//                "energy_j_per_gcycle": 1.36986,    // optional
//                "tx_energy_j_per_mbit": 0.142,     // optional
//                "rx_energy_j_per_mbit": 0.142}],   // optional
//     "nodes": [{"uplink_mbps": 72, "downlink_mbps": 72, "cpu_gcps": 10}],
//     "cloud": {"fog_cloud_mbps": 5, "cpu_gcps": 10}
//   }
//
// MB is 10^6 bytes, Mbit is 10^6 bits, G is 10^9. Optional task fields
// default to the nominal experiment parameters. Unknown keys are rejected.
// Ids are implied by array position. The parsed instance is not validated;
// call Validate() for invariant checks.
Instance ParseInstance(const std::string& json_text);
Instance LoadInstance(const std::string& path);

// Emits every field, so ParseInstance(InstanceToJson(x)) reproduces x.
std::string InstanceToJson(const Instance& instance);
void SaveInstance(const Instance& instance, const std::string& path);

}  // namespace mecoff

#endif  // MECOFF_INSTANCE_IO_HPP_
