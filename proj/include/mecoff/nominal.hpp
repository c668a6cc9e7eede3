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

#ifndef MECOFF_NOMINAL_HPP_
#define MECOFF_NOMINAL_HPP_

namespace mecoff {

// Nominal experiment parameters, in the human units of instance files.
struct NominalParameters {
  int num_tasks = 10;
  int num_nodes = 4;
  double local_rate_gcps = 0.5;
  double energy_j_per_gcycle = 1000.0 / 730.0;
  // Discrete-uniform size ranges, inclusive, in MB.
  int input_mb_min = 10;
  int input_mb_max = 20;
  int output_mb_min = 1;
  int output_mb_max = 2;
  double tx_energy_j_per_mbit = 0.142;
  double rx_energy_j_per_mbit = 0.142;
  double node_cpu_gcps = 10.0;
  double node_uplink_mbps = 72.0;
  double node_downlink_mbps = 72.0;
  double cloud_cpu_gcps = 10.0;
  double fog_cloud_mbps = 5.0;
};

}  // namespace mecoff

#endif  // MECOFF_NOMINAL_HPP_
