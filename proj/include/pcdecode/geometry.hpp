// SPDX-License-Identifier: Apache-2.0
//
// pcdecode: downlink interference decoding for pilot-contaminated massive MIMO
// Copyright (C) 2026 The pcdecode Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef PCDECODE_GEOMETRY_HPP
#define PCDECODE_GEOMETRY_HPP

#include "pcdecode/common.hpp"

#include <cstdint>
#include <iosfwd>
#include <random>
#include <string>
#include <vector>

namespace pcdecode
{

// Physical layout and radio constants of one multi-cell deployment.
// Defaults reproduce the two-cell urban macro setup (r = 400 m, K = 15, 3.5 GHz).
struct ScenarioConfig
{
    std::size_t L = 2;                // cells
    std::size_t K = 15;               // users per cell
    double cell_radius_m = 400.0;     // hexagon circumradius
    double min_bs_distance_m = 35.0;  // 2-D exclusion radius around the own BS
    double bs_height_m = 25.0;
    double ue_height_m = 1.5;
    double carrier_freq_ghz = 3.5;
    double bandwidth_hz = 20e6;       // informational; noise power is given directly
    double bs_total_power_w = 40.0;
    double ue_pilot_power_w = 0.2;
    double noise_power_dbm = -101.0;
    std::size_t n_drops = 150;
    std::uint64_t seed = 1;

    // Throws std::invalid_argument on any violated invariant.
    void validate() const;
};

// User and BS positions of a single drop.
struct Layout
{
    std::vector<Point2> bs_positions;                // L
    std::vector<std::vector<Point2>> user_positions; // [cell][user]
};

// Immutable large-scale description of one drop.
struct NetworkScenario
{
    std::vector<Point2> bs_positions;
    std::vector<std::vector<Point2>> user_positions;
    Tensor3 beta; // beta(j, k, l): linear gain between BS j and user k of cell l
    double rho_d = 0.0;
    double rho_p = 0.0;

    std::size_t n_cells() const { return beta.dim0(); }
    std::size_t n_users() const { return beta.dim1(); }
};

// Hexagon centres for L pointy-top cells on a hexagonal grid (spiral order).
// Neighbouring cells share an edge; centre spacing is sqrt(3) * radius.
std::vector<Point2> hex_cell_centers(std::size_t L, double radius);

// Point-in-hexagon test for a pointy-top hexagon of circumradius `radius`.
bool inside_hexagon(const Point2 &p, const Point2 &center, double radius);

// Uniform user drop inside each hexagon, at least min_bs_distance_m from the own BS.
Layout place_users(const ScenarioConfig &config, std::mt19937_64 &rng);

// Urban-macro path loss in dB for a 3-D distance in metres and carrier in GHz.
double path_loss_db(double d3d_m, double fc_ghz, double ue_height_m);

double noise_power_w(const ScenarioConfig &config);
double downlink_snr(const ScenarioConfig &config);
double pilot_snr(const ScenarioConfig &config);

NetworkScenario build_beta(const ScenarioConfig &config, const Layout &layout);

// Scenario of drop `drop_index`; the generator is seeded with derive_seed(config.seed, drop_index).
NetworkScenario make_drop(const ScenarioConfig &config, std::uint64_t drop_index);

// CSV dump: cell,user,x_m,y_m,beta_bs0_db,...
void write_scenario_csv(std::ostream &os, const NetworkScenario &scenario);

} // namespace pcdecode

#endif
