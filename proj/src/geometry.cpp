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

#include "pcdecode/geometry.hpp"

#include <array>
#include <cmath>
#include <ostream>
#include <stdexcept>

namespace pcdecode
{

void ScenarioConfig::validate() const
{
    if (L < 1)
        throw std::invalid_argument("L must be at least 1.");
    if (L > CellSet::max_cells)
        throw std::invalid_argument("L cannot exceed 32.");
    if (K < 1)
        throw std::invalid_argument("K must be at least 1.");
    if (!(cell_radius_m > 0.0))
        throw std::invalid_argument("cell_radius_m must be positive.");
    if (!(min_bs_distance_m > 0.0))
        throw std::invalid_argument("min_bs_distance_m must be positive.");
    if (!(min_bs_distance_m < cell_radius_m))
        throw std::invalid_argument("min_bs_distance_m must be smaller than cell_radius_m.");
    if (!(bs_height_m > 0.0) || !(ue_height_m > 0.0))
        throw std::invalid_argument("Antenna heights must be positive.");
    if (!(carrier_freq_ghz > 0.0))
        throw std::invalid_argument("carrier_freq_ghz must be positive.");
    if (!(bandwidth_hz > 0.0))
        throw std::invalid_argument("bandwidth_hz must be positive.");
    if (!(bs_total_power_w > 0.0) || !(ue_pilot_power_w > 0.0))
        throw std::invalid_argument("Transmit powers must be positive.");
    if (!std::isfinite(noise_power_dbm))
        throw std::invalid_argument("noise_power_dbm must be finite.");
    if (n_drops < 1)
        throw std::invalid_argument("n_drops must be at least 1.");
}

std::vector<Point2> hex_cell_centers(std::size_t L, double radius)
{
    // Axial neighbour directions of a pointy-top hex grid.
    static constexpr std::array<std::array<int, 2>, 6> dirs{{{1, 0}, {1, -1}, {0, -1}, {-1, 0}, {-1, 1}, {0, 1}}};

    auto to_xy = [radius](int q, int r) {
        return Point2{std::sqrt(3.0) * radius * (q + 0.5 * r), 1.5 * radius * r};
    };

    std::vector<Point2> centers;
    centers.reserve(L);
    if (L == 0)
        return centers;
    centers.push_back(to_xy(0, 0));
    for (int ring = 1; centers.size() < L; ++ring)
    {
        int q = dirs[0][0] * ring, r = dirs[0][1] * ring;
        for (int side = 0; side < 6 && centers.size() < L; ++side)
            for (int step = 0; step < ring && centers.size() < L; ++step)
            {
                centers.push_back(to_xy(q, r));
                q += dirs[(side + 2) % 6][0];
                r += dirs[(side + 2) % 6][1];
            }
    }
    return centers;
}

bool inside_hexagon(const Point2 &p, const Point2 &center, double radius)
{
    const double dx = std::abs(p.x - center.x);
    const double dy = std::abs(p.y - center.y);
    return dx <= 0.5 * std::sqrt(3.0) * radius && dy <= radius - dx / std::sqrt(3.0);
}

Layout place_users(const ScenarioConfig &config, std::mt19937_64 &rng)
{
    config.validate();

    const double r = config.cell_radius_m;
    const double half_width = 0.5 * std::sqrt(3.0) * r;
    std::uniform_real_distribution<double> ux(-half_width, half_width);
    std::uniform_real_distribution<double> uy(-r, r);

    Layout layout;
    layout.bs_positions = hex_cell_centers(config.L, r);
    layout.user_positions.resize(config.L);
    for (std::size_t l = 0; l < config.L; ++l)
    {
        const Point2 c = layout.bs_positions[l];
        auto &users = layout.user_positions[l];
        users.reserve(config.K);
        while (users.size() < config.K)
        {
            const Point2 p{c.x + ux(rng), c.y + uy(rng)};
            if (!inside_hexagon(p, c, r) || distance(p, c) < config.min_bs_distance_m)
                continue;
            users.push_back(p);
        }
    }
    return layout;
}

double path_loss_db(double d3d_m, double fc_ghz, double ue_height_m)
{
    if (!(d3d_m > 0.0))
        throw std::invalid_argument("3-D distance must be positive.");
    if (!(fc_ghz > 0.0))
        throw std::invalid_argument("Carrier frequency must be positive.");
    return -13.54 - 39.08 * std::log10(d3d_m) - 20.0 * std::log10(fc_ghz) + 0.6 * (ue_height_m - 1.5);
}

double noise_power_w(const ScenarioConfig &config)
{
    return std::pow(10.0, (config.noise_power_dbm - 30.0) / 10.0);
}

double downlink_snr(const ScenarioConfig &config)
{
    return (config.bs_total_power_w / static_cast<double>(config.K)) / noise_power_w(config);
}

double pilot_snr(const ScenarioConfig &config)
{
    return config.ue_pilot_power_w / noise_power_w(config);
}

NetworkScenario build_beta(const ScenarioConfig &config, const Layout &layout)
{
    if (layout.bs_positions.size() != config.L || layout.user_positions.size() != config.L)
        throw std::invalid_argument("Layout does not match the configured number of cells.");

    NetworkScenario s;
    s.bs_positions = layout.bs_positions;
    s.user_positions = layout.user_positions;
    s.beta = Tensor3(config.L, config.K, config.L);
    const double dh = config.bs_height_m - config.ue_height_m;
    for (std::size_t j = 0; j < config.L; ++j)
        for (std::size_t l = 0; l < config.L; ++l)
        {
            if (layout.user_positions[l].size() != config.K)
                throw std::invalid_argument("Layout does not match the configured number of users.");
            for (std::size_t k = 0; k < config.K; ++k)
            {
                const double d2 = distance(layout.bs_positions[j], layout.user_positions[l][k]);
                const double d3 = std::sqrt(d2 * d2 + dh * dh);
                s.beta(j, k, l) = db_to_linear(path_loss_db(d3, config.carrier_freq_ghz, config.ue_height_m));
            }
        }
    s.rho_d = downlink_snr(config);
    s.rho_p = pilot_snr(config);
    return s;
}

NetworkScenario make_drop(const ScenarioConfig &config, std::uint64_t drop_index)
{
    std::mt19937_64 rng(derive_seed(config.seed, drop_index));
    return build_beta(config, place_users(config, rng));
}

void write_scenario_csv(std::ostream &os, const NetworkScenario &scenario)
{
    const std::size_t L = scenario.n_cells(), K = scenario.n_users();
    os << "cell,user,x_m,y_m";
    for (std::size_t j = 0; j < L; ++j)
        os << ",beta_bs" << j << "_db";
    os << '\n';
    for (std::size_t l = 0; l < L; ++l)
        for (std::size_t k = 0; k < K; ++k)
        {
            const Point2 &p = scenario.user_positions[l][k];
            os << l << ',' << k << ',' << format_number(p.x) << ',' << format_number(p.y);
            for (std::size_t j = 0; j < L; ++j)
                os << ',' << format_number(linear_to_db(scenario.beta(j, k, l)));
            os << '\n';
        }
}

} // namespace pcdecode
