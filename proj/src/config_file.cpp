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

#include "pcdecode/config_file.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace pcdecode
{

namespace
{

std::string trim(const std::string &s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos)
        return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string &s)
{
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ','))
    {
        item = trim(item);
        if (!item.empty())
            out.push_back(item);
    }
    return out;
}

double to_double(const std::string &key, const std::string &v)
{
    double x = 0.0;
    auto res = std::from_chars(v.data(), v.data() + v.size(), x);
    if (res.ec != std::errc() || res.ptr != v.data() + v.size())
        throw std::invalid_argument("Invalid number for '" + key + "': " + v);
    return x;
}

std::uint64_t to_u64(const std::string &key, const std::string &v)
{
    std::uint64_t x = 0;
    auto res = std::from_chars(v.data(), v.data() + v.size(), x);
    if (res.ec != std::errc() || res.ptr != v.data() + v.size())
        throw std::invalid_argument("Invalid non-negative integer for '" + key + "': " + v);
    return x;
}

} // namespace

std::map<std::string, std::string> parse_key_values(std::istream &is)
{
    std::map<std::string, std::string> kv;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(is, line))
    {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        line = trim(line);
        if (line.empty())
            continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("Line " + std::to_string(line_no) + ": expected key = value.");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty())
            throw std::invalid_argument("Line " + std::to_string(line_no) + ": empty key.");
        if (!kv.emplace(key, value).second)
            throw std::invalid_argument("Duplicate key: " + key);
    }
    return kv;
}

SweepConfig sweep_config_from_map(const std::map<std::string, std::string> &kv)
{
    SweepConfig c;
    ScenarioConfig &s = c.scenario;
    for (const auto &[key, value] : kv)
    {
        if (key == "L")
            s.L = to_u64(key, value);
        else if (key == "K")
            s.K = to_u64(key, value);
        else if (key == "cell_radius_m")
            s.cell_radius_m = to_double(key, value);
        else if (key == "min_bs_distance_m")
            s.min_bs_distance_m = to_double(key, value);
        else if (key == "bs_height_m")
            s.bs_height_m = to_double(key, value);
        else if (key == "ue_height_m")
            s.ue_height_m = to_double(key, value);
        else if (key == "carrier_freq_ghz")
            s.carrier_freq_ghz = to_double(key, value);
        else if (key == "bandwidth_hz")
            s.bandwidth_hz = to_double(key, value);
        else if (key == "bs_total_power_w")
            s.bs_total_power_w = to_double(key, value);
        else if (key == "ue_pilot_power_w")
            s.ue_pilot_power_w = to_double(key, value);
        else if (key == "noise_power_dbm")
            s.noise_power_dbm = to_double(key, value);
        else if (key == "n_drops")
            s.n_drops = to_u64(key, value);
        else if (key == "seed")
            s.seed = to_u64(key, value);
        else if (key == "m_values")
        {
            c.m_values.clear();
            for (const auto &item : split_list(value))
                c.m_values.push_back(to_u64(key, item));
        }
        else if (key == "schemes")
        {
            c.schemes.clear();
            for (const auto &item : split_list(value))
                c.schemes.push_back(scheme_from_string(item));
        }
        else if (key == "precoders")
        {
            c.precoders.clear();
            for (const auto &item : split_list(value))
                c.precoders.push_back(precoder_from_string(item));
        }
        else if (key == "pilot_index")
            c.pilot_index = to_u64(key, value);
        else if (key == "mu_grid")
            c.mu_grid = to_u64(key, value);
        else
            throw std::invalid_argument("Unknown configuration key: " + key);
    }
    return c;
}

SweepConfig load_sweep_config(const std::string &path)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("Cannot open configuration file: " + path);
    return sweep_config_from_map(parse_key_values(in));
}

} // namespace pcdecode
