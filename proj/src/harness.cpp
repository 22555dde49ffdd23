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

#include "pcdecode/harness.hpp"

#include "parallel.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

namespace pcdecode
{

std::vector<std::size_t> default_m_values()
{
    return {32, 64, 128, 256, 512, 1024, 10000, 100000, 400000, 1000000};
}

void SweepConfig::validate() const
{
    scenario.validate();
    if (m_values.empty())
        throw std::invalid_argument("m_values must not be empty.");
    if (m_values.front() < 1)
        throw std::invalid_argument("Antenna counts must be positive.");
    for (std::size_t n = 1; n < m_values.size(); ++n)
        if (m_values[n] <= m_values[n - 1])
            throw std::invalid_argument("m_values must be strictly increasing.");
    if (schemes.empty() || precoders.empty())
        throw std::invalid_argument("At least one scheme and one precoder are required.");
    if (pilot_index >= scenario.K)
        throw std::invalid_argument("pilot_index must be smaller than K.");
    if (mu_grid < 2)
        throw std::invalid_argument("mu_grid needs at least 2 points.");
    for (Scheme s : schemes)
    {
        if ((s == Scheme::SND || s == Scheme::PD) && scenario.L != 2)
            throw std::invalid_argument(to_string(s) + " is only defined for L = 2.");
        if (s == Scheme::SD && scenario.L < 2)
            throw std::invalid_argument("SD needs at least two cells.");
    }
    const bool zf = std::find(precoders.begin(), precoders.end(), Precoder::ZF) != precoders.end();
    if (zf && m_values.front() <= scenario.K)
        throw DimensionError("ZF requires every M > K; smallest M is " + std::to_string(m_values.front()) + ".");
}

const SweepRow &SweepResult::find(std::size_t M, Scheme scheme, Precoder precoder) const
{
    for (const auto &r : rows)
        if (r.M == M && r.scheme == scheme && r.precoder == precoder)
            return r;
    throw std::out_of_range("No sweep row for M = " + std::to_string(M) + ", " + to_string(scheme) + ", " +
                            to_string(precoder) + ".");
}

std::size_t cell_index(const SweepConfig &config, std::size_t m_pos, std::size_t precoder_pos,
                       std::size_t scheme_pos)
{
    return (m_pos * config.precoders.size() + precoder_pos) * config.schemes.size() + scheme_pos;
}

DropResult evaluate_drop(const SweepConfig &config, std::uint64_t drop)
{
    const NetworkScenario scenario = make_drop(config.scenario, drop);
    const EstimationStats stats = compute_alpha(scenario);

    DropResult out;
    out.drop = drop;
    const std::size_t cells = config.m_values.size() * config.precoders.size() * config.schemes.size();
    out.se.assign(cells, 0.0);
    out.pd_split.assign(cells, PdSplit{});
    for (std::size_t mp = 0; mp < config.m_values.size(); ++mp)
        for (std::size_t pp = 0; pp < config.precoders.size(); ++pp)
        {
            const PilotGroup group =
                pilot_group(scenario, stats, config.m_values[mp], config.precoders[pp], config.pilot_index);
            for (std::size_t sp = 0; sp < config.schemes.size(); ++sp)
            {
                const std::size_t idx = cell_index(config, mp, pp, sp);
                switch (config.schemes[sp])
                {
                case Scheme::TIN:
                    out.se[idx] = sym_rate_tin(group);
                    break;
                case Scheme::SD:
                    out.se[idx] = sym_rate_sd(group);
                    break;
                case Scheme::SND:
                    out.se[idx] = sym_rate_snd(group);
                    break;
                case Scheme::PD: {
                    const PdResult pd = sym_rate_pd(group, config.mu_grid);
                    out.se[idx] = pd.rate;
                    out.pd_split[idx] = pd.split;
                    break;
                }
                }
            }
        }
    return out;
}

std::vector<DropResult> run_drops(const SweepConfig &config, unsigned threads)
{
    config.validate();
    std::vector<DropResult> drops(config.scenario.n_drops);
    detail::parallel_for(drops.size(), threads, [&](std::size_t d) { drops[d] = evaluate_drop(config, d); });
    return drops;
}

SweepResult aggregate(const SweepConfig &config, const std::vector<DropResult> &drops)
{
    if (drops.empty())
        throw std::invalid_argument("Cannot aggregate an empty set of drops.");
    const double n = static_cast<double>(drops.size());

    SweepResult result;
    for (std::size_t mp = 0; mp < config.m_values.size(); ++mp)
        for (std::size_t pp = 0; pp < config.precoders.size(); ++pp)
            for (std::size_t sp = 0; sp < config.schemes.size(); ++sp)
            {
                const std::size_t idx = cell_index(config, mp, pp, sp);
                CompensatedSum sum, mu1, mu2;
                for (const auto &d : drops)
                {
                    sum += d.se[idx];
                    mu1 += d.pd_split[idx].mu1;
                    mu2 += d.pd_split[idx].mu2;
                }
                const double mean = sum.value() / n;
                CompensatedSum ss;
                for (const auto &d : drops)
                    ss += (d.se[idx] - mean) * (d.se[idx] - mean);

                SweepRow row;
                row.M = config.m_values[mp];
                row.scheme = config.schemes[sp];
                row.precoder = config.precoders[pp];
                row.mean_se = mean;
                row.std_se = drops.size() > 1 ? std::sqrt(ss.value() / (n - 1.0)) : 0.0;
                row.n_drops = drops.size();
                if (row.scheme == Scheme::PD)
                {
                    row.mean_mu1 = mu1.value() / n;
                    row.mean_mu2 = mu2.value() / n;
                }
                result.rows.push_back(row);
            }
    return result;
}

SweepResult run_sweep(const SweepConfig &config, unsigned threads)
{
    return aggregate(config, run_drops(config, threads));
}

void write_sweep_csv(std::ostream &os, const SweepResult &result)
{
    os << "M,scheme,precoder,mean_se,std_se,n_drops,mean_mu1,mean_mu2\n";
    for (const auto &r : result.rows)
    {
        os << r.M << ',' << to_string(r.scheme) << ',' << to_string(r.precoder) << ',' << format_number(r.mean_se)
           << ',' << format_number(r.std_se) << ',' << r.n_drops << ',';
        if (r.mean_mu1)
            os << format_number(*r.mean_mu1);
        os << ',';
        if (r.mean_mu2)
            os << format_number(*r.mean_mu2);
        os << '\n';
    }
}

void write_plot_script(std::ostream &os, const std::string &csv_path)
{
    os << R"(#!/usr/bin/env python3
"""Plot symmetric spectral efficiency against the number of BS antennas."""
import csv
import sys
from collections import defaultdict

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt

CSV_PATH = sys.argv[1] if len(sys.argv) > 1 else ")"
       << csv_path << R"("
OUT_PATH = sys.argv[2] if len(sys.argv) > 2 else CSV_PATH.rsplit(".", 1)[0] + ".png"

curves = defaultdict(list)
with open(CSV_PATH, newline="", encoding="utf-8") as f:
    for row in csv.DictReader(f):
        curves[(row["precoder"], row["scheme"])].append((int(row["M"]), float(row["mean_se"])))

precoders = sorted({p for p, _ in curves})
markers = {"TIN": "o", "SD": "s", "SND": "^", "PD": "d"}
fig, axes = plt.subplots(1, len(precoders), figsize=(6 * len(precoders), 4.5), squeeze=False)
for ax, precoder in zip(axes[0], precoders):
    for (p, scheme), points in sorted(curves.items()):
        if p != precoder:
            continue
        points.sort()
        ax.plot([m for m, _ in points], [se for _, se in points], marker=markers.get(scheme, "x"), label=scheme)
    ax.set_xscale("log", base=2)
    ax.set_xlabel("Number of BS antennas M")
    ax.set_ylabel("Symmetric SE [bits/s/Hz]")
    ax.set_title(precoder)
    ax.grid(True, which="both", alpha=0.3)
    ax.legend()
fig.tight_layout()
fig.savefig(OUT_PATH, dpi=150)
print("wrote", OUT_PATH)
)";
}

} // namespace pcdecode
