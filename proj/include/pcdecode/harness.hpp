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

#ifndef PCDECODE_HARNESS_HPP
#define PCDECODE_HARNESS_HPP

#include "pcdecode/schemes.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace pcdecode
{

// Antenna counts swept by default: 32..1024 in powers of two plus an asymptotic tail.
std::vector<std::size_t> default_m_values();

struct SweepConfig
{
    ScenarioConfig scenario;
    std::vector<std::size_t> m_values = default_m_values();
    std::vector<Scheme> schemes{Scheme::TIN, Scheme::SD, Scheme::SND, Scheme::PD};
    std::vector<Precoder> precoders{Precoder::MRT, Precoder::ZF};
    std::size_t pilot_index = 0; // 0-based
    std::size_t mu_grid = 21;

    void validate() const;
};

struct SweepRow
{
    std::size_t M = 0;
    Scheme scheme = Scheme::TIN;
    Precoder precoder = Precoder::MRT;
    double mean_se = 0.0;
    double std_se = 0.0;
    std::size_t n_drops = 0;
    std::optional<double> mean_mu1; // PD only
    std::optional<double> mean_mu2;
};

struct SweepResult
{
    std::vector<SweepRow> rows;

    const SweepRow &find(std::size_t M, Scheme scheme, Precoder precoder) const;
};

// Symmetric SE of every (M, precoder, scheme) cell for a single drop, in sweep row order.
struct DropResult
{
    std::uint64_t drop = 0;
    std::vector<double> se;
    std::vector<PdSplit> pd_split; // same indexing; meaningful for PD cells only
};

// Index of (M, precoder, scheme) inside DropResult::se.
std::size_t cell_index(const SweepConfig &config, std::size_t m_pos, std::size_t precoder_pos,
                       std::size_t scheme_pos);

DropResult evaluate_drop(const SweepConfig &config, std::uint64_t drop);

// Drops are evaluated in parallel; aggregation runs in drop order.
std::vector<DropResult> run_drops(const SweepConfig &config, unsigned threads = 0);
SweepResult aggregate(const SweepConfig &config, const std::vector<DropResult> &drops);
SweepResult run_sweep(const SweepConfig &config, unsigned threads = 0);

void write_sweep_csv(std::ostream &os, const SweepResult &result);

// Matplotlib script plotting symmetric SE against log-scale M, one panel per precoder.
void write_plot_script(std::ostream &os, const std::string &csv_path);

} // namespace pcdecode

#endif
