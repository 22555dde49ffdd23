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

#ifndef PCDECODE_MC_ORACLE_HPP
#define PCDECODE_MC_ORACLE_HPP

#include "pcdecode/rate_core.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace pcdecode
{

class RankDeficientError : public std::invalid_argument
{
  public:
    using std::invalid_argument::invalid_argument;
};

// Condition-number ceiling of the K x K Gram matrix accepted by zf_precoder.
inline constexpr double zf_condition_limit = 1e12;

// V = G (G^H G)^{-1}, so that V^H G = I_K.
Eigen::MatrixXcd zf_precoder(const Eigen::MatrixXcd &g_hat);

// Sample mean with a batch-means standard error.
struct Estimate
{
    double mean = 0.0;
    double std_err = 0.0;
};

struct EmpiricalMoments
{
    std::vector<Estimate> mean_gain;      // Re E[sqrt(rho_d/lambda_j) g_{jil}^H u_{jij}], per BS j
    std::vector<Estimate> mean_gain_imag; // imaginary part of the same, expected 0
    Estimate noise_var;                   // E|y - sum_j theta_j s_j[i]|^2
    std::vector<Estimate> power_per_user; // E[rho_d x_j^H x_j] / K, per BS j
    std::size_t trials = 0;
};

inline constexpr std::size_t oracle_batches = 10;
inline constexpr std::size_t oracle_min_trials = 1000;

// Simulates the downlink with actual precoders and i.i.d. CN(0,1) symbols and noise.
// Trials are split into oracle_batches batches, batch b seeded with derive_seed(seed, b);
// the result does not depend on `threads`.
EmpiricalMoments empirical_moments(const NetworkScenario &scenario, const EstimationStats &stats, std::size_t M,
                                   Precoder precoder, UserRef receiver, std::size_t trials, std::uint64_t seed,
                                   unsigned threads = 0);

struct HardeningRow
{
    std::size_t M = 0;
    double deviation = 0.0; // E|y/sqrt(M) - limit| / E|limit|
};

// MRT channel-hardening table; the symbol stream is shared across M.
std::vector<HardeningRow> hardening_check(const NetworkScenario &scenario, const EstimationStats &stats,
                                          const std::vector<std::size_t> &m_values, UserRef receiver,
                                          std::size_t trials, std::uint64_t seed);

struct VerificationRow
{
    std::string quantity;
    double closed_form = 0.0;
    double empirical = 0.0;
    double std_err = 0.0;
    double z_score = 0.0;
    bool pass = false;
};

inline constexpr double oracle_z_gate = 5.0;

VerificationRow make_row(std::string quantity, double closed_form, const Estimate &est);

// Compares every closed-form quantity of one (scenario, M, precoder, receiver, omega) against
// the Monte Carlo moments: theta_j, P1(omega), effective-noise variance and per-user power.
std::vector<VerificationRow> verify_receiver(const NetworkScenario &scenario, const EstimationStats &stats,
                                             std::size_t M, Precoder precoder, UserRef receiver, CellSet omega,
                                             std::size_t trials, std::uint64_t seed, const std::string &label,
                                             unsigned threads = 0);

struct VerifyOptions
{
    std::vector<std::size_t> m_values{64, 256};
    std::size_t combinations = 20;
    std::size_t trials = 10000;
    std::uint64_t seed = 7;
    unsigned threads = 0;
};

// Random (drop, receiver, omega, precoder, M) combinations drawn from `seed`.
std::vector<VerificationRow> run_verification(const ScenarioConfig &config, const VerifyOptions &options);

void write_verification_csv(std::ostream &os, const std::vector<VerificationRow> &rows);

} // namespace pcdecode

#endif
