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

#ifndef PCDECODE_RATE_CORE_HPP
#define PCDECODE_RATE_CORE_HPP

#include "pcdecode/estimation.hpp"

#include <vector>

namespace pcdecode
{

// Thrown when the antenna count is too small for the requested precoder.
class DimensionError : public std::invalid_argument
{
  public:
    using std::invalid_argument::invalid_argument;
};

// Power normalization constants such that E[rho_d x_j^H x_j] / K = rho_d.
double lambda_mrt(const NetworkScenario &scenario, const EstimationStats &stats, std::size_t M, std::size_t j);
double lambda_zf(const NetworkScenario &scenario, const EstimationStats &stats, std::size_t M, std::size_t j);
double lambda_for(Precoder precoder, const NetworkScenario &scenario, const EstimationStats &stats,
                  std::size_t M, std::size_t j);

// Mean (deterministic) part of the effective scalar channel from each BS j towards one receiver.
struct EffectiveChannel
{
    UserRef receiver;
    Precoder precoder = Precoder::MRT;
    std::vector<double> theta;  // theta[j] > 0
    std::vector<double> lambda; // lambda[j]
};

EffectiveChannel effective_gain(const NetworkScenario &scenario, const EstimationStats &stats, std::size_t M,
                                Precoder precoder, UserRef receiver);

// Limit of theta_j / sqrt(M) for MRT as M grows (channel hardening coefficient).
double hardening_limit_coefficient(const NetworkScenario &scenario, const EstimationStats &stats, std::size_t j,
                                   UserRef receiver);

// Signal and effective-noise powers of the worst-case-noise lower bound for decode set omega.
// MRT: p2 gain uncertainty, p3 other-user interference, p4 = 1 unit noise.
// ZF:  p2 estimation-error leakage, p3 = 1 unit noise, p4 = 0.
struct PowerDecomposition
{
    double p1 = 0.0;
    double p2 = 0.0;
    double p3 = 0.0;
    double p4 = 0.0;
    CellSet omega;
    Precoder precoder = Precoder::MRT;

    double effective_noise() const { return p2 + p3 + p4; }
};

PowerDecomposition power_decomposition_mrt(const NetworkScenario &scenario, const EstimationStats &stats,
                                           std::size_t M, UserRef receiver, CellSet omega);
PowerDecomposition power_decomposition_zf(const NetworkScenario &scenario, const EstimationStats &stats,
                                          std::size_t M, UserRef receiver, CellSet omega);
PowerDecomposition power_decomposition(Precoder precoder, const NetworkScenario &scenario,
                                       const EstimationStats &stats, std::size_t M, UserRef receiver, CellSet omega);

// Single-sum form of the MRT gain-uncertainty power, M sum_j rho_d est_var(j,i,j) beta(j,i,l) / lambda_j.
double p2_mrt_compact(const NetworkScenario &scenario, const EstimationStats &stats, std::size_t M,
                      UserRef receiver);

// C(p1 / (p2 + p3 + p4)) in bits/s/Hz.
double c_lb(const PowerDecomposition &pd);

// Coherent powers S_j = theta_j^2 and the common effective noise N seen by one receiver.
// Every bound in the schemes module is a function of these.
struct ReceiverPowers
{
    UserRef receiver;
    std::vector<double> coherent;
    double noise = 1.0;

    // C(sum_{j in omega} S_j / N)
    double conditional_bound(CellSet omega) const;
};

ReceiverPowers receiver_powers(const NetworkScenario &scenario, const EstimationStats &stats, std::size_t M,
                               Precoder precoder, UserRef receiver);

// Treat-interference-as-noise bound C(S_l / (N + sum_{j != l} S_j)).
double tin_lb(const ReceiverPowers &powers);
double tin_lb(const NetworkScenario &scenario, const EstimationStats &stats, std::size_t M, Precoder precoder,
              UserRef receiver);

} // namespace pcdecode

#endif
