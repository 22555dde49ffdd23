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

#ifndef PCDECODE_ESTIMATION_HPP
#define PCDECODE_ESTIMATION_HPP

#include "pcdecode/geometry.hpp"

#include <Eigen/Dense>

#include <complex>
#include <random>
#include <vector>

namespace pcdecode
{

// Per-link MMSE statistics under full pilot re-use.
//   alpha(j,k,l)   = sqrt(rho_p) beta(j,k,l) / (1 + rho_p sum_l' beta(j,k,l'))
//   est_var(j,k,l) = sqrt(rho_p) beta(j,k,l) alpha(j,k,l)   per-antenna variance of the estimate
//   err_var(j,k,l) = beta(j,k,l) (1 - sqrt(rho_p) alpha(j,k,l))
// All links that share pilot k at BS j share the denominator of alpha.
struct EstimationStats
{
    Tensor3 alpha;
    Tensor3 est_var;
    Tensor3 err_var;
    double rho_p = 0.0;

    // Variance of the own-cell estimate g_hat_{jkj}.
    double own_est_var(std::size_t j, std::size_t k) const { return est_var(j, k, j); }
};

EstimationStats compute_alpha(const NetworkScenario &scenario);

// One small-scale fading realization together with the pilot-phase quantities.
struct ChannelRealization
{
    std::size_t M = 0;
    std::size_t L = 0;
    // g[j * L + l] is the M x K matrix G_{jl} (column k = g_{jkl}).
    std::vector<Eigen::MatrixXcd> g;
    // Indexed by BS j, M x K each.
    std::vector<Eigen::MatrixXcd> g_hat;
    std::vector<Eigen::MatrixXcd> eps;
    std::vector<Eigen::MatrixXcd> pilot_noise;

    const Eigen::MatrixXcd &G(std::size_t j, std::size_t l) const { return g[j * L + l]; }
};

// Fills `m` with i.i.d. CN(0, 1) entries (real and imaginary parts each of variance 1/2).
void fill_complex_normal(Eigen::MatrixXcd &m, std::mt19937_64 &rng);

// Draws g = sqrt(beta) h, then builds the MMSE estimates from the shared pilot observation.
// Throws std::invalid_argument if M < K.
ChannelRealization sample_channels(const NetworkScenario &scenario, const EstimationStats &stats,
                                   std::size_t M, std::mt19937_64 &rng);

// MMSE estimate of the cross link g_{jil} at BS j, computed from the same pilot observation
// that produced g_hat_{jij}; collinear with it by construction.
Eigen::VectorXcd contaminated_estimate(const ChannelRealization &real, const EstimationStats &stats,
                                       std::size_t j, std::size_t i, std::size_t l);

} // namespace pcdecode

#endif
