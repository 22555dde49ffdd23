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

#include "pcdecode/estimation.hpp"

#include <cmath>
#include <stdexcept>

namespace pcdecode
{

EstimationStats compute_alpha(const NetworkScenario &scenario)
{
    const std::size_t L = scenario.n_cells(), K = scenario.n_users();
    const double rho_p = scenario.rho_p;
    const double sq = std::sqrt(rho_p);

    EstimationStats st;
    st.rho_p = rho_p;
    st.alpha = Tensor3(L, K, L);
    st.est_var = Tensor3(L, K, L);
    st.err_var = Tensor3(L, K, L);
    for (std::size_t j = 0; j < L; ++j)
        for (std::size_t k = 0; k < K; ++k)
        {
            CompensatedSum total;
            for (std::size_t l = 0; l < L; ++l)
                total += scenario.beta(j, k, l);
            const double denom = 1.0 + rho_p * total.value();
            for (std::size_t l = 0; l < L; ++l)
            {
                const double b = scenario.beta(j, k, l);
                const double a = sq * b / denom;
                st.alpha(j, k, l) = a;
                st.est_var(j, k, l) = sq * b * a;
                st.err_var(j, k, l) = b * (1.0 - sq * a);
            }
        }
    return st;
}

void fill_complex_normal(Eigen::MatrixXcd &m, std::mt19937_64 &rng)
{
    std::normal_distribution<double> n(0.0, std::sqrt(0.5));
    for (Eigen::Index c = 0; c < m.cols(); ++c)
        for (Eigen::Index r = 0; r < m.rows(); ++r)
        {
            const double re = n(rng);
            const double im = n(rng);
            m(r, c) = {re, im};
        }
}

ChannelRealization sample_channels(const NetworkScenario &scenario, const EstimationStats &stats,
                                   std::size_t M, std::mt19937_64 &rng)
{
    const std::size_t L = scenario.n_cells(), K = scenario.n_users();
    if (M < K)
        throw std::invalid_argument("Antenna count M must be at least K.");

    const auto Mi = static_cast<Eigen::Index>(M);
    const auto Ki = static_cast<Eigen::Index>(K);
    const double sq = std::sqrt(stats.rho_p);

    ChannelRealization real;
    real.M = M;
    real.L = L;
    real.g.resize(L * L);
    for (std::size_t j = 0; j < L; ++j)
        for (std::size_t l = 0; l < L; ++l)
        {
            Eigen::MatrixXcd &G = real.g[j * L + l];
            G.resize(Mi, Ki);
            fill_complex_normal(G, rng);
            for (std::size_t k = 0; k < K; ++k)
                G.col(static_cast<Eigen::Index>(k)) *= std::sqrt(scenario.beta(j, k, l));
        }

    real.g_hat.resize(L);
    real.eps.resize(L);
    real.pilot_noise.resize(L);
    for (std::size_t j = 0; j < L; ++j)
    {
        Eigen::MatrixXcd &Z = real.pilot_noise[j];
        Z.resize(Mi, Ki);
        fill_complex_normal(Z, rng);

        // Received pilot observation for every pilot index at BS j.
        Eigen::MatrixXcd Y = Z;
        for (std::size_t l = 0; l < L; ++l)
            Y += sq * real.g[j * L + l];

        Eigen::MatrixXcd &Gh = real.g_hat[j];
        Gh.resize(Mi, Ki);
        for (std::size_t k = 0; k < K; ++k)
        {
            const auto kc = static_cast<Eigen::Index>(k);
            Gh.col(kc) = stats.alpha(j, k, j) * Y.col(kc);
        }
        real.eps[j] = real.g[j * L + j] - Gh;
    }
    return real;
}

Eigen::VectorXcd contaminated_estimate(const ChannelRealization &real, const EstimationStats &stats,
                                       std::size_t j, std::size_t i, std::size_t l)
{
    const double sq = std::sqrt(stats.rho_p);
    const auto ic = static_cast<Eigen::Index>(i);
    Eigen::VectorXcd y = real.pilot_noise[j].col(ic);
    for (std::size_t lp = 0; lp < real.L; ++lp)
        y += sq * real.G(j, lp).col(ic);
    return stats.alpha(j, i, l) * y;
}

} // namespace pcdecode
