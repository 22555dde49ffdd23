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

#include "pcdecode/rate_core.hpp"

#include <cmath>
#include <string>

namespace pcdecode
{

namespace
{

void check_receiver(const NetworkScenario &scenario, UserRef rx)
{
    if (rx.cell >= scenario.n_cells() || rx.pilot >= scenario.n_users())
        throw std::invalid_argument("Receiver index out of range.");
}

void check_zf_dimensions(std::size_t M, std::size_t K)
{
    if (M <= K)
        throw DimensionError("ZF requires M > K (M = " + std::to_string(M) + ", K = " + std::to_string(K) + ").");
}

void check_omega(const NetworkScenario &scenario, CellSet omega)
{
    if (!omega.is_subset_of(CellSet::all(scenario.n_cells())))
        throw std::invalid_argument("Decode set contains cells outside the network.");
}

} // namespace

double lambda_mrt(const NetworkScenario &scenario, const EstimationStats &stats, std::size_t M, std::size_t j)
{
    if (M < 1)
        throw DimensionError("MRT requires M >= 1.");
    const std::size_t K = scenario.n_users();
    CompensatedSum s;
    for (std::size_t k = 0; k < K; ++k)
        s += stats.own_est_var(j, k);
    return static_cast<double>(M) / static_cast<double>(K) * s.value();
}

double lambda_zf(const NetworkScenario &scenario, const EstimationStats &stats, std::size_t M, std::size_t j)
{
    const std::size_t K = scenario.n_users();
    check_zf_dimensions(M, K);
    CompensatedSum s;
    for (std::size_t k = 0; k < K; ++k)
        s += 1.0 / stats.own_est_var(j, k);
    return s.value() / (static_cast<double>(K) * static_cast<double>(M - K));
}

double lambda_for(Precoder precoder, const NetworkScenario &scenario, const EstimationStats &stats,
                  std::size_t M, std::size_t j)
{
    return precoder == Precoder::MRT ? lambda_mrt(scenario, stats, M, j) : lambda_zf(scenario, stats, M, j);
}

EffectiveChannel effective_gain(const NetworkScenario &scenario, const EstimationStats &stats, std::size_t M,
                                Precoder precoder, UserRef rx)
{
    check_receiver(scenario, rx);
    const std::size_t L = scenario.n_cells();
    const double rho_d = scenario.rho_d;
    const double sq = std::sqrt(stats.rho_p);
    const double m = static_cast<double>(M);
    const std::size_t i = rx.pilot, l = rx.cell;

    EffectiveChannel ec;
    ec.receiver = rx;
    ec.precoder = precoder;
    ec.theta.resize(L);
    ec.lambda.resize(L);
    for (std::size_t j = 0; j < L; ++j)
    {
        const double lam = lambda_for(precoder, scenario, stats, M, j);
        ec.lambda[j] = lam;
        if (precoder == Precoder::MRT)
            // E[g_{jil}^H g_hat_{jij}] = M sqrt(rho_p) beta_{jil} alpha_{jij}
            ec.theta[j] = std::sqrt(rho_d / lam) * m * sq * scenario.beta(j, i, l) * stats.alpha(j, i, j);
        else
            ec.theta[j] = std::sqrt(rho_d / lam) * (scenario.beta(j, i, l) / scenario.beta(j, i, j));
    }
    return ec;
}

double hardening_limit_coefficient(const NetworkScenario &scenario, const EstimationStats &stats, std::size_t j,
                                   UserRef rx)
{
    check_receiver(scenario, rx);
    const std::size_t K = scenario.n_users();
    CompensatedSum s;
    for (std::size_t k = 0; k < K; ++k)
        s += stats.own_est_var(j, k);
    return std::sqrt(static_cast<double>(K) * scenario.rho_d * stats.rho_p) * scenario.beta(j, rx.pilot, rx.cell) *
           stats.alpha(j, rx.pilot, j) / std::sqrt(s.value());
}

PowerDecomposition power_decomposition_mrt(const NetworkScenario &scenario, const EstimationStats &stats,
                                           std::size_t M, UserRef rx, CellSet omega)
{
    check_receiver(scenario, rx);
    check_omega(scenario, omega);
    const std::size_t L = scenario.n_cells(), K = scenario.n_users();
    const std::size_t i = rx.pilot, l = rx.cell;
    const double rho_d = scenario.rho_d, rho_p = stats.rho_p;
    const double sq = std::sqrt(rho_p);
    const double m = static_cast<double>(M);

    CompensatedSum p1, p2, p3;
    for (std::size_t j = 0; j < L; ++j)
    {
        const double lam = lambda_mrt(scenario, stats, M, j);
        const double b_il = scenario.beta(j, i, l);
        const double a_ij = stats.alpha(j, i, j);
        if (omega.contains(j))
            p1 += m * m * rho_d * rho_p * b_il * b_il * a_ij * a_ij / lam;

        // Variance of the collinear estimate term plus the error term.
        const double var_est = rho_p * b_il * b_il * a_ij * a_ij;
        const double var_err = b_il * (1.0 - sq * stats.alpha(j, i, l)) * stats.own_est_var(j, i);
        p2 += m * rho_d * (var_est + var_err) / lam;

        for (std::size_t k = 0; k < K; ++k)
            if (k != i)
                p3 += m * rho_d * stats.own_est_var(j, k) * b_il / lam;
    }

    PowerDecomposition pd;
    pd.p1 = p1.value();
    pd.p2 = p2.value();
    pd.p3 = p3.value();
    pd.p4 = 1.0;
    pd.omega = omega;
    pd.precoder = Precoder::MRT;
    return pd;
}

double p2_mrt_compact(const NetworkScenario &scenario, const EstimationStats &stats, std::size_t M, UserRef rx)
{
    check_receiver(scenario, rx);
    CompensatedSum p2;
    for (std::size_t j = 0; j < scenario.n_cells(); ++j)
        p2 += static_cast<double>(M) * scenario.rho_d * stats.own_est_var(j, rx.pilot) *
              scenario.beta(j, rx.pilot, rx.cell) / lambda_mrt(scenario, stats, M, j);
    return p2.value();
}

PowerDecomposition power_decomposition_zf(const NetworkScenario &scenario, const EstimationStats &stats,
                                          std::size_t M, UserRef rx, CellSet omega)
{
    check_receiver(scenario, rx);
    check_omega(scenario, omega);
    const std::size_t L = scenario.n_cells(), K = scenario.n_users();
    check_zf_dimensions(M, K);
    const std::size_t i = rx.pilot, l = rx.cell;
    const double rho_d = scenario.rho_d;
    const double dof = static_cast<double>(M - K);

    CompensatedSum p1, p2;
    for (std::size_t j = 0; j < L; ++j)
    {
        const double lam = lambda_zf(scenario, stats, M, j);
        const double ratio = scenario.beta(j, i, l) / scenario.beta(j, i, j);
        if (omega.contains(j))
            p1 += rho_d * ratio * ratio / lam;

        CompensatedSum leak;
        for (std::size_t k = 0; k < K; ++k)
            leak += stats.err_var(j, i, l) / (dof * stats.own_est_var(j, k));
        p2 += rho_d / lam * leak.value();
    }

    PowerDecomposition pd;
    pd.p1 = p1.value();
    pd.p2 = p2.value();
    pd.p3 = 1.0;
    pd.p4 = 0.0;
    pd.omega = omega;
    pd.precoder = Precoder::ZF;
    return pd;
}

PowerDecomposition power_decomposition(Precoder precoder, const NetworkScenario &scenario,
                                       const EstimationStats &stats, std::size_t M, UserRef rx, CellSet omega)
{
    return precoder == Precoder::MRT ? power_decomposition_mrt(scenario, stats, M, rx, omega)
                                     : power_decomposition_zf(scenario, stats, M, rx, omega);
}

double c_lb(const PowerDecomposition &pd)
{
    if (pd.p1 <= 0.0)
        return 0.0;
    return gaussian_capacity(pd.p1 / pd.effective_noise());
}

double ReceiverPowers::conditional_bound(CellSet omega) const
{
    CompensatedSum s;
    for (std::size_t j = 0; j < coherent.size(); ++j)
        if (omega.contains(j))
            s += coherent[j];
    return gaussian_capacity(s.value() / noise);
}

ReceiverPowers receiver_powers(const NetworkScenario &scenario, const EstimationStats &stats, std::size_t M,
                               Precoder precoder, UserRef rx)
{
    const EffectiveChannel ec = effective_gain(scenario, stats, M, precoder, rx);
    const PowerDecomposition pd = power_decomposition(precoder, scenario, stats, M, rx, CellSet{});

    ReceiverPowers rp;
    rp.receiver = rx;
    rp.coherent.resize(ec.theta.size());
    for (std::size_t j = 0; j < ec.theta.size(); ++j)
        rp.coherent[j] = ec.theta[j] * ec.theta[j];
    rp.noise = pd.effective_noise();
    return rp;
}

double tin_lb(const ReceiverPowers &powers)
{
    const std::size_t own = powers.receiver.cell;
    CompensatedSum interference;
    interference += powers.noise;
    for (std::size_t j = 0; j < powers.coherent.size(); ++j)
        if (j != own)
            interference += powers.coherent[j];
    return gaussian_capacity(powers.coherent[own] / interference.value());
}

double tin_lb(const NetworkScenario &scenario, const EstimationStats &stats, std::size_t M, Precoder precoder,
              UserRef rx)
{
    return tin_lb(receiver_powers(scenario, stats, M, precoder, rx));
}

} // namespace pcdecode
