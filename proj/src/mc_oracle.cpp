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

#include "pcdecode/mc_oracle.hpp"

#include "parallel.hpp"

#include <cmath>
#include <ostream>
#include <random>

namespace pcdecode
{

Eigen::MatrixXcd zf_precoder(const Eigen::MatrixXcd &g_hat)
{
    if (g_hat.cols() == 0 || g_hat.rows() < g_hat.cols())
        throw RankDeficientError("ZF precoding needs a tall estimate matrix (M >= K).");

    const Eigen::MatrixXcd gram = g_hat.adjoint() * g_hat;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(gram, Eigen::EigenvaluesOnly);
    const double lo = eig.eigenvalues().minCoeff();
    const double hi = eig.eigenvalues().maxCoeff();
    if (!(lo > 0.0) || hi / lo > zf_condition_limit)
        throw RankDeficientError("Estimated channel matrix is rank deficient (Gram condition number beyond limit).");

    const Eigen::LLT<Eigen::MatrixXcd> llt(gram);
    if (llt.info() != Eigen::Success)
        throw RankDeficientError("Cholesky factorization of the Gram matrix failed.");
    const Eigen::MatrixXcd identity = Eigen::MatrixXcd::Identity(gram.rows(), gram.cols());
    return g_hat * llt.solve(identity);
}

namespace
{

// Running sums for one batch.
struct BatchSums
{
    std::vector<CompensatedSum> gain_re, gain_im, power;
    CompensatedSum noise;
    std::size_t n = 0;
};

Estimate batch_estimate(const std::vector<double> &batch_means, const std::vector<std::size_t> &counts)
{
    double total = 0.0;
    CompensatedSum weighted;
    for (std::size_t b = 0; b < batch_means.size(); ++b)
    {
        weighted += batch_means[b] * static_cast<double>(counts[b]);
        total += static_cast<double>(counts[b]);
    }
    const double mean = weighted.value() / total;
    CompensatedSum ss;
    for (double m : batch_means)
        ss += (m - mean) * (m - mean);
    const double nb = static_cast<double>(batch_means.size());
    return Estimate{mean, std::sqrt(ss.value() / (nb - 1.0) / nb)};
}

} // namespace

EmpiricalMoments empirical_moments(const NetworkScenario &scenario, const EstimationStats &stats, std::size_t M,
                                   Precoder precoder, UserRef rx, std::size_t trials, std::uint64_t seed,
                                   unsigned threads)
{
    if (trials < oracle_min_trials)
        throw std::invalid_argument("empirical_moments needs at least 1000 trials.");
    const std::size_t L = scenario.n_cells(), K = scenario.n_users();
    if (rx.cell >= L || rx.pilot >= K)
        throw std::invalid_argument("Receiver index out of range.");

    const EffectiveChannel ec = effective_gain(scenario, stats, M, precoder, rx);
    const auto Ki = static_cast<Eigen::Index>(K);
    const auto ii = static_cast<Eigen::Index>(rx.pilot);

    std::vector<BatchSums> sums(oracle_batches);
    detail::parallel_for(oracle_batches, threads, [&](std::size_t b) {
        const std::size_t count = trials / oracle_batches + (b < trials % oracle_batches ? 1 : 0);
        std::mt19937_64 rng(derive_seed(seed, b));
        BatchSums &acc = sums[b];
        acc.gain_re.resize(L);
        acc.gain_im.resize(L);
        acc.power.resize(L);
        acc.n = count;

        Eigen::MatrixXcd symbols(Ki, 1), noise(1, 1);
        for (std::size_t t = 0; t < count; ++t)
        {
            const ChannelRealization real = sample_channels(scenario, stats, M, rng);
            std::complex<double> residual(0.0, 0.0);
            for (std::size_t j = 0; j < L; ++j)
            {
                const Eigen::MatrixXcd U = precoder == Precoder::MRT ? real.g_hat[j] : zf_precoder(real.g_hat[j]);
                const double scale = std::sqrt(scenario.rho_d / ec.lambda[j]);
                const Eigen::RowVectorXcd gains = scale * (real.G(j, rx.cell).col(ii).adjoint() * U);

                fill_complex_normal(symbols, rng);
                residual += (gains * symbols.col(0))(0) - ec.theta[j] * symbols(ii, 0);

                acc.gain_re[j] += gains(ii).real();
                acc.gain_im[j] += gains(ii).imag();
                const double tx_energy = (U * symbols.col(0)).squaredNorm() / ec.lambda[j];
                acc.power[j] += scenario.rho_d * tx_energy / static_cast<double>(K);
            }
            fill_complex_normal(noise, rng);
            residual += noise(0, 0);
            acc.noise += std::norm(residual);
        }
    });

    std::vector<std::size_t> counts(oracle_batches);
    for (std::size_t b = 0; b < oracle_batches; ++b)
        counts[b] = sums[b].n;
    auto collect = [&](auto getter) {
        std::vector<double> means(oracle_batches);
        for (std::size_t b = 0; b < oracle_batches; ++b)
            means[b] = getter(sums[b]) / static_cast<double>(sums[b].n);
        return batch_estimate(means, counts);
    };

    EmpiricalMoments out;
    out.trials = trials;
    for (std::size_t j = 0; j < L; ++j)
    {
        out.mean_gain.push_back(collect([j](const BatchSums &s) { return s.gain_re[j].value(); }));
        out.mean_gain_imag.push_back(collect([j](const BatchSums &s) { return s.gain_im[j].value(); }));
        out.power_per_user.push_back(collect([j](const BatchSums &s) { return s.power[j].value(); }));
    }
    out.noise_var = collect([](const BatchSums &s) { return s.noise.value(); });
    return out;
}

std::vector<HardeningRow> hardening_check(const NetworkScenario &scenario, const EstimationStats &stats,
                                          const std::vector<std::size_t> &m_values, UserRef rx,
                                          std::size_t trials, std::uint64_t seed)
{
    if (trials == 0)
        throw std::invalid_argument("hardening_check needs at least one trial.");
    if (!std::is_sorted(m_values.begin(), m_values.end()))
        throw std::invalid_argument("Antenna counts must be increasing.");
    const std::size_t L = scenario.n_cells(), K = scenario.n_users();
    if (rx.cell >= L || rx.pilot >= K)
        throw std::invalid_argument("Receiver index out of range.");
    const auto Ki = static_cast<Eigen::Index>(K);
    const auto ii = static_cast<Eigen::Index>(rx.pilot);

    std::vector<double> limit_coef(L);
    for (std::size_t j = 0; j < L; ++j)
        limit_coef[j] = hardening_limit_coefficient(scenario, stats, j, rx);

    std::vector<HardeningRow> rows;
    for (std::size_t M : m_values)
    {
        std::mt19937_64 channel_rng(derive_seed(seed, 2 * M));
        std::mt19937_64 symbol_rng(derive_seed(seed, 1));
        const double root_m = std::sqrt(static_cast<double>(M));
        CompensatedSum dev, ref;
        Eigen::MatrixXcd symbols(Ki, 1), noise(1, 1);
        for (std::size_t t = 0; t < trials; ++t)
        {
            const ChannelRealization real = sample_channels(scenario, stats, M, channel_rng);
            std::complex<double> y(0.0, 0.0), limit(0.0, 0.0);
            for (std::size_t j = 0; j < L; ++j)
            {
                fill_complex_normal(symbols, symbol_rng);
                const double scale = std::sqrt(scenario.rho_d / lambda_mrt(scenario, stats, M, j));
                y += scale * (real.G(j, rx.cell).col(ii).adjoint() * real.g_hat[j] * symbols.col(0))(0);
                limit += limit_coef[j] * symbols(ii, 0);
            }
            fill_complex_normal(noise, symbol_rng);
            y += noise(0, 0);
            dev += std::abs(y / root_m - limit);
            ref += std::abs(limit);
        }
        rows.push_back(HardeningRow{M, dev.value() / ref.value()});
    }
    return rows;
}

VerificationRow make_row(std::string quantity, double closed_form, const Estimate &est)
{
    VerificationRow row;
    row.quantity = std::move(quantity);
    row.closed_form = closed_form;
    row.empirical = est.mean;
    row.std_err = est.std_err;
    const double diff = est.mean - closed_form;
    row.z_score = est.std_err > 0.0 ? diff / est.std_err : (diff == 0.0 ? 0.0 : INFINITY);
    row.pass = std::abs(row.z_score) <= oracle_z_gate;
    return row;
}

std::vector<VerificationRow> verify_receiver(const NetworkScenario &scenario, const EstimationStats &stats,
                                             std::size_t M, Precoder precoder, UserRef rx, CellSet omega,
                                             std::size_t trials, std::uint64_t seed, const std::string &label,
                                             unsigned threads)
{
    const std::size_t L = scenario.n_cells();
    const EffectiveChannel ec = effective_gain(scenario, stats, M, precoder, rx);
    const PowerDecomposition pd = power_decomposition(precoder, scenario, stats, M, rx, omega);
    const EmpiricalMoments mom = empirical_moments(scenario, stats, M, precoder, rx, trials, seed, threads);

    std::vector<VerificationRow> rows;
    const std::string prefix = label.empty() ? std::string() : label + ";";
    for (std::size_t j = 0; j < L; ++j)
    {
        rows.push_back(make_row(prefix + "theta_bs" + std::to_string(j), ec.theta[j], mom.mean_gain[j]));
        rows.push_back(make_row(prefix + "theta_imag_bs" + std::to_string(j), 0.0, mom.mean_gain_imag[j]));
    }

    // Empirical signal power of the decode set from the sampled mean gains (delta-method error).
    double p1 = 0.0, p1_var = 0.0;
    for (std::size_t j = 0; j < L; ++j)
        if (omega.contains(j))
        {
            const Estimate &g = mom.mean_gain[j];
            p1 += g.mean * g.mean;
            p1_var += 4.0 * g.mean * g.mean * g.std_err * g.std_err;
        }
    rows.push_back(make_row(prefix + "p1", pd.p1, Estimate{p1, std::sqrt(p1_var)}));
    rows.push_back(make_row(prefix + "noise_var", pd.effective_noise(), mom.noise_var));
    for (std::size_t j = 0; j < L; ++j)
        rows.push_back(make_row(prefix + "power_per_user_bs" + std::to_string(j), scenario.rho_d,
                                mom.power_per_user[j]));
    return rows;
}

std::vector<VerificationRow> run_verification(const ScenarioConfig &config, const VerifyOptions &options)
{
    config.validate();
    if (options.m_values.empty())
        throw std::invalid_argument("Verification needs at least one antenna count.");

    std::mt19937_64 pick(options.seed);
    std::vector<VerificationRow> rows;
    for (std::size_t c = 0; c < options.combinations; ++c)
    {
        const std::uint64_t drop = pick() % config.n_drops;
        const std::size_t M = options.m_values[c % options.m_values.size()];
        const Precoder precoder = (pick() & 1u) ? Precoder::ZF : Precoder::MRT;
        const UserRef rx{static_cast<std::size_t>(pick() % config.K), static_cast<std::size_t>(pick() % config.L)};
        const std::uint32_t full = CellSet::all(config.L).mask();
        const CellSet omega(static_cast<std::uint32_t>(1 + pick() % full));

        const NetworkScenario scenario = make_drop(config, drop);
        const EstimationStats stats = compute_alpha(scenario);
        const std::string label = "combo=" + std::to_string(c) + ";drop=" + std::to_string(drop) +
                                  ";M=" + std::to_string(M) + ";" + to_string(precoder) + ";rx=" +
                                  std::to_string(rx.pilot) + "/" + std::to_string(rx.cell) + ";omega=" +
                                  std::to_string(omega.mask());
        auto part = verify_receiver(scenario, stats, M, precoder, rx, omega, options.trials,
                                    derive_seed(options.seed, 1000 + c), label, options.threads);
        rows.insert(rows.end(), part.begin(), part.end());
    }
    return rows;
}

void write_verification_csv(std::ostream &os, const std::vector<VerificationRow> &rows)
{
    os << "quantity,closed_form,empirical,std_err,z_score,pass\n";
    for (const auto &r : rows)
        os << r.quantity << ',' << format_number(r.closed_form) << ',' << format_number(r.empirical) << ','
           << format_number(r.std_err) << ',' << format_number(r.z_score) << ',' << (r.pass ? "true" : "false")
           << '\n';
}

} // namespace pcdecode
