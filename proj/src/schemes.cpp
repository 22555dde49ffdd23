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

#include "pcdecode/schemes.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace pcdecode
{

std::string to_string(Scheme s)
{
    switch (s)
    {
    case Scheme::TIN:
        return "TIN";
    case Scheme::SD:
        return "SD";
    case Scheme::SND:
        return "SND";
    case Scheme::PD:
        return "PD";
    }
    return "?";
}

Scheme scheme_from_string(const std::string &s)
{
    for (Scheme c : {Scheme::TIN, Scheme::SD, Scheme::SND, Scheme::PD})
    {
        std::string name = to_string(c);
        std::string lower = name;
        std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char ch) { return std::tolower(ch); });
        if (s == name || s == lower)
            return c;
    }
    throw std::invalid_argument("Unknown scheme: " + s);
}

namespace
{

void require_two_cells(std::size_t L)
{
    if (L != 2)
        throw std::invalid_argument("This scheme is defined for L = 2 only.");
}

} // namespace

MiTerms2 mi_terms(const ReceiverPowers &powers)
{
    require_two_cells(powers.coherent.size());
    const std::size_t own = powers.receiver.cell, other = 1 - own;
    MiTerms2 t;
    t.receiver = powers.receiver;
    t.own_given_interferer = powers.conditional_bound(CellSet{own});
    t.interferer_given_own = powers.conditional_bound(CellSet{other});
    t.joint = powers.conditional_bound(CellSet{own, other});
    t.tin = tin_lb(powers);
    return t;
}

PdTerms pd_mi_terms(const ReceiverPowers &powers, const PdSplit &split)
{
    require_two_cells(powers.coherent.size());
    const std::size_t own = powers.receiver.cell, other = 1 - own;
    const double s_own = powers.coherent[own];
    const double s_int = powers.coherent[other];
    const double mu_own = split.for_cell(own);
    const double mu_int = split.for_cell(other);
    if (!(mu_own >= 0.0 && mu_own <= 1.0 && mu_int >= 0.0 && mu_int <= 1.0))
        throw std::invalid_argument("Power split fractions must lie in [0, 1].");

    const double denom = powers.noise + mu_int * s_int;
    const double inner_int = (1.0 - mu_int) * s_int;
    PdTerms t;
    t.a = gaussian_capacity(s_own / denom);
    t.b = gaussian_capacity(mu_own * s_own / denom);
    t.c = gaussian_capacity((s_own + inner_int) / denom);
    t.d = gaussian_capacity((mu_own * s_own + inner_int) / denom);
    return t;
}

double LinearBound::diagonal_limit() const
{
    const unsigned total = coef1 + coef2;
    if (total == 0)
        return bound >= 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
    return std::max(0.0, bound / static_cast<double>(total));
}

bool RateRegion2::contains(double r1, double r2) const
{
    if (r1 < 0.0 || r2 < 0.0)
        return false;
    return std::all_of(constraints.begin(), constraints.end(),
                       [&](const RateConstraint &c) { return c.satisfied(r1, r2); });
}

double RateRegion2::max_symmetric() const
{
    // Each constraint restricted to the diagonal is an interval [0, t]; with an
    // alternative it is the union of two such intervals.
    double r = std::numeric_limits<double>::infinity();
    for (const auto &c : constraints)
    {
        double t = c.primary.diagonal_limit();
        if (c.alternative)
            t = std::max(t, c.alternative->diagonal_limit());
        r = std::min(r, t);
    }
    return r;
}

RateRegion2 RateRegion2::intersect(const RateRegion2 &other) const
{
    RateRegion2 out = *this;
    out.constraints.insert(out.constraints.end(), other.constraints.begin(), other.constraints.end());
    return out;
}

namespace
{

// Bound on "own" and "interferer" coefficients mapped to network coordinates.
LinearBound oriented(std::size_t own_cell, unsigned own_coef, unsigned int_coef, double bound)
{
    return own_cell == 0 ? LinearBound{own_coef, int_coef, bound} : LinearBound{int_coef, own_coef, bound};
}

} // namespace

RateRegion2 tin_region(const ReceiverPowers &powers)
{
    RateRegion2 r;
    r.constraints.push_back({oriented(powers.receiver.cell, 1, 0, tin_lb(powers)), std::nullopt});
    return r;
}

RateRegion2 sd_region(const MiTerms2 &t)
{
    const std::size_t own = t.receiver.cell;
    RateRegion2 r;
    r.constraints.push_back({oriented(own, 1, 0, t.own_given_interferer), std::nullopt});
    r.constraints.push_back({oriented(own, 0, 1, t.interferer_given_own), std::nullopt});
    r.constraints.push_back({oriented(own, 1, 1, t.joint), std::nullopt});
    return r;
}

RateRegion2 snd_region(const MiTerms2 &t)
{
    // R_own + min{R_int, I_i|o} <= I_oi  <=>  R_own + R_int <= I_oi  or  R_own <= I_oi - I_i|o
    const std::size_t own = t.receiver.cell;
    RateRegion2 r;
    r.constraints.push_back({oriented(own, 1, 0, t.own_given_interferer), std::nullopt});
    r.constraints.push_back({oriented(own, 1, 1, t.joint), oriented(own, 1, 0, t.tin)});
    return r;
}

RateRegion2 pd_region(const PdTerms &x0, const PdTerms &x1)
{
    RateRegion2 r;
    auto add = [&r](unsigned c1, unsigned c2, double b) { r.constraints.push_back({{c1, c2, b}, std::nullopt}); };
    add(1, 0, x0.a);
    add(0, 1, x1.a);
    add(1, 1, x0.c + x1.b);
    add(1, 1, x1.c + x0.b);
    add(1, 1, x0.d + x1.d);
    add(2, 1, x0.c + x0.b + x1.d);
    add(1, 2, x1.c + x1.b + x0.d);
    return r;
}

double snd_symmetric(const MiTerms2 &t)
{
    // min(I_o|i, I_oi - min(I_i|o, I_oi / 2)) with I_oi - I_i|o written as the TIN rate
    return std::max(0.0, std::min(t.own_given_interferer, std::max(t.tin, 0.5 * t.joint)));
}

double pd_symmetric(const PdTerms &x0, const PdTerms &x1)
{
    return std::min({x0.a, x1.a, 0.5 * (x0.c + x1.b), 0.5 * (x1.c + x0.b), 0.5 * (x0.d + x1.d),
                     (x0.c + x0.b + x1.d) / 3.0, (x1.c + x1.b + x0.d) / 3.0});
}

PilotGroup pilot_group(const NetworkScenario &scenario, const EstimationStats &stats, std::size_t M,
                       Precoder precoder, std::size_t pilot)
{
    PilotGroup g;
    g.reserve(scenario.n_cells());
    for (std::size_t l = 0; l < scenario.n_cells(); ++l)
        g.push_back(receiver_powers(scenario, stats, M, precoder, UserRef{pilot, l}));
    return g;
}

double sym_rate_tin(const PilotGroup &group)
{
    double r = std::numeric_limits<double>::infinity();
    for (const auto &rp : group)
        r = std::min(r, tin_lb(rp));
    return r;
}

double sym_rate_sd(const PilotGroup &group)
{
    const std::size_t L = group.size();
    if (L < 2)
        throw std::invalid_argument("SD needs at least two cells.");
    const std::uint32_t full = CellSet::all(L).mask();
    double r = std::numeric_limits<double>::infinity();
    for (const auto &rp : group)
        for (std::uint32_t mask = 1; mask <= full; ++mask)
        {
            const CellSet omega(mask);
            r = std::min(r, rp.conditional_bound(omega) / static_cast<double>(omega.size()));
        }
    return r;
}

double sym_rate_snd(const PilotGroup &group)
{
    require_two_cells(group.size());
    return std::min(snd_symmetric(mi_terms(group[0])), snd_symmetric(mi_terms(group[1])));
}

PdResult sym_rate_pd(const PilotGroup &group, std::size_t grid)
{
    require_two_cells(group.size());
    if (grid < 2)
        throw std::invalid_argument("PD grid needs at least 2 points per axis.");

    const double step = 1.0 / static_cast<double>(grid - 1);
    auto mu_at = [&](std::size_t n) { return n + 1 == grid ? 1.0 : static_cast<double>(n) * step; };

    std::vector<double> values(grid * grid);
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t n1 = 0; n1 < grid; ++n1)
        for (std::size_t n2 = 0; n2 < grid; ++n2)
        {
            const PdSplit split{mu_at(n1), mu_at(n2)};
            const double v = pd_symmetric(pd_mi_terms(group[0], split), pd_mi_terms(group[1], split));
            values[n1 * grid + n2] = v;
            best = std::max(best, v);
        }

    // Near-ties resolved towards smaller mu1 + mu2, then smaller mu1.
    constexpr double tie_tol = 1e-12;
    std::size_t pick1 = grid, pick2 = grid;
    for (std::size_t n1 = 0; n1 < grid; ++n1)
        for (std::size_t n2 = 0; n2 < grid; ++n2)
        {
            if (values[n1 * grid + n2] < best - tie_tol)
                continue;
            if (pick1 == grid || n1 + n2 < pick1 + pick2 || (n1 + n2 == pick1 + pick2 && n1 < pick1))
            {
                pick1 = n1;
                pick2 = n2;
            }
        }

    return PdResult{values[pick1 * grid + pick2], PdSplit{mu_at(pick1), mu_at(pick2)}};
}

double sym_rate_tin(const NetworkScenario &scenario, const EstimationStats &stats, std::size_t M,
                    Precoder precoder, std::size_t pilot)
{
    return sym_rate_tin(pilot_group(scenario, stats, M, precoder, pilot));
}

double sym_rate_sd(const NetworkScenario &scenario, const EstimationStats &stats, std::size_t M,
                   Precoder precoder, std::size_t pilot)
{
    return sym_rate_sd(pilot_group(scenario, stats, M, precoder, pilot));
}

double sym_rate_snd(const NetworkScenario &scenario, const EstimationStats &stats, std::size_t M,
                    Precoder precoder, std::size_t pilot)
{
    require_two_cells(scenario.n_cells());
    return sym_rate_snd(pilot_group(scenario, stats, M, precoder, pilot));
}

PdResult sym_rate_pd(const NetworkScenario &scenario, const EstimationStats &stats, std::size_t M,
                     Precoder precoder, std::size_t pilot, std::size_t grid)
{
    require_two_cells(scenario.n_cells());
    return sym_rate_pd(pilot_group(scenario, stats, M, precoder, pilot), grid);
}

} // namespace pcdecode
