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

#ifndef PCDECODE_SCHEMES_HPP
#define PCDECODE_SCHEMES_HPP

#include "pcdecode/rate_core.hpp"

#include <optional>
#include <string>
#include <vector>

namespace pcdecode
{

enum class Scheme
{
    TIN,
    SD,
    SND,
    PD
};

std::string to_string(Scheme s);
Scheme scheme_from_string(const std::string &s);

// Lower bounds on the three mutual-information terms of a 2-cell MAC at one receiver.
// "own" is the receiver's cell, "interferer" the other cell.
struct MiTerms2
{
    UserRef receiver;
    double own_given_interferer = 0.0; // I(y; s_own | s_int)
    double interferer_given_own = 0.0; // I(y; s_int | s_own)
    double joint = 0.0;                // I(y; s_own, s_int)
    // I(y; s_own) with interference as noise. Equal to joint - interferer_given_own,
    // but kept separately so that SND >= TIN holds bit-exactly.
    double tin = 0.0;
};

MiTerms2 mi_terms(const ReceiverPowers &powers);

// Outer-layer power fractions: mu[0] for cell 0, mu[1] for cell 1.
struct PdSplit
{
    double mu1 = 1.0;
    double mu2 = 1.0;

    double for_cell(std::size_t cell) const { return cell == 0 ? mu1 : mu2; }
};

// Layered-Gaussian bounds at one receiver, interferer outer layer treated as noise.
//   a = I(X_own; Y | U_int)        b = I(X_own; Y | U_own, U_int)
//   c = I(X_own, U_int; Y)         d = I(X_own, U_int; Y | U_own)
struct PdTerms
{
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;
    double d = 0.0;
};

PdTerms pd_mi_terms(const ReceiverPowers &powers, const PdSplit &split);

// One linear constraint coef1 R1 + coef2 R2 <= bound, in network coordinates (R1 = cell 0).
struct LinearBound
{
    unsigned coef1 = 0;
    unsigned coef2 = 0;
    double bound = 0.0;

    bool satisfied(double r1, double r2) const { return coef1 * r1 + coef2 * r2 <= bound; }
    // Largest R with (R, R) satisfying the bound.
    double diagonal_limit() const;
};

// A constraint holds if its primary bound holds or, when present, its alternative does.
// The alternative encodes min{.}-type constraints as a union of two half-planes.
struct RateConstraint
{
    LinearBound primary;
    std::optional<LinearBound> alternative;

    bool satisfied(double r1, double r2) const
    {
        return primary.satisfied(r1, r2) || (alternative && alternative->satisfied(r1, r2));
    }
};

// Two-user rate region, downward closed, as an intersection of constraints.
struct RateRegion2
{
    std::vector<RateConstraint> constraints;

    bool contains(double r1, double r2) const;
    double max_symmetric() const;
    RateRegion2 intersect(const RateRegion2 &other) const;
};

RateRegion2 tin_region(const ReceiverPowers &powers);
RateRegion2 sd_region(const MiTerms2 &terms);
RateRegion2 snd_region(const MiTerms2 &terms);
// rx0 are the terms at the cell-0 receiver, rx1 at the cell-1 receiver.
RateRegion2 pd_region(const PdTerms &rx0, const PdTerms &rx1);

// Diagonal point of the single-receiver SND region: min(I_o|i, I_oi - min(I_i|o, I_oi / 2)).
double snd_symmetric(const MiTerms2 &terms);
// Diagonal value of the 7-inequality PD region.
double pd_symmetric(const PdTerms &rx0, const PdTerms &rx1);

struct PdResult
{
    double rate = 0.0;
    PdSplit split;
};

// Precomputed per-receiver powers for one pilot-sharing user set (one entry per cell).
using PilotGroup = std::vector<ReceiverPowers>;

PilotGroup pilot_group(const NetworkScenario &scenario, const EstimationStats &stats, std::size_t M,
                       Precoder precoder, std::size_t pilot);

double sym_rate_tin(const PilotGroup &group);
double sym_rate_sd(const PilotGroup &group);
double sym_rate_snd(const PilotGroup &group);
// Exhaustive search over a grid x grid lattice of (mu1, mu2) in [0, 1]^2.
PdResult sym_rate_pd(const PilotGroup &group, std::size_t grid);

double sym_rate_tin(const NetworkScenario &scenario, const EstimationStats &stats, std::size_t M,
                    Precoder precoder, std::size_t pilot);
double sym_rate_sd(const NetworkScenario &scenario, const EstimationStats &stats, std::size_t M,
                   Precoder precoder, std::size_t pilot);
double sym_rate_snd(const NetworkScenario &scenario, const EstimationStats &stats, std::size_t M,
                    Precoder precoder, std::size_t pilot);
PdResult sym_rate_pd(const NetworkScenario &scenario, const EstimationStats &stats, std::size_t M,
                     Precoder precoder, std::size_t pilot, std::size_t grid = 21);

} // namespace pcdecode

#endif
