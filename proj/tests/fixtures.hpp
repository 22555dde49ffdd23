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
#ifndef PCDECODE_TEST_FIXTURES_HPP
#define PCDECODE_TEST_FIXTURES_HPP

#include "pcdecode/geometry.hpp"

#include <functional>

namespace fixtures
{

// Synthetic scenario with gains given by beta(j, k, l); positions are left empty.
inline pcdecode::NetworkScenario make_scenario(std::size_t L, std::size_t K,
                                               const std::function<double(std::size_t, std::size_t, std::size_t)> &beta,
                                               double rho_d, double rho_p)
{
    pcdecode::NetworkScenario s;
    s.beta = pcdecode::Tensor3(L, K, L);
    for (std::size_t j = 0; j < L; ++j)
        for (std::size_t k = 0; k < K; ++k)
            for (std::size_t l = 0; l < L; ++l)
                s.beta(j, k, l) = beta(j, k, l);
    s.rho_d = rho_d;
    s.rho_p = rho_p;
    return s;
}

// Two cells, own gain 1, cross gain x (same for every user).
inline pcdecode::NetworkScenario symmetric_pair(std::size_t K, double x, double rho_d, double rho_p)
{
    return make_scenario(2, K, [x](std::size_t j, std::size_t, std::size_t l) { return j == l ? 1.0 : x; }, rho_d,
                         rho_p);
}

} // namespace fixtures

#endif
