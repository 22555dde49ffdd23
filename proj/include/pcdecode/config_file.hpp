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

#ifndef PCDECODE_CONFIG_FILE_HPP
#define PCDECODE_CONFIG_FILE_HPP

#include "pcdecode/harness.hpp"

#include <iosfwd>
#include <map>
#include <string>

namespace pcdecode
{

// Plain-text "key = value" pairs; '#' starts a comment. Duplicate keys are rejected.
std::map<std::string, std::string> parse_key_values(std::istream &is);

// Applies recognised keys on top of the defaults; unknown keys throw std::invalid_argument.
// Scenario keys are the ScenarioConfig field names. Sweep keys: m_values, schemes,
// precoders (comma separated), pilot_index, mu_grid.
SweepConfig sweep_config_from_map(const std::map<std::string, std::string> &kv);
SweepConfig load_sweep_config(const std::string &path);

} // namespace pcdecode

#endif
