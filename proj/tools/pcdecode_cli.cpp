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

#include "pcdecode/config_file.hpp"
#include "pcdecode/harness.hpp"
#include "pcdecode/mc_oracle.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

using namespace pcdecode;

namespace
{

struct CommonOptions
{
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::string out_path;
    unsigned threads = 0;
};

void add_common(CLI::App *cmd, CommonOptions &opt)
{
    cmd->add_option("--config", opt.config_path, "Key-value configuration file");
    cmd->add_option("--seed", opt.seed, "Master seed (overrides the config file)");
    cmd->add_option("--out", opt.out_path, "Output CSV path (default: stdout)");
    cmd->add_option("--threads", opt.threads, "Worker threads (0 = hardware concurrency)");
}

SweepConfig load(const CommonOptions &opt)
{
    SweepConfig cfg = opt.config_path.empty() ? SweepConfig{} : load_sweep_config(opt.config_path);
    if (opt.seed)
        cfg.scenario.seed = *opt.seed;
    return cfg;
}

template <typename Writer>
void emit(const std::string &path, Writer &&write)
{
    if (path.empty())
    {
        write(std::cout);
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("Cannot open output file: " + path);
    write(out);
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Downlink interference decoding under pilot contamination: symmetric-rate sweeps and "
                 "Monte Carlo verification"};
    app.require_subcommand(1);

    CommonOptions sweep_opt;
    bool plot_script = false;
    auto *sweep = app.add_subcommand("sweep", "Average symmetric SEs over random drops and write CSV");
    add_common(sweep, sweep_opt);
    sweep->add_flag("--plot-script", plot_script, "Also write a plotting script next to the CSV");

    CommonOptions verify_opt;
    VerifyOptions vopts;
    auto *verify = app.add_subcommand("verify", "Check closed-form quantities against Monte Carlo sampling");
    add_common(verify, verify_opt);
    verify->add_option("--trials", vopts.trials, "Monte Carlo trials per combination (>= 1000)");
    verify->add_option("--combos", vopts.combinations, "Number of random combinations");
    verify->add_option("--m-values", vopts.m_values, "Antenna counts to verify")->delimiter(',');

    CommonOptions scen_opt;
    std::uint64_t drop = 0;
    auto *scen = app.add_subcommand("scenario", "Dump the geometry and large-scale gains of one drop");
    add_common(scen, scen_opt);
    scen->add_option("--drop", drop, "Drop index");

    CLI11_PARSE(app, argc, argv);

    try
    {
        if (*sweep)
        {
            const SweepConfig cfg = load(sweep_opt);
            const SweepResult result = run_sweep(cfg, sweep_opt.threads);
            emit(sweep_opt.out_path, [&](std::ostream &os) { write_sweep_csv(os, result); });
            if (plot_script)
            {
                if (sweep_opt.out_path.empty())
                    throw std::invalid_argument("--plot-script requires --out.");
                std::filesystem::path script = sweep_opt.out_path;
                script.replace_extension(".plot.py");
                emit(script.string(), [&](std::ostream &os) {
                    write_plot_script(os, std::filesystem::path(sweep_opt.out_path).filename().string());
                });
            }
            return 0;
        }
        if (*verify)
        {
            const SweepConfig cfg = load(verify_opt);
            if (verify_opt.seed)
                vopts.seed = *verify_opt.seed;
            vopts.threads = verify_opt.threads;
            const auto rows = run_verification(cfg.scenario, vopts);
            emit(verify_opt.out_path, [&](std::ostream &os) { write_verification_csv(os, rows); });
            std::size_t failed = 0;
            for (const auto &r : rows)
                failed += r.pass ? 0 : 1;
            std::cerr << rows.size() - failed << "/" << rows.size() << " checks within " << oracle_z_gate
                      << " standard errors\n";
            return failed == 0 ? 0 : 1;
        }
        if (*scen)
        {
            const SweepConfig cfg = load(scen_opt);
            cfg.scenario.validate();
            const NetworkScenario s = make_drop(cfg.scenario, drop);
            emit(scen_opt.out_path, [&](std::ostream &os) { write_scenario_csv(os, s); });
            return 0;
        }
    }
    catch (const std::exception &e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
