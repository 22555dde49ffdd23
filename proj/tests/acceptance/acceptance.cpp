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
//
// Acceptance checks. Prints one PASS/FAIL line per criterion (with indented
// detail lines) and exits non-zero if any criterion fails.
//
//   acceptance [--cli <path to pcdecode>] [--workdir <dir>] [--only <n>]

#include "pcdecode/harness.hpp"
#include "pcdecode/mc_oracle.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace pcdecode;
namespace fs = std::filesystem;

namespace
{

// ---- pinned tolerances ----------------------------------------------------

constexpr double oracle_gate_sigma = 5.0;
constexpr std::size_t oracle_trials = 10000;
constexpr std::size_t oracle_combos = 20;

struct GainWindow
{
    std::size_t M;
    double lo, hi; // relative gain over TIN, as fractions
};

// MRT windows as stated; ZF windows are target * [0.5, 1.5].
const std::vector<GainWindow> mrt_snd_windows{{128, 0.04, 0.16}, {256, 0.05, 0.20}, {1024, 0.08, 0.34}};
const std::vector<GainWindow> mrt_pd_windows{{128, 0.15, 0.58}, {256, 0.18, 0.72}, {1024, 0.36, 1.44}};
const std::vector<GainWindow> zf_snd_windows{
    {128, 0.11 * 0.5, 0.11 * 1.5}, {256, 0.17 * 0.5, 0.17 * 1.5}, {1024, 0.34 * 0.5, 0.34 * 1.5}};
const std::vector<GainWindow> zf_pd_windows{
    {128, 0.96 * 0.5, 0.96 * 1.5}, {256, 1.08 * 0.5, 1.08 * 1.5}, {1024, 1.33 * 0.5, 1.33 * 1.5}};

constexpr double crossover_lo = 4e4;
constexpr double crossover_hi = 4e6;

constexpr double tin_flat_rel = 0.01;
constexpr double bits_per_doubling = 1.0;
constexpr double bits_per_doubling_tol = 0.05;
constexpr std::size_t doubling_base = std::size_t{1} << 18;
constexpr double pd_snd_rel = 0.05;

constexpr double zf_residual_max = 1e-9;
constexpr std::size_t snd_fixtures = 10000;
constexpr double snd_oracle_tol = 1e-9;
constexpr double p2_rel_tol = 1e-12;
constexpr double limit_rel_tol = 1e-12;

constexpr double sweep_seconds_max = 600.0;

// ---------------------------------------------------------------------------

struct Outcome
{
    bool pass = true;
    std::vector<std::string> details;

    void note(const std::string &s) { details.push_back(s); }
    void require(bool ok, const std::string &s)
    {
        pass = pass && ok;
        details.push_back(std::string(ok ? "ok   " : "FAIL ") + s);
    }
};

std::string fmt(double x, int prec = 4)
{
    std::ostringstream os;
    os.precision(prec);
    os << x;
    return os.str();
}

std::string pct(double x) { return fmt(100.0 * x, 4) + "%"; }

SweepConfig reference_sweep()
{
    SweepConfig c;
    c.m_values = {32, 64, 128, 256, 512, 1024};
    return c;
}

// Shared default sweep data (computed once).
struct ReferenceRun
{
    SweepConfig config = reference_sweep();
    std::vector<DropResult> drops;
    SweepResult result;
    double seconds = 0.0;
};

const ReferenceRun &reference_run()
{
    static const ReferenceRun run = [] {
        ReferenceRun r;
        const auto t0 = std::chrono::steady_clock::now();
        r.drops = run_drops(r.config);
        r.result = aggregate(r.config, r.drops);
        r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        return r;
    }();
    return run;
}

double mean_of(Scheme s, Precoder p, std::size_t M) { return reference_run().result.find(M, s, p).mean_se; }

// Mean symmetric SE over the default drops for a closed-form scheme at arbitrary M.
struct DropCache
{
    std::vector<NetworkScenario> scenarios;
    std::vector<EstimationStats> stats;
};

const DropCache &drop_cache()
{
    static const DropCache cache = [] {
        DropCache c;
        const ScenarioConfig sc;
        for (std::uint64_t d = 0; d < sc.n_drops; ++d)
        {
            c.scenarios.push_back(make_drop(sc, d));
            c.stats.push_back(compute_alpha(c.scenarios.back()));
        }
        return c;
    }();
    return cache;
}

double mean_closed_form(Scheme s, Precoder p, std::size_t M)
{
    const DropCache &c = drop_cache();
    CompensatedSum sum;
    for (std::size_t d = 0; d < c.scenarios.size(); ++d)
    {
        const PilotGroup g = pilot_group(c.scenarios[d], c.stats[d], M, p, 0);
        switch (s)
        {
        case Scheme::TIN: sum += sym_rate_tin(g); break;
        case Scheme::SD: sum += sym_rate_sd(g); break;
        case Scheme::SND: sum += sym_rate_snd(g); break;
        case Scheme::PD: sum += sym_rate_pd(g, 21).rate; break;
        }
    }
    return sum.value() / static_cast<double>(c.scenarios.size());
}

// ---- criteria -------------------------------------------------------------

Outcome oracle_equivalence()
{
    Outcome o;
    VerifyOptions opt;
    opt.m_values = {64, 256};
    opt.combinations = oracle_combos;
    opt.trials = oracle_trials;
    const auto rows = run_verification(ScenarioConfig{}, opt);
    std::size_t bad = 0;
    double worst = 0.0;
    std::string worst_name;
    for (const auto &r : rows)
    {
        if (std::abs(r.z_score) > oracle_gate_sigma)
        {
            ++bad;
            o.note("FAIL " + r.quantity + " z=" + fmt(r.z_score));
        }
        if (std::abs(r.z_score) > worst)
        {
            worst = std::abs(r.z_score);
            worst_name = r.quantity;
        }
    }
    o.require(bad == 0, std::to_string(rows.size() - bad) + "/" + std::to_string(rows.size()) +
                            " quantities within " + fmt(oracle_gate_sigma) + " SE; worst |z| = " + fmt(worst) +
                            " (" + worst_name + ")");
    return o;
}

void gain_checks(Outcome &o, Precoder p, Scheme s, const std::vector<GainWindow> &windows)
{
    for (const auto &w : windows)
    {
        const double tin = mean_of(Scheme::TIN, p, w.M);
        const double gain = (mean_of(s, p, w.M) - tin) / tin;
        o.require(gain >= w.lo && gain <= w.hi, to_string(s) + "/" + to_string(p) + " M=" + std::to_string(w.M) +
                                                    ": gain " + pct(gain) + " in [" + pct(w.lo) + ", " +
                                                    pct(w.hi) + "]");
    }
}

Outcome mrt_gains()
{
    Outcome o;
    gain_checks(o, Precoder::MRT, Scheme::SND, mrt_snd_windows);
    gain_checks(o, Precoder::MRT, Scheme::PD, mrt_pd_windows);
    return o;
}

Outcome zf_gains()
{
    Outcome o;
    gain_checks(o, Precoder::ZF, Scheme::SND, zf_snd_windows);
    gain_checks(o, Precoder::ZF, Scheme::PD, zf_pd_windows);
    return o;
}

Outcome orderings()
{
    Outcome o;
    const ReferenceRun &run = reference_run();
    const SweepConfig &c = run.config;
    std::size_t pd_tin = 0, snd_chain = 0, total = 0;
    for (const auto &d : run.drops)
        for (std::size_t m = 0; m < c.m_values.size(); ++m)
            for (std::size_t p = 0; p < c.precoders.size(); ++p)
            {
                const double tin = d.se[cell_index(c, m, p, 0)];
                const double sd = d.se[cell_index(c, m, p, 1)];
                const double snd = d.se[cell_index(c, m, p, 2)];
                const double pd = d.se[cell_index(c, m, p, 3)];
                ++total;
                pd_tin += pd >= tin ? 0 : 1;
                snd_chain += snd >= std::max(tin, sd) ? 0 : 1;
            }
    o.require(pd_tin == 0, "per drop PD >= TIN: " + std::to_string(pd_tin) + " violations of " +
                               std::to_string(total));
    o.require(snd_chain == 0, "per drop SND >= max(TIN, SD): " + std::to_string(snd_chain) + " violations of " +
                                  std::to_string(total));
    for (Precoder p : c.precoders)
        for (std::size_t M : c.m_values)
        {
            if (M < 128)
                continue;
            const double tin = mean_of(Scheme::TIN, p, M), snd = mean_of(Scheme::SND, p, M),
                         pd = mean_of(Scheme::PD, p, M);
            o.require(pd > snd && snd > tin, "means " + to_string(p) + " M=" + std::to_string(M) + ": PD " +
                                                 fmt(pd, 6) + " > SND " + fmt(snd, 6) + " > TIN " + fmt(tin, 6));
        }
    const double pd32 = mean_of(Scheme::PD, Precoder::MRT, 32), tin32 = mean_of(Scheme::TIN, Precoder::MRT, 32);
    o.require(pd32 > tin32, "means MRT M=32: PD " + fmt(pd32, 6) + " > TIN " + fmt(tin32, 6));
    return o;
}

std::vector<std::size_t> crossover_grid()
{
    std::vector<std::size_t> m;
    for (std::size_t v = 32; v <= (std::size_t{1} << 24); v *= 2)
        m.push_back(v);
    for (std::size_t v : default_m_values())
        m.push_back(v);
    for (std::size_t v : {4000000u, 10000000u})
        m.push_back(v);
    std::sort(m.begin(), m.end());
    m.erase(std::unique(m.begin(), m.end()), m.end());
    return m;
}

Outcome sd_crossover()
{
    Outcome o;
    std::size_t first = 0;
    double tin_at = 0.0, sd_at = 0.0;
    const auto grid = crossover_grid();
    for (std::size_t M : grid)
    {
        const double tin = mean_closed_form(Scheme::TIN, Precoder::ZF, M);
        const double sd = mean_closed_form(Scheme::SD, Precoder::ZF, M);
        if (sd > tin)
        {
            first = M;
            tin_at = tin;
            sd_at = sd;
            break;
        }
        tin_at = tin;
        sd_at = sd;
    }
    if (first == 0)
        o.require(false, "ZF: mean SD never exceeds mean TIN up to M=" + std::to_string(grid.back()) +
                             " (there: SD " + fmt(sd_at) + ", TIN " + fmt(tin_at) + ")");
    else
        o.require(first >= crossover_lo && first <= crossover_hi,
                  "ZF: first swept M with SD > TIN is " + std::to_string(first) + " (SD " + fmt(sd_at) +
                      ", TIN " + fmt(tin_at) + "); window [" + fmt(crossover_lo) + ", " + fmt(crossover_hi) + "]");
    return o;
}

Outcome asymptotics()
{
    Outcome o;
    for (Precoder p : {Precoder::MRT, Precoder::ZF})
    {
        const double a = mean_closed_form(Scheme::TIN, p, 1000000);
        const double b = mean_closed_form(Scheme::TIN, p, 10000000);
        const double rel = std::abs(b - a) / a;
        o.require(rel < tin_flat_rel, "TIN " + to_string(p) + " M=1e6 -> 1e7: " + fmt(a, 6) + " -> " + fmt(b, 6) +
                                          " (change " + pct(rel) + ", limit " + pct(tin_flat_rel) + ")");
    }

    // Per-receiver bounds used by SD and SND: I(own | int) and I(own, int).
    const DropCache &c = drop_cache();
    for (Precoder p : {Precoder::MRT, Precoder::ZF})
    {
        CompensatedSum own_gain, joint_gain;
        double worst = 0.0;
        std::size_t n = 0;
        for (std::size_t d = 0; d < c.scenarios.size(); ++d)
        {
            const PilotGroup g1 = pilot_group(c.scenarios[d], c.stats[d], doubling_base, p, 0);
            const PilotGroup g2 = pilot_group(c.scenarios[d], c.stats[d], 2 * doubling_base, p, 0);
            for (std::size_t l = 0; l < 2; ++l)
            {
                const MiTerms2 t1 = mi_terms(g1[l]), t2 = mi_terms(g2[l]);
                const double dg_own = t2.own_given_interferer - t1.own_given_interferer;
                const double dg_joint = t2.joint - t1.joint;
                own_gain += dg_own;
                joint_gain += dg_joint;
                worst = std::max({worst, std::abs(dg_own - 1.0), std::abs(dg_joint - 1.0)});
                ++n;
            }
        }
        const double mo = own_gain.value() / double(n), mj = joint_gain.value() / double(n);
        o.require(std::abs(mo - bits_per_doubling) <= bits_per_doubling_tol &&
                      std::abs(mj - bits_per_doubling) <= bits_per_doubling_tol,
                  to_string(p) + " M=2^18 -> 2^19: mean gain I(own|int) " + fmt(mo, 5) + " bit, I(own,int) " +
                      fmt(mj, 5) + " bit (largest single-receiver deviation " + fmt(worst, 3) + ")");
    }

    const double pd = mean_closed_form(Scheme::PD, Precoder::ZF, 1000000);
    const double snd = mean_closed_form(Scheme::SND, Precoder::ZF, 1000000);
    const double rel = std::abs(pd - snd) / snd;
    o.require(rel < pd_snd_rel, "ZF M=1e6: PD " + fmt(pd, 6) + " vs SND " + fmt(snd, 6) + " (difference " +
                                    pct(rel) + ", limit " + pct(pd_snd_rel) + ")");
    return o;
}

// Independent bisection for the symmetric non-unique-decoding rate of one receiver.
double snd_bisection(double own, double other, double joint)
{
    auto feasible = [&](double R) { return R <= own && (2.0 * R <= joint || R <= joint - other); };
    double lo = 0.0, hi = joint + 1.0;
    for (int n = 0; n < 200; ++n)
    {
        const double mid = 0.5 * (lo + hi);
        (feasible(mid) ? lo : hi) = mid;
    }
    return lo;
}

Outcome unit_identities()
{
    Outcome o;
    const DropCache &c = drop_cache();

    // ZF residual on sampled estimates.
    double residual = 0.0;
    std::mt19937_64 rng(derive_seed(2024, 0));
    for (std::size_t d = 0; d < 20; ++d)
        for (std::size_t M : {16u, 64u, 256u})
        {
            const ChannelRealization real = sample_channels(c.scenarios[d], c.stats[d], M, rng);
            for (const auto &gh : real.g_hat)
            {
                const Eigen::MatrixXcd V = zf_precoder(gh);
                const auto K = gh.cols();
                residual = std::max(residual,
                                    (V.adjoint() * gh - Eigen::MatrixXcd::Identity(K, K)).cwiseAbs().maxCoeff());
            }
        }
    o.require(residual < zf_residual_max, "ZF max residual " + fmt(residual, 3) + " < " + fmt(zf_residual_max));

    // SND closed form vs bisection on network fixtures.
    double snd_err = 0.0;
    std::size_t fixtures = 0;
    const std::size_t m_list[] = {16, 32, 128, 1024, 100000, 1000000};
    for (std::size_t d = 0; d < c.scenarios.size() && fixtures < snd_fixtures; ++d)
        for (std::size_t i = 0; i < 15 && fixtures < snd_fixtures; ++i)
            for (Precoder p : {Precoder::MRT, Precoder::ZF})
                for (std::size_t M : m_list)
                {
                    if (fixtures >= snd_fixtures)
                        break;
                    const PilotGroup g = pilot_group(c.scenarios[d], c.stats[d], M, p, i);
                    const MiTerms2 t0 = mi_terms(g[0]), t1 = mi_terms(g[1]);
                    const double oracle =
                        std::min(snd_bisection(t0.own_given_interferer, t0.interferer_given_own, t0.joint),
                                 snd_bisection(t1.own_given_interferer, t1.interferer_given_own, t1.joint));
                    snd_err = std::max(snd_err, std::abs(sym_rate_snd(g) - oracle));
                    ++fixtures;
                }
    o.require(fixtures == snd_fixtures && snd_err < snd_oracle_tol,
              "SND closed form vs bisection on " + std::to_string(fixtures) + " fixtures: max error " +
                  fmt(snd_err, 3) + " bit");

    // MRT interference: summed vs compact form; hardening limit.
    double p2_err = 0.0, lim_err = 0.0;
    for (std::size_t d = 0; d < c.scenarios.size(); ++d)
        for (std::size_t M : {32u, 1024u, 1000000u})
            for (std::size_t l = 0; l < 2; ++l)
                for (std::size_t i = 0; i < 15; ++i)
                {
                    const UserRef rx{i, l};
                    const double sum = power_decomposition_mrt(c.scenarios[d], c.stats[d], M, rx, CellSet{l}).p2;
                    const double compact = p2_mrt_compact(c.scenarios[d], c.stats[d], M, rx);
                    p2_err = std::max(p2_err, std::abs(sum - compact) / compact);
                    const EffectiveChannel ec = effective_gain(c.scenarios[d], c.stats[d], M, Precoder::MRT, rx);
                    for (std::size_t j = 0; j < 2; ++j)
                    {
                        const double lim = hardening_limit_coefficient(c.scenarios[d], c.stats[d], j, rx);
                        lim_err = std::max(lim_err, std::abs(ec.theta[j] / std::sqrt(double(M)) - lim) / lim);
                    }
                }
    o.require(p2_err <= p2_rel_tol, "MRT interference sum vs compact: max rel diff " + fmt(p2_err, 3));
    o.require(lim_err <= limit_rel_tol, "MRT theta/sqrt(M) vs limit coefficient: max rel diff " + fmt(lim_err, 3));
    return o;
}

std::string slurp(const fs::path &p)
{
    std::ifstream is(p, std::ios::binary);
    std::ostringstream os;
    os << is.rdbuf();
    return os.str();
}

Outcome reproducibility(const std::string &cli, const fs::path &workdir)
{
    Outcome o;
    const ReferenceRun &run = reference_run();
    o.note("in-process default sweep (150 drops, M <= 1024, both precoders, 21x21 grid): " +
           fmt(run.seconds, 3) + " s");

    if (cli.empty())
    {
        o.require(false, "no --cli given; cannot run the sweep command");
        return o;
    }
    fs::create_directories(workdir);
    const fs::path cfg = workdir / "reference.cfg";
    {
        std::ofstream os(cfg);
        os << "m_values = 32,64,128,256,512,1024\nschemes = TIN,SD,SND,PD\nprecoders = MRT,ZF\n"
              "n_drops = 150\nmu_grid = 21\n";
    }
    double slowest = 0.0;
    for (int n = 0; n < 2; ++n)
    {
        const fs::path out = workdir / ("run" + std::to_string(n) + ".csv");
        fs::remove(out);
        const std::string cmd = "\"" + cli + "\" sweep --config \"" + cfg.string() + "\" --out \"" + out.string() +
                                "\"" + (n == 1 ? " --threads 1" : "");
        const auto t0 = std::chrono::steady_clock::now();
        const int rc = std::system(cmd.c_str());
        slowest = std::max(slowest, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
        o.require(rc == 0, "sweep run " + std::to_string(n + 1) + " exit status " + std::to_string(rc));
    }
    const std::string a = slurp(workdir / "run0.csv"), b = slurp(workdir / "run1.csv");
    o.require(!a.empty() && a == b, "two sweep runs byte-identical (" + std::to_string(a.size()) + " bytes)");

    std::ostringstream mine;
    write_sweep_csv(mine, run.result);
    o.require(mine.str() == a, "CLI output equals in-process sweep");
    o.require(slowest < sweep_seconds_max, "slowest CLI default sweep " + fmt(slowest, 3) + " s < " +
                                               fmt(sweep_seconds_max) + " s");
    return o;
}

} // namespace

int main(int argc, char **argv)
{
    std::string cli;
    fs::path workdir = fs::temp_directory_path() / "pcdecode_acceptance";
    int only = 0;
    for (int n = 1; n < argc; ++n)
    {
        const std::string a = argv[n];
        if (a == "--cli" && n + 1 < argc)
            cli = argv[++n];
        else if (a == "--workdir" && n + 1 < argc)
            workdir = argv[++n];
        else if (a == "--only" && n + 1 < argc)
            only = std::atoi(argv[++n]);
        else
        {
            std::cerr << "usage: acceptance [--cli <pcdecode>] [--workdir <dir>] [--only <n>]\n";
            return 2;
        }
    }

    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"oracle equivalence (Monte Carlo vs closed forms, M in {64, 256})", oracle_equivalence},
        {"MRT gains of SND/PD over TIN", mrt_gains},
        {"ZF gains of SND/PD over TIN", zf_gains},
        {"scheme orderings (per drop and in means)", orderings},
        {"ZF SD/TIN crossover", sd_crossover},
        {"large-M asymptotics", asymptotics},
        {"unit identities", unit_identities},
        {"reproducibility and sweep runtime", [&] { return reproducibility(cli, workdir); }},
    };

    int failed = 0;
    for (std::size_t n = 0; n < criteria.size(); ++n)
    {
        if (only != 0 && static_cast<int>(n + 1) != only)
            continue;
        Outcome out;
        try
        {
            out = criteria[n].second();
        }
        catch (const std::exception &e)
        {
            out.require(false, std::string("exception: ") + e.what());
        }
        std::cout << (out.pass ? "PASS" : "FAIL") << "  criterion " << (n + 1) << ": " << criteria[n].first << '\n';
        for (const auto &d : out.details)
            std::cout << "        " << d << '\n';
        std::cout.flush();
        failed += out.pass ? 0 : 1;
    }
    std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criterion/criteria failed")
              << '\n';
    return failed == 0 ? 0 : 1;
}
