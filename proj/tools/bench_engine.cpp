// Copyright (c) 2026 The powmath developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.
//
// Benchmark of the parallel simulation engine against the serial reference.
// Both must produce byte-identical reports on the same config; the tool
// prints wall times and speedups. --smoke shrinks the workload so the run
// doubles as a fast regression check.

#include <powmath/io.hpp>
#include <powmath/simulator.hpp>
#include <powmath/strategies.hpp>

#include <chrono>
#include <cstring>
#include <iostream>
#include <string>

using namespace powmath;

namespace {

template <typename Fn>
SimulationReport timed(Fn&& fn, const char* name, double& out_ms)
{
    const auto t0 = std::chrono::steady_clock::now();
    SimulationReport report = fn();
    const auto t1 = std::chrono::steady_clock::now();
    out_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
    std::cout << name << ": " << out_ms << " ms\n";
    return report;
}

} // namespace

int main(int argc, char** argv)
{
    const bool smoke = argc > 1 && std::strcmp(argv[1], "--smoke") == 0;

    SimulationConfig cfg;
    cfg.params.q = 0.3;
    cfg.params.gamma = 0.5;
    StrategySpec spec;
    spec.kind = StrategyKind::SelfishMining;
    cfg.strategy = spec;
    cfg.cycles = smoke ? 20000 : 500000;
    cfg.trials = 8;
    cfg.difficulty_adjustment = true;
    cfg.adjustment_window = 2016;
    cfg.seed = 2026;

    std::cout << "workload: " << cfg.trials << " trials x " << cfg.cycles
              << " cycles, difficulty adjustment on\n";

    double ref_ms = 0.0;
    const SimulationReport ref = timed([&] { return run_reference(cfg); }, "reference", ref_ms);
    const std::string want = report_to_json(ref, cfg, 17).dump();

    bool ok = true;
    for (int threads : {1, 2, 4}) {
        double ms = 0.0;
        const std::string name = "parallel x" + std::to_string(threads);
        const SimulationReport rep =
            timed([&] { return run(cfg, threads); }, name.c_str(), ms);
        const bool same = report_to_json(rep, cfg, 17).dump() == want &&
                          rep.cycle_durations == ref.cycle_durations;
        ok &= same;
        std::cout << "  identical to reference: " << (same ? "yes" : "NO") << ", speedup "
                  << (ms > 0.0 ? ref_ms / ms : 0.0) << "x\n";
    }

    if (!ok) {
        std::cerr << "engines disagree\n";
        return 1;
    }
    return 0;
}
