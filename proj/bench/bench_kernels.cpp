// Timing harness: parallel recurrence-plot kernel vs the serial reference,
// plus raw session throughput.

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <random>

#include "przisim/experiments.hpp"
#include "przisim/rqa.hpp"

using namespace przisim;

namespace {

double wall_s(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

StrategyTrajectory random_trajectory(std::size_t n, std::size_t dims, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> step(-0.03, 0.03);
    std::vector<double> state(dims, 0.0);
    StrategyTrajectory traj(dims);
    for (std::size_t i = 0; i < n; ++i) {
        for (auto& x : state) x = std::clamp(x + step(rng), -1.0, 1.0);
        traj.append(double(i), state);
    }
    return traj;
}

}  // namespace

int main(int argc, char** argv) {
    const std::size_t n = argc > 1 ? std::size_t(std::atoll(argv[1])) : 2000;
    std::printf("threads: %d\n", omp_get_max_threads());

    const auto traj = random_trajectory(n, 60, 99);
    const double eps = recurrence_radius(60, 0.05);

    auto t0 = std::chrono::steady_clock::now();
    const auto serial = build_rp_serial(traj, eps);
    const double t_serial = wall_s(t0);

    t0 = std::chrono::steady_clock::now();
    const auto parallel = build_rp(traj, eps);
    const double t_parallel = wall_s(t0);

    std::printf("build_rp %zux%zu (60-dim): serial %.3fs, parallel %.3fs, speedup %.2fx, %s\n",
                n, n, t_serial, t_parallel, t_serial / t_parallel,
                serial == parallel ? "identical" : "MISMATCH");

    t0 = std::chrono::steady_clock::now();
    const auto dist = vertical_line_distribution(parallel);
    const auto tt = trapping_time(dist, 2);
    std::printf("line scan: %.3fs, TT=%s\n", wall_s(t0),
                tt ? std::to_string(*tt).c_str() : "undefined");

    // session throughput, the co-evolution population
    MarketConfig cfg;
    cfg.buyers = PopulationConfig{30, StrategyKind::Prsh};
    cfg.sellers = PopulationConfig{30, StrategyKind::Prsh};
    cfg.prsh.k = 4;
    cfg.prsh.eval_period_s = 600.0;
    cfg.prsh.genesis = GenesisMode::Uniform;
    cfg.duration_s = 1800.0;
    cfg.sample_interval_s = 600.0;
    cfg.seed = 5;
    LutCache cache;
    Session session(cfg, cache, cfg.seed);
    t0 = std::chrono::steady_clock::now();
    session.run();
    const double t_sim = wall_s(t0);
    std::printf("session: %lld steps in %.3fs (%.2fM steps/s, %lld trades, %zu luts)\n",
                (long long)session.steps_done(), t_sim,
                double(session.steps_done()) / t_sim / 1e6, (long long)session.trade_count(),
                cache.entries());
    return 0;
}
