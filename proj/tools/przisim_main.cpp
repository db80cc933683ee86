#include <omp.h>

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "przisim/experiments.hpp"
#include "przisim/rqa.hpp"

namespace fs = std::filesystem;
using namespace przisim;

namespace {

struct CommonArgs {
    std::string config;
    std::string out = ".";
    std::int64_t seed_override = -1;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("--config", args.config, "experiment config file")->required();
    cmd->add_option("--out", args.out, "output directory");
    cmd->add_option("--seed", args.seed_override, "override the config seed");
}

int cmd_session(const CommonArgs& args) {
    MarketConfig cfg = load_market_config(args.config);
    if (args.seed_override >= 0) cfg.seed = std::uint64_t(args.seed_override);
    LutCache cache;
    fs::create_directories(args.out);
    const auto runs = run_session_batch(cfg, cache, args.out);
    if (runs.size() >= 2) {
        const auto rel = relaxed_fraction_vs_profit(runs);
        write_relaxed_profit_csv(rel, args.out + "/relaxed_vs_profit.csv");
    }
    std::int64_t trades = 0;
    for (const auto& r : runs) trades += r.trades;
    std::cout << runs.size() << " run(s), " << trades << " trades total; outputs in "
              << args.out << "\n";
    return 0;
}

int cmd_landscape(const CommonArgs& args) {
    LandscapeConfig cfg = load_landscape_config(args.config);
    if (args.seed_override >= 0) cfg.market.seed = std::uint64_t(args.seed_override);
    LutCache cache;
    fs::create_directories(args.out);
    const auto result = run_landscape(cfg, cache);
    write_landscape_csv(result, args.out + "/landscape.csv");
    std::size_t best = 0;
    for (std::size_t i = 1; i < result.pps_mean.size(); ++i)
        if (result.pps_mean[i] > result.pps_mean[best]) best = i;
    std::cout << "landscape over " << result.s.size() << " strategy values, " << cfg.seeds
              << " seed(s); peak pps " << result.pps_mean[best] << " at s=" << result.s[best]
              << "; wrote " << args.out << "/landscape.csv\n";
    return 0;
}

int cmd_impact(const CommonArgs& args) {
    ImpactScenarioConfig cfg = load_impact_config(args.config);
    if (args.seed_override >= 0) cfg.seed = std::uint64_t(args.seed_override);
    LutCache cache;
    const auto result = run_impact_scenario(cfg, cache);
    write_impact_outputs(result, args.out);
    std::cout << "impact scenario: mean quote " << result.welch.mean_a << " -> "
              << result.welch.mean_b << " (welch t=" << result.welch.t << "); outputs in "
              << args.out << "\n";
    return 0;
}

int cmd_rqa(const CommonArgs& args) {
    RqaJobConfig cfg = load_rqa_config(args.config);
    fs::create_directories(args.out);
    const StrategyTrajectory traj = load_trajectory_csv(cfg.input);
    const double eps =
        cfg.eps > 0.0 ? cfg.eps : recurrence_radius(traj.dims(), cfg.component_tol);
    const RecurrencePlot rp = build_rp(traj, eps);
    const LineDistribution dist = vertical_line_distribution(rp);
    const auto tt = trapping_time(dist, cfg.v_min);

    export_rp_pgm(rp, cfg.downsample, args.out + "/rp.pgm");
    if (cfg.write_cells_csv) export_rp_csv(rp, cfg.downsample, args.out + "/rp_cells.csv");

    std::ofstream lines(args.out + "/line_distribution.csv");
    lines << "v,count\n";
    for (std::size_t v = 1; v < dist.count.size(); ++v)
        if (dist.count[v] > 0) lines << v << "," << dist.count[v] << "\n";

    std::ofstream stats(args.out + "/stats.txt");
    stats << "samples=" << traj.samples() << "\n";
    stats << "dims=" << traj.dims() << "\n";
    char tmp[64];
    std::snprintf(tmp, sizeof tmp, "%.6g", eps);
    stats << "eps=" << tmp << "\n";
    std::snprintf(tmp, sizeof tmp, "%.6g", phase_space_diameter(traj.dims()));
    stats << "diameter=" << tmp << "\n";
    stats << "v_min=" << cfg.v_min << "\n";
    stats << "shaded_cells=" << rp.shaded_cells() << "\n";
    std::snprintf(tmp, sizeof tmp, "%.6g",
                  double(rp.shaded_cells()) / (double(rp.size()) * double(rp.size())));
    stats << "recurrence_rate=" << tmp << "\n";
    if (tt) {
        std::snprintf(tmp, sizeof tmp, "%.6g", *tt);
        stats << "trapping_time=" << tmp << "\n";
    } else {
        stats << "trapping_time=undefined\n";
    }
    std::cout << "rqa: " << traj.samples() << "x" << traj.samples() << " plot, eps=" << eps
              << ", TT=" << (tt ? std::to_string(*tt) : std::string("undefined"))
              << "; outputs in " << args.out << "\n";
    return 0;
}

}  // namespace

struct PmfArgs {
    double s = 0.0;
    std::int64_t p_min = 60;
    std::int64_t p_max = 100;
    std::int64_t tick = 1;
    std::string side = "buyer";
    std::string out;
};

int cmd_pmf(const PmfArgs& args) {
    const Side side = (args.side == "seller" || args.side == "ask") ? Side::Ask : Side::Bid;
    const auto dist = build_distribution(args.s, args.p_min, args.p_max, args.tick, side);
    if (args.out.empty()) {
        dump_distribution_csv(dist, std::cout);
    } else {
        std::ofstream out(args.out);
        dump_distribution_csv(dist, out);
    }
    return 0;
}

int main(int argc, char** argv) {
    CLI::App app{"Continuous double auction simulator with parameterised-response traders"};
    app.require_subcommand(1);

    CommonArgs session_args, landscape_args, impact_args, rqa_args;
    add_common(app.add_subcommand("session", "run one or more market sessions"), session_args);
    add_common(app.add_subcommand("landscape", "map the strategy fitness landscape"),
               landscape_args);
    add_common(app.add_subcommand("impact-scenario", "scripted imbalance-injection scenario"),
               impact_args);
    add_common(app.add_subcommand("rqa", "recurrence analysis of a strategy trajectory"),
               rqa_args);

    PmfArgs pmf_args;
    auto* pmf = app.add_subcommand("pmf", "dump a quote-price table as (price, pmf, cdf) CSV");
    pmf->add_option("--s", pmf_args.s, "strategy value in [-1, 1]")->required();
    pmf->add_option("--pmin", pmf_args.p_min, "lower price bound");
    pmf->add_option("--pmax", pmf_args.p_max, "upper price bound");
    pmf->add_option("--tick", pmf_args.tick, "tick size");
    pmf->add_option("--side", pmf_args.side, "buyer|seller");
    pmf->add_option("--out", pmf_args.out, "output file (default stdout)");

    CLI11_PARSE(app, argc, argv);
    omp_set_num_threads(worker_count());

    try {
        if (app.got_subcommand("session")) return cmd_session(session_args);
        if (app.got_subcommand("landscape")) return cmd_landscape(landscape_args);
        if (app.got_subcommand("impact-scenario")) return cmd_impact(impact_args);
        if (app.got_subcommand("rqa")) return cmd_rqa(rqa_args);
        if (app.got_subcommand("pmf")) return cmd_pmf(pmf_args);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
