// Acceptance suite: one line per criterion, exit nonzero if any fail.

#include <omp.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <random>
#include <sstream>
#include <vector>

#include "przisim/experiments.hpp"
#include "przisim/market_signals.hpp"
#include "przisim/rqa.hpp"

using namespace przisim;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(const char* pattern, ...) {
    char buf[512];
    va_list args;
    va_start(args, pattern);
    std::vsnprintf(buf, sizeof buf, pattern, args);
    va_end(args);
    return buf;
}

// ---- criterion 1: PMF normalization ---------------------------------------

Outcome criterion_normalization() {
    for (int i = -100; i <= 100; ++i) {
        const double s = i / 100.0;
        for (Side side : {Side::Bid, Side::Ask}) {
            const auto d = build_distribution(s, 60, 500, 1, side);
            double sum = 0.0;
            for (double p : d.pmf) sum += p;
            if (std::abs(sum - 1.0) >= 1e-9)
                return {false, fmt("pmf sum off by %.3g at s=%.2f", sum - 1.0, s)};
            if (d.cdf.back() != 1.0)
                return {false, fmt("cdf terminal %.17g at s=%.2f", d.cdf.back(), s)};
            for (std::size_t j = 1; j < d.cdf.size(); ++j)
                if (d.cdf[j] < d.cdf[j - 1])
                    return {false, fmt("cdf decreases at s=%.2f", s)};
        }
    }
    return {true, "201 strategy values x 2 sides over bounds (60,500)"};
}

// ---- criterion 2: anchor equivalences --------------------------------------

double ks_statistic(const std::map<Price, int>& fa, int na, const std::map<Price, int>& fb,
                    int nb) {
    double d = 0.0, ca = 0.0, cb = 0.0;
    auto ia = fa.begin();
    auto ib = fb.begin();
    while (ia != fa.end() || ib != fb.end()) {
        Price p;
        if (ia == fa.end()) p = ib->first;
        else if (ib == fb.end()) p = ia->first;
        else p = std::min(ia->first, ib->first);
        if (ia != fa.end() && ia->first == p) ca += double(ia++->second) / na;
        if (ib != fb.end() && ib->first == p) cb += double(ib++->second) / nb;
        d = std::max(d, std::abs(ca - cb));
    }
    return d;
}

Trader standalone(Side side, StrategyKind kind, Price limit, std::uint64_t seed, double s,
                  const MarketParams& params) {
    TraderSpec spec;
    spec.kind = kind;
    spec.fixed_s = s;
    Trader t(0, side, spec, params, seed);
    t.assign(limit);
    return t;
}

Outcome criterion_anchors() {
    MarketParams params;
    LutCache cache;
    const int n = 100000;
    const double d_crit = 1.6276236115189501 * std::sqrt(2.0 / n);  // alpha = 0.01

    // (a) s = 0 vs ZIC, buyer side (identical support [1, 100])
    {
        Trader przi = standalone(Side::Bid, StrategyKind::Przi, 100, 1001, 0.0, params);
        Trader zic = standalone(Side::Bid, StrategyKind::Zic, 100, 1002, 0.0, params);
        QuoteContext ctx;
        std::map<Price, int> fa, fb;
        for (int i = 0; i < n; ++i) {
            ++fa[*przi.quote_price(ctx, cache)];
            ++fb[*zic.quote_price(ctx, cache)];
        }
        const double d = ks_statistic(fa, n, fb, n);
        if (d >= d_crit) return {false, fmt("buyer KS %.5f >= %.5f", d, d_crit)};
    }
    // (a) seller side with the range estimate pinned to the system cap
    {
        Trader przi = standalone(Side::Ask, StrategyKind::Przi, 60, 1003, 0.0, params);
        przi.on_rival_quote(500);
        Trader zic = standalone(Side::Ask, StrategyKind::Zic, 60, 1004, 0.0, params);
        QuoteContext ctx;
        std::map<Price, int> fa, fb;
        for (int i = 0; i < n; ++i) {
            ++fa[*przi.quote_price(ctx, cache)];
            ++fb[*zic.quote_price(ctx, cache)];
        }
        const double d = ks_statistic(fa, n, fb, n);
        if (d >= d_crit) return {false, fmt("seller KS %.5f >= %.5f", d, d_crit)};
    }

    // (b) s = +1 vs GVWY: exact over 10^4 random assignments
    {
        Trader przi_b = standalone(Side::Bid, StrategyKind::Przi, 100, 1005, 1.0, params);
        Trader gvwy_b = standalone(Side::Bid, StrategyKind::Gvwy, 100, 1006, 0.0, params);
        Trader przi_a = standalone(Side::Ask, StrategyKind::Przi, 60, 1007, 1.0, params);
        Trader gvwy_a = standalone(Side::Ask, StrategyKind::Gvwy, 60, 1008, 0.0, params);
        std::mt19937_64 rng(1009);
        QuoteContext ctx;
        for (int i = 0; i < 10000; ++i) {
            const Price lb = Price(2 + std::int64_t(rng() % 499));
            const Price ls = Price(1 + std::int64_t(rng() % 400));
            przi_b.assign(lb);
            gvwy_b.assign(lb);
            przi_a.assign(ls);
            gvwy_a.assign(ls);
            if (*przi_b.quote_price(ctx, cache) != *gvwy_b.quote_price(ctx, cache))
                return {false, fmt("s=+1 buyer mismatch at limit %lld", (long long)lb)};
            if (*przi_a.quote_price(ctx, cache) != *gvwy_a.quote_price(ctx, cache))
                return {false, fmt("s=+1 seller mismatch at limit %lld", (long long)ls)};
        }
    }

    // (c) s = -1 vs SHVR: exact over 10^3 random book states. The shave
    // blend is defined off the rival best, so each side is tested across
    // states where its own side of the book is populated.
    {
        Trader przi_b = standalone(Side::Bid, StrategyKind::Przi, 100, 1010, -1.0, params);
        Trader shvr_b = standalone(Side::Bid, StrategyKind::Shvr, 100, 1011, 0.0, params);
        Trader przi_a = standalone(Side::Ask, StrategyKind::Przi, 60, 1012, -1.0, params);
        Trader shvr_a = standalone(Side::Ask, StrategyKind::Shvr, 60, 1013, 0.0, params);
        std::mt19937_64 rng(1014);
        for (int i = 0; i < 1000; ++i) {
            const Price bid = Price(1 + std::int64_t(rng() % 200));
            const Price ask = bid + 1 + std::int64_t(rng() % 300);
            QuoteContext bid_side;
            bid_side.top.bid = BookLevel{bid, std::int64_t(1 + rng() % 5)};
            if (rng() % 2) bid_side.top.ask = BookLevel{ask, std::int64_t(1 + rng() % 5)};
            if (*przi_b.quote_price(bid_side, cache) != *shvr_b.quote_price(bid_side, cache))
                return {false, "s=-1 buyer mismatch"};
            QuoteContext ask_side;
            ask_side.top.ask = BookLevel{ask, std::int64_t(1 + rng() % 5)};
            if (rng() % 2) ask_side.top.bid = BookLevel{bid, std::int64_t(1 + rng() % 5)};
            if (*przi_a.quote_price(ask_side, cache) != *shvr_a.quote_price(ask_side, cache))
                return {false, "s=-1 seller mismatch"};
        }
    }
    return {true, "KS below critical; +1/GVWY and -1/SHVR exact"};
}

// ---- criterion 3: spread-crossing worked examples ---------------------------

Outcome criterion_surplus() {
    LutCache cache;
    // seller limit 10, sale at 15 -> surplus 5
    {
        MarketConfig cfg;
        cfg.buyers = PopulationConfig{1, StrategyKind::Gvwy};
        cfg.sellers = PopulationConfig{1, StrategyKind::Gvwy};
        cfg.buyer_limit = 15;
        cfg.seller_limit = 10;
        Session s(cfg, cache, 1);
        s.submit_quote(Quote{0, Side::Bid, 15, 0.0, 0});
        const auto res = s.submit_quote(Quote{1, Side::Ask, 15, 0.0, 0});
        if (res.kind != MatchResult::Kind::Traded || res.trade->seller_surplus != 5)
            return {false, "seller surplus != 5"};
    }
    // buyer limit 10, purchase at 8 -> surplus 2
    {
        MarketConfig cfg;
        cfg.buyers = PopulationConfig{1, StrategyKind::Gvwy};
        cfg.sellers = PopulationConfig{1, StrategyKind::Gvwy};
        cfg.buyer_limit = 10;
        cfg.seller_limit = 8;
        Session s(cfg, cache, 1);
        s.submit_quote(Quote{1, Side::Ask, 8, 0.0, 0});
        const auto res = s.submit_quote(Quote{0, Side::Bid, 10, 0.0, 0});
        if (res.kind != MatchResult::Kind::Traded || res.trade->buyer_surplus != 2)
            return {false, "buyer surplus != 2"};
    }
    // GVWY buyer limit 10 vs standing ask 7 -> trade at 7, surplus 3
    {
        MarketConfig cfg;
        cfg.buyers = PopulationConfig{1, StrategyKind::Gvwy};
        cfg.sellers = PopulationConfig{1, StrategyKind::Gvwy};
        cfg.buyer_limit = 10;
        cfg.seller_limit = 7;
        Session s(cfg, cache, 1);
        s.submit_quote(Quote{1, Side::Ask, 7, 0.0, 0});
        const auto res = s.submit_quote(Quote{0, Side::Bid, 10, 0.0, 0});
        if (res.kind != MatchResult::Kind::Traded || res.trade->price != 7 ||
            res.trade->buyer_surplus != 3)
            return {false, "crossing trade not at 7 / surplus != 3"};
    }
    return {true, "surpluses 5, 2, 3 reproduced exactly"};
}

// ---- criterion 4: conservation ---------------------------------------------

Outcome criterion_conservation() {
    MarketConfig cfg;
    cfg.buyers = PopulationConfig{30, StrategyKind::Prsh};
    cfg.sellers = PopulationConfig{30, StrategyKind::Prsh};
    cfg.prsh.k = 4;
    cfg.prsh.eval_period_s = 300.0;
    cfg.prsh.genesis = GenesisMode::Uniform;
    cfg.duration_s = 3600.0;
    cfg.sample_interval_s = 60.0;
    cfg.seed = 4001;
    LutCache cache;
    Session session(cfg, cache, cfg.seed);
    session.run();

    if (session.trade_count() == 0) return {false, "no trades in one hour"};
    if (session.pi_total() != 40 * session.trade_count())
        return {false, "pi_total != 40 * trades"};
    const auto& series = session.series();
    if (series.time_s.size() != 60) return {false, "expected 60 samples"};
    for (std::size_t i = 0; i < series.time_s.size(); ++i) {
        if (series.pi_total[i] != series.pi_buyers[i] + series.pi_sellers[i])
            return {false, fmt("pi decomposition broken at sample %zu", i)};
        if (series.pi_total[i] != 40 * series.trades[i])
            return {false, fmt("conservation broken at sample %zu", i)};
    }
    return {true, fmt("%lld trades, pi_T = %lld = 40 x trades, all 60 samples consistent",
                      (long long)session.trade_count(), (long long)session.pi_total())};
}

// ---- criterion 5: micro-price ----------------------------------------------

Outcome criterion_microprice() {
    TopOfBook balanced;
    balanced.bid = BookLevel{10, 4};
    balanced.ask = BookLevel{12, 4};
    if (*micro_price(balanced) != *mid_price(balanced) || *micro_price(balanced) != 11.0)
        return {false, "balanced book micro != mid"};
    TopOfBook demand;
    demand.bid = BookLevel{10, 3};
    demand.ask = BookLevel{12, 1};
    if (*micro_price(demand) != 11.5) return {false, "expected 11.5"};
    TopOfBook supply;
    supply.bid = BookLevel{10, 1};
    supply.ask = BookLevel{12, 3};
    if (*micro_price(supply) != 10.5) return {false, "expected 10.5"};
    return {true, "balanced=mid, 11.5 and 10.5 exact"};
}

// ---- criterion 6: imbalance-impact response ---------------------------------

Outcome criterion_impact() {
    ImpactScenarioConfig cfg;
    cfg.bid_price = 100;
    cfg.ask_price = 110;
    cfg.bid_qty = 1;
    cfg.ask_qty = 1;
    cfg.buyer_limit = 150;
    cfg.gain = 4.0;
    cfg.timestep_s = 0.005;  // 200 quotes/s: 2000 quotes before the event
    cfg.duration_s = 20.0;
    cfg.seed = 6001;
    cfg.script.push_back(ImpactEvent{10.0, Side::Bid, +4});

    LutCache cache;
    const auto result = run_impact_scenario(cfg, cache, 1000);
    // one-sided Welch at alpha = 0.01; 2.3301 bounds t_{0.99} for df >= 999
    const double t_crit = 2.3301;
    const bool pass = result.welch.mean_b > result.welch.mean_a && result.welch.t > t_crit;
    return {pass, fmt("mean %.2f -> %.2f, welch t = %.1f (crit %.4f, df %.0f)",
                      result.welch.mean_a, result.welch.mean_b, result.welch.t, t_crit,
                      result.welch.df)};
}

// ---- criterion 7: landscape shape -------------------------------------------

LandscapeConfig desk_landscape() {
    LandscapeConfig cfg;
    cfg.adaptive_side = Side::Ask;
    cfg.grid_step = 0.1;
    cfg.eval_period_s = 600.0;
    cfg.seeds = 5;
    cfg.slack_s = 120.0;
    cfg.market.buyers = PopulationConfig{30, StrategyKind::Gvwy};
    cfg.market.sellers = PopulationConfig{30, StrategyKind::Gvwy};
    cfg.market.seed = 7001;
    return cfg;
}

Outcome criterion_landscape() {
    LutCache cache;
    const auto r = run_landscape(desk_landscape(), cache);
    std::size_t best = 0;
    for (std::size_t i = 1; i < r.pps_mean.size(); ++i)
        if (r.pps_mean[i] > r.pps_mean[best]) best = i;
    const double s_best = r.s[best];

    // local maximum on the grid at s <= -0.9: either the -1.0 end-point beats
    // its neighbour, or -0.9 beats both of its neighbours
    const bool local_relaxed = r.pps_mean[0] > r.pps_mean[1] ||
                               (r.pps_mean[1] > r.pps_mean[0] && r.pps_mean[1] > r.pps_mean[2]);
    const bool pass = s_best > 0.5 && local_relaxed;
    return {pass,
            fmt("global max at s=%.1f (pps %.2f) [%s]; relaxed end %.2f/%.2f/%.2f at "
                "-1/-0.9/-0.8 [local max %s]",
                s_best, r.pps_mean[best], s_best > 0.5 ? "ok" : "not > 0.5", r.pps_mean[0],
                r.pps_mean[1], r.pps_mean[2], local_relaxed ? "ok" : "absent")};
}

// ---- criterion 8: single-PRSH evolution (desk scale) ------------------------

MarketConfig evolution_config() {
    MarketConfig cfg;
    cfg.buyers = PopulationConfig{30, StrategyKind::Gvwy};
    cfg.sellers = PopulationConfig{30, StrategyKind::Gvwy};
    cfg.sellers.prsh_count = 1;
    cfg.prsh.k = 4;
    cfg.prsh.eval_period_s = 600.0;
    cfg.prsh.sigma = 0.01;
    cfg.prsh.genesis = GenesisMode::Constant;
    cfg.prsh.genesis_value = 0.0;
    cfg.duration_s = 3.0 * 86400.0;
    cfg.sample_interval_s = 3600.0;
    cfg.smoothing_window = 12;
    cfg.seed = 8001;
    return cfg;
}

Outcome criterion_evolution() {
    const MarketConfig cfg = evolution_config();
    const int n_seeds = 5;
    std::vector<double> terminal(n_seeds, 0.0);
    LutCache cache;
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < n_seeds; ++i) {
        MarketConfig run = cfg;
        run.seed = derive_seed(cfg.seed, std::uint64_t(i));
        Session session(run, cache, run.seed);
        session.run();
        const auto smoothed = smoothed_strategy(session.series(), cfg.smoothing_window);
        terminal[std::size_t(i)] = smoothed[30].back();  // the adapting seller
    }
    int in_band = 0;
    std::string detail = "terminal s-hat:";
    for (double t : terminal) {
        if (t >= 0.7 && t <= 1.0) ++in_band;
        detail += fmt(" %.3f", t);
    }
    detail += fmt(" -> %d/5 in [0.7, 1.0]", in_band);
    return {in_band >= 4, detail};
}

// ---- criterion 9: co-evolution (desk scale) ----------------------------------

Outcome criterion_coevolution() {
    MarketConfig cfg;
    cfg.buyers = PopulationConfig{30, StrategyKind::Prsh};
    cfg.sellers = PopulationConfig{30, StrategyKind::Prsh};
    cfg.prsh.k = 4;
    // Desk scaling: 5 simulated days instead of 30, and the evaluation
    // period scaled to 60 s so the population completes a comparable number
    // of adaptive steps within the shortened window (the full-scale period
    // is pinned only for the landscape and single-trader criteria).
    cfg.prsh.eval_period_s = 60.0;
    cfg.prsh.sigma = 0.01;
    cfg.prsh.genesis = GenesisMode::Constant;
    cfg.prsh.genesis_value = 0.0;
    cfg.duration_s = 5.0 * 86400.0;
    cfg.sample_interval_s = 3600.0;
    cfg.smoothing_window = 12;
    cfg.seed = 9001;
    LutCache cache;
    Session session(cfg, cache, cfg.seed);
    session.run();

    const auto smoothed = smoothed_strategy(session.series(), cfg.smoothing_window);
    std::vector<double> sellers;
    for (std::size_t i = 30; i < 60; ++i) sellers.push_back(smoothed[i].back());
    const double mean = mean_of(sellers);
    const auto hist = make_histogram(sellers, -1.0, 1.0, 0.1);
    const int cluster = dominant_cluster_count(hist);
    const bool unimodal = cluster * 3 >= int(sellers.size()) * 2;  // >= 2/3 in one cluster
    const bool pass = mean >= 0.4 && mean <= 0.95 && unimodal;
    return {pass, fmt("seller terminal s-hat mean %.3f, dominant cluster %d/30", mean, cluster)};
}

// ---- criterion 10: RQA correctness -------------------------------------------

Outcome criterion_rqa() {
    // the synthetic 13-state sequence
    const int seq[] = {0, 1, 2, 3, 0, 0, 0, 1, 2, 3, 4, 5, 4};
    StrategyTrajectory traj(1);
    for (int i = 0; i < 13; ++i) {
        const double v = seq[i] * 10.0;
        traj.append(double(i), std::span<const double>(&v, 1));
    }
    const auto rp = build_rp(traj, 1.0);
    const std::size_t vertical[][2] = {{0, 4}, {0, 5}, {0, 6}};
    const std::size_t diagonal[][2] = {{0, 6}, {1, 7}, {2, 8}, {3, 9}};
    for (const auto& c : vertical)
        if (!rp.at(c[0], c[1])) return {false, "vertical line cell missing"};
    for (const auto& c : diagonal)
        if (!rp.at(c[0], c[1])) return {false, "diagonal line cell missing"};
    for (std::size_t c = 0; c < 13; ++c)
        for (std::size_t r = 0; r < 13; ++r)
            if (rp.at(c, r) != (seq[c] == seq[r]))
                return {false, fmt("cell (%zu,%zu) disagrees with the state oracle", c, r)};

    // trapping time vs an independent brute-force scan, 1000 random matrices
    std::mt19937_64 rng(10001);
    for (int rep = 0; rep < 1000; ++rep) {
        const std::size_t n = 2 + rng() % 63;
        RecurrencePlot m(n);
        for (std::size_t c = 0; c < n; ++c)
            for (std::size_t r = 0; r < n; ++r)
                if (rng() % 3 == 0) m.set(c, r);

        long long lines = 0, weighted = 0;
        for (std::size_t c = 0; c < n; ++c) {
            std::size_t r = 0;
            while (r < n) {
                std::size_t len = 0;
                while (r < n && m.at(c, r)) ++len, ++r;
                if (len >= 2) ++lines, weighted += (long long)len;
                if (len == 0) ++r;
            }
        }
        const auto tt = trapping_time(vertical_line_distribution(m), 2);
        if (lines == 0) {
            if (tt.has_value()) return {false, "TT defined on a line-free matrix"};
        } else if (!tt.has_value() || *tt != double(weighted) / double(lines)) {
            return {false, fmt("TT mismatch on matrix %d", rep)};
        }
    }

    // radius arithmetic from the 60-trader session class
    const double eps = recurrence_radius(60, 0.05);
    const double diam = phase_space_diameter(60);
    if (std::abs(eps - 0.387) >= 5e-4) return {false, fmt("eps %.6f != 0.387", eps)};
    if (std::abs(diam - 15.492) >= 5e-4) return {false, fmt("diameter %.6f != 15.492", diam)};
    return {true, fmt("synthetic RP exact; 1000 TT oracle matches; eps %.3f diam %.3f", eps, diam)};
}

// ---- criterion 11: determinism and throughput --------------------------------

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Outcome criterion_determinism_performance() {
    // byte-identical outputs under one seed
    MarketConfig cfg;
    cfg.buyers = PopulationConfig{15, StrategyKind::Prsh};
    cfg.sellers = PopulationConfig{15, StrategyKind::Prsh};
    cfg.prsh.k = 4;
    cfg.prsh.eval_period_s = 120.0;
    cfg.prsh.genesis = GenesisMode::Uniform;
    cfg.duration_s = 1800.0;
    cfg.sample_interval_s = 300.0;
    cfg.seed = 11001;

    LutCache cache;
    const fs::path dir_a = fs::temp_directory_path() / "przisim_acc_a";
    const fs::path dir_b = fs::temp_directory_path() / "przisim_acc_b";
    fs::remove_all(dir_a);
    fs::remove_all(dir_b);
    run_session_experiment(cfg, cache, cfg.seed, dir_a.string());
    run_session_experiment(cfg, cache, cfg.seed, dir_b.string());
    for (const char* name : {"trade_tape.csv", "strategy_vector.csv", "s_hat.csv",
                             "profits.csv", "prsh_log.csv", "summary.txt"}) {
        const std::string a = slurp(dir_a / name), b = slurp(dir_b / name);
        if (a.empty() || a != b) return {false, fmt("%s differs between replays", name)};
    }
    fs::remove_all(dir_a);
    fs::remove_all(dir_b);

    // throughput: 60 traders, 60 Hz, one simulated day within two minutes
    MarketConfig day;
    day.buyers = PopulationConfig{30, StrategyKind::Prsh};
    day.sellers = PopulationConfig{30, StrategyKind::Prsh};
    day.prsh.k = 4;
    day.prsh.eval_period_s = 600.0;
    day.prsh.genesis = GenesisMode::Uniform;
    day.duration_s = 86400.0;
    day.sample_interval_s = 3600.0;
    day.seed = 11002;
    LutCache day_cache;
    Session session(day, day_cache, day.seed);
    const auto t0 = std::chrono::steady_clock::now();
    session.run();
    const double wall = seconds_since(t0);
    if (session.steps_done() != 5184000) return {false, "wrong step count for one day"};
    const bool pass = wall <= 120.0;
    return {pass, fmt("replays byte-identical; 1 simulated day in %.1f s (%lld trades)", wall,
                      (long long)session.trade_count())};
}

struct Criterion {
    int id;
    const char* label;
    double budget_s;
    Outcome (*fn)();
};

}  // namespace

int main() {
    const Criterion criteria[] = {
        {1, "PMF normalization", 5.0, criterion_normalization},
        {2, "anchor equivalences (ZIC/GVWY/SHVR)", 30.0, criterion_anchors},
        {3, "spread-crossing surplus examples", 60.0, criterion_surplus},
        {4, "box-schedule conservation", 60.0, criterion_conservation},
        {5, "micro-price worked cases", 60.0, criterion_microprice},
        {6, "imbalance impact response", 120.0, criterion_impact},
        {7, "fitness landscape shape", 600.0, criterion_landscape},
        {8, "single-PRSH evolution convergence", 1800.0, criterion_evolution},
        {9, "all-PRSH co-evolution", 3600.0, criterion_coevolution},
        {10, "RQA correctness", 60.0, criterion_rqa},
        {11, "determinism and throughput", 900.0, criterion_determinism_performance},
    };

    int failures = 0;
    for (const auto& c : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome out;
        try {
            out = c.fn();
        } catch (const std::exception& e) {
            out = {false, std::string("exception: ") + e.what()};
        }
        const double wall = seconds_since(t0);
        if (wall > c.budget_s) {
            out.pass = false;
            out.detail += fmt(" [exceeded %.0fs budget]", c.budget_s);
        }
        std::printf("[%s] criterion %2d: %s — %s (%.1fs)\n", out.pass ? "PASS" : "FAIL", c.id,
                    c.label, out.detail.c_str(), wall);
        std::fflush(stdout);
        if (!out.pass) ++failures;
    }
    if (failures) std::printf("%d criterion(s) failed\n", failures);
    else std::printf("all 11 criteria passed\n");
    return failures == 0 ? 0 : 1;
}
