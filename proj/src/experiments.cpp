#include "przisim/experiments.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include "przisim/market_signals.hpp"

namespace przisim {

namespace fs = std::filesystem;

int worker_count() {
    if (const char* env = std::getenv("PRZISIM_WORKERS")) {
        const int n = std::atoi(env);
        if (n >= 1) return n;
    }
    return omp_get_max_threads();
}

std::vector<std::vector<double>> smoothed_strategy(const MetricsSeries& series, int window) {
    std::vector<std::vector<double>> out;
    if (series.strategy.empty()) return out;
    const std::size_t traders = series.strategy.front().size();
    const std::size_t samples = series.strategy.size();
    out.resize(traders);
    std::vector<double> column(samples);
    for (std::size_t tr = 0; tr < traders; ++tr) {
        for (std::size_t i = 0; i < samples; ++i) column[i] = series.strategy[i][tr];
        out[tr] = trailing_moving_average(column, window);
    }
    return out;
}

RunSummary summarize_run(const Session& session) {
    const MarketConfig& cfg = session.config();
    RunSummary s;
    s.seed = cfg.seed;
    s.trades = session.trade_count();
    s.pi_buyers = session.pi_buyers();
    s.pi_sellers = session.pi_sellers();
    s.pi_total = session.pi_total();
    s.n_buyers = session.buyer_count();

    const auto smoothed = smoothed_strategy(session.series(), cfg.smoothing_window);
    s.terminal_s.reserve(smoothed.size());
    int relaxed = 0;
    for (const auto& col : smoothed) {
        const double terminal = col.empty() ? 0.0 : col.back();
        s.terminal_s.push_back(terminal);
        if (terminal < 0.0) ++relaxed;
    }
    if (!smoothed.empty())
        s.relaxed_fraction = double(relaxed) / double(smoothed.size());

    // Per-sample extraction rate over the final window.
    const auto& series = session.series();
    if (series.time_s.size() >= 2) {
        const double t_end = series.time_s.back();
        const double window = std::min(cfg.resolved_final_window(), t_end);
        std::vector<double> rates;
        for (std::size_t i = 1; i < series.time_s.size(); ++i) {
            if (series.time_s[i] <= t_end - window + 1e-9) continue;
            const double dt = series.time_s[i] - series.time_s[i - 1];
            if (dt <= 0.0) continue;
            rates.push_back(double(series.pi_total[i] - series.pi_total[i - 1]) / dt);
        }
        s.profit_rate_mean = mean_of(rates);
        s.profit_rate_std = stddev_of(rates);
    }
    return s;
}

namespace {

void append_time(std::string& buf, double t) {
    char tmp[32];
    std::snprintf(tmp, sizeof tmp, "%.6f", t);
    buf += tmp;
}

void append_double(std::string& buf, double v) {
    char tmp[32];
    std::snprintf(tmp, sizeof tmp, "%.6g", v);
    buf += tmp;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    return out;
}

}  // namespace

void write_trade_tape_header(std::ostream& os) {
    os << "time_s,price,buyer_id,seller_id,buyer_surplus,seller_surplus\n";
}

void write_trade_tape_row(std::ostream& os, const Trade& t, const Session& session) {
    std::string line;
    append_time(line, t.time_s);
    char tmp[96];
    std::snprintf(tmp, sizeof tmp, ",%lld,%s,%s,%lld,%lld\n", static_cast<long long>(t.price),
                  session.traders()[std::size_t(t.buyer)].name().c_str(),
                  session.traders()[std::size_t(t.seller)].name().c_str(),
                  static_cast<long long>(t.buyer_surplus),
                  static_cast<long long>(t.seller_surplus));
    line += tmp;
    os << line;
}

namespace {
void write_matrix_csv(const MetricsSeries& series,
                      const std::vector<std::vector<double>>* columns,
                      const std::string& path) {
    auto out = open_out(path);
    std::string header = "time_h";
    const std::size_t traders = series.strategy.empty() ? 0 : series.strategy.front().size();
    for (std::size_t i = 0; i < traders; ++i) header += ",s_" + std::to_string(i);
    out << header << "\n";
    for (std::size_t row = 0; row < series.time_s.size(); ++row) {
        std::string line;
        append_double(line, series.time_s[row] / 3600.0);
        for (std::size_t tr = 0; tr < traders; ++tr) {
            line += ",";
            append_double(line, columns ? (*columns)[tr][row] : series.strategy[row][tr]);
        }
        line += "\n";
        out << line;
    }
}
}  // namespace

void write_strategy_csv(const MetricsSeries& series, const std::string& path) {
    write_matrix_csv(series, nullptr, path);
}

void write_shat_csv(const MetricsSeries& series, int window, const std::string& path) {
    const auto smoothed = smoothed_strategy(series, window);
    write_matrix_csv(series, &smoothed, path);
}

void write_profits_csv(const MetricsSeries& series, const std::string& path) {
    auto out = open_out(path);
    out << "time_s,pi_buyers,pi_sellers,pi_total,trades,alpha_pct\n";
    for (std::size_t i = 0; i < series.time_s.size(); ++i) {
        std::string line;
        append_time(line, series.time_s[i]);
        char tmp[128];
        std::snprintf(tmp, sizeof tmp, ",%lld,%lld,%lld,%lld,",
                      static_cast<long long>(series.pi_buyers[i]),
                      static_cast<long long>(series.pi_sellers[i]),
                      static_cast<long long>(series.pi_total[i]),
                      static_cast<long long>(series.trades[i]));
        line += tmp;
        if (std::isnan(series.alpha_pct[i])) line += "nan";
        else append_double(line, series.alpha_pct[i]);
        line += "\n";
        out << line;
    }
}

void write_prsh_log_csv(const std::vector<PrshLogRow>& rows, const Session& session,
                        const std::string& path) {
    auto out = open_out(path);
    out << "time_s,trader_id,active_s,elite_s,pps\n";
    for (const auto& r : rows) {
        std::string line;
        append_time(line, r.time_s);
        line += "," + session.traders()[std::size_t(r.trader)].name() + ",";
        append_double(line, r.active_s);
        line += ",";
        append_double(line, r.elite_s);
        line += ",";
        append_double(line, r.elite_pps);
        line += "\n";
        out << line;
    }
}

void write_run_summary(const RunSummary& s, const MarketConfig& cfg, const std::string& path) {
    auto out = open_out(path);
    out << "seed=" << s.seed << "\n";
    out << "buyers=" << cfg.buyers.count << "\n";
    out << "sellers=" << cfg.sellers.count << "\n";
    char dur[32];
    std::snprintf(dur, sizeof dur, "%.6g", cfg.duration_s);
    out << "duration_s=" << dur << "\n";
    out << "trades=" << s.trades << "\n";
    out << "pi_buyers=" << s.pi_buyers << "\n";
    out << "pi_sellers=" << s.pi_sellers << "\n";
    out << "pi_total=" << s.pi_total << "\n";
    char tmp[64];
    std::snprintf(tmp, sizeof tmp, "%.6g", s.relaxed_fraction);
    out << "relaxed_fraction=" << tmp << "\n";
    std::snprintf(tmp, sizeof tmp, "%.6g", s.profit_rate_mean);
    out << "profit_rate_mean=" << tmp << "\n";
    std::snprintf(tmp, sizeof tmp, "%.6g", s.profit_rate_std);
    out << "profit_rate_std=" << tmp << "\n";

    const auto side_stats = [&](std::size_t begin, std::size_t end, const char* label) {
        if (end <= begin || s.terminal_s.size() < end) return;
        std::span<const double> vals(s.terminal_s.data() + begin, end - begin);
        std::snprintf(tmp, sizeof tmp, "%.6g", mean_of(vals));
        out << label << "_terminal_mean=" << tmp << "\n";
        std::snprintf(tmp, sizeof tmp, "%.6g", stddev_of(vals));
        out << label << "_terminal_std=" << tmp << "\n";
        const Histogram h = make_histogram(vals, -1.0, 1.0, cfg.hist_bin_width);
        out << label << "_terminal_hist=";
        for (std::size_t i = 0; i < h.bins.size(); ++i)
            out << (i ? "," : "") << h.bins[i];
        out << "\n";
        out << label << "_dominant_cluster=" << dominant_cluster_count(h) << "\n";
    };
    side_stats(0, std::size_t(s.n_buyers), "buyers");
    side_stats(std::size_t(s.n_buyers), s.terminal_s.size(), "sellers");
}

RunSummary run_session_experiment(const MarketConfig& cfg, LutCache& cache, std::uint64_t seed,
                                  const std::string& out_dir) {
    MarketConfig run_cfg = cfg;
    run_cfg.seed = seed;
    Session session(run_cfg, cache, seed);

    std::ofstream tape;
    if (!out_dir.empty()) {
        fs::create_directories(out_dir);
        if (cfg.write_trade_tape) {
            tape = open_out(out_dir + "/trade_tape.csv");
            write_trade_tape_header(tape);
            session.set_trade_sink(
                [&tape, &session](const Trade& t) { write_trade_tape_row(tape, t, session); });
        }
    }
    session.run();

    RunSummary summary = summarize_run(session);
    if (!out_dir.empty()) {
        write_strategy_csv(session.series(), out_dir + "/strategy_vector.csv");
        write_shat_csv(session.series(), cfg.smoothing_window, out_dir + "/s_hat.csv");
        write_profits_csv(session.series(), out_dir + "/profits.csv");
        write_prsh_log_csv(session.prsh_log(), session, out_dir + "/prsh_log.csv");
        write_run_summary(summary, cfg, out_dir + "/summary.txt");
    }
    return summary;
}

std::vector<RunSummary> run_session_batch(const MarketConfig& cfg, LutCache& cache,
                                          const std::string& out_dir) {
    std::vector<RunSummary> out(std::size_t(cfg.runs));
    const int workers = std::min(worker_count(), cfg.runs);
#pragma omp parallel for schedule(dynamic) num_threads(workers)
    for (int i = 0; i < cfg.runs; ++i) {
        const std::uint64_t seed = cfg.runs == 1 ? cfg.seed : derive_seed(cfg.seed, std::uint64_t(i));
        std::string dir;
        if (!out_dir.empty())
            dir = cfg.runs == 1 ? out_dir : out_dir + "/run_" + std::to_string(i);
        out[std::size_t(i)] = run_session_experiment(cfg, cache, seed, dir);
    }
    return out;
}

LandscapeResult run_landscape(const LandscapeConfig& cfg, LutCache& cache) {
    const int k = cfg.grid_points();
    MarketConfig base = cfg.market;
    base.prsh.k = k;
    base.prsh.eval_period_s = cfg.eval_period_s;
    base.prsh.genesis = GenesisMode::Grid;
    base.prsh.freeze_after_first_cycle = true;
    if (cfg.adaptive_side == Side::Ask) {
        base.sellers.prsh_count = 1;
        base.buyers.prsh_count = 0;
    } else {
        base.buyers.prsh_count = 1;
        base.sellers.prsh_count = 0;
    }
    base.duration_s = double(k) * cfg.eval_period_s + cfg.slack_s;
    base.sample_interval_s = base.duration_s;  // samples are irrelevant here

    LandscapeResult result;
    result.s.resize(std::size_t(k));
    for (int i = 0; i < k; ++i) result.s[std::size_t(i)] = 2.0 * i / double(k - 1) - 1.0;
    result.pps_by_seed.assign(std::size_t(cfg.seeds), std::vector<double>(std::size_t(k), 0.0));

    const int adaptive_index =
        cfg.adaptive_side == Side::Ask ? base.buyers.count : 0;
    const int workers = std::min(worker_count(), cfg.seeds);
#pragma omp parallel for schedule(dynamic) num_threads(workers)
    for (int seed_i = 0; seed_i < cfg.seeds; ++seed_i) {
        Session session(base, cache, derive_seed(base.seed, std::uint64_t(seed_i)));
        session.run();
        const PrshState* st = session.traders()[std::size_t(adaptive_index)].prsh();
        if (!st || !st->frozen())
            throw std::logic_error("landscape session ended before the grid was evaluated");
        for (int g = 0; g < k; ++g)
            result.pps_by_seed[std::size_t(seed_i)][std::size_t(g)] =
                st->slots()[std::size_t(g)].pps();
    }

    result.pps_mean.assign(std::size_t(k), 0.0);
    for (const auto& row : result.pps_by_seed)
        for (int g = 0; g < k; ++g) result.pps_mean[std::size_t(g)] += row[std::size_t(g)];
    for (auto& v : result.pps_mean) v /= double(cfg.seeds);
    return result;
}

void write_landscape_csv(const LandscapeResult& r, const std::string& path) {
    auto out = open_out(path);
    std::string header = "s,pps";
    for (std::size_t i = 0; i < r.pps_by_seed.size(); ++i)
        header += ",pps_seed" + std::to_string(i);
    out << header << "\n";
    for (std::size_t g = 0; g < r.s.size(); ++g) {
        std::string line;
        append_double(line, r.s[g]);
        line += ",";
        append_double(line, r.pps_mean[g]);
        for (const auto& row : r.pps_by_seed) {
            line += ",";
            append_double(line, row[g]);
        }
        line += "\n";
        out << line;
    }
}

ImpactResult run_impact_scenario(const ImpactScenarioConfig& cfg, LutCache& cache,
                                 std::size_t window) {
    ImpactResult res;
    MarketParams params;
    params.tick = cfg.tick;
    params.price_cap = cfg.price_cap;
    TraderSpec spec;
    spec.kind = StrategyKind::Iprzi;
    spec.impact_gain = cfg.gain;
    Trader buyer(0, Side::Bid, spec, params, derive_seed(cfg.seed, 7));
    buyer.assign(cfg.buyer_limit);

    TopOfBook top;
    top.bid = BookLevel{cfg.bid_price, cfg.bid_qty};
    top.ask = BookLevel{cfg.ask_price, cfg.ask_qty};

    auto script = cfg.script;
    std::stable_sort(script.begin(), script.end(),
                     [](const ImpactEvent& a, const ImpactEvent& b) { return a.time_s < b.time_s; });
    res.event_time_s = script.empty() ? 0.0 : script.front().time_s;
    std::size_t next_event = 0;

    const std::int64_t steps = std::llround(cfg.duration_s / cfg.timestep_s);
    for (std::int64_t i = 1; i <= steps; ++i) {
        const double t = double(i) * cfg.timestep_s;
        while (next_event < script.size() && script[next_event].time_s <= t + 1e-12) {
            auto& level = script[next_event].side == Side::Bid ? top.bid : top.ask;
            level->quantity = std::max<std::int64_t>(1, level->quantity + script[next_event].qty_delta);
            ++next_event;
        }
        const QuoteContext ctx{top, t};
        const auto price = buyer.quote_price(ctx, cache);
        if (!price) continue;
        res.time_s.push_back(t);
        res.quote.push_back(*price);
        res.s.push_back(buyer.current_strategy());
    }

    // pre window: the last `window` quotes before the first event;
    // post window: the first `window` quotes after it
    std::vector<double> pre, post;
    for (std::size_t i = 0; i < res.time_s.size(); ++i) {
        if (res.time_s[i] < res.event_time_s) {
            pre.push_back(double(res.quote[i]));
        } else if (post.size() < window) {
            post.push_back(double(res.quote[i]));
        }
    }
    if (pre.size() > window) pre.erase(pre.begin(), pre.end() - std::ptrdiff_t(window));
    res.welch = welch_one_sided(pre, post);
    return res;
}

void write_impact_outputs(const ImpactResult& r, const std::string& out_dir) {
    fs::create_directories(out_dir);
    auto quotes = open_out(out_dir + "/quotes.csv");
    quotes << "time_s,price,s\n";
    for (std::size_t i = 0; i < r.time_s.size(); ++i) {
        std::string line;
        append_time(line, r.time_s[i]);
        char tmp[64];
        std::snprintf(tmp, sizeof tmp, ",%lld,", static_cast<long long>(r.quote[i]));
        line += tmp;
        append_double(line, r.s[i]);
        line += "\n";
        quotes << line;
    }
    auto summary = open_out(out_dir + "/summary.txt");
    char tmp[64];
    std::snprintf(tmp, sizeof tmp, "%.6g", r.event_time_s);
    summary << "event_time_s=" << tmp << "\n";
    std::snprintf(tmp, sizeof tmp, "%.6g", r.welch.mean_a);
    summary << "pre_mean=" << tmp << "\n";
    std::snprintf(tmp, sizeof tmp, "%.6g", r.welch.mean_b);
    summary << "post_mean=" << tmp << "\n";
    std::snprintf(tmp, sizeof tmp, "%.6g", r.welch.t);
    summary << "welch_t=" << tmp << "\n";
    std::snprintf(tmp, sizeof tmp, "%.6g", r.welch.df);
    summary << "welch_df=" << tmp << "\n";
}

RelaxedProfitResult relaxed_fraction_vs_profit(const std::vector<RunSummary>& runs) {
    RelaxedProfitResult out;
    std::vector<double> x, y;
    for (const auto& r : runs) {
        out.rows.push_back(RelaxedProfitRow{r.relaxed_fraction, r.profit_rate_mean,
                                            r.profit_rate_std});
        x.push_back(r.relaxed_fraction);
        y.push_back(r.profit_rate_mean);
    }
    out.fit = least_squares(x, y);
    return out;
}

void write_relaxed_profit_csv(const RelaxedProfitResult& r, const std::string& path) {
    auto out = open_out(path);
    out << "relaxed_fraction,profit_rate_mean,profit_rate_std\n";
    for (const auto& row : r.rows) {
        std::string line;
        append_double(line, row.relaxed_fraction);
        line += ",";
        append_double(line, row.profit_rate_mean);
        line += ",";
        append_double(line, row.profit_rate_std);
        line += "\n";
        out << line;
    }
    if (r.fit) {
        std::string line = "# fit: slope=";
        append_double(line, r.fit->slope);
        line += " intercept=";
        append_double(line, r.fit->intercept);
        line += " r2=";
        append_double(line, r.fit->r2);
        line += "\n";
        out << line;
    } else {
        out << "# fit: degenerate\n";
    }
}

}  // namespace przisim
