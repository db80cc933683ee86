#include "przisim/config.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace przisim {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

[[noreturn]] void fail(const std::string& msg) { throw std::runtime_error("config: " + msg); }

struct Section {
    const std::map<std::string, std::string>* kv = nullptr;
    std::string name;

    std::optional<std::string> raw(const std::string& key) const {
        if (!kv) return std::nullopt;
        auto it = kv->find(key);
        if (it == kv->end()) return std::nullopt;
        return it->second;
    }
    std::string str(const std::string& key, const std::string& dflt) const {
        auto v = raw(key);
        return v ? *v : dflt;
    }
    double num(const std::string& key, double dflt) const {
        auto v = raw(key);
        if (!v) return dflt;
        try {
            std::size_t pos = 0;
            const double d = std::stod(*v, &pos);
            if (pos != v->size()) throw std::invalid_argument("");
            return d;
        } catch (...) {
            fail("[" + name + "] " + key + ": not a number: '" + *v + "'");
        }
    }
    std::int64_t integer(const std::string& key, std::int64_t dflt) const {
        const double d = num(key, double(dflt));
        if (d != std::floor(d)) fail("[" + name + "] " + key + ": expected an integer");
        return std::int64_t(d);
    }
    bool flag(const std::string& key, bool dflt) const {
        auto v = raw(key);
        if (!v) return dflt;
        if (*v == "true" || *v == "yes" || *v == "1") return true;
        if (*v == "false" || *v == "no" || *v == "0") return false;
        fail("[" + name + "] " + key + ": expected a boolean");
    }
};

Section section(const RawConfig& cfg, const std::string& name) {
    auto it = cfg.find(name);
    return Section{it == cfg.end() ? nullptr : &it->second, name};
}

PopulationConfig load_population(const RawConfig& raw, const std::string& name,
                                 const PopulationConfig& dflt) {
    Section s = section(raw, name);
    PopulationConfig p = dflt;
    p.count = int(s.integer("count", p.count));
    p.kind = strategy_from_name(s.str("strategy", strategy_name(p.kind)));
    p.fixed_s = s.num("s", p.fixed_s);
    p.impact_gain = s.num("impact_gain", p.impact_gain);
    p.prsh_count = int(s.integer("prsh_count", p.prsh_count));
    return p;
}

PrshConfig load_prsh(const RawConfig& raw) {
    Section s = section(raw, "prsh");
    PrshConfig p;
    p.k = int(s.integer("k", p.k));
    p.eval_period_s = s.num("eval_period_s", p.eval_period_s);
    p.sigma = s.num("sigma", p.sigma);
    p.tie_eps_pps = s.num("tie_eps_pps", p.tie_eps_pps);
    const std::string g = s.str("genesis", "uniform");
    if (g == "uniform") p.genesis = GenesisMode::Uniform;
    else if (g == "constant") p.genesis = GenesisMode::Constant;
    else if (g == "grid") p.genesis = GenesisMode::Grid;
    else fail("[prsh] genesis: expected uniform|constant|grid");
    p.genesis_value = s.num("genesis_value", 0.0);
    return p;
}

Side side_from(const std::string& v, const std::string& where) {
    if (v == "buy" || v == "bid" || v == "buyer") return Side::Bid;
    if (v == "sell" || v == "ask" || v == "seller") return Side::Ask;
    fail(where + ": expected buy|sell");
}

}  // namespace

RawConfig parse_config_text(const std::string& text) {
    RawConfig out;
    std::string current = "market";
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') fail("line " + std::to_string(lineno) + ": unterminated section");
            current = trim(line.substr(1, line.size() - 2));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) fail("line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (key.empty()) fail("line " + std::to_string(lineno) + ": empty key");
        out[current][key] = val;
    }
    return out;
}

RawConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str());
}

std::int64_t MarketConfig::total_steps() const {
    if (duration_s <= 0.0 || timestep_s <= 0.0) return 0;
    return std::llround(duration_s / timestep_s);
}

int LandscapeConfig::grid_points() const {
    return int(std::lround(2.0 / grid_step)) + 1;
}

MarketConfig load_market_config(const std::string& path) {
    const RawConfig raw = parse_config_file(path);
    Section m = section(raw, "market");
    MarketConfig cfg;
    cfg.buyer_limit = m.integer("buyer_limit", cfg.buyer_limit);
    cfg.seller_limit = m.integer("seller_limit", cfg.seller_limit);
    cfg.tick = m.integer("tick", cfg.tick);
    cfg.price_cap = m.integer("price_cap", cfg.price_cap);
    cfg.shvr_lo_seed = m.integer("shvr_lo_seed", 0);
    cfg.shvr_hi_seed = m.integer("shvr_hi_seed", 0);
    if (auto hz = m.raw("rate_hz")) {
        cfg.timestep_s = 1.0 / m.num("rate_hz", 60.0);
        (void)hz;
    } else {
        cfg.timestep_s = m.num("timestep_s", cfg.timestep_s);
    }
    cfg.duration_s = m.num("duration_s", cfg.duration_s);
    cfg.sample_interval_s = m.num("sample_interval_s", cfg.sample_interval_s);
    cfg.smoothing_window = int(m.integer("smoothing_window", cfg.smoothing_window));
    cfg.seed = std::uint64_t(m.integer("seed", std::int64_t(cfg.seed)));
    const std::string policy = m.str("buyer_pmin_policy", "zic");
    if (policy == "zic") cfg.pmin_policy = BuyerPminPolicy::Zic;
    else if (policy == "heuristic") cfg.pmin_policy = BuyerPminPolicy::Heuristic;
    else fail("[market] buyer_pmin_policy: expected zic|heuristic");
    cfg.runs = int(m.integer("runs", cfg.runs));
    if (auto p0 = m.raw("p0")) cfg.p0 = m.num("p0", 0.0), (void)p0;
    cfg.write_trade_tape = m.flag("write_trade_tape", cfg.write_trade_tape);
    cfg.final_window_s = m.num("final_window_s", cfg.final_window_s);
    cfg.hist_bin_width = m.num("hist_bin_width", cfg.hist_bin_width);
    cfg.buyers = load_population(raw, "buyers", PopulationConfig{30, StrategyKind::Zic});
    cfg.sellers = load_population(raw, "sellers", PopulationConfig{30, StrategyKind::Zic});
    cfg.prsh = load_prsh(raw);
    validate(cfg);
    return cfg;
}

LandscapeConfig load_landscape_config(const std::string& path) {
    LandscapeConfig out;
    out.market = load_market_config(path);
    const RawConfig raw = parse_config_file(path);
    Section s = section(raw, "landscape");
    out.adaptive_side = side_from(s.str("side", "sell"), "[landscape] side");
    out.grid_step = s.num("grid_step", out.grid_step);
    out.eval_period_s = s.num("eval_period_s", out.eval_period_s);
    out.seeds = int(s.integer("seeds", out.seeds));
    out.slack_s = s.num("slack_s", out.slack_s);
    if (out.grid_step <= 0.0 || out.grid_step > 1.0) fail("[landscape] grid_step out of range");
    if (out.grid_points() < 2) fail("[landscape] grid needs at least 2 points");
    if (out.seeds < 1) fail("[landscape] seeds must be >= 1");
    return out;
}

ImpactScenarioConfig load_impact_config(const std::string& path) {
    const RawConfig raw = parse_config_file(path);
    Section s = section(raw, "impact");
    ImpactScenarioConfig cfg;
    cfg.bid_price = s.integer("bid_price", cfg.bid_price);
    cfg.ask_price = s.integer("ask_price", cfg.ask_price);
    cfg.bid_qty = s.integer("bid_qty", cfg.bid_qty);
    cfg.ask_qty = s.integer("ask_qty", cfg.ask_qty);
    cfg.buyer_limit = s.integer("buyer_limit", cfg.buyer_limit);
    cfg.gain = s.num("gain", cfg.gain);
    cfg.timestep_s = s.num("timestep_s", cfg.timestep_s);
    cfg.duration_s = s.num("duration_s", cfg.duration_s);
    cfg.tick = s.integer("tick", cfg.tick);
    cfg.price_cap = s.integer("price_cap", cfg.price_cap);
    cfg.seed = std::uint64_t(s.integer("seed", std::int64_t(cfg.seed)));
    if (cfg.bid_price >= cfg.ask_price) fail("[impact] bid_price must be below ask_price");
    if (cfg.bid_qty < 1 || cfg.ask_qty < 1) fail("[impact] book quantities must be >= 1");
    if (auto script = s.raw("script")) {
        namespace fs = std::filesystem;
        fs::path p(*script);
        if (p.is_relative()) p = fs::path(path).parent_path() / p;
        cfg.script = load_impact_script(p.string());
    }
    return cfg;
}

std::vector<ImpactEvent> load_impact_script(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail("cannot open impact script " + path);
    std::vector<ImpactEvent> out;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        line = trim(line);
        if (line.empty() || line.front() == '#') continue;
        if (first && line.find("time_s") != std::string::npos) {
            first = false;
            continue;
        }
        first = false;
        std::istringstream row(line);
        std::string t, side, qty;
        if (!std::getline(row, t, ',') || !std::getline(row, side, ','))
            fail("impact script: expected time_s,side,qty_delta or time_s,event: '" + line + "'");
        ImpactEvent ev;
        ev.time_s = std::stod(trim(t));
        if (std::getline(row, qty, ',')) {
            ev.side = side_from(trim(side), "impact script side");
            ev.qty_delta = std::stoll(trim(qty));
        } else {
            // compact event grammar: bid+4, ask-2
            const std::string event = trim(side);
            const auto sign = event.find_first_of("+-");
            if (sign == std::string::npos)
                fail("impact script: malformed event '" + event + "'");
            ev.side = side_from(event.substr(0, sign), "impact script side");
            ev.qty_delta = std::stoll(event.substr(sign));
        }
        out.push_back(ev);
    }
    return out;
}

RqaJobConfig load_rqa_config(const std::string& path) {
    const RawConfig raw = parse_config_file(path);
    Section s = section(raw, "rqa");
    RqaJobConfig cfg;
    cfg.input = s.str("input", "");
    if (cfg.input.empty()) fail("[rqa] input trajectory CSV required");
    namespace fs = std::filesystem;
    fs::path p(cfg.input);
    if (p.is_relative()) cfg.input = (fs::path(path).parent_path() / p).string();
    cfg.eps = s.num("eps", cfg.eps);
    cfg.component_tol = s.num("component_tol", cfg.component_tol);
    cfg.v_min = int(s.integer("v_min", cfg.v_min));
    cfg.downsample = int(s.integer("downsample", cfg.downsample));
    cfg.write_cells_csv = s.flag("write_cells_csv", cfg.write_cells_csv);
    if (cfg.v_min < 1) fail("[rqa] v_min must be >= 1");
    if (cfg.downsample < 1) fail("[rqa] downsample must be >= 1");
    return cfg;
}

void validate(const MarketConfig& cfg) {
    if (cfg.buyers.count < 1 || cfg.sellers.count < 1)
        fail("both sides of the market need at least one trader");
    if (cfg.tick < 1) fail("tick must be a positive integer");
    if (cfg.buyer_limit % cfg.tick || cfg.seller_limit % cfg.tick || cfg.price_cap % cfg.tick)
        fail("limits and the price cap must be multiples of the tick");
    if (cfg.seller_limit >= cfg.buyer_limit) fail("box schedule needs seller_limit < buyer_limit");
    if (cfg.seller_limit < cfg.tick) fail("seller_limit below one tick");
    if (cfg.price_cap < cfg.buyer_limit) fail("price_cap below the buyer limit");
    if (cfg.sellers.kind == StrategyKind::Zic && cfg.seller_limit > cfg.price_cap)
        fail("zic sellers need seller_limit <= price_cap");
    if (cfg.timestep_s <= 0.0) fail("timestep_s must be positive");
    if (cfg.duration_s < 0.0) fail("duration_s must be >= 0");
    if (cfg.sample_interval_s <= 0.0) fail("sample_interval_s must be positive");
    if (cfg.smoothing_window < 1) fail("smoothing_window must be >= 1");
    if (cfg.hist_bin_width <= 0.0 || cfg.hist_bin_width > 2.0)
        fail("hist_bin_width must lie in (0, 2]");
    if (cfg.runs < 1) fail("runs must be >= 1");
    const auto check_pop = [&](const PopulationConfig& p, const char* name) {
        if (p.resolved_prsh_count() > p.count)
            fail(std::string(name) + ": prsh_count exceeds count");
        if (p.kind == StrategyKind::Przi && (p.fixed_s < -1.0 || p.fixed_s > 1.0))
            fail(std::string(name) + ": s must lie in [-1, 1]");
    };
    check_pop(cfg.buyers, "buyers");
    check_pop(cfg.sellers, "sellers");
    if ((cfg.buyers.resolved_prsh_count() > 0 || cfg.sellers.resolved_prsh_count() > 0) &&
        cfg.prsh.k < 2)
        fail("prsh k must be >= 2");
    if (cfg.prsh.eval_period_s <= 0.0) fail("prsh eval_period_s must be positive");
}

}  // namespace przisim
