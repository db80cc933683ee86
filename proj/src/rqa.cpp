#include "przisim/rqa.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace przisim {

void StrategyTrajectory::append(double time_h, std::span<const double> state) {
    if (dims_ == 0) dims_ = state.size();
    if (state.size() != dims_)
        throw std::invalid_argument("trajectory: state dimension mismatch");
    time_h_.push_back(time_h);
    data_.insert(data_.end(), state.begin(), state.end());
}

StrategyTrajectory load_trajectory_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open trajectory " + path);
    StrategyTrajectory traj;
    std::string line;
    bool header = true;
    std::vector<double> row;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (header) {  // expect time_h,s_0,...
            header = false;
            if (line.find("time") != std::string::npos) continue;
        }
        row.clear();
        std::istringstream ss(line);
        std::string field;
        double t = 0.0;
        bool first = true;
        while (std::getline(ss, field, ',')) {
            const double v = std::stod(field);
            if (first) {
                t = v;
                first = false;
            } else {
                row.push_back(v);
            }
        }
        if (row.empty()) throw std::runtime_error("trajectory row without state: " + line);
        traj.append(t, row);
    }
    return traj;
}

std::int64_t RecurrencePlot::shaded_cells() const {
    std::int64_t total = 0;
    for (std::uint64_t w : bits_) total += std::int64_t(__builtin_popcountll(w));
    return total;
}

namespace {

inline void fill_row(const StrategyTrajectory& traj, double eps2, std::size_t r,
                     RecurrencePlot& rp) {
    const std::size_t n = traj.samples();
    const auto row_state = traj.state(r);
    const std::size_t dims = traj.dims();
    for (std::size_t c = 0; c < n; ++c) {
        const auto col_state = traj.state(c);
        double d2 = 0.0;
        for (std::size_t k = 0; k < dims; ++k) {
            const double d = row_state[k] - col_state[k];
            d2 += d * d;
        }
        if (d2 < eps2) rp.set(c, r);
    }
}

void check_rp_args(const StrategyTrajectory& traj, double eps) {
    if (traj.samples() < 2) throw std::invalid_argument("recurrence plot needs >= 2 samples");
    if (eps <= 0.0) throw std::invalid_argument("recurrence radius must be positive");
}

}  // namespace

RecurrencePlot build_rp(const StrategyTrajectory& traj, double eps) {
    check_rp_args(traj, eps);
    const std::size_t n = traj.samples();
    const double eps2 = eps * eps;
    RecurrencePlot rp(n);
#pragma omp parallel for schedule(static)
    for (std::int64_t r = 0; r < std::int64_t(n); ++r)
        fill_row(traj, eps2, std::size_t(r), rp);
    return rp;
}

RecurrencePlot build_rp_serial(const StrategyTrajectory& traj, double eps) {
    check_rp_args(traj, eps);
    const std::size_t n = traj.samples();
    const double eps2 = eps * eps;
    RecurrencePlot rp(n);
    for (std::size_t r = 0; r < n; ++r) fill_row(traj, eps2, r, rp);
    return rp;
}

LineDistribution vertical_line_distribution(const RecurrencePlot& rp) {
    const std::size_t n = rp.size();
    LineDistribution dist;
    dist.count.assign(n + 1, 0);
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t run = 0;
        for (std::size_t r = 0; r < n; ++r) {
            if (rp.at(c, r)) {
                ++run;
            } else if (run > 0) {
                ++dist.count[run];
                run = 0;
            }
        }
        if (run > 0) ++dist.count[run];
    }
    return dist;
}

std::optional<double> trapping_time(const LineDistribution& dist, int v_min) {
    std::int64_t lines = 0;
    std::int64_t weighted = 0;
    for (std::size_t v = std::size_t(std::max(v_min, 1)); v < dist.count.size(); ++v) {
        lines += dist.count[v];
        weighted += std::int64_t(v) * dist.count[v];
    }
    if (lines == 0) return std::nullopt;
    return double(weighted) / double(lines);
}

double recurrence_radius(std::size_t dims, double component_tol) {
    return std::sqrt(double(dims) * component_tol * component_tol);
}

double phase_space_diameter(std::size_t dims, double component_range) {
    return std::sqrt(double(dims) * component_range * component_range);
}

std::size_t downsampled_size(std::size_t n, int factor) {
    return (n + std::size_t(factor) - 1) / std::size_t(factor);
}

namespace {
bool block_shaded(const RecurrencePlot& rp, std::size_t bc, std::size_t br, int f) {
    const std::size_t n = rp.size();
    const std::size_t c0 = bc * std::size_t(f), r0 = br * std::size_t(f);
    const std::size_t c1 = std::min(c0 + std::size_t(f), n);
    const std::size_t r1 = std::min(r0 + std::size_t(f), n);
    for (std::size_t r = r0; r < r1; ++r)
        for (std::size_t c = c0; c < c1; ++c)
            if (rp.at(c, r)) return true;
    return false;
}
}  // namespace

void export_rp_pgm(const RecurrencePlot& rp, int factor, const std::string& path) {
    if (factor < 1) throw std::invalid_argument("downsample factor must be >= 1");
    const std::size_t m = downsampled_size(rp.size(), factor);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << "P5\n" << m << " " << m << "\n255\n";
    std::vector<unsigned char> row(m);
    // PGM rows run top to bottom; the plot origin sits at lower-left.
    for (std::size_t br = m; br-- > 0;) {
        for (std::size_t bc = 0; bc < m; ++bc)
            row[bc] = block_shaded(rp, bc, br, factor) ? 0 : 255;
        out.write(reinterpret_cast<const char*>(row.data()), std::streamsize(row.size()));
    }
    if (!out) throw std::runtime_error("write failed: " + path);
}

void export_rp_csv(const RecurrencePlot& rp, int factor, const std::string& path) {
    if (factor < 1) throw std::invalid_argument("downsample factor must be >= 1");
    const std::size_t m = downsampled_size(rp.size(), factor);
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << "c,r\n";
    for (std::size_t br = 0; br < m; ++br)
        for (std::size_t bc = 0; bc < m; ++bc)
            if (block_shaded(rp, bc, br, factor)) out << bc << "," << br << "\n";
    if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace przisim
