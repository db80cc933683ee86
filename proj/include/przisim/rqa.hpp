#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace przisim {

// Uniformly sampled time-series of strategy vectors, row-major.
class StrategyTrajectory {
public:
    StrategyTrajectory() = default;
    explicit StrategyTrajectory(std::size_t dims) : dims_(dims) {}

    void append(double time_h, std::span<const double> state);

    std::size_t samples() const { return time_h_.size(); }
    std::size_t dims() const { return dims_; }
    double time_h(std::size_t i) const { return time_h_[i]; }
    std::span<const double> state(std::size_t i) const {
        return {data_.data() + i * dims_, dims_};
    }

private:
    std::size_t dims_ = 0;
    std::vector<double> time_h_;
    std::vector<double> data_;
};

StrategyTrajectory load_trajectory_csv(const std::string& path);

// n-by-n binary recurrence matrix, bit-packed by row. Symmetric with the
// line of identity always shaded.
class RecurrencePlot {
public:
    explicit RecurrencePlot(std::size_t n)
        : n_(n), words_(((n + 63) / 64)), bits_(n_ * words_, 0) {}

    std::size_t size() const { return n_; }
    bool at(std::size_t c, std::size_t r) const {
        return (bits_[r * words_ + c / 64] >> (c % 64)) & 1u;
    }
    void set(std::size_t c, std::size_t r) {
        bits_[r * words_ + c / 64] |= std::uint64_t(1) << (c % 64);
    }
    std::int64_t shaded_cells() const;

    bool operator==(const RecurrencePlot& other) const {
        return n_ == other.n_ && bits_ == other.bits_;
    }

private:
    std::size_t n_;
    std::size_t words_;
    std::vector<std::uint64_t> bits_;
};

// cells[c][r] shaded iff the Euclidean distance between samples c and r is
// strictly less than eps. Row blocks are computed in parallel; the result is
// identical to build_rp_serial.
RecurrencePlot build_rp(const StrategyTrajectory& traj, double eps);

// Single-threaded reference implementation, kept for testing and benchmarks.
RecurrencePlot build_rp_serial(const StrategyTrajectory& traj, double eps);

// count[v] = number of maximal vertical runs of exactly v shaded cells,
// v = 1..n. Runs through the line of identity count like any other.
struct LineDistribution {
    std::vector<std::int64_t> count;  // index 0 unused

    std::int64_t lines_of(std::size_t v) const {
        return v < count.size() ? count[v] : 0;
    }
};

LineDistribution vertical_line_distribution(const RecurrencePlot& rp);

// Mean length of vertical lines at least v_min long:
//   TT = sum(v * P(v)) / sum(P(v)) over v >= v_min.
// Undefined (not zero) when no line qualifies.
std::optional<double> trapping_time(const LineDistribution& dist, int v_min = 2);

// Recurrence radius for a per-component tolerance: sqrt(dims * tol^2).
double recurrence_radius(std::size_t dims, double component_tol);
// Largest possible distance when every component spans `component_range`.
double phase_space_diameter(std::size_t dims, double component_range = 2.0);

std::size_t downsampled_size(std::size_t n, int factor);

// Binary PGM, origin at lower-left, shaded cells black. Downsampling
// max-pools: a block is shaded if any cell inside it is shaded.
void export_rp_pgm(const RecurrencePlot& rp, int factor, const std::string& path);
// Sparse (c, r) pairs of shaded cells after the same pooling.
void export_rp_csv(const RecurrencePlot& rp, int factor, const std::string& path);

}  // namespace przisim
