#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "rfis/dimension.hpp"

namespace rfis {

// Per-level oscillation and box-count statistics. O(f, n, U) sums per-cell
// oscillations over the level-n cells inside U; each cell's oscillation is
// the max - min of the (K+1)^2 level-(n+1) samples it contains.
struct LevelStats {
    int level = 0;                 // n
    double epsilon = 0.0;          // 1/(K^n N)
    double total_osc = 0.0;        // O(f, n)
    std::vector<double> part_osc;  // O(f, n, B_r), entry r-1
    std::int64_t boxes = 0;        // column-counted box count at eps_n
    double cover_bound = 0.0;      // eps^-1 O(f,n) + 2 (K^n N)^2
};

struct OscillationProfile {
    int K = 0;
    int base = 0;
    std::vector<LevelStats> levels;  // consecutive n, ascending
};

// Stats for every n whose level-(n+1) surface is present in `surfaces`.
OscillationProfile oscillation_profile(std::span<const SampledSurface> surfaces,
                                       const Partition& partition);

// Streaming driver: samples the surface level by level and extracts stats
// for n in [n_lo, n_hi] without keeping more than two grids alive.
OscillationProfile compute_oscillation_profile(const BilinearRfis& rfis,
                                               const Partition& partition,
                                               int n_lo, int n_hi);

// Column-counting box count of the graph at mesh eps_n, from a surface
// sampled at level >= n+1.
std::int64_t box_count(const SampledSurface& surface, int n);

struct SlopeReport {
    int n_lo = 0, n_hi = 0;
    double slope = 0.0;               // log O(f,n) against n log K
    double dimension_estimate = 0.0;  // 1 + slope
    double ci95 = 0.0;                // 1.96 * stderr of the slope
    double box_slope = 0.0;           // log N(eps_n) against log(1/eps_n)
};

// Least-squares dimension estimate from a profile of at least 4 levels.
SlopeReport empirical_dimension(const OscillationProfile& profile);

struct ResidualSeries {
    int r = 0;
    std::vector<double> residuals;  // R_n(r), n ascending over profile range
    double fitted_bound = 0.0;      // max residual
    double first_third_mean = 0.0;
    double last_third_mean = 0.0;
    bool bounded = false;           // last third <= 2 * first third + 0.1 max
};

struct ResidualReport {
    std::vector<ResidualSeries> series;  // one per part
    bool all_bounded = true;
};

// R_n(r) = |O(f,n+1,B_r) - sum_t gamma_rt O(f,n,B_t)| / K^n; checks the
// series stays bounded with no blow-up trend.
ResidualReport transfer_inequality_check(const OscillationProfile& profile,
                                         const TransferMatrix& G);

// O(f, n, B_r) / rho0^n for n >= n_min, the growth ratios behind the
// dominant-component lower bound; all must stay positive.
std::vector<double> oscillation_growth_ratios(const OscillationProfile& profile,
                                              int r, double rho0, int n_min);

}  // namespace rfis
