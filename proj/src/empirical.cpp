#include "rfis/empirical.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace rfis {

namespace {

struct RowStats {
    double total = 0.0;
    std::vector<double> part;
    std::int64_t boxes = 0;
};

// Stats of level n = fine.level - 1, folding the (K+1)^2 fine samples of
// every level-n cell. Rows are processed in parallel; the fold over rows is
// serial and in fixed order so the sums are reproducible.
LevelStats stats_from_fine(const SampledSurface& fine, const Partition& partition) {
    const int K = fine.K;
    const int n = fine.level - 1;
    const std::int64_t side_n = fine.side / K;
    const std::int64_t cells_per_data = side_n / fine.base;  // K^n

    LevelStats stats;
    stats.level = n;
    stats.epsilon = 1.0 / static_cast<double>(side_n);
    stats.part_osc.assign(partition.size(), 0.0);

    std::vector<RowStats> rows(side_n);
#pragma omp parallel for schedule(static)
    for (std::int64_t kc = 1; kc <= side_n; ++kc) {
        RowStats row;
        row.part.assign(partition.size(), 0.0);
        const int di = static_cast<int>((kc - 1) / cells_per_data) + 1;
        for (std::int64_t lc = 1; lc <= side_n; ++lc) {
            double lo = fine.values(static_cast<int>((kc - 1) * K), static_cast<int>((lc - 1) * K));
            double hi = lo;
            for (std::int64_t a = (kc - 1) * K; a <= kc * K; ++a) {
                for (std::int64_t b = (lc - 1) * K; b <= lc * K; ++b) {
                    const double v = fine.values(static_cast<int>(a), static_cast<int>(b));
                    lo = std::min(lo, v);
                    hi = std::max(hi, v);
                }
            }
            const double osc = hi - lo;
            row.total += osc;
            const int dj = static_cast<int>((lc - 1) / cells_per_data) + 1;
            row.part[partition.part_of_cell(di, dj) - 1] += osc;
            row.boxes += static_cast<std::int64_t>(std::floor(hi * side_n)) -
                         static_cast<std::int64_t>(std::floor(lo * side_n)) + 1;
        }
        rows[kc - 1] = std::move(row);
    }
    for (const RowStats& row : rows) {
        stats.total_osc += row.total;
        for (std::size_t r = 0; r < row.part.size(); ++r) stats.part_osc[r] += row.part[r];
        stats.boxes += row.boxes;
    }
    stats.cover_bound = stats.total_osc * static_cast<double>(side_n) +
                        2.0 * static_cast<double>(side_n) * static_cast<double>(side_n);
    return stats;
}

void check_partition_grid(const SampledSurface& fine, const Partition& partition) {
    if (partition.nx != fine.base || partition.ny != fine.base)
        throw Error(ErrorCode::LevelMismatch, "partition does not match the surface's data grid");
}

}  // namespace

OscillationProfile oscillation_profile(std::span<const SampledSurface> surfaces,
                                       const Partition& partition) {
    OscillationProfile profile;
    if (surfaces.empty())
        throw Error(ErrorCode::LevelMismatch, "no surfaces given");
    profile.K = surfaces.front().K;
    profile.base = surfaces.front().base;

    std::vector<const SampledSurface*> sorted;
    for (const SampledSurface& s : surfaces) sorted.push_back(&s);
    std::sort(sorted.begin(), sorted.end(),
              [](const SampledSurface* a, const SampledSurface* b) { return a->level < b->level; });
    for (const SampledSurface* s : sorted) {
        if (s->level < 1) continue;  // level 0 has no parent to describe
        check_partition_grid(*s, partition);
        profile.levels.push_back(stats_from_fine(*s, partition));
    }
    if (profile.levels.empty())
        throw Error(ErrorCode::LevelMismatch, "need at least one surface of level >= 1");
    return profile;
}

OscillationProfile compute_oscillation_profile(const BilinearRfis& rfis,
                                               const Partition& partition, int n_lo, int n_hi) {
    if (n_lo < 0 || n_hi < n_lo)
        throw Error(ErrorCode::LevelMismatch, "bad level range");
    OscillationProfile profile;
    profile.K = rfis.cert.K;
    profile.base = rfis.data.nx;

    SampledSurface grid = sample_surface(rfis, n_lo);
    for (int n = n_lo; n <= n_hi; ++n) {
        SampledSurface fine = refine_surface(rfis, grid);
        check_partition_grid(fine, partition);
        profile.levels.push_back(stats_from_fine(fine, partition));
        grid = std::move(fine);
    }
    return profile;
}

std::int64_t box_count(const SampledSurface& surface, int n) {
    if (surface.level < n + 1)
        throw Error(ErrorCode::LevelMismatch, "box count at level n needs samples at level >= n+1");
    std::int64_t side_n = surface.base;
    for (int m = 0; m < n; ++m) side_n *= surface.K;
    const std::int64_t w = surface.side / side_n;

    std::int64_t count = 0;
#pragma omp parallel for schedule(static) reduction(+ : count)
    for (std::int64_t kc = 1; kc <= side_n; ++kc) {
        for (std::int64_t lc = 1; lc <= side_n; ++lc) {
            double lo = surface.values(static_cast<int>((kc - 1) * w), static_cast<int>((lc - 1) * w));
            double hi = lo;
            for (std::int64_t a = (kc - 1) * w; a <= kc * w; ++a)
                for (std::int64_t b = (lc - 1) * w; b <= lc * w; ++b) {
                    const double v = surface.values(static_cast<int>(a), static_cast<int>(b));
                    lo = std::min(lo, v);
                    hi = std::max(hi, v);
                }
            count += static_cast<std::int64_t>(std::floor(hi * side_n)) -
                     static_cast<std::int64_t>(std::floor(lo * side_n)) + 1;
        }
    }
    return count;
}

SlopeReport empirical_dimension(const OscillationProfile& profile) {
    const auto& levels = profile.levels;
    if (levels.size() < 4)
        throw Error(ErrorCode::LevelMismatch, "dimension regression needs at least 4 levels");
    for (const LevelStats& s : levels)
        if (!(s.total_osc > 0.0))
            throw Error(ErrorCode::DegenerateRegression, "zero oscillation in the profile");

    const double logK = std::log(static_cast<double>(profile.K));
    const std::size_t m = levels.size();
    auto slope_of = [m](const std::vector<double>& xs, const std::vector<double>& ys,
                        double* stderr_out) {
        double xm = 0.0, ym = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            xm += xs[i];
            ym += ys[i];
        }
        xm /= m;
        ym /= m;
        double sxx = 0.0, sxy = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            sxx += (xs[i] - xm) * (xs[i] - xm);
            sxy += (xs[i] - xm) * (ys[i] - ym);
        }
        const double slope = sxy / sxx;
        if (stderr_out) {
            double ss = 0.0;
            for (std::size_t i = 0; i < m; ++i) {
                const double r = ys[i] - ym - slope * (xs[i] - xm);
                ss += r * r;
            }
            *stderr_out = m > 2 ? std::sqrt(ss / (m - 2) / sxx) : 0.0;
        }
        return slope;
    };

    std::vector<double> xs(m), ys(m), bx(m), by(m);
    for (std::size_t i = 0; i < m; ++i) {
        xs[i] = levels[i].level * logK;
        ys[i] = std::log(levels[i].total_osc);
        bx[i] = std::log(1.0 / levels[i].epsilon);
        by[i] = std::log(static_cast<double>(levels[i].boxes));
    }

    SlopeReport report;
    report.n_lo = levels.front().level;
    report.n_hi = levels.back().level;
    double se = 0.0;
    report.slope = slope_of(xs, ys, &se);
    report.dimension_estimate = 1.0 + report.slope;
    report.ci95 = 1.96 * se;
    report.box_slope = slope_of(bx, by, nullptr);
    return report;
}

ResidualReport transfer_inequality_check(const OscillationProfile& profile,
                                         const TransferMatrix& G) {
    const auto& levels = profile.levels;
    if (levels.size() < 2)
        throw Error(ErrorCode::LevelMismatch, "residuals need at least two consecutive levels");
    for (std::size_t i = 1; i < levels.size(); ++i)
        if (levels[i].level != levels[i - 1].level + 1)
            throw Error(ErrorCode::LevelMismatch, "profile levels must be consecutive");
    if (static_cast<int>(levels.front().part_osc.size()) != G.m)
        throw Error(ErrorCode::ShapeMismatch, "transfer matrix does not match the partition");

    ResidualReport report;
    for (int r = 1; r <= G.m; ++r) {
        ResidualSeries series;
        series.r = r;
        for (std::size_t i = 0; i + 1 < levels.size(); ++i) {
            double predicted = 0.0;
            for (int t = 1; t <= G.m; ++t)
                predicted += G.gamma(r - 1, t - 1) * levels[i].part_osc[t - 1];
            const double kn = std::pow(static_cast<double>(profile.K), levels[i].level);
            series.residuals.push_back(
                std::abs(levels[i + 1].part_osc[r - 1] - predicted) / kn);
        }
        const std::size_t len = series.residuals.size();
        const std::size_t third = std::max<std::size_t>(1, len / 3);
        double first = 0.0, last = 0.0, peak = 0.0;
        for (std::size_t i = 0; i < third; ++i) first += series.residuals[i];
        for (std::size_t i = len - third; i < len; ++i) last += series.residuals[i];
        for (double v : series.residuals) peak = std::max(peak, v);
        series.first_third_mean = first / third;
        series.last_third_mean = last / third;
        series.fitted_bound = peak;
        series.bounded = series.last_third_mean <= 2.0 * series.first_third_mean + 0.1 * peak;
        report.all_bounded = report.all_bounded && series.bounded;
        report.series.push_back(std::move(series));
    }
    return report;
}

std::vector<double> oscillation_growth_ratios(const OscillationProfile& profile, int r,
                                              double rho0, int n_min) {
    std::vector<double> ratios;
    for (const LevelStats& s : profile.levels)
        if (s.level >= n_min)
            ratios.push_back(s.part_osc[r - 1] / std::pow(rho0, s.level));
    return ratios;
}

}  // namespace rfis
