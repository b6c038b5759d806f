#include <algorithm>
#include <cmath>
#include <cstdint>

#include "rfis/surface.hpp"

namespace rfis {

namespace {

void require_homogeneous(const BilinearRfis& rfis) {
    if (!rfis.cert.ok()) {
        std::string detail = rfis.cert.failures.empty() ? "" : ": " + rfis.cert.failures.front();
        throw Error(ErrorCode::HomogeneityRequired,
                    "grid sampling needs the homogeneity certificate" + detail);
    }
}

// Geometry of one refinement step. All node bookkeeping is integer: level
// node k sits at k/side, and the preimage of a level-(m+1) node under the
// owning cell's map is a level-m node whose index is computed exactly.
struct StepGeometry {
    int n_cells;             // N
    std::int64_t fine_side;  // K^{m+1} N
    std::int64_t per_cell;   // K^{m+1}
    std::int64_t coarse_unit;  // K^m, node units of the parent level

    // Lowest cell whose closed x-extent contains fine node kk.
    int owner_cell(std::int64_t kk) const {
        if (kk <= 0) return 1;
        return static_cast<int>(std::min<std::int64_t>((kk + per_cell - 1) / per_cell, n_cells));
    }
};

// Value of fine node (kk, ll) through cell (ci, cj), reading the parent grid
// at the exact preimage node.
double node_value(const BilinearRfis& rfis, const SampledSurface& parent,
                  const StepGeometry& geo, std::int64_t kk, std::int64_t ll, int ci, int cj) {
    const AddressMaps& maps = rfis.maps;
    const std::int64_t dx = kk - static_cast<std::int64_t>(ci - 1) * geo.per_cell;
    const std::int64_t dy = ll - static_cast<std::int64_t>(cj - 1) * geo.per_cell;

    const std::int64_t px0 = maps.xprime_idx[ci - 1], px1 = maps.xprime_idx[ci];
    const std::int64_t qy0 = maps.yprime_idx[cj - 1], qy1 = maps.yprime_idx[cj];
    const std::int64_t kp = px0 * geo.coarse_unit + maps.sign_x[ci - 1] * dx;
    const std::int64_t lp = qy0 * geo.coarse_unit + maps.sign_y[cj - 1] * dy;

    // lambda_i, mu_j at the preimage, as exact integer ratios.
    const double lambda = static_cast<double>(px1 * geo.coarse_unit - kp) /
                          static_cast<double>((px1 - px0) * geo.coarse_unit);
    const double mu = static_cast<double>(qy1 * geo.coarse_unit - lp) /
                      static_cast<double>((qy1 - qy0) * geo.coarse_unit);
    const GCorners& gc = rfis.g_at(ci, cj);
    const double g = lambda * mu * gc.c00 + (1.0 - lambda) * mu * gc.c10 +
                     lambda * (1.0 - mu) * gc.c01 + (1.0 - lambda) * (1.0 - mu) * gc.c11;

    // S and h at the target node, local cell coordinates from integers.
    const double tx = static_cast<double>(dx) / static_cast<double>(geo.per_cell);
    const double ty = static_cast<double>(dy) / static_cast<double>(geo.per_cell);
    const Matrix& s = rfis.scaling.s;
    const Matrix& z = rfis.data.z;
    const double sv = (1.0 - tx) * (1.0 - ty) * s(ci - 1, cj - 1) + tx * (1.0 - ty) * s(ci, cj - 1) +
                      (1.0 - tx) * ty * s(ci - 1, cj) + tx * ty * s(ci, cj);
    const double hv = (1.0 - tx) * (1.0 - ty) * z(ci - 1, cj - 1) + tx * (1.0 - ty) * z(ci, cj - 1) +
                      (1.0 - tx) * ty * z(ci - 1, cj) + tx * ty * z(ci, cj);

    const double fp = parent.values(static_cast<int>(kp), static_cast<int>(lp));
    return sv * (fp - g) + hv;
}

StepGeometry step_geometry(const BilinearRfis& rfis, const SampledSurface& parent) {
    StepGeometry geo;
    geo.n_cells = rfis.data.nx;
    geo.fine_side = static_cast<std::int64_t>(parent.side) * parent.K;
    geo.per_cell = geo.fine_side / geo.n_cells;
    geo.coarse_unit = static_cast<std::int64_t>(parent.side) / geo.n_cells;
    return geo;
}

SampledSurface level0_surface(const BilinearRfis& rfis) {
    SampledSurface surface;
    surface.level = 0;
    surface.K = rfis.cert.K;
    surface.base = rfis.data.nx;
    surface.side = rfis.data.nx;
    surface.values = rfis.data.z;
    return surface;
}

template <bool Parallel>
SampledSurface refine_impl(const BilinearRfis& rfis, const SampledSurface& parent) {
    require_homogeneous(rfis);
    if (parent.base != rfis.data.nx || parent.K != rfis.cert.K)
        throw Error(ErrorCode::LevelMismatch, "parent surface does not belong to this surface");

    const StepGeometry geo = step_geometry(rfis, parent);
    SampledSurface fine;
    fine.level = parent.level + 1;
    fine.K = parent.K;
    fine.base = parent.base;
    fine.side = static_cast<int>(geo.fine_side);
    fine.values = Matrix(fine.side + 1, fine.side + 1);

    const int side = fine.side;
#pragma omp parallel for schedule(static) if (Parallel)
    for (int kk = 0; kk <= side; ++kk) {
        const int ci = geo.owner_cell(kk);
        for (int ll = 0; ll <= side; ++ll) {
            const int cj = geo.owner_cell(ll);
            fine.values(kk, ll) = node_value(rfis, parent, geo, kk, ll, ci, cj);
        }
    }
    return fine;
}

}  // namespace

SampledSurface refine_surface(const BilinearRfis& rfis, const SampledSurface& parent) {
    return refine_impl<true>(rfis, parent);
}

SampledSurface refine_surface_serial(const BilinearRfis& rfis, const SampledSurface& parent) {
    return refine_impl<false>(rfis, parent);
}

SampledSurface sample_surface(const BilinearRfis& rfis, int n) {
    require_homogeneous(rfis);
    SampledSurface surface = level0_surface(rfis);
    for (int m = 0; m < n; ++m) surface = refine_surface(rfis, surface);
    return surface;
}

SampledSurface sample_surface_serial(const BilinearRfis& rfis, int n) {
    require_homogeneous(rfis);
    SampledSurface surface = level0_surface(rfis);
    for (int m = 0; m < n; ++m) surface = refine_surface_serial(rfis, surface);
    return surface;
}

double refined_value_via_cell(const BilinearRfis& rfis, const SampledSurface& parent,
                              std::int64_t kk, std::int64_t ll, int ci, int cj) {
    require_homogeneous(rfis);
    const StepGeometry geo = step_geometry(rfis, parent);
    const std::int64_t lo_x = static_cast<std::int64_t>(ci - 1) * geo.per_cell;
    const std::int64_t lo_y = static_cast<std::int64_t>(cj - 1) * geo.per_cell;
    if (kk < lo_x || kk > lo_x + geo.per_cell || ll < lo_y || ll > lo_y + geo.per_cell)
        throw Error(ErrorCode::OutOfDomain, "node not contained in the requested cell");
    return node_value(rfis, parent, geo, kk, ll, ci, cj);
}

std::vector<int> containing_cells(std::int64_t kk, std::int64_t per_cell, int n_cells) {
    std::vector<int> cells;
    for (int c = 1; c <= n_cells; ++c) {
        const std::int64_t lo = static_cast<std::int64_t>(c - 1) * per_cell;
        if (kk >= lo && kk <= lo + per_cell) cells.push_back(c);
    }
    return cells;
}

SampledSurface sample_field(const BilinearRfis& rfis, Field which, int n) {
    require_homogeneous(rfis);
    SampledSurface out;
    out.level = n;
    out.K = rfis.cert.K;
    out.base = rfis.data.nx;
    std::int64_t side = rfis.data.nx;
    for (int m = 0; m < n; ++m) side *= rfis.cert.K;
    out.side = static_cast<int>(side);
    out.values = Matrix(out.side + 1, out.side + 1);

    const std::int64_t per_cell = side / rfis.data.nx;
    const Matrix& m = which == Field::h ? rfis.data.z : rfis.scaling.s;
    const int n_cells = rfis.data.nx;
#pragma omp parallel for schedule(static)
    for (int kk = 0; kk <= out.side; ++kk) {
        const int ci = kk <= 0 ? 1
                               : static_cast<int>(std::min<std::int64_t>(
                                     (kk + per_cell - 1) / per_cell, n_cells));
        const double tx = static_cast<double>(kk - static_cast<std::int64_t>(ci - 1) * per_cell) /
                          static_cast<double>(per_cell);
        for (int ll = 0; ll <= out.side; ++ll) {
            const int cj = ll <= 0 ? 1
                                   : static_cast<int>(std::min<std::int64_t>(
                                         (ll + per_cell - 1) / per_cell, n_cells));
            const double ty =
                static_cast<double>(ll - static_cast<std::int64_t>(cj - 1) * per_cell) /
                static_cast<double>(per_cell);
            out.values(kk, ll) = (1.0 - tx) * (1.0 - ty) * m(ci - 1, cj - 1) +
                                 tx * (1.0 - ty) * m(ci, cj - 1) +
                                 (1.0 - tx) * ty * m(ci - 1, cj) + tx * ty * m(ci, cj);
        }
    }
    return out;
}

double probe_surface(const SampledSurface& surface, double x, double y) {
    if (!(x >= 0.0 && x <= 1.0 && y >= 0.0 && y <= 1.0))
        throw Error(ErrorCode::OutOfDomain, "probe outside [0,1]^2");
    const double cx = x * surface.side;
    const double cy = y * surface.side;
    const int k0 = std::clamp(static_cast<int>(std::floor(cx)), 0, surface.side - 1);
    const int l0 = std::clamp(static_cast<int>(std::floor(cy)), 0, surface.side - 1);
    const double tx = cx - k0;
    const double ty = cy - l0;
    return (1.0 - tx) * (1.0 - ty) * surface.values(k0, l0) +
           tx * (1.0 - ty) * surface.values(k0 + 1, l0) +
           (1.0 - tx) * ty * surface.values(k0, l0 + 1) +
           tx * ty * surface.values(k0 + 1, l0 + 1);
}

TIterationResult operator_T_iterate(const BilinearRfis& rfis, int level, int iterations) {
    require_homogeneous(rfis);
    if (level < 1)
        throw Error(ErrorCode::LevelMismatch, "operator_T_iterate needs level >= 1");
    if (iterations < 1)
        throw Error(ErrorCode::LevelMismatch, "operator_T_iterate needs iterations >= 1");

    const SampledSurface reference = sample_surface(rfis, level);
    SampledSurface phi = sample_field(rfis, Field::h, level);
    SampledSurface next = phi;

    const int K = rfis.cert.K;
    const int side = phi.side;
    const int n_cells = rfis.data.nx;
    const std::int64_t per_cell = static_cast<std::int64_t>(side) / n_cells;  // K^level
    const std::int64_t coarse_unit = per_cell / K;                            // K^{level-1}
    const AddressMaps& maps = rfis.maps;
    const Matrix& s = rfis.scaling.s;
    const Matrix& z = rfis.data.z;

    TIterationResult result;
    result.sup_gaps.reserve(iterations);

    for (int it = 0; it < iterations; ++it) {
        double gap = 0.0;
#pragma omp parallel for schedule(static) reduction(max : gap)
        for (int kk = 0; kk <= side; ++kk) {
            const int ci = kk <= 0 ? 1
                                   : static_cast<int>(std::min<std::int64_t>(
                                         (kk + per_cell - 1) / per_cell, n_cells));
            const std::int64_t dx = kk - static_cast<std::int64_t>(ci - 1) * per_cell;
            const std::int64_t px0 = maps.xprime_idx[ci - 1], px1 = maps.xprime_idx[ci];
            const std::int64_t kp = px0 * coarse_unit + maps.sign_x[ci - 1] * dx;
            const double lambda = static_cast<double>(px1 * coarse_unit - kp) /
                                  static_cast<double>((px1 - px0) * coarse_unit);
            const double tx = static_cast<double>(dx) / static_cast<double>(per_cell);
            for (int ll = 0; ll <= side; ++ll) {
                const int cj = ll <= 0 ? 1
                                       : static_cast<int>(std::min<std::int64_t>(
                                             (ll + per_cell - 1) / per_cell, n_cells));
                const std::int64_t dy = ll - static_cast<std::int64_t>(cj - 1) * per_cell;
                const std::int64_t qy0 = maps.yprime_idx[cj - 1], qy1 = maps.yprime_idx[cj];
                const std::int64_t lp = qy0 * coarse_unit + maps.sign_y[cj - 1] * dy;
                const double mu = static_cast<double>(qy1 * coarse_unit - lp) /
                                  static_cast<double>((qy1 - qy0) * coarse_unit);
                const double ty = static_cast<double>(dy) / static_cast<double>(per_cell);

                const GCorners& gc = rfis.g_at(ci, cj);
                const double g = lambda * mu * gc.c00 + (1.0 - lambda) * mu * gc.c10 +
                                 lambda * (1.0 - mu) * gc.c01 + (1.0 - lambda) * (1.0 - mu) * gc.c11;
                const double sv = (1.0 - tx) * (1.0 - ty) * s(ci - 1, cj - 1) +
                                  tx * (1.0 - ty) * s(ci, cj - 1) + (1.0 - tx) * ty * s(ci - 1, cj) +
                                  tx * ty * s(ci, cj);
                const double hv = (1.0 - tx) * (1.0 - ty) * z(ci - 1, cj - 1) +
                                  tx * (1.0 - ty) * z(ci, cj - 1) + (1.0 - tx) * ty * z(ci - 1, cj) +
                                  tx * ty * z(ci, cj);

                // At matching levels the preimage is itself a grid node, so
                // evaluating phi there is exact: read it directly.
                const double pv = phi.values(static_cast<int>(kp * K), static_cast<int>(lp * K));
                const double value = sv * (pv - g) + hv;
                next.values(kk, ll) = value;
                gap = std::max(gap, std::abs(value - reference.values(kk, ll)));
            }
        }
        std::swap(phi, next);
        result.sup_gaps.push_back(gap);
    }
    result.surface = std::move(phi);
    return result;
}

}  // namespace rfis
