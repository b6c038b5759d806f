#include "rfis/surface.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace rfis {

ScalingFactors make_scaling(Matrix s) {
    for (double v : s.data()) {
        if (!std::isfinite(v) || !(std::abs(v) < 1.0)) {
            std::ostringstream os;
            os.precision(17);
            os << "scaling factor " << v << " violates |s| < 1";
            throw Error(ErrorCode::ScalingOutOfRange, os.str());
        }
    }
    return ScalingFactors{std::move(s)};
}

BilinearRfis make_rfis(InterpolationData data, AddressMaps maps, ScalingFactors scaling) {
    if (scaling.s.rows() != data.nx + 1 || scaling.s.cols() != data.ny + 1)
        throw Error(ErrorCode::ShapeMismatch, "scaling matrix must match the node grid");

    BilinearRfis rfis;
    rfis.g_corners.resize(static_cast<std::size_t>(data.nx) * data.ny);
    rfis.alpha_cell = Matrix(data.nx, data.ny);
    rfis.alpha = 0.0;
    for (int i = 1; i <= data.nx; ++i) {
        for (int j = 1; j <= data.ny; ++j) {
            GCorners& gc = rfis.g_corners[static_cast<std::size_t>(i - 1) * data.ny + (j - 1)];
            gc.c00 = maps.zprime(i - 1, j - 1);
            gc.c10 = maps.zprime(i, j - 1);
            gc.c01 = maps.zprime(i - 1, j);
            gc.c11 = maps.zprime(i, j);
            const double a = std::max(
                std::max(std::abs(scaling.s(i - 1, j - 1)), std::abs(scaling.s(i - 1, j))),
                std::max(std::abs(scaling.s(i, j - 1)), std::abs(scaling.s(i, j))));
            rfis.alpha_cell(i - 1, j - 1) = a;
            rfis.alpha = std::max(rfis.alpha, a);
        }
    }

    const int K = data.nx >= 1 ? std::abs(maps.xprime_idx[1] - maps.xprime_idx[0]) : 0;
    rfis.cert = check_homogeneity(data, maps, K);

    rfis.data = std::move(data);
    rfis.maps = std::move(maps);
    rfis.scaling = std::move(scaling);
    return rfis;
}

BilinearRfis perturbed_g_corner(const BilinearRfis& rfis, int i, int j, int corner, double delta) {
    BilinearRfis out = rfis;
    GCorners& gc = out.g_corners[static_cast<std::size_t>(i - 1) * rfis.data.ny + (j - 1)];
    switch (corner) {
        case 0: gc.c00 += delta; break;
        case 1: gc.c10 += delta; break;
        case 2: gc.c01 += delta; break;
        default: gc.c11 += delta; break;
    }
    return out;
}

namespace {

// Index of the cell whose closed interval contains x; boundary nodes go to
// the left cell except x = nodes.front().
int locate_cell(const std::vector<double>& nodes, double x) {
    const int n = static_cast<int>(nodes.size()) - 1;
    const int idx = static_cast<int>(std::upper_bound(nodes.begin(), nodes.end(), x) - nodes.begin());
    return std::clamp(idx, 1, n);
}

double bilinear_in_cell(const Matrix& corners, int ci, int cj, double tx, double ty) {
    return (1.0 - tx) * (1.0 - ty) * corners(ci - 1, cj - 1) +
           tx * (1.0 - ty) * corners(ci, cj - 1) +
           (1.0 - tx) * ty * corners(ci - 1, cj) +
           tx * ty * corners(ci, cj);
}

}  // namespace

double eval_field(const BilinearRfis& rfis, Field which, double x, double y) {
    const InterpolationData& d = rfis.data;
    if (!(x >= 0.0 && x <= 1.0 && y >= 0.0 && y <= 1.0))
        throw Error(ErrorCode::OutOfDomain, "eval_field: point outside [0,1]^2");
    const int ci = locate_cell(d.x, x);
    const int cj = locate_cell(d.y, y);
    const double tx = (x - d.x[ci - 1]) / (d.x[ci] - d.x[ci - 1]);
    const double ty = (y - d.y[cj - 1]) / (d.y[cj] - d.y[cj - 1]);
    const Matrix& m = which == Field::h ? d.z : rfis.scaling.s;
    return bilinear_in_cell(m, ci, cj, tx, ty);
}

double eval_g(const BilinearRfis& rfis, int i, int j, double x, double y) {
    const InterpolationData& d = rfis.data;
    const AddressMaps& m = rfis.maps;
    if (i < 1 || i > d.nx || j < 1 || j > d.ny)
        throw Error(ErrorCode::IndexOutOfRange, "eval_g: cell index out of range");
    const double xp0 = d.x[m.xprime_idx[i - 1]], xp1 = d.x[m.xprime_idx[i]];
    const double yp0 = d.y[m.yprime_idx[j - 1]], yp1 = d.y[m.yprime_idx[j]];
    if (!(x >= std::min(xp0, xp1) && x <= std::max(xp0, xp1) &&
          y >= std::min(yp0, yp1) && y <= std::max(yp0, yp1)))
        throw Error(ErrorCode::OutOfDomain, "eval_g: point outside D'_ij");
    const double lambda = (xp1 - x) / (xp1 - xp0);
    const double mu = (yp1 - y) / (yp1 - yp0);
    const GCorners& gc = rfis.g_at(i, j);
    return lambda * mu * gc.c00 + (1.0 - lambda) * mu * gc.c10 +
           lambda * (1.0 - mu) * gc.c01 + (1.0 - lambda) * (1.0 - mu) * gc.c11;
}

double eval_F(const BilinearRfis& rfis, int i, int j, double x, double y, double z) {
    const double ux = map_u(rfis.data, rfis.maps, i, x);
    const double vy = map_v(rfis.data, rfis.maps, j, y);
    const double g = eval_g(rfis, i, j, x, y);
    const double s = eval_field(rfis, Field::S, ux, vy);
    const double h = eval_field(rfis, Field::h, ux, vy);
    return s * (z - g) + h;
}

std::array<double, 3> eval_W(const BilinearRfis& rfis, int i, int j, std::array<double, 3> p) {
    return {map_u(rfis.data, rfis.maps, i, p[0]),
            map_v(rfis.data, rfis.maps, j, p[1]),
            eval_F(rfis, i, j, p[0], p[1], p[2])};
}

MatchableReport check_matchable(const BilinearRfis& rfis, int samples_per_edge) {
    const InterpolationData& d = rfis.data;
    const AddressMaps& m = rfis.maps;
    MatchableReport report;
    const int ns = std::max(samples_per_edge, 2);

    double zlo = d.z.data()[0], zhi = zlo;
    for (double v : d.z.data()) {
        zlo = std::min(zlo, v);
        zhi = std::max(zhi, v);
    }
    const double zs[3] = {zlo - 1.0, 0.5 * (zlo + zhi), zhi + 1.0};

    // Vertical seams x = x_i: F_ij vs F_{i+1,j} at x* = x'_i over J'_j.
    for (int i = 1; i < d.nx; ++i) {
        const double xstar = d.x[m.xprime_idx[i]];
        for (int j = 1; j <= d.ny; ++j) {
            const double ya = d.y[m.yprime_idx[j - 1]], yb = d.y[m.yprime_idx[j]];
            double worst = 0.0;
            for (int a = 0; a < ns; ++a) {
                const double t = static_cast<double>(a) / (ns - 1);
                const double y = ya + t * (yb - ya);
                for (double z : zs)
                    worst = std::max(worst, std::abs(eval_F(rfis, i, j, xstar, y, z) -
                                                     eval_F(rfis, i + 1, j, xstar, y, z)));
            }
            report.seams.push_back({true, i, j, worst});
            report.max_discrepancy = std::max(report.max_discrepancy, worst);
        }
    }
    // Horizontal seams y = y_j.
    for (int j = 1; j < d.ny; ++j) {
        const double ystar = d.y[m.yprime_idx[j]];
        for (int i = 1; i <= d.nx; ++i) {
            const double xa = d.x[m.xprime_idx[i - 1]], xb = d.x[m.xprime_idx[i]];
            double worst = 0.0;
            for (int a = 0; a < ns; ++a) {
                const double t = static_cast<double>(a) / (ns - 1);
                const double x = xa + t * (xb - xa);
                for (double z : zs)
                    worst = std::max(worst, std::abs(eval_F(rfis, i, j, x, ystar, z) -
                                                     eval_F(rfis, i, j + 1, x, ystar, z)));
            }
            report.seams.push_back({false, i, j, worst});
            report.max_discrepancy = std::max(report.max_discrepancy, worst);
        }
    }
    return report;
}

}  // namespace rfis
