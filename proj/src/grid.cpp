#include "rfis/grid.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace rfis {

namespace {

void require(bool cond, ErrorCode code, const std::string& message) {
    if (!cond) throw Error(code, message);
}

std::vector<double> normalize_axis(std::vector<double> nodes, const char* axis) {
    const int n = static_cast<int>(nodes.size()) - 1;
    for (int i = 0; i < n; ++i) {
        if (!(nodes[i] < nodes[i + 1])) {
            std::ostringstream os;
            os << axis << " nodes not strictly increasing at index " << i;
            throw Error(ErrorCode::NonMonotoneNodes, os.str());
        }
    }
    const double lo = nodes.front();
    const double span = nodes.back() - nodes.front();
    for (double& v : nodes) v = (v - lo) / span;
    nodes.front() = 0.0;
    nodes.back() = 1.0;
    return nodes;
}

}  // namespace

InterpolationData build_data(std::vector<double> x, std::vector<double> y, Matrix z) {
    const int nx = static_cast<int>(x.size()) - 1;
    const int ny = static_cast<int>(y.size()) - 1;
    require(nx >= 2 && ny >= 2, ErrorCode::ShapeMismatch, "need at least 2 cells per axis");
    require(z.rows() == nx + 1 && z.cols() == ny + 1, ErrorCode::ShapeMismatch,
            "z must be (N+1) x (M+1)");
    for (double v : x) require(std::isfinite(v), ErrorCode::NonMonotoneNodes, "non-finite x node");
    for (double v : y) require(std::isfinite(v), ErrorCode::NonMonotoneNodes, "non-finite y node");
    for (double v : z.data())
        require(std::isfinite(v), ErrorCode::NonFiniteHeight, "non-finite height");

    InterpolationData data;
    data.nx = nx;
    data.ny = ny;
    data.x = normalize_axis(std::move(x), "x");
    data.y = normalize_axis(std::move(y), "y");
    data.z = std::move(z);
    return data;
}

InterpolationData build_uniform_data(int nx, int ny, Matrix z) {
    std::vector<double> x(nx + 1), y(ny + 1);
    for (int i = 0; i <= nx; ++i) x[i] = static_cast<double>(i) / nx;
    for (int j = 0; j <= ny; ++j) y[j] = static_cast<double>(j) / ny;
    return build_data(std::move(x), std::move(y), std::move(z));
}

AddressMaps build_address_maps(const InterpolationData& data, std::vector<int> xprime_idx,
                               std::vector<int> yprime_idx) {
    require(static_cast<int>(xprime_idx.size()) == data.nx + 1, ErrorCode::ShapeMismatch,
            "xprime_idx must have N+1 entries");
    require(static_cast<int>(yprime_idx.size()) == data.ny + 1, ErrorCode::ShapeMismatch,
            "yprime_idx must have M+1 entries");
    for (int p : xprime_idx)
        require(p >= 0 && p <= data.nx, ErrorCode::IndexOutOfRange, "xprime index out of range");
    for (int q : yprime_idx)
        require(q >= 0 && q <= data.ny, ErrorCode::IndexOutOfRange, "yprime index out of range");

    AddressMaps maps;
    maps.xprime_idx = std::move(xprime_idx);
    maps.yprime_idx = std::move(yprime_idx);
    maps.sign_x.resize(data.nx);
    maps.sign_y.resize(data.ny);

    for (int i = 1; i <= data.nx; ++i) {
        const double span = std::abs(data.x[maps.xprime_idx[i]] - data.x[maps.xprime_idx[i - 1]]);
        const double cell = data.x[i] - data.x[i - 1];
        if (!(span > cell)) {
            std::ostringstream os;
            os << "|x'_" << i << " - x'_" << i - 1 << "| = " << span
               << " does not exceed |I_" << i << "| = " << cell;
            throw Error(ErrorCode::ExpansionViolation, os.str());
        }
        maps.sign_x[i - 1] = maps.xprime_idx[i] > maps.xprime_idx[i - 1] ? 1 : -1;
    }
    for (int j = 1; j <= data.ny; ++j) {
        const double span = std::abs(data.y[maps.yprime_idx[j]] - data.y[maps.yprime_idx[j - 1]]);
        const double cell = data.y[j] - data.y[j - 1];
        if (!(span > cell)) {
            std::ostringstream os;
            os << "|y'_" << j << " - y'_" << j - 1 << "| = " << span
               << " does not exceed |J_" << j << "| = " << cell;
            throw Error(ErrorCode::ExpansionViolation, os.str());
        }
        maps.sign_y[j - 1] = maps.yprime_idx[j] > maps.yprime_idx[j - 1] ? 1 : -1;
    }

    maps.zprime = Matrix(data.nx + 1, data.ny + 1);
    for (int i = 0; i <= data.nx; ++i)
        for (int j = 0; j <= data.ny; ++j)
            maps.zprime(i, j) = data.z(maps.xprime_idx[i], maps.yprime_idx[j]);
    return maps;
}

namespace {

// Affine map through (a_from -> a_to, b_from -> b_to), exact at both ends.
double affine_two_point(double a_from, double a_to, double b_from, double b_to, double t) {
    if (t == a_from) return a_to;
    if (t == b_from) return b_to;
    const double s = (t - a_from) / (b_from - a_from);
    return a_to + s * (b_to - a_to);
}

}  // namespace

double map_u(const InterpolationData& data, const AddressMaps& maps, int i, double xp) {
    return affine_two_point(data.x[maps.xprime_idx[i - 1]], data.x[i - 1],
                            data.x[maps.xprime_idx[i]], data.x[i], xp);
}

double map_v(const InterpolationData& data, const AddressMaps& maps, int j, double yp) {
    return affine_two_point(data.y[maps.yprime_idx[j - 1]], data.y[j - 1],
                            data.y[maps.yprime_idx[j]], data.y[j], yp);
}

double map_u_inv(const InterpolationData& data, const AddressMaps& maps, int i, double x) {
    return affine_two_point(data.x[i - 1], data.x[maps.xprime_idx[i - 1]],
                            data.x[i], data.x[maps.xprime_idx[i]], x);
}

double map_v_inv(const InterpolationData& data, const AddressMaps& maps, int j, double y) {
    return affine_two_point(data.y[j - 1], data.y[maps.yprime_idx[j - 1]],
                            data.y[j], data.y[maps.yprime_idx[j]], y);
}

std::pair<int, int> domain_x_range(const AddressMaps& maps, int i) {
    return std::minmax(maps.xprime_idx[i - 1], maps.xprime_idx[i]);
}

std::pair<int, int> domain_y_range(const AddressMaps& maps, int j) {
    return std::minmax(maps.yprime_idx[j - 1], maps.yprime_idx[j]);
}

HomogeneityCertificate check_homogeneity(const InterpolationData& data, const AddressMaps& maps,
                                         int K) {
    HomogeneityCertificate cert;
    cert.K = K;
    cert.uniform_spacing = true;
    cert.ratio = true;
    cert.domain_overlap = true;

    if (K < 2) {
        cert.ratio = false;
        cert.failures.push_back("refinement ratio K must be at least 2");
    }
    if (data.nx != data.ny) {
        cert.uniform_spacing = false;
        cert.failures.push_back("grid is not square (N != M)");
    }
    const double tol = 1e-12;
    for (int i = 0; i <= data.nx && cert.uniform_spacing; ++i) {
        if (std::abs(data.x[i] - static_cast<double>(i) / data.nx) > tol) {
            cert.uniform_spacing = false;
            std::ostringstream os;
            os << "x_" << i << " = " << data.x[i] << " is not " << i << "/" << data.nx;
            cert.failures.push_back(os.str());
        }
    }
    for (int j = 0; j <= data.ny && cert.uniform_spacing; ++j) {
        if (std::abs(data.y[j] - static_cast<double>(j) / data.ny) > tol) {
            cert.uniform_spacing = false;
            std::ostringstream os;
            os << "y_" << j << " = " << data.y[j] << " is not " << j << "/" << data.ny;
            cert.failures.push_back(os.str());
        }
    }

    for (int i = 1; i <= data.nx; ++i) {
        if (std::abs(maps.xprime_idx[i] - maps.xprime_idx[i - 1]) != K) {
            cert.ratio = false;
            std::ostringstream os;
            os << "|I'_" << i << "| spans " << std::abs(maps.xprime_idx[i] - maps.xprime_idx[i - 1])
               << " cells, expected " << K;
            cert.failures.push_back(os.str());
        }
    }
    for (int j = 1; j <= data.ny; ++j) {
        if (std::abs(maps.yprime_idx[j] - maps.yprime_idx[j - 1]) != K) {
            cert.ratio = false;
            std::ostringstream os;
            os << "|J'_" << j << "| spans " << std::abs(maps.yprime_idx[j] - maps.yprime_idx[j - 1])
               << " cells, expected " << K;
            cert.failures.push_back(os.str());
        }
    }

    // (4.3): any two cell domains coincide or have disjoint interiors.
    const int n_cells = data.nx * data.ny;
    for (int a = 0; a < n_cells; ++a) {
        const int i1 = a / data.ny + 1, j1 = a % data.ny + 1;
        const auto [x1lo, x1hi] = domain_x_range(maps, i1);
        const auto [y1lo, y1hi] = domain_y_range(maps, j1);
        for (int b = a + 1; b < n_cells; ++b) {
            const int i2 = b / data.ny + 1, j2 = b % data.ny + 1;
            const auto [x2lo, x2hi] = domain_x_range(maps, i2);
            const auto [y2lo, y2hi] = domain_y_range(maps, j2);
            const bool equal = x1lo == x2lo && x1hi == x2hi && y1lo == y2lo && y1hi == y2hi;
            const bool disjoint = x1hi <= x2lo || x2hi <= x1lo || y1hi <= y2lo || y2hi <= y1lo;
            if (!equal && !disjoint) {
                cert.domain_overlap = false;
                std::ostringstream os;
                os << "domains of cells (" << i1 << "," << j1 << ") and (" << i2 << "," << j2
                   << ") overlap without coinciding";
                cert.failures.push_back(os.str());
            }
        }
    }
    return cert;
}

std::vector<CellEdge> cell_dependency_edges(const AddressMaps& maps) {
    const int nx = static_cast<int>(maps.sign_x.size());
    const int ny = static_cast<int>(maps.sign_y.size());
    std::vector<CellEdge> edges;
    for (int i = 1; i <= nx; ++i) {
        const auto [xlo, xhi] = domain_x_range(maps, i);
        for (int j = 1; j <= ny; ++j) {
            const auto [ylo, yhi] = domain_y_range(maps, j);
            for (int k = xlo + 1; k <= xhi; ++k)
                for (int l = ylo + 1; l <= yhi; ++l)
                    edges.push_back({{i, j}, {k, l}});
        }
    }
    return edges;
}

}  // namespace rfis
