#include "rfis/partition.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>

namespace rfis {

Partition make_partition(int nx, int ny, std::vector<std::vector<Cell>> parts) {
    if (nx < 1 || ny < 1 || parts.empty())
        throw Error(ErrorCode::ShapeMismatch, "partition needs a cell grid and at least one part");

    Partition partition;
    partition.nx = nx;
    partition.ny = ny;
    partition.part_of.assign(static_cast<std::size_t>(nx) * ny, 0);

    for (std::size_t r = 0; r < parts.size(); ++r) {
        if (parts[r].empty()) {
            std::ostringstream os;
            os << "part " << r + 1 << " is empty";
            throw Error(ErrorCode::ShapeMismatch, os.str());
        }
        std::sort(parts[r].begin(), parts[r].end());
        for (const Cell& c : parts[r]) {
            if (c.i < 1 || c.i > nx || c.j < 1 || c.j > ny) {
                std::ostringstream os;
                os << "cell (" << c.i << "," << c.j << ") out of range in part " << r + 1;
                throw Error(ErrorCode::IndexOutOfRange, os.str());
            }
            int& slot = partition.part_of[static_cast<std::size_t>(c.i - 1) * ny + (c.j - 1)];
            if (slot != 0) {
                std::ostringstream os;
                os << "cell (" << c.i << "," << c.j << ") appears in parts " << slot << " and "
                   << r + 1;
                throw Error(ErrorCode::ShapeMismatch, os.str());
            }
            slot = static_cast<int>(r) + 1;
        }
    }
    for (int i = 1; i <= nx; ++i)
        for (int j = 1; j <= ny; ++j)
            if (partition.part_of[static_cast<std::size_t>(i - 1) * ny + (j - 1)] == 0) {
                std::ostringstream os;
                os << "cell (" << i << "," << j << ") is not covered by any part";
                throw Error(ErrorCode::ShapeMismatch, os.str());
            }
    partition.parts = std::move(parts);
    return partition;
}

std::vector<Cell> lambda_cells(const Partition& partition, int r) {
    return partition.parts.at(r - 1);
}

namespace {

// Part containing the whole domain D'_ij, or 0 when it straddles parts.
int domain_part(const Partition& partition, const AddressMaps& maps, int i, int j) {
    const auto [xlo, xhi] = domain_x_range(maps, i);
    const auto [ylo, yhi] = domain_y_range(maps, j);
    int part = 0;
    for (int k = xlo + 1; k <= xhi; ++k) {
        for (int l = ylo + 1; l <= yhi; ++l) {
            const int p = partition.part_of_cell(k, l);
            if (part == 0) part = p;
            if (p != part) return 0;
        }
    }
    return part;
}

}  // namespace

std::vector<Cell> lambda_prime_cells(const Partition& partition, const AddressMaps& maps, int t) {
    std::vector<Cell> cells;
    for (int i = 1; i <= partition.nx; ++i)
        for (int j = 1; j <= partition.ny; ++j)
            if (domain_part(partition, maps, i, j) == t) cells.push_back({i, j});
    return cells;
}

CompatibilityReport check_compatible(const Partition& partition, const AddressMaps& maps) {
    CompatibilityReport report;

    // Condition (1): each cell's domain lies inside a single part. (Cells
    // themselves lie in single parts by construction.)
    Matrix dom_part(partition.nx, partition.ny);
    for (int i = 1; i <= partition.nx; ++i) {
        for (int j = 1; j <= partition.ny; ++j) {
            const int t = domain_part(partition, maps, i, j);
            dom_part(i - 1, j - 1) = t;
            if (t == 0) {
                report.compatible = false;
                std::ostringstream os;
                os << "condition (1): domain of cell (" << i << "," << j
                   << ") is not contained in a single part";
                report.violations.push_back(os.str());
            }
        }
    }

    // Nonempty intersections Lambda_r with Lambda'_t.
    std::set<std::pair<int, int>> pairs;
    for (int i = 1; i <= partition.nx; ++i)
        for (int j = 1; j <= partition.ny; ++j) {
            const int r = partition.part_of_cell(i, j);
            const int t = static_cast<int>(dom_part(i - 1, j - 1));
            if (t != 0) pairs.insert({r, t});
        }
    report.nonempty_intersections.assign(pairs.begin(), pairs.end());

    // Condition (2): B_t is tiled exactly by the domains of Lambda_r cap
    // Lambda'_t, for every intersecting pair.
    for (const auto& [r, t] : report.nonempty_intersections) {
        std::set<Cell> covered;
        for (const Cell& c : partition.parts[r - 1]) {
            if (static_cast<int>(dom_part(c.i - 1, c.j - 1)) != t) continue;
            const auto [xlo, xhi] = domain_x_range(maps, c.i);
            const auto [ylo, yhi] = domain_y_range(maps, c.j);
            for (int k = xlo + 1; k <= xhi; ++k)
                for (int l = ylo + 1; l <= yhi; ++l) covered.insert({k, l});
        }
        const std::vector<Cell>& target = partition.parts[t - 1];
        if (!std::equal(target.begin(), target.end(), covered.begin(), covered.end())) {
            report.compatible = false;
            std::ostringstream os;
            os << "condition (2): domains of Lambda_" << r << " cap Lambda'_" << t
               << " do not tile B_" << t;
            report.violations.push_back(os.str());
        }
    }
    return report;
}

SteadyReport check_steady(const ScalingFactors& scaling) {
    SteadyReport report;
    const Matrix& s = scaling.s;
    for (int i = 1; i < s.rows(); ++i) {
        for (int j = 1; j < s.cols(); ++j) {
            const double a = s(i - 1, j - 1), b = s(i - 1, j), c = s(i, j - 1), d = s(i, j);
            const bool nonneg = a >= 0 && b >= 0 && c >= 0 && d >= 0;
            const bool nonpos = a <= 0 && b <= 0 && c <= 0 && d <= 0;
            if (!nonneg && !nonpos) {
                report.steady = false;
                report.offending.push_back({i, j});
            }
        }
    }
    return report;
}

namespace {

struct DomainRect {
    int alpha = 0, beta = 0;
    auto operator<=>(const DomainRect&) const = default;
};

// Node index hit by u_i at the x_alpha / x_{alpha+K} corner of the domain.
int corner_node_x(const AddressMaps& maps, int i, int alpha, int K, int corner) {
    const int target = alpha + corner * K;
    return maps.xprime_idx[i - 1] == target ? i - 1 : i;
}

int corner_node_y(const AddressMaps& maps, int j, int beta, int K, int corner) {
    const int target = beta + corner * K;
    return maps.yprime_idx[j - 1] == target ? j - 1 : j;
}

}  // namespace

TransferMatrix compute_uniform_sums(const BilinearRfis& rfis, const Partition& partition) {
    if (!rfis.cert.ok())
        throw Error(ErrorCode::HomogeneityRequired,
                    "uniform sums are defined under the homogeneity hypotheses");
    const AddressMaps& maps = rfis.maps;
    const Matrix& s = rfis.scaling.s;
    const int K = rfis.cert.K;
    const int m = partition.size();

    TransferMatrix G;
    G.m = m;
    G.gamma = Matrix(m, m);

    for (int r = 1; r <= m; ++r) {
        // Group Lambda_r by domain rectangle and find the owning part of each.
        std::map<DomainRect, std::vector<Cell>> classes;
        for (const Cell& c : partition.parts[r - 1])
            classes[{domain_x_range(maps, c.i).first, domain_y_range(maps, c.j).first}].push_back(c);
        std::map<int, std::vector<DomainRect>> by_part;  // t -> its domain rectangles
        for (const auto& [rect, cells] : classes) {
            const Cell& c = cells.front();
            const int t = domain_part(partition, maps, c.i, c.j);
            if (t <= 0)
                throw Error(ErrorCode::HypothesisViolation,
                            "uniform sums need a compatible partition (domain straddles parts)");
            by_part[t].push_back(rect);
        }

        for (const auto& [t, rects] : by_part) {
            bool have_ref = false;
            double gamma = 0.0;
            for (const DomainRect& rect : rects) {
                const std::vector<Cell>& cells = classes[rect];
                for (int cx = 0; cx <= 1; ++cx) {
                    for (int cy = 0; cy <= 1; ++cy) {
                        double sum = 0.0;
                        for (const Cell& c : cells) {
                            const int p = corner_node_x(maps, c.i, rect.alpha, K, cx);
                            const int q = corner_node_y(maps, c.j, rect.beta, K, cy);
                            sum += std::abs(s(p, q));
                        }
                        if (!have_ref) {
                            gamma = sum;
                            have_ref = true;
                        } else if (std::abs(sum - gamma) > 1e-9) {
                            throw UniformSumError(r, t, rect.alpha, rect.beta, cx, cy, sum, gamma);
                        }
                    }
                }
            }
            G.gamma(r - 1, t - 1) = gamma;
        }
    }
    return G;
}

InteriorUniformityReport verify_interior_uniformity(const BilinearRfis& rfis,
                                                    const Partition& partition,
                                                    const TransferMatrix& G,
                                                    int samples_per_axis) {
    if (!rfis.cert.ok())
        throw Error(ErrorCode::HomogeneityRequired,
                    "interior uniformity is defined under the homogeneity hypotheses");
    const AddressMaps& maps = rfis.maps;
    const InterpolationData& data = rfis.data;
    InteriorUniformityReport report;
    const int ns = std::max(samples_per_axis, 1);

    for (int r = 1; r <= partition.size(); ++r) {
        std::map<DomainRect, std::vector<Cell>> classes;
        for (const Cell& c : partition.parts[r - 1])
            classes[{domain_x_range(maps, c.i).first, domain_y_range(maps, c.j).first}].push_back(c);
        for (const auto& [rect, cells] : classes) {
            const int t = domain_part(partition, maps, cells.front().i, cells.front().j);
            if (t <= 0) continue;
            const double gamma = G.gamma(r - 1, t - 1);
            const double xa = data.x[rect.alpha], xb = data.x[rect.alpha + rfis.cert.K];
            const double ya = data.y[rect.beta], yb = data.y[rect.beta + rfis.cert.K];
            double worst = 0.0;
            for (int a = 1; a <= ns; ++a) {
                const double x = xa + (xb - xa) * a / (ns + 1);
                for (int b = 1; b <= ns; ++b) {
                    const double y = ya + (yb - ya) * b / (ns + 1);
                    double sum = 0.0;
                    for (const Cell& c : cells) {
                        const double ux = map_u(data, maps, c.i, x);
                        const double vy = map_v(data, maps, c.j, y);
                        sum += std::abs(eval_field(rfis, Field::S, ux, vy));
                    }
                    worst = std::max(worst, std::abs(sum - gamma));
                }
            }
            report.entries.push_back({r, t, rect.alpha, rect.beta, worst});
            report.max_deviation = std::max(report.max_deviation, worst);
        }
    }
    return report;
}

}  // namespace rfis
