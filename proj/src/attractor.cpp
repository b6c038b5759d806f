#include "rfis/attractor.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <vector>

namespace rfis {

namespace {

// Occupied voxels of one cell, with one exact representative point per
// voxel. The iteration advances the exact points (images of true orbit
// points stay true orbit points, so no snapping error is ever re-injected);
// the voxel grid only deduplicates and defines the measured point set.
struct CellCloud {
    int x0 = 0, y0 = 0;  // first column of the cell
    int cpc = 0;         // columns per cell edge
    // Per local column: sorted voxel z indices and matching representatives.
    std::vector<std::vector<int>> zs;
    std::vector<std::vector<Point3>> reps;

    int col(int vx, int vy) const { return (vx - x0) * cpc + (vy - y0); }

    bool insert(int vx, int vy, int vz, const Point3& p) {
        auto& z = zs[col(vx, vy)];
        auto it = std::lower_bound(z.begin(), z.end(), vz);
        if (it != z.end() && *it == vz) return false;
        auto& r = reps[col(vx, vy)];
        r.insert(r.begin() + (it - z.begin()), p);
        z.insert(it, vz);
        return true;
    }

    template <typename Fn>
    void for_each(Fn&& fn) const {
        for (int c = 0; c < cpc * cpc; ++c) {
            const int vx = x0 + c / cpc, vy = y0 + c % cpc;
            for (std::size_t a = 0; a < zs[c].size(); ++a) fn(vx, vy, zs[c][a], reps[c][a]);
        }
    }
};

CellCloud make_cloud(int x0, int y0, int cpc) {
    CellCloud cloud;
    cloud.x0 = x0;
    cloud.y0 = y0;
    cloud.cpc = cpc;
    cloud.zs.resize(static_cast<std::size_t>(cpc) * cpc);
    cloud.reps.resize(static_cast<std::size_t>(cpc) * cpc);
    return cloud;
}

// Power-of-two block pyramid over a cloud's columns carrying z-range hulls,
// for exact nearest-voxel queries in integer voxel units.
struct BlockPyramid {
    struct Block {
        int zlo = 0, zhi = 0;
        bool occupied = false;
    };
    int x0 = 0, y0 = 0, cpc = 0, size = 1;
    std::vector<std::vector<Block>> levels;  // levels[0]: size x size base blocks
    const CellCloud* cloud = nullptr;

    static std::int64_t sq(std::int64_t v) { return v * v; }

    // Squared planar distance from voxel column q to the block's column box.
    static std::int64_t box_dist_sq(int qx, int qy, int bx0, int by0, int extent) {
        std::int64_t dx = 0, dy = 0;
        if (qx < bx0) dx = bx0 - qx;
        else if (qx > bx0 + extent - 1) dx = qx - (bx0 + extent - 1);
        if (qy < by0) dy = by0 - qy;
        else if (qy > by0 + extent - 1) dy = qy - (by0 + extent - 1);
        return sq(dx) + sq(dy);
    }

    void build(const CellCloud& c) {
        cloud = &c;
        x0 = c.x0;
        y0 = c.y0;
        cpc = c.cpc;
        size = 1;
        while (size < cpc) size *= 2;
        levels.clear();
        levels.emplace_back(static_cast<std::size_t>(size) * size);
        for (int lx = 0; lx < size; ++lx) {
            for (int ly = 0; ly < size; ++ly) {
                Block& b = levels[0][static_cast<std::size_t>(lx) * size + ly];
                if (lx < cpc && ly < cpc) {
                    const auto& z = c.zs[lx * cpc + ly];
                    if (!z.empty()) {
                        b.occupied = true;
                        b.zlo = z.front();
                        b.zhi = z.back();
                    }
                }
            }
        }
        for (int extent = size / 2; extent >= 1; extent /= 2) {
            const int prev_n = static_cast<int>(std::sqrt(static_cast<double>(levels.back().size())));
            const int n = prev_n / 2;
            if (n < 1) break;
            std::vector<Block> coarse(static_cast<std::size_t>(n) * n);
            const auto& fine = levels.back();
            for (int lx = 0; lx < n; ++lx) {
                for (int ly = 0; ly < n; ++ly) {
                    Block& b = coarse[static_cast<std::size_t>(lx) * n + ly];
                    for (int ax = 0; ax < 2; ++ax)
                        for (int ay = 0; ay < 2; ++ay) {
                            const Block& f =
                                fine[static_cast<std::size_t>(2 * lx + ax) * prev_n + (2 * ly + ay)];
                            if (!f.occupied) continue;
                            if (!b.occupied) {
                                b = f;
                            } else {
                                b.zlo = std::min(b.zlo, f.zlo);
                                b.zhi = std::max(b.zhi, f.zhi);
                            }
                        }
                }
            }
            levels.push_back(std::move(coarse));
        }
    }

    // Squared distance in voxel units from voxel (qx,qy,qz) to the nearest
    // occupied voxel of the cloud.
    std::int64_t nearest_sq(int qx, int qy, int qz) const {
        std::int64_t best = std::numeric_limits<std::int64_t>::max();
        descend(static_cast<int>(levels.size()) - 1, 0, 0, qx, qy, qz, best);
        return best;
    }

private:
    void descend(int level, int lx, int ly, int qx, int qy, int qz, std::int64_t& best) const {
        const int n = static_cast<int>(std::sqrt(static_cast<double>(levels[level].size())));
        const Block& b = levels[level][static_cast<std::size_t>(lx) * n + ly];
        if (!b.occupied) return;
        const int extent = size / n;
        const std::int64_t planar = box_dist_sq(qx, qy, x0 + lx * extent, y0 + ly * extent, extent);
        std::int64_t dz = 0;
        if (qz < b.zlo) dz = b.zlo - qz;
        else if (qz > b.zhi) dz = qz - b.zhi;
        const std::int64_t lower = planar + sq(dz);
        if (lower >= best) return;
        if (level == 0) {
            if (lx >= cpc || ly >= cpc) return;
            const auto& z = cloud->zs[lx * cpc + ly];
            auto it = std::lower_bound(z.begin(), z.end(), qz);
            if (it != z.end()) best = std::min(best, planar + sq(*it - qz));
            if (it != z.begin()) best = std::min(best, planar + sq(*(it - 1) - qz));
            return;
        }
        // Visit children nearest-first for tighter pruning.
        struct Child {
            std::int64_t d;
            int cx, cy;
        };
        Child children[4];
        int count = 0;
        const int child_extent = extent / 2;
        for (int ax = 0; ax < 2; ++ax)
            for (int ay = 0; ay < 2; ++ay) {
                const int cx = 2 * lx + ax, cy = 2 * ly + ay;
                children[count++] = {
                    box_dist_sq(qx, qy, x0 + cx * child_extent, y0 + cy * child_extent, child_extent),
                    cx, cy};
            }
        std::sort(children, children + 4, [](const Child& a, const Child& b) { return a.d < b.d; });
        for (int c = 0; c < count; ++c)
            descend(level - 1, children[c].cx, children[c].cy, qx, qy, qz, best);
    }
};

int voxel_of(double coord, std::int64_t grid) {
    return static_cast<int>(std::floor(coord * static_cast<double>(grid)));
}

// Voxel of a point of cell (ci, cj), clamped so boundary points stay in the
// cell's own columns.
std::array<int, 3> voxel_in_cell(const Point3& p, std::int64_t grid, int cpc, int ci, int cj) {
    const int xlo = (ci - 1) * cpc, ylo = (cj - 1) * cpc;
    return {std::clamp(voxel_of(p[0], grid), xlo, xlo + cpc - 1),
            std::clamp(voxel_of(p[1], grid), ylo, ylo + cpc - 1), voxel_of(p[2], grid)};
}

std::int64_t directed_sq(const CellCloud& from, const BlockPyramid& to) {
    std::int64_t worst = 0;
    from.for_each([&](int vx, int vy, int vz, const Point3&) {
        worst = std::max(worst, to.nearest_sq(vx, vy, vz));
    });
    return worst;
}

}  // namespace

CellPointSets graph_voxel_points(const BilinearRfis& rfis, int voxel_level) {
    const int N = rfis.data.nx;
    const int K = rfis.cert.K;
    const SampledSurface fine = sample_surface(rfis, voxel_level + 2);
    std::int64_t grid = N;
    for (int m = 0; m < voxel_level; ++m) grid *= K;
    const double eps = 1.0 / static_cast<double>(grid);
    const std::int64_t sub = fine.side / grid;  // fine nodes per voxel edge
    const std::int64_t cols_per_cell = grid / N;

    CellPointSets sets(static_cast<std::size_t>(N) * N);
    for (int i = 1; i <= N; ++i) {
        for (int j = 1; j <= N; ++j) {
            auto& points = sets[static_cast<std::size_t>(i - 1) * N + (j - 1)];
            for (std::int64_t vx = (i - 1) * cols_per_cell; vx < i * cols_per_cell; ++vx) {
                for (std::int64_t vy = (j - 1) * cols_per_cell; vy < j * cols_per_cell; ++vy) {
                    double lo = fine.values(static_cast<int>(vx * sub), static_cast<int>(vy * sub));
                    double hi = lo;
                    for (std::int64_t a = vx * sub; a <= (vx + 1) * sub; ++a) {
                        for (std::int64_t b = vy * sub; b <= (vy + 1) * sub; ++b) {
                            const double v = fine.values(static_cast<int>(a), static_cast<int>(b));
                            lo = std::min(lo, v);
                            hi = std::max(hi, v);
                        }
                    }
                    for (int iz = voxel_of(lo, grid); iz <= voxel_of(hi, grid); ++iz)
                        points.push_back({(vx + 0.5) * eps, (vy + 0.5) * eps, (iz + 0.5) * eps});
                }
            }
        }
    }
    return sets;
}

CellPointSets cell_corner_start(const BilinearRfis& rfis) {
    const int N = rfis.data.nx, M = rfis.data.ny;
    CellPointSets sets(static_cast<std::size_t>(N) * M);
    for (int i = 1; i <= N; ++i)
        for (int j = 1; j <= M; ++j)
            sets[static_cast<std::size_t>(i - 1) * M + (j - 1)] = {
                {rfis.data.x[i - 1], rfis.data.y[j - 1], 0.0},
                {rfis.data.x[i], rfis.data.y[j - 1], 0.0},
                {rfis.data.x[i - 1], rfis.data.y[j], 0.0},
                {rfis.data.x[i], rfis.data.y[j], 0.0}};
    return sets;
}

AttractorCheckResult attractor_convergence_check(const BilinearRfis& rfis, int voxel_level,
                                                 int steps) {
    return attractor_convergence_check(rfis, voxel_level, steps, cell_corner_start(rfis));
}

AttractorCheckResult attractor_convergence_check(const BilinearRfis& rfis, int voxel_level,
                                                 int steps, const CellPointSets& start) {
    const int N = rfis.data.nx;
    if (!rfis.cert.ok())
        throw Error(ErrorCode::HomogeneityRequired,
                    "attractor check needs the homogeneity certificate");
    if (steps < 1) throw Error(ErrorCode::LevelMismatch, "attractor check needs steps >= 1");
    if (static_cast<int>(start.size()) != N * N)
        throw Error(ErrorCode::ShapeMismatch, "start tuple needs one point set per cell");
    for (const auto& pts : start)
        if (pts.empty()) throw Error(ErrorCode::EmptyStartSet, "empty start set for some cell");

    const int K = rfis.cert.K;
    std::int64_t grid = N;
    for (int m = 0; m < voxel_level; ++m) grid *= K;
    const double eps = 1.0 / static_cast<double>(grid);
    const int cpc = static_cast<int>(grid / N);

    AttractorCheckResult result;
    result.voxel_size = eps;
    result.voxel_diagonal = std::sqrt(3.0) * eps;

    auto cloud_at = [&](int i, int j) { return make_cloud((i - 1) * cpc, (j - 1) * cpc, cpc); };

    // Voxelized graph target per cell plus its query pyramid; the fine
    // surface also backs the z-deviation proxy.
    const CellPointSets graph_points = graph_voxel_points(rfis, voxel_level);
    std::vector<CellCloud> graph;
    std::vector<BlockPyramid> graph_nn(static_cast<std::size_t>(N) * N);
    graph.reserve(static_cast<std::size_t>(N) * N);
    for (int i = 1; i <= N; ++i)
        for (int j = 1; j <= N; ++j) {
            CellCloud cloud = cloud_at(i, j);
            for (const Point3& p : graph_points[static_cast<std::size_t>(i - 1) * N + (j - 1)]) {
                const auto v = voxel_in_cell(p, grid, cpc, i, j);
                cloud.insert(v[0], v[1], v[2], p);
            }
            graph.push_back(std::move(cloud));
        }
    for (std::size_t c = 0; c < graph.size(); ++c) graph_nn[c].build(graph[c]);
    const SampledSurface fine = sample_surface(rfis, voxel_level + 2);

    // Sources per target cell: the cells covered by D'_ij.
    std::vector<std::vector<int>> sources(static_cast<std::size_t>(N) * N);
    for (const CellEdge& e : cell_dependency_edges(rfis.maps))
        sources[static_cast<std::size_t>(e.from.i - 1) * N + (e.from.j - 1)].push_back(
            (e.to.i - 1) * N + (e.to.j - 1));

    std::vector<CellCloud> current;
    current.reserve(start.size());
    for (int i = 1; i <= N; ++i)
        for (int j = 1; j <= N; ++j) {
            CellCloud cloud = cloud_at(i, j);
            for (const Point3& p : start[static_cast<std::size_t>(i - 1) * N + (j - 1)]) {
                const auto v = voxel_in_cell(p, grid, cpc, i, j);
                cloud.insert(v[0], v[1], v[2], p);
            }
            current.push_back(std::move(cloud));
        }

    for (int step = 0; step < steps; ++step) {
        std::vector<CellCloud> next;
        next.reserve(current.size());
        for (int i = 1; i <= N; ++i) {
            for (int j = 1; j <= N; ++j) {
                CellCloud cloud = cloud_at(i, j);
                for (int src : sources[static_cast<std::size_t>(i - 1) * N + (j - 1)]) {
                    current[src].for_each([&](int, int, int, const Point3& p) {
                        const Point3 image = eval_W(rfis, i, j, p);
                        const auto v = voxel_in_cell(image, grid, cpc, i, j);
                        cloud.insert(v[0], v[1], v[2], image);
                    });
                }
                next.push_back(std::move(cloud));
            }
        }
        current = std::move(next);

        std::int64_t worst_sq = 0;
        double zdev = 0.0;
        for (std::size_t c = 0; c < current.size(); ++c) {
            BlockPyramid a_nn;
            a_nn.build(current[c]);
            worst_sq = std::max(worst_sq, directed_sq(current[c], graph_nn[c]));
            worst_sq = std::max(worst_sq, directed_sq(graph[c], a_nn));
            current[c].for_each([&](int, int, int, const Point3& p) {
                const int k =
                    std::clamp(static_cast<int>(std::llround(p[0] * fine.side)), 0, fine.side);
                const int l =
                    std::clamp(static_cast<int>(std::llround(p[1] * fine.side)), 0, fine.side);
                zdev = std::max(zdev, std::abs(p[2] - fine.values(k, l)));
            });
        }
        result.distances.push_back(std::sqrt(static_cast<double>(worst_sq)) * eps);
        result.z_deviation.push_back(zdev);
    }
    return result;
}

}  // namespace rfis
