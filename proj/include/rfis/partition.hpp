#pragma once

#include <string>
#include <utility>
#include <vector>

#include "rfis/surface.hpp"

namespace rfis {

// Partition {B_r} of [0,1]^2 into unions of whole cells. Parts are stored
// as cell-index sets so every compatibility question is integer set algebra.
struct Partition {
    int nx = 0, ny = 0;
    std::vector<std::vector<Cell>> parts;  // B_r, r = index + 1, cells sorted
    std::vector<int> part_of;              // (i-1)*ny + (j-1) -> r (1-based)

    int size() const { return static_cast<int>(parts.size()); }
    int part_of_cell(int i, int j) const {
        return part_of[static_cast<std::size_t>(i - 1) * ny + (j - 1)];
    }
};

// Validates that the parts cover every cell exactly once.
Partition make_partition(int nx, int ny, std::vector<std::vector<Cell>> parts);

// Lambda_r = cells of B_r; Lambda'_t = cells whose domain D'_ij lies in B_t.
std::vector<Cell> lambda_cells(const Partition& partition, int r);
std::vector<Cell> lambda_prime_cells(const Partition& partition, const AddressMaps& maps, int t);

struct CompatibilityReport {
    bool compatible = true;
    std::vector<std::string> violations;
    // Sorted (r, t) with Lambda_r intersect Lambda'_t nonempty.
    std::vector<std::pair<int, int>> nonempty_intersections;
};

// Checks both compatibility conditions and reports every violation.
CompatibilityReport check_compatible(const Partition& partition, const AddressMaps& maps);

struct SteadyReport {
    bool steady = true;
    std::vector<Cell> offending;  // cells whose four corner factors mix signs
};

SteadyReport check_steady(const ScalingFactors& scaling);

// Transfer matrix G = (gamma_rt) of uniform sums; gamma_rt = 0 when
// Lambda_r intersect Lambda'_t is empty.
struct TransferMatrix {
    int m = 0;
    Matrix gamma;  // m x m, gamma(r-1, t-1)
};

// Computes every corner sum sum_{(i,j) in Lambda_r(alpha,beta)} |S(...)| and
// requires agreement (1e-9 absolute) across corners and domain rectangles;
// throws UniformSumError on the first disagreement in sorted (r,t,alpha,beta,
// corner) order. Requires the homogeneity certificate.
TransferMatrix compute_uniform_sums(const BilinearRfis& rfis, const Partition& partition);

struct InteriorUniformityEntry {
    int r = 0, t = 0, alpha = 0, beta = 0;
    double max_deviation = 0.0;
};

struct InteriorUniformityReport {
    double max_deviation = 0.0;
    std::vector<InteriorUniformityEntry> entries;
};

// Samples interior points of each domain rectangle and checks that the
// |S|-sums equal gamma_rt, the conclusion steadiness buys on top of corner
// agreement.
InteriorUniformityReport verify_interior_uniformity(const BilinearRfis& rfis,
                                                    const Partition& partition,
                                                    const TransferMatrix& G,
                                                    int samples_per_axis);

}  // namespace rfis
