#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rfis/partition.hpp"

namespace rfis {

// Components of the part-index graph with edge u -> w when gamma_{w,u} > 0.
// A component must contain a cycle: singletons require gamma_rr > 0.
std::vector<std::vector<int>> connected_components(const Matrix& G);

// Degeneracy flags per cell, cell-major (i-1)*ny + (j-1). Cell (i,j) is
// degenerate when every cell of its ancestor closure either has all four
// corner factors zero or has its data lying exactly on the bilinear through
// the domain corners (checked as per-line collinearity).
std::vector<char> degenerate_cells(const BilinearRfis& rfis);

// Part r is degenerate when all its cells are; component V when all its
// parts are.
std::vector<char> part_degeneracy(const Partition& partition, const std::vector<char>& cell_flags);
std::vector<char> component_degeneracy(const std::vector<std::vector<int>>& components,
                                       const Partition& partition,
                                       const std::vector<char>& cell_flags);

// Spectral radius of a nonnegative matrix by power iteration on A + I (the
// shift removes periodicity), two-sided Rayleigh refinement at the end.
double spectral_radius(const Matrix& A);

// Positions P(r): 1 when no part outside r's component reaches r, else one
// more than the deepest such part.
std::vector<int> positions(const Matrix& G);

struct ComponentInfo {
    std::vector<int> members;  // sorted 1-based part indices
    Matrix submatrix;          // G restricted to members
    double rho = 0.0;
    double d = 0.0;            // log rho / log K
    bool degenerate = false;
};

struct ComponentReport {
    std::vector<ComponentInfo> components;
    std::vector<int> positions;        // P(r), entry r-1
    std::vector<char> part_degenerate; // entry r-1
    std::vector<char> cell_degenerate; // cell-major
};

struct DimensionReport {
    double dimension = 2.0;  // 1 + d_star
    double d_star = 1.0;
    int K = 0;
    TransferMatrix G;
    ComponentReport report;
    bool irreducible = false;
    // When G is irreducible: 1 for dim = 1 + log rho / log K, 2 for dim = 2.
    std::optional<int> irreducible_case;
    std::vector<std::string> warnings;
};

// Theoretical box-counting dimension 1 + max(d_1, ..., d_nc, 1) over the
// non-degenerate components. Validates homogeneity, steadiness,
// compatibility and uniform sums first and forwards the failing hypothesis.
DimensionReport theoretical_box_dimension(const BilinearRfis& rfis, const Partition& partition);

}  // namespace rfis
