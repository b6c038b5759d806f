#include "rfis/dimension.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <sstream>

namespace rfis {

namespace {

// reach(u, w): a path of length >= 1 from u+1 to w+1 exists. An edge
// u -> w exists when gamma_{w,u} > 0.
std::vector<std::vector<char>> reachability(const Matrix& G) {
    const int m = G.rows();
    std::vector<std::vector<char>> reach(m, std::vector<char>(m, 0));
    for (int u = 0; u < m; ++u)
        for (int w = 0; w < m; ++w) reach[u][w] = G(w, u) > 0.0;
    for (int k = 0; k < m; ++k)
        for (int u = 0; u < m; ++u)
            if (reach[u][k])
                for (int w = 0; w < m; ++w)
                    if (reach[k][w]) reach[u][w] = 1;
    return reach;
}

}  // namespace

std::vector<std::vector<int>> connected_components(const Matrix& G) {
    if (G.rows() != G.cols())
        throw Error(ErrorCode::ShapeMismatch, "transfer matrix must be square");
    for (double v : G.data())
        if (!(v >= 0.0)) throw Error(ErrorCode::NotNonnegative, "transfer matrix must be nonnegative");

    const int m = G.rows();
    const auto reach = reachability(G);
    std::vector<char> assigned(m, 0);
    std::vector<std::vector<int>> components;
    for (int r = 0; r < m; ++r) {
        if (assigned[r]) continue;
        if (!reach[r][r]) continue;  // no cycle through r: not in any component
        std::vector<int> members;
        for (int t = 0; t < m; ++t)
            if (reach[r][t] && reach[t][r]) members.push_back(t + 1);
        // r itself satisfies reach[r][r] both ways.
        for (int t : members) assigned[t - 1] = 1;
        components.push_back(std::move(members));
    }
    return components;
}

std::vector<char> degenerate_cells(const BilinearRfis& rfis) {
    const InterpolationData& d = rfis.data;
    const AddressMaps& m = rfis.maps;
    const int nx = d.nx, ny = d.ny;
    const std::size_t n_cells = static_cast<std::size_t>(nx) * ny;

    double zmax = 0.0;
    for (double v : d.z.data()) zmax = std::max(zmax, std::abs(v));
    const double tol = 1e-12 * std::max(1.0, zmax);

    // Per-cell predicate: (a) zero corner factors, or (b) data collinear on
    // every grid line of the cell's domain.
    std::vector<char> local(n_cells, 0);
    for (int i = 1; i <= nx; ++i) {
        for (int j = 1; j <= ny; ++j) {
            const Matrix& s = rfis.scaling.s;
            const bool zero_s = s(i - 1, j - 1) == 0.0 && s(i - 1, j) == 0.0 &&
                                s(i, j - 1) == 0.0 && s(i, j) == 0.0;
            bool collinear = true;
            const auto [xlo, xhi] = domain_x_range(m, i);
            const auto [ylo, yhi] = domain_y_range(m, j);
            for (int p = xlo; p <= xhi && collinear; ++p) {
                for (int q = ylo + 1; q < yhi && collinear; ++q) {
                    const double lambda = (d.y[q + 1] - d.y[q]) / (d.y[q + 1] - d.y[q - 1]);
                    const double lin = lambda * d.z(p, q - 1) + (1.0 - lambda) * d.z(p, q + 1);
                    if (std::abs(d.z(p, q) - lin) > tol) collinear = false;
                }
            }
            for (int q = ylo; q <= yhi && collinear; ++q) {
                for (int p = xlo + 1; p < xhi && collinear; ++p) {
                    const double lambda = (d.x[p + 1] - d.x[p]) / (d.x[p + 1] - d.x[p - 1]);
                    const double lin = lambda * d.z(p - 1, q) + (1.0 - lambda) * d.z(p + 1, q);
                    if (std::abs(d.z(p, q) - lin) > tol) collinear = false;
                }
            }
            local[static_cast<std::size_t>(i - 1) * ny + (j - 1)] = zero_s || collinear;
        }
    }

    // Ancestor closure over the dependency edges.
    std::vector<std::vector<int>> adj(n_cells);
    for (const CellEdge& e : cell_dependency_edges(m))
        adj[static_cast<std::size_t>(e.from.i - 1) * ny + (e.from.j - 1)].push_back(
            (e.to.i - 1) * ny + (e.to.j - 1));

    std::vector<char> degenerate(n_cells, 0);
    std::vector<char> seen(n_cells);
    std::vector<int> stack;
    for (std::size_t c = 0; c < n_cells; ++c) {
        std::fill(seen.begin(), seen.end(), 0);
        stack.assign(1, static_cast<int>(c));
        seen[c] = 1;
        bool all_ok = true;
        while (!stack.empty() && all_ok) {
            const int cur = stack.back();
            stack.pop_back();
            if (!local[cur]) {
                all_ok = false;
                break;
            }
            for (int nxt : adj[cur])
                if (!seen[nxt]) {
                    seen[nxt] = 1;
                    stack.push_back(nxt);
                }
        }
        degenerate[c] = all_ok;
    }
    return degenerate;
}

std::vector<char> part_degeneracy(const Partition& partition, const std::vector<char>& cell_flags) {
    std::vector<char> flags(partition.size(), 1);
    for (int r = 1; r <= partition.size(); ++r)
        for (const Cell& c : partition.parts[r - 1])
            if (!cell_flags[static_cast<std::size_t>(c.i - 1) * partition.ny + (c.j - 1)]) {
                flags[r - 1] = 0;
                break;
            }
    return flags;
}

std::vector<char> component_degeneracy(const std::vector<std::vector<int>>& components,
                                       const Partition& partition,
                                       const std::vector<char>& cell_flags) {
    const std::vector<char> parts = part_degeneracy(partition, cell_flags);
    std::vector<char> flags(components.size(), 1);
    for (std::size_t v = 0; v < components.size(); ++v)
        for (int r : components[v])
            if (!parts[r - 1]) {
                flags[v] = 0;
                break;
            }
    return flags;
}

double spectral_radius(const Matrix& A) {
    if (A.rows() != A.cols() || A.rows() == 0)
        throw Error(ErrorCode::ShapeMismatch, "spectral radius needs a nonempty square matrix");
    for (double v : A.data())
        if (!(v >= 0.0)) throw Error(ErrorCode::NotNonnegative, "matrix must be nonnegative");

    const int n = A.rows();
    if (n == 1) return A(0, 0);

    // Power iteration on A + I; the shift makes periodic nonnegative
    // matrices (the interesting component submatrices often are) converge.
    auto apply_shifted = [&](const std::vector<double>& v, std::vector<double>& out, bool transpose) {
        for (int i = 0; i < n; ++i) {
            double acc = v[i];
            for (int j = 0; j < n; ++j) acc += (transpose ? A(j, i) : A(i, j)) * v[j];
            out[i] = acc;
        }
    };
    auto iterate = [&](bool transpose) {
        std::vector<double> v(n, 1.0 / std::sqrt(static_cast<double>(n))), w(n);
        const int cap = 200000;
        double delta = 0.0;
        for (int it = 0; it < cap; ++it) {
            apply_shifted(v, w, transpose);
            double norm = std::sqrt(std::inner_product(w.begin(), w.end(), w.begin(), 0.0));
            if (norm == 0.0)
                throw Error(ErrorCode::NoConvergence, "power iteration collapsed to zero");
            for (double& x : w) x /= norm;
            delta = 0.0;
            for (int i = 0; i < n; ++i) delta = std::max(delta, std::abs(w[i] - v[i]));
            v = w;
            if (delta < 1e-15) return v;
        }
        if (delta > 1e-9)
            throw Error(ErrorCode::NoConvergence, "power iteration did not converge");
        return v;
    };

    const std::vector<double> right = iterate(false);
    const std::vector<double> left = iterate(true);
    std::vector<double> shifted(n);
    apply_shifted(right, shifted, false);
    const double numerator = std::inner_product(left.begin(), left.end(), shifted.begin(), 0.0);
    const double denominator = std::inner_product(left.begin(), left.end(), right.begin(), 0.0);
    if (denominator == 0.0)
        throw Error(ErrorCode::NoConvergence, "left/right eigenvectors orthogonal");
    return numerator / denominator - 1.0;
}

std::vector<int> positions(const Matrix& G) {
    const int m = G.rows();
    const auto reach = reachability(G);
    std::vector<int> result(m, 0);

    std::function<int(int, int)> position = [&](int r, int depth) -> int {
        if (depth > m)
            throw Error(ErrorCode::CycleInPositionRecursion, "cycle in position recursion");
        if (result[r] != 0) return result[r];
        int best = 0;
        for (int t = 0; t < m; ++t) {
            const bool connected = reach[t][r] && reach[r][t];
            if (t != r && reach[t][r] && !connected) best = std::max(best, position(t, depth + 1));
            // t == r is never in A*(r): a path r -> r makes r ~ r.
        }
        result[r] = 1 + best;
        return result[r];
    };
    for (int r = 0; r < m; ++r) position(r, 0);
    return result;
}

DimensionReport theoretical_box_dimension(const BilinearRfis& rfis, const Partition& partition) {
    if (!rfis.cert.ok()) {
        std::string detail = rfis.cert.failures.empty() ? "" : ": " + rfis.cert.failures.front();
        throw Error(ErrorCode::HypothesisViolation, "homogeneity hypothesis fails" + detail);
    }
    const SteadyReport steady = check_steady(rfis.scaling);
    if (!steady.steady) {
        std::ostringstream os;
        os << "steadiness fails at cell (" << steady.offending.front().i << ","
           << steady.offending.front().j << ")";
        throw Error(ErrorCode::HypothesisViolation, os.str());
    }
    const CompatibilityReport compat = check_compatible(partition, rfis.maps);
    if (!compat.compatible)
        throw Error(ErrorCode::HypothesisViolation,
                    "partition is not compatible: " + compat.violations.front());

    DimensionReport out;
    out.K = rfis.cert.K;
    try {
        out.G = compute_uniform_sums(rfis, partition);
    } catch (const UniformSumError& e) {
        throw Error(ErrorCode::HypothesisViolation, std::string("uniform sums fail: ") + e.what());
    }

    const auto components = connected_components(out.G.gamma);
    out.report.cell_degenerate = degenerate_cells(rfis);
    out.report.part_degenerate = part_degeneracy(partition, out.report.cell_degenerate);
    const auto comp_degenerate =
        component_degeneracy(components, partition, out.report.cell_degenerate);
    out.report.positions = positions(out.G.gamma);

    const double logK = std::log(static_cast<double>(out.K));
    double d_star = 1.0;
    for (std::size_t v = 0; v < components.size(); ++v) {
        ComponentInfo info;
        info.members = components[v];
        const int q = static_cast<int>(info.members.size());
        info.submatrix = Matrix(q, q);
        for (int a = 0; a < q; ++a)
            for (int b = 0; b < q; ++b)
                info.submatrix(a, b) = out.G.gamma(info.members[a] - 1, info.members[b] - 1);
        info.rho = spectral_radius(info.submatrix);
        info.d = std::log(info.rho) / logK;
        info.degenerate = comp_degenerate[v];
        if (!info.degenerate) {
            d_star = std::max(d_star, info.d);
            if (std::abs(info.rho - out.K) <= 1e-9) {
                std::ostringstream os;
                os << "component {";
                for (std::size_t a = 0; a < info.members.size(); ++a)
                    os << (a ? "," : "") << info.members[a];
                os << "} has rho within 1e-9 of K; the dimension is at the d* = 1 boundary";
                out.warnings.push_back(os.str());
            }
        }
        out.report.components.push_back(std::move(info));
    }
    out.d_star = d_star;
    out.dimension = 1.0 + d_star;

    out.irreducible = components.size() == 1 &&
                      static_cast<int>(components[0].size()) == partition.size();
    if (out.irreducible) {
        const ComponentInfo& whole = out.report.components[0];
        out.irreducible_case = (!whole.degenerate && whole.rho > out.K) ? 1 : 2;
    }
    return out;
}

}  // namespace rfis
