#include "arsp/polytope.hpp"

#include <algorithm>
#include <cmath>

namespace arsp {
namespace {

// Gaussian elimination with partial pivoting; returns false when the system
// is singular at the pivot tolerance.
bool solve_square(std::vector<std::vector<double>> a, std::vector<double> b, double pivot_tol,
                  std::vector<double>& x) {
    const int n = static_cast<int>(b.size());
    for (int col = 0; col < n; ++col) {
        int pivot = col;
        for (int r = col + 1; r < n; ++r)
            if (std::fabs(a[r][col]) > std::fabs(a[pivot][col])) pivot = r;
        if (std::fabs(a[pivot][col]) <= pivot_tol) return false;
        std::swap(a[pivot], a[col]);
        std::swap(b[pivot], b[col]);
        for (int r = col + 1; r < n; ++r) {
            double f = a[r][col] / a[col][col];
            if (f == 0.0) continue;
            for (int c = col; c < n; ++c) a[r][c] -= f * a[col][c];
            b[r] -= f * b[col];
        }
    }
    x.assign(n, 0.0);
    for (int r = n - 1; r >= 0; --r) {
        double s = b[r];
        for (int c = r + 1; c < n; ++c) s -= a[r][c] * x[c];
        x[r] = s / a[r][r];
    }
    return true;
}

}  // namespace

void check_ratio_box(const RatioBox& rb) {
    if (rb.dim < 2) throw BadParamError("ratio box requires dim >= 2");
    if (static_cast<int>(rb.ranges.size()) != rb.dim - 1)
        throw BadParamError("ratio box needs exactly dim-1 ranges");
    for (const auto& r : rb.ranges) {
        if (!(std::isfinite(r.lo) && std::isfinite(r.hi)))
            throw BadParamError("ratio bounds must be finite");
        if (!(r.lo > 0.0 && r.lo <= r.hi))
            throw BadParamError("ratio bounds must satisfy 0 < lo <= hi");
    }
}

LinearConstraintSystem ratio_box_to_constraints(const RatioBox& rb) {
    check_ratio_box(rb);
    const int d = rb.dim;
    LinearConstraintSystem cs;
    cs.dim = d;
    for (int i = 0; i < d - 1; ++i) {
        // w[i] - hi * w[d] <= 0
        LinearConstraintSystem::Row up;
        up.coeffs.assign(d, 0.0);
        up.coeffs[i] = 1.0;
        up.coeffs[d - 1] = -rb.ranges[i].hi;
        cs.rows.push_back(std::move(up));
        // lo * w[d] - w[i] <= 0
        LinearConstraintSystem::Row down;
        down.coeffs.assign(d, 0.0);
        down.coeffs[i] = -1.0;
        down.coeffs[d - 1] = rb.ranges[i].lo;
        cs.rows.push_back(std::move(down));
    }
    return cs;
}

VertexSet enumerate_vertices(const LinearConstraintSystem& cs, const VertexEnumOptions& opt) {
    const int d = cs.dim;
    if (d < 1) throw BadParamError("constraint system needs dim >= 1");
    for (const auto& row : cs.rows)
        if (static_cast<int>(row.coeffs.size()) != d)
            throw DimensionMismatchError("constraint row has wrong width");

    // Row pool: user rows followed by the d nonnegativity rows -w[i] <= 0.
    const int c = static_cast<int>(cs.rows.size());
    const int pool = c + d;
    auto row_coeff = [&](int r, int j) -> double {
        return r < c ? cs.rows[r].coeffs[j] : (j == r - c ? -1.0 : 0.0);
    };
    auto row_rhs = [&](int r) -> double { return r < c ? cs.rows[r].rhs : 0.0; };

    auto feasible = [&](const std::vector<double>& w) {
        for (int r = 0; r < pool; ++r) {
            double lhs = 0.0;
            for (int j = 0; j < d; ++j) lhs += row_coeff(r, j) * w[j];
            if (lhs - row_rhs(r) > opt.slack_tol) return false;
        }
        return true;
    };

    VertexSet vs;
    vs.dim = d;

    std::vector<int> pick(d - 1);
    std::vector<std::vector<double>> a(d, std::vector<double>(d));
    std::vector<double> b(d), w;

    auto try_basis = [&]() {
        for (int i = 0; i < d - 1; ++i) {
            for (int j = 0; j < d; ++j) a[i][j] = row_coeff(pick[i], j);
            b[i] = row_rhs(pick[i]);
        }
        for (int j = 0; j < d; ++j) a[d - 1][j] = 1.0;  // simplex equality
        b[d - 1] = 1.0;
        if (!solve_square(a, b, opt.pivot_tol, w)) return;
        if (!feasible(w)) return;
        for (const auto& v : vs.vertices) {
            double dist = 0.0;
            for (int j = 0; j < d; ++j) dist = std::max(dist, std::fabs(v[j] - w[j]));
            if (dist <= opt.dedup_tol) return;
        }
        vs.vertices.push_back(w);
        if (static_cast<int>(vs.vertices.size()) > opt.max_vertices)
            throw BadParamError("vertex count exceeds the configured cap of " +
                                std::to_string(opt.max_vertices));
    };

    // All (d-1)-subsets of the pool, lexicographic.
    if (d == 1) {
        w = {1.0};
        if (feasible(w)) vs.vertices.push_back(w);
    } else {
        for (int i = 0; i < d - 1; ++i) pick[i] = i;
        while (true) {
            try_basis();
            int i = d - 2;
            while (i >= 0 && pick[i] == pool - (d - 1) + i) --i;
            if (i < 0) break;
            ++pick[i];
            for (int j = i + 1; j < d - 1; ++j) pick[j] = pick[j - 1] + 1;
        }
    }

    if (vs.vertices.empty()) throw EmptyRegionError();
    vs.degenerate = vs.vertices.size() == 1;
    return vs;
}

VertexSet preference_vertices(const PreferenceSpec& spec, const VertexEnumOptions& opt) {
    if (std::holds_alternative<RatioBox>(spec))
        return enumerate_vertices(ratio_box_to_constraints(std::get<RatioBox>(spec)), opt);
    return enumerate_vertices(std::get<LinearConstraintSystem>(spec), opt);
}

}  // namespace arsp
