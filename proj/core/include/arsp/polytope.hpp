#pragma once

#include <variant>
#include <vector>

#include "arsp/types.hpp"

namespace arsp {

/// Linear constraints coeffs . w <= rhs on top of the weight simplex.
struct LinearConstraintSystem {
    int dim = 0;
    struct Row {
        std::vector<double> coeffs;
        double rhs = 0.0;
    };
    std::vector<Row> rows;
};

/// Weight ratio box: l_i <= w[i]/w[d] <= h_i for i = 1..d-1, all bounds > 0.
struct RatioBox {
    int dim = 0;
    struct Range {
        double lo = 0.0;
        double hi = 0.0;
    };
    std::vector<Range> ranges;  // length dim - 1
};

/// Vertices of the preference region; defines the score-space mapping.
struct VertexSet {
    int dim = 0;
    std::vector<std::vector<double>> vertices;  // each sums to 1, nonnegative
    bool degenerate = false;                    // single-point region

    int dprime() const { return static_cast<int>(vertices.size()); }
};

struct VertexEnumOptions {
    int max_vertices = 64;     // fail loudly beyond this
    double slack_tol = 1e-9;   // feasibility slack
    double dedup_tol = 1e-9;   // pairwise L-inf distinctness
    double pivot_tol = 1e-12;  // singular subsystems are skipped
};

/// Enumerates the vertices of {w in simplex | A w <= b} by solving every
/// (d-1)-subset of constraint rows (including nonnegativity) together with
/// sum(w) = 1 and keeping the feasible, deduplicated solutions.
/// Throws EmptyRegionError when no feasible basic solution exists.
VertexSet enumerate_vertices(const LinearConstraintSystem& cs, const VertexEnumOptions& opt = {});

/// Rewrites a ratio box as 2(d-1) halfspace rows on the simplex.
LinearConstraintSystem ratio_box_to_constraints(const RatioBox& rb);

using PreferenceSpec = std::variant<LinearConstraintSystem, RatioBox>;

VertexSet preference_vertices(const PreferenceSpec& spec, const VertexEnumOptions& opt = {});

/// Ratio box validity per the model: length d-1, 0 < lo <= hi, finite.
void check_ratio_box(const RatioBox& rb);

}  // namespace arsp
