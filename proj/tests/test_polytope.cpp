#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "arsp/datagen.hpp"
#include "arsp/polytope.hpp"
#include "helpers.hpp"

using namespace arsp;
using namespace arsp::testing;

namespace {

bool contains_vertex(const VertexSet& vs, const std::vector<double>& w, double tol = 1e-9) {
    for (const auto& v : vs.vertices) {
        double dist = 0.0;
        for (std::size_t i = 0; i < w.size(); ++i) dist = std::max(dist, std::fabs(v[i] - w[i]));
        if (dist <= tol) return true;
    }
    return false;
}

// Independent basis oracle: Cramer-rule solves over every (d-1)-subset of the
// constraint pool (user rows plus nonnegativity) joined with sum(w)=1, then a
// feasibility filter. Shares no code with the library path.
double det(std::vector<std::vector<double>> a) {
    const int n = static_cast<int>(a.size());
    double sign = 1.0, prod = 1.0;
    for (int c = 0; c < n; ++c) {
        int p = c;
        for (int r = c + 1; r < n; ++r)
            if (std::fabs(a[r][c]) > std::fabs(a[p][c])) p = r;
        if (std::fabs(a[p][c]) < 1e-14) return 0.0;
        if (p != c) {
            std::swap(a[p], a[c]);
            sign = -sign;
        }
        prod *= a[c][c];
        for (int r = c + 1; r < n; ++r) {
            const double f = a[r][c] / a[c][c];
            for (int k = c; k < n; ++k) a[r][k] -= f * a[c][k];
        }
    }
    return sign * prod;
}

std::vector<std::vector<double>> oracle_vertices(const LinearConstraintSystem& cs) {
    const int d = cs.dim;
    const int c = static_cast<int>(cs.rows.size());
    const int pool = c + d;
    auto coeff = [&](int r, int j) {
        return r < c ? cs.rows[r].coeffs[j] : (j == r - c ? -1.0 : 0.0);
    };
    auto rhs = [&](int r) { return r < c ? cs.rows[r].rhs : 0.0; };

    std::vector<std::vector<double>> found;
    std::vector<int> pick(d - 1);
    for (int i = 0; i < d - 1; ++i) pick[i] = i;
    while (true) {
        std::vector<std::vector<double>> a(d, std::vector<double>(d));
        std::vector<double> b(d);
        for (int i = 0; i < d - 1; ++i) {
            for (int j = 0; j < d; ++j) a[i][j] = coeff(pick[i], j);
            b[i] = rhs(pick[i]);
        }
        for (int j = 0; j < d; ++j) a[d - 1][j] = 1.0;
        b[d - 1] = 1.0;
        const double d0 = det(a);
        if (std::fabs(d0) > 1e-10) {
            std::vector<double> w(d);
            for (int j = 0; j < d; ++j) {
                auto aj = a;
                for (int i = 0; i < d; ++i) aj[i][j] = b[i];
                w[j] = det(aj) / d0;
            }
            bool ok = true;
            for (int r = 0; r < pool && ok; ++r) {
                double lhs = 0.0;
                for (int j = 0; j < d; ++j) lhs += coeff(r, j) * w[j];
                if (lhs - rhs(r) > 1e-9) ok = false;
            }
            if (ok) {
                bool dup = false;
                for (const auto& v : found) {
                    double dist = 0.0;
                    for (int j = 0; j < d; ++j) dist = std::max(dist, std::fabs(v[j] - w[j]));
                    if (dist <= 1e-9) dup = true;
                }
                if (!dup) found.push_back(w);
            }
        }
        int i = d - 2;
        while (i >= 0 && pick[i] == pool - (d - 1) + i) --i;
        if (i < 0) break;
        ++pick[i];
        for (int j = i + 1; j < d - 1; ++j) pick[j] = pick[j - 1] + 1;
    }
    return found;
}

std::vector<double> normalized_corner(const std::vector<double>& r) {
    double total = 1.0;
    for (double x : r) total += x;
    std::vector<double> w;
    for (double x : r) w.push_back(x / total);
    w.push_back(1.0 / total);
    return w;
}

}  // namespace

TEST_CASE("weak-ranking region has the documented vertices") {
    LinearConstraintSystem cs;
    cs.dim = 3;
    cs.rows.push_back({{-1.0, 1.0, 0.0}, 0.0});  // w2 <= w1
    cs.rows.push_back({{0.0, -1.0, 1.0}, 0.0});  // w3 <= w2
    const auto vs = enumerate_vertices(cs);
    REQUIRE(vs.dprime() == 3);
    CHECK(contains_vertex(vs, {1.0, 0.0, 0.0}));
    CHECK(contains_vertex(vs, {0.5, 0.5, 0.0}));
    CHECK(contains_vertex(vs, {1.0 / 3, 1.0 / 3, 1.0 / 3}));
}

TEST_CASE("empty system yields the simplex corners") {
    LinearConstraintSystem cs;
    cs.dim = 2;
    const auto vs = enumerate_vertices(cs);
    REQUIRE(vs.dprime() == 2);
    CHECK(contains_vertex(vs, {1.0, 0.0}));
    CHECK(contains_vertex(vs, {0.0, 1.0}));
}

TEST_CASE("interactive constraints match the exhaustive basis oracle") {
    for (std::uint64_t seed : {11ull, 17ull, 23ull, 31ull, 47ull}) {
        const auto cs = gen_constraints(ConstraintKind::IM, 4, 3, seed);
        const auto vs = enumerate_vertices(cs);
        const auto expect = oracle_vertices(cs);
        REQUIRE(vs.vertices.size() == expect.size());
        for (const auto& w : expect) CHECK(contains_vertex(vs, w, 1e-7));
    }
}

TEST_CASE("ratio box rewrites to the documented rows and vertices") {
    const auto cs = ratio_box_to_constraints(fig1_ratio());
    REQUIRE(cs.rows.size() == 2);
    CHECK(cs.rows[0].coeffs == std::vector<double>{1.0, -2.0});
    CHECK(cs.rows[1].coeffs == std::vector<double>{-1.0, 0.5});
    const auto vs = enumerate_vertices(cs);
    REQUIRE(vs.dprime() == 2);
    CHECK(contains_vertex(vs, {1.0 / 3, 2.0 / 3}));
    CHECK(contains_vertex(vs, {2.0 / 3, 1.0 / 3}));
}

TEST_CASE("pinned ratio collapses to a single degenerate vertex") {
    RatioBox rb;
    rb.dim = 2;
    rb.ranges = {{1.0, 1.0}};
    const auto vs = enumerate_vertices(ratio_box_to_constraints(rb));
    REQUIRE(vs.dprime() == 1);
    CHECK(vs.degenerate);
    CHECK(contains_vertex(vs, {0.5, 0.5}));
}

TEST_CASE("3d ratio box yields one vertex per corner") {
    RatioBox rb;
    rb.dim = 3;
    rb.ranges = {{0.5, 2.0}, {0.5, 2.0}};
    const auto vs = enumerate_vertices(ratio_box_to_constraints(rb));
    REQUIRE(vs.dprime() == 4);
    for (double r1 : {0.5, 2.0})
        for (double r2 : {0.5, 2.0}) CHECK(contains_vertex(vs, normalized_corner({r1, r2})));
}

TEST_CASE("ratio-box round trip reproduces the normalized corners") {
    for (int d = 2; d <= 5; ++d) {
        for (std::uint64_t seed : {3ull, 9ull}) {
            const auto rb = random_ratio_box(seed + d, d);
            const auto vs = enumerate_vertices(ratio_box_to_constraints(rb));
            REQUIRE(vs.dprime() == (1 << (d - 1)));
            for (std::uint32_t corner = 0; corner < (1u << (d - 1)); ++corner) {
                std::vector<double> r(d - 1);
                for (int i = 0; i < d - 1; ++i)
                    r[i] = (corner >> (d - 2 - i)) & 1 ? rb.ranges[i].hi : rb.ranges[i].lo;
                CHECK(contains_vertex(vs, normalized_corner(r), 1e-7));
            }
        }
    }
}

TEST_CASE("every vertex satisfies every constraint with slack") {
    for (std::uint64_t seed : {5ull, 6ull, 7ull}) {
        const auto cs = gen_constraints(ConstraintKind::IM, 3, 4, seed);
        const auto vs = enumerate_vertices(cs);
        for (const auto& w : vs.vertices) {
            double sum = 0.0;
            for (double x : w) {
                CHECK(x >= -1e-9);
                sum += x;
            }
            CHECK(sum == doctest::Approx(1.0).epsilon(1e-9));
            for (const auto& row : cs.rows) {
                double lhs = 0.0;
                for (int j = 0; j < cs.dim; ++j) lhs += row.coeffs[j] * w[j];
                CHECK(lhs <= row.rhs + 1e-9);
            }
        }
    }
}

TEST_CASE("adding a row never adds a vertex outside the old region") {
    for (std::uint64_t seed : {13ull, 21ull, 34ull}) {
        auto cs = gen_constraints(ConstraintKind::IM, 3, 2, seed);
        const auto before = cs;
        const auto extra = gen_constraints(ConstraintKind::IM, 3, 1, seed + 1000);
        cs.rows.push_back(extra.rows.front());
        VertexSet vs;
        try {
            vs = enumerate_vertices(cs);
        } catch (const EmptyRegionError&) {
            continue;  // the extra cut may remove the region entirely
        }
        for (const auto& w : vs.vertices)
            for (const auto& row : before.rows) {
                double lhs = 0.0;
                for (int j = 0; j < before.dim; ++j) lhs += row.coeffs[j] * w[j];
                CHECK(lhs <= row.rhs + 1e-9);
            }
    }
}

TEST_CASE("infeasible systems raise EmptyRegion") {
    LinearConstraintSystem cs;
    cs.dim = 3;
    cs.rows.push_back({{1.0, 1.0, 1.0}, -1.0});  // impossible on the simplex
    CHECK_THROWS_AS(enumerate_vertices(cs), EmptyRegionError);
}

TEST_CASE("vertex cap fails loudly") {
    RatioBox rb;
    rb.dim = 4;
    rb.ranges = {{0.5, 2.0}, {0.5, 2.0}, {0.5, 2.0}};  // 8 vertices
    VertexEnumOptions opt;
    opt.max_vertices = 3;
    CHECK_THROWS_AS(enumerate_vertices(ratio_box_to_constraints(rb), opt), BadParamError);
}

TEST_CASE("bad ratio boxes are rejected") {
    RatioBox rb;
    rb.dim = 2;
    rb.ranges = {{0.0, 1.0}};
    CHECK_THROWS_AS(ratio_box_to_constraints(rb), BadParamError);
    rb.ranges = {{2.0, 1.0}};
    CHECK_THROWS_AS(ratio_box_to_constraints(rb), BadParamError);
}
