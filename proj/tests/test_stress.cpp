#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

// Adversarial cross-checks: grid-valued coordinates produce many exact score
// ties and coincident points, certain objects saturate sigma everywhere, and
// negated attributes push coordinates below zero.

#include <random>

#include "arsp/baselines.hpp"
#include "arsp/bnb.hpp"
#include "arsp/datagen.hpp"
#include "arsp/dual2d.hpp"
#include "arsp/kdtt.hpp"
#include "helpers.hpp"

using namespace arsp;
using namespace arsp::testing;

namespace {

UncertainDataset grid_dataset(std::uint64_t seed, std::size_t m, int max_inst, int d,
                              int grid, double offset = 0.0) {
    std::mt19937_64 gen(seed);
    UncertainDataset ds;
    ds.dim = d;
    for (std::size_t o = 0; o < m; ++o) {
        UncertainObject obj;
        obj.object_id = int(o + 1);
        const int ni = 1 + int(gen() % max_inst);
        double rest = 1.0;
        for (int j = 0; j < ni; ++j) {
            Instance t;
            t.object_id = obj.object_id;
            t.instance_id = j + 1;
            t.prob = j + 1 < ni ? rest / 2 : rest;  // dyadic, total exactly 1
            rest /= 2;
            t.coords.resize(d);
            for (auto& c : t.coords) c = offset + double(gen() % (grid + 1)) / grid;
            obj.instances.push_back(std::move(t));
        }
        ds.objects.push_back(std::move(obj));
    }
    return ds;
}

RatioBox awkward_box(int d) {
    // bounds that are not ratios of small integers, so grid points never land
    // exactly on the angular boundary
    RatioBox rb;
    rb.dim = d;
    for (int i = 0; i + 1 < d; ++i) rb.ranges.push_back({0.37, 2.31});
    return rb;
}

}  // namespace

TEST_CASE("grid ties: every algorithm equals the exact oracle") {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const auto ds = grid_dataset(seed, 5, 2, 2, 3);
        const auto rb = awkward_box(2);
        const auto V = preference_vertices(ratio_box_to_constraints(rb));
        const auto expect = enum_arsp_exact(ds, V).to_double(ds);

        CHECK(ArspResult::max_abs_diff(loop_arsp(ds, V), expect) <= 1e-12);
        CHECK(ArspResult::max_abs_diff(bnb_arsp(ds, V), expect) <= 1e-12);
        for (auto variant : {KdttOptions::Variant::kd, KdttOptions::Variant::quad})
            for (bool fused : {true, false}) {
                KdttOptions opt;
                opt.variant = variant;
                opt.fused = fused;
                CHECK(ArspResult::max_abs_diff(kdtt_arsp(ds, V, opt), expect) <= 1e-12);
            }
        CHECK(ArspResult::max_abs_diff(
                  dual2d_arsp(ds, rb, AngularIndex::Profile::general), expect) <= 1e-12);
    }
}

TEST_CASE("bigger tie-heavy grids: traversals and bnb match loop") {
    for (std::uint64_t seed : {5ull, 6ull}) {
        const auto ds = grid_dataset(seed, 120, 3, 3, 4);
        const auto V = preference_vertices(gen_constraints(ConstraintKind::WR, 3, 2, 0));
        const auto want = loop_arsp(ds, V);
        CHECK(ArspResult::max_abs_diff(bnb_arsp(ds, V), want) <= 1e-9);
        KdttOptions quad;
        quad.variant = KdttOptions::Variant::quad;
        CHECK(ArspResult::max_abs_diff(kdtt_arsp(ds, V), want) <= 1e-9);
        CHECK(ArspResult::max_abs_diff(kdtt_arsp(ds, V, quad), want) <= 1e-9);
    }
}

TEST_CASE("negative coordinates (negated attributes) keep algorithms aligned") {
    for (std::uint64_t seed : {3ull, 4ull}) {
        RandomDatasetParams p;
        p.m = 50;
        p.max_instances = 3;
        p.d = 3;
        p.coord_lo = -2.0;
        p.coord_hi = -0.5;  // everything negative, as after max-orientation ingestion
        const auto ds = random_dataset(seed, p);
        const auto V = preference_vertices(gen_constraints(ConstraintKind::WR, 3, 2, 0));
        const auto want = loop_arsp(ds, V);
        CHECK(ArspResult::max_abs_diff(bnb_arsp(ds, V), want) <= 1e-9);
        CHECK(ArspResult::max_abs_diff(kdtt_arsp(ds, V), want) <= 1e-9);
    }
}

TEST_CASE("grid singleton data through the binary-search profile") {
    for (std::uint64_t seed : {7ull, 8ull}) {
        auto ds = grid_dataset(seed, 400, 1, 2, 12);
        // mix of certain and uncertain singletons
        std::mt19937_64 gen(seed);
        for (auto& obj : ds.objects)
            if (gen() % 3 == 0) obj.instances[0].prob = 0.25 + 0.5 / double(1 + gen() % 4);
        const auto rb = awkward_box(2);
        const auto V = preference_vertices(ratio_box_to_constraints(rb));
        const auto want = loop_arsp(ds, V);
        const auto got = dual2d_arsp(ds, rb, AngularIndex::Profile::singleton);
        CHECK(ArspResult::max_abs_diff(got, want) <= 1e-9);
    }
}

TEST_CASE("one object owning a whole coincident cluster") {
    UncertainDataset ds;
    ds.dim = 2;
    UncertainObject a;  // four coincident instances, total exactly 1
    a.object_id = 1;
    for (int j = 1; j <= 4; ++j) a.instances.push_back(make_inst(1, j, {0.5, 0.5}, 0.25));
    UncertainObject b;
    b.object_id = 2;
    b.instances = {make_inst(2, 1, {0.5, 0.5}, 0.5), make_inst(2, 2, {0.4, 0.9}, 0.5)};
    UncertainObject c;
    c.object_id = 3;
    c.instances = {make_inst(3, 1, {0.9, 0.9}, 1.0)};
    ds.objects = {a, b, c};
    const auto rb = fig1_ratio();
    const auto V = preference_vertices(ratio_box_to_constraints(rb));
    const auto expect = enum_arsp_exact(ds, V).to_double(ds);
    CHECK(ArspResult::max_abs_diff(loop_arsp(ds, V), expect) <= 1e-12);
    CHECK(ArspResult::max_abs_diff(bnb_arsp(ds, V), expect) <= 1e-12);
    for (auto variant : {KdttOptions::Variant::kd, KdttOptions::Variant::quad}) {
        KdttOptions opt;
        opt.variant = variant;
        CHECK(ArspResult::max_abs_diff(kdtt_arsp(ds, V, opt), expect) <= 1e-12);
    }
    CHECK(ArspResult::max_abs_diff(dual2d_arsp(ds, rb, AngularIndex::Profile::general),
                                   expect) <= 1e-12);
}
