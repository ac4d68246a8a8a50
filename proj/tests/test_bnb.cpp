#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "arsp/baselines.hpp"
#include "arsp/bnb.hpp"
#include "arsp/datagen.hpp"
#include "arsp/kdtt.hpp"
#include "helpers.hpp"

using namespace arsp;
using namespace arsp::testing;

TEST_CASE("running example, including the equal-score heap ties") {
    const auto ds = fig1_dataset();
    const auto V = preference_vertices(ratio_box_to_constraints(fig1_ratio()));
    const auto probs = fig1_exact_probs();
    const auto expect = enum_arsp_exact(ds, V, {}, &probs).to_double(ds);
    const auto got = bnb_arsp(ds, V);
    CHECK(ArspResult::max_abs_diff(got, expect) <= 1e-12);
    CHECK(got.value(1, 1) == doctest::Approx(2.0 / 9).epsilon(1e-12));
    CHECK(got.value(1, 2) == 0.0);
    CHECK(got.size() == ds.instance_count());
}

TEST_CASE("all totals below one: pruning never activates and loop is matched") {
    RandomDatasetParams p;
    p.m = 50;
    p.max_instances = 3;
    p.d = 2;
    p.certain_fraction = 0.0;  // every object keeps total < 1
    for (std::uint64_t seed = 1; seed <= 6; ++seed) {
        const auto ds = random_dataset(seed, p);
        const auto V = preference_vertices(ratio_box_to_constraints(random_ratio_box(seed, 2)));
        const auto want = loop_arsp(ds, V);
        const auto got = bnb_arsp(ds, V);
        CHECK(ArspResult::max_abs_diff(got, want) <= 1e-9);
        // nothing may be zeroed by pruning: zero sets must agree exactly
        for (std::size_t i = 0; i < got.size(); ++i)
            CHECK((got[i] == 0.0) == (want[i] == 0.0));
    }
}

TEST_CASE("a certain minimum zeroes everything else") {
    UncertainDataset ds;
    ds.dim = 2;
    UncertainObject boss;
    boss.object_id = 1;
    boss.instances = {make_inst(1, 1, {0.0, 0.0}, 1.0)};
    ds.objects.push_back(boss);
    for (int o = 2; o <= 6; ++o) {
        UncertainObject obj;
        obj.object_id = o;
        obj.instances = {make_inst(o, 1, {0.1 * o, 0.2 * o}, 0.5),
                         make_inst(o, 2, {0.2 * o, 0.1 * o}, 0.5)};
        ds.objects.push_back(obj);
    }
    const auto V = preference_vertices(ratio_box_to_constraints(fig1_ratio()));
    const auto r = bnb_arsp(ds, V);
    CHECK(r.value(1, 1) == 1.0);
    for (int o = 2; o <= 6; ++o) {
        CHECK(r.value(o, 1) == 0.0);
        CHECK(r.value(o, 2) == 0.0);
    }
}

TEST_CASE("window sums survive brute-force verification") {
    RandomDatasetParams p;
    p.m = 15;
    p.max_instances = 3;
    p.d = 3;
    p.tie_fraction = 0.2;
    BnbOptions opt;
    opt.check_windows = true;
    for (std::uint64_t seed : {2ull, 4ull, 9ull}) {
        const auto ds = random_dataset(seed, p);
        const auto V = preference_vertices(gen_constraints(ConstraintKind::WR, 3, 2, 0));
        CHECK_NOTHROW(bnb_arsp(ds, V, opt));
    }
}

TEST_CASE("random cross-checks against loop and the traversal") {
    RandomDatasetParams p;
    p.m = 80;
    p.max_instances = 4;
    p.d = 3;
    p.tie_fraction = 0.1;
    for (std::uint64_t seed = 1; seed <= 8; ++seed) {
        const auto ds = random_dataset(seed, p);
        const auto V = preference_vertices(gen_constraints(ConstraintKind::WR, 3, 2, 0));
        const auto want = loop_arsp(ds, V);
        const auto got = bnb_arsp(ds, V);
        CHECK(ArspResult::max_abs_diff(got, want) <= 1e-9);
        CHECK(ArspResult::max_abs_diff(got, kdtt_arsp(ds, V)) <= 1e-9);
    }
}

TEST_CASE("coincident certain singletons knock each other out") {
    UncertainDataset ds;
    ds.dim = 2;
    UncertainObject a, b, c;
    a.object_id = 1;
    a.instances = {make_inst(1, 1, {0.3, 0.3}, 1.0)};
    b.object_id = 2;
    b.instances = {make_inst(2, 1, {0.3, 0.3}, 1.0)};
    c.object_id = 3;
    c.instances = {make_inst(3, 1, {0.8, 0.8}, 1.0)};
    ds.objects = {a, b, c};
    const auto V = preference_vertices(ratio_box_to_constraints(fig1_ratio()));
    const auto expect = enum_arsp(ds, V);
    const auto got = bnb_arsp(ds, V);
    CHECK(ArspResult::max_abs_diff(got, expect) == 0.0);
    CHECK(got.value(1, 1) == 0.0);
    CHECK(got.value(2, 1) == 0.0);
    CHECK(got.value(3, 1) == 0.0);
}

TEST_CASE("larger mixed dataset with many certain objects") {
    RandomDatasetParams p;
    p.m = 300;
    p.max_instances = 4;
    p.d = 4;
    p.certain_fraction = 0.7;
    const auto ds = random_dataset(31337, p);
    const auto V = preference_vertices(gen_constraints(ConstraintKind::WR, 4, 3, 0));
    CHECK(ArspResult::max_abs_diff(bnb_arsp(ds, V), loop_arsp(ds, V)) <= 1e-9);
}
