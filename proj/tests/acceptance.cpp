// Acceptance suite: runs every gate criterion at its stated tolerance and
// prints one pass/fail line per criterion. Exit status is the number of
// failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>

#include "arsp/baselines.hpp"
#include "arsp/bnb.hpp"
#include "arsp/datagen.hpp"
#include "arsp/dual2d.hpp"
#include "arsp/eclipse.hpp"
#include "arsp/kdtt.hpp"
#include "helpers.hpp"

using namespace arsp;
using namespace arsp::testing;

namespace {

int failures = 0;

void criterion(int number, const std::string& label, const std::function<std::string()>& body) {
    const auto t0 = std::chrono::steady_clock::now();
    std::string detail;
    bool ok = true;
    try {
        detail = body();
    } catch (const std::exception& e) {
        ok = false;
        detail = std::string("exception: ") + e.what();
    }
    if (!detail.empty() && detail[0] == '!') {
        ok = false;
        detail = detail.substr(1);
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("[%s] criterion %d: %s (%.2fs)%s%s\n", ok ? "PASS" : "FAIL", number,
                label.c_str(), secs, detail.empty() ? "" : " - ", detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
}

std::string fail(const std::string& why) { return "!" + why; }

struct AlgoRun {
    std::string name;
    ArspResult result;
};

std::vector<AlgoRun> run_everything(const UncertainDataset& ds, const VertexSet& V,
                                    bool with_enum) {
    std::vector<AlgoRun> out;
    if (with_enum) out.push_back({"enum", enum_arsp(ds, V)});
    out.push_back({"loop", loop_arsp(ds, V)});
    for (auto variant : {KdttOptions::Variant::kd, KdttOptions::Variant::quad})
        for (bool fused : {true, false}) {
            KdttOptions opt;
            opt.variant = variant;
            opt.fused = fused;
            std::string name = variant == KdttOptions::Variant::kd ? "kdtt" : "qdtt";
            name += fused ? "+" : "";
            out.push_back({name, kdtt_arsp(ds, V, opt)});
        }
    out.push_back({"bnb", bnb_arsp(ds, V)});
    return out;
}

// criterion 1 -----------------------------------------------------------

std::string run_criterion1() {
    const auto ds = fig1_dataset();
    const auto rb = fig1_ratio();
    const auto V = preference_vertices(ratio_box_to_constraints(rb));
    const auto probs = fig1_exact_probs();

    const Rational world = world_probability_exact(ds, {0, 0, 0, 0}, &probs);
    if (world != Rational(1, 36)) return fail("first-instances world probability is not 1/36");

    const auto exact = enum_arsp_exact(ds, V, {}, &probs);
    if (exact.value(1, 1) != Rational(2, 9)) return fail("exact enum t11 != 2/9");
    if (exact.value(1, 2) != Rational(0)) return fail("exact enum t12 != 0");
    if (exact.object_value(1) != Rational(2, 9)) return fail("exact enum T1 != 2/9");

    auto runs = run_everything(ds, V, true);
    runs.push_back({"dual2d", dual2d_arsp(ds, rb, AngularIndex::Profile::general)});
    for (const auto& run : runs) {
        if (std::fabs(run.result.value(1, 1) - 2.0 / 9) > 1e-12)
            return fail(run.name + ": t11 off 2/9");
        if (std::fabs(run.result.value(1, 2)) > 1e-12) return fail(run.name + ": t12 not 0");
        if (std::fabs(run.result.object_value(1) - 2.0 / 9) > 1e-12)
            return fail(run.name + ": T1 off 2/9");
    }
    return "enum/loop/kdtt/kdtt+/qdtt/qdtt+/bnb/dual2d all reproduce 2/9, 0, 2/9";
}

// criterion 2 -----------------------------------------------------------

std::string run_criterion2() {
    std::mt19937_64 gen(20240001);
    int checked = 0;
    for (int trial = 0; trial < 200; ++trial) {
        RandomDatasetParams p;
        p.m = 2 + gen() % 5;          // m <= 6
        p.max_instances = 2;          // n <= 12
        p.d = 2 + int(gen() % 2);     // d in {2,3}
        p.certain_fraction = 0.5;
        p.tie_fraction = 0.1;
        const auto ds = random_dataset(gen(), p);

        PreferenceSpec spec;
        const int kind = int(gen() % 3);
        if (kind == 0)
            spec = gen_constraints(ConstraintKind::WR, p.d, 1 + int(gen() % (p.d - 1)), gen());
        else if (kind == 1)
            spec = gen_constraints(ConstraintKind::IM, p.d, 1 + int(gen() % 3), gen());
        else
            spec = random_ratio_box(gen(), p.d);
        VertexSet V;
        try {
            V = preference_vertices(spec);
        } catch (const EmptyRegionError&) {
            continue;  // IM can cut the region away; draw the next trial
        }

        const auto e = enum_arsp_exact(ds, V);
        const auto l = loop_arsp_exact(ds, V);
        for (std::size_t i = 0; i < e.size(); ++i)
            if (e[i] != l[i]) return fail("exact enum != exact loop");
        const auto reference = e.to_double(ds);

        auto runs = run_everything(ds, V, true);
        if (p.d == 2 && kind == 2)
            runs.push_back({"dual2d", dual2d_arsp(ds, std::get<RatioBox>(spec),
                                                  AngularIndex::Profile::general)});
        for (const auto& run : runs)
            if (ArspResult::max_abs_diff(run.result, reference) > 1e-12)
                return fail(run.name + " deviates beyond 1e-12");
        ++checked;
    }
    std::ostringstream os;
    os << checked << " datasets, exact enum==loop, all algorithms within 1e-12";
    return os.str();
}

// criterion 3 -----------------------------------------------------------

std::string run_criterion3() {
    std::ostringstream os;
    for (int d : {2, 4}) {
        GenParams p;
        p.dist = Distribution::IND;
        p.m = 1000;
        p.cnt = 10;
        p.d = d;
        p.l = 0.2;
        p.phi = 0.0;
        p.seed = 97 + d;
        const auto ds = gen_dataset(p);
        const auto V = preference_vertices(gen_constraints(ConstraintKind::WR, d, d - 1, 0));
        const auto runs = run_everything(ds, V, false);
        double worst = 0.0;
        for (std::size_t a = 1; a < runs.size(); ++a)
            worst = std::max(worst,
                             ArspResult::max_abs_diff(runs[0].result, runs[a].result));
        if (worst > 1e-9) return fail("d=" + std::to_string(d) + " disagreement above 1e-9");
        os << "d=" << d << " n=" << ds.instance_count() << " max|diff|=" << worst << "; ";

        if (d == 2) {
            // the angular algorithm joins on a ratio-box family
            const auto rb = fig1_ratio();
            const auto Vr = preference_vertices(ratio_box_to_constraints(rb));
            const auto want = loop_arsp(ds, Vr);
            const auto dual = dual2d_arsp(ds, rb, AngularIndex::Profile::general);
            const double dev = ArspResult::max_abs_diff(want, dual);
            if (dev > 1e-9) return fail("dual2d deviates above 1e-9");
            os << "dual2d(d=2, ratio) max|diff|=" << dev << "; ";
        }
    }
    return os.str();
}

// criterion 4 -----------------------------------------------------------

std::string run_criterion4() {
    std::mt19937_64 gen(4040);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    long mismatches = 0, trials = 0;
    for (int d = 2; d <= 6; ++d) {
        const int boxes = d <= 4 ? 20000 : (d == 5 ? 4000 : 2000);
        const int pairs_per_box = d <= 4 ? 1 : (d == 5 ? 5 : 10);
        for (int b = 0; b < boxes; ++b) {
            const auto rb = random_ratio_box(gen(), d);
            const auto V = preference_vertices(ratio_box_to_constraints(rb));
            for (int t = 0; t < pairs_per_box; ++t) {
                std::vector<double> x(d), y(d);
                for (auto& v : x) v = u(gen);
                for (auto& v : y) v = u(gen);
                if (f_dominates_ratio(rb, x, y) != f_dominates_vertices(V, x, y)) ++mismatches;
                ++trials;
            }
        }
    }
    if (mismatches != 0)
        return fail(std::to_string(mismatches) + " mismatches in " + std::to_string(trials));
    return std::to_string(trials) + " triples, 0 mismatches";
}

// criterion 5 -----------------------------------------------------------

std::string run_criterion5() {
    std::mt19937_64 gen(5050);
    LinearConstraintSystem full;
    int agreed = 0;
    for (int trial = 0; trial < 100; ++trial) {
        const int d = 2 + int(gen() % 5);
        const int size = 1 + int(gen() % 10);  // |A| = |B| <= 10
        std::vector<std::vector<int>> A(size, std::vector<int>(d));
        std::vector<std::vector<int>> B(size, std::vector<int>(d));
        for (auto& v : A)
            for (auto& x : v) x = int(gen() % 2);
        for (auto& v : B)
            for (auto& x : v) x = int(gen() % 2);

        bool want = false;
        for (const auto& a : A)
            for (const auto& b : B) {
                int dot = 0;
                for (int k = 0; k < d; ++k) dot += a[k] * b[k];
                if (dot == 0) want = true;
            }

        const auto [ds, cs] = gen_ov_instance(A, B);
        full.dim = d;
        full.rows.clear();
        const auto r = loop_arsp(ds, preference_vertices(full));
        bool got = false;
        const int ta_id = size + 1;
        for (int j = 1; j <= size; ++j)
            if (r.value(ta_id, j) == 0.0) got = true;
        if (got != want)
            return fail("instance " + std::to_string(trial) + " disagrees with the OV scan");
        ++agreed;
    }
    return std::to_string(agreed) + "/100 instances agree with the orthogonality scan";
}

// criterion 6 -----------------------------------------------------------

std::string run_criterion6() {
    std::mt19937_64 gen(6060);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const double endpoint_tol = 1e-12;
    long trials = 0;
    for (int t = 0; t < 100000; ++t) {
        const auto rb = random_ratio_box(gen(), 2);
        const std::vector<double> a{u(gen), u(gen)}, b{u(gen), u(gen)};
        const auto [qlo, qhi] = angular_interval(rb);
        const double theta = angle_around(a, b);
        if (std::fabs(theta - qlo) <= endpoint_tol || std::fabs(theta - qhi) <= endpoint_tol)
            continue;
        const bool in_range = qlo <= theta && theta <= qhi;
        if (in_range != f_dominates_ratio(rb, b, a)) return fail("interval/predicate mismatch");
        ++trials;
    }

    // IIP-style singleton dataset, binary-search profile vs the product form
    UncertainDataset ds;
    ds.dim = 2;
    const double conf[] = {0.6, 0.7, 0.8};
    for (int o = 1; o <= 10000; ++o) {
        UncertainObject obj;
        obj.object_id = o;
        obj.instances = {make_inst(o, 1, {u(gen), u(gen)}, conf[gen() % 3])};
        ds.objects.push_back(std::move(obj));
    }
    const auto rb = fig1_ratio();
    const auto V = preference_vertices(ratio_box_to_constraints(rb));
    const auto want = loop_arsp(ds, V);
    const auto got = dual2d_arsp(ds, rb, AngularIndex::Profile::singleton);
    const double dev = ArspResult::max_abs_diff(want, got);
    if (dev > 1e-9) return fail("singleton profile deviates by " + std::to_string(dev));
    std::ostringstream os;
    os << trials << " interval checks agree; singleton n=10^4 max|diff|=" << dev;
    return os.str();
}

// criterion 7 -----------------------------------------------------------

std::string run_criterion7() {
    GenParams p;
    p.dist = Distribution::IND;
    p.m = std::size_t(1) << 14;
    p.cnt = 1;
    p.d = 3;
    p.l = 0.0;
    p.seed = 7007;
    const auto ds = gen_dataset(p);
    PointSet pts;
    for (const auto& obj : ds.objects) pts.push_back(obj.instances[0].coords);

    RatioBox outer;
    outer.dim = 3;
    outer.ranges = {{0.36, 2.75}, {0.36, 2.75}};
    const auto naive = eclipse_naive(pts, outer);
    const auto pruned = eclipse_pruned(pts, outer);
    if (naive != pruned) return fail("pruned does not set-equal naive at n=2^14");

    RatioBox mid;
    mid.dim = 3;
    mid.ranges = {{0.5, 2.0}, {0.5, 2.0}};
    RatioBox inner;
    inner.dim = 3;
    inner.ranges = {{0.8, 1.25}, {0.8, 1.25}};
    const auto e_mid = eclipse_pruned(pts, mid);
    const auto e_inner = eclipse_pruned(pts, inner);
    if (!std::includes(naive.begin(), naive.end(), e_mid.begin(), e_mid.end()))
        return fail("nesting violated between outer and mid boxes");
    if (!std::includes(e_mid.begin(), e_mid.end(), e_inner.begin(), e_inner.end()))
        return fail("nesting violated between mid and inner boxes");
    std::ostringstream os;
    os << "n=2^14 d=3 q=[0.36,2.75]: |eclipse|=" << naive.size() << ", nested sizes "
       << naive.size() << ">=" << e_mid.size() << ">=" << e_inner.size();
    return os.str();
}

// criterion 8 -----------------------------------------------------------

std::string run_criterion8() {
    std::mt19937_64 gen(8080);
    for (int trial = 0; trial < 50; ++trial) {
        RandomDatasetParams p;
        p.m = 10 + gen() % 15;
        p.max_instances = 3;
        p.d = 3 + int(gen() % 2);
        p.tie_fraction = 0.05;
        const auto ds = random_dataset(gen(), p);
        const int c = 1 + int(gen() % (p.d - 2));  // room to append one more row
        const auto before =
            loop_arsp(ds, preference_vertices(gen_constraints(ConstraintKind::WR, p.d, c, 0)));
        const auto after = loop_arsp(
            ds, preference_vertices(gen_constraints(ConstraintKind::WR, p.d, c + 1, 0)));
        for (std::size_t i = 0; i < before.size(); ++i)
            if (after[i] > before[i] + 1e-12) return fail("probability increased after a cut");
    }
    return "50 datasets, no probability rose beyond 1e-12 slack";
}

// criterion 9 -----------------------------------------------------------

std::string run_criterion9() {
    // Absolute runtimes and order-of-magnitude separations at full scale
    // (hour-long cutoffs, 64K-object runs) are not reproduced as gating tests
    // at desk scale. Relative orderings are measured and reported as
    // informative output only.
    auto time_of = [](const std::function<void()>& fn) {
        fn();  // warmup
        double best = 1e100;
        for (int rep = 0; rep < 3; ++rep) {
            const auto t0 = std::chrono::steady_clock::now();
            fn();
            best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                                                t0)
                                      .count());
        }
        return best;
    };

    GenParams p;
    p.dist = Distribution::IND;
    p.m = 4000;
    p.cnt = 10;
    p.d = 3;
    p.l = 0.2;
    p.seed = 909;
    const auto ds = gen_dataset(p);
    const auto V = preference_vertices(gen_constraints(ConstraintKind::WR, 3, 2, 0));
    KdttOptions fused, unfused;
    fused.fused = true;
    unfused.fused = false;
    const double t_fused = time_of([&] { kdtt_arsp(ds, V, fused); });
    const double t_unfused = time_of([&] { kdtt_arsp(ds, V, unfused); });

    GenParams q;
    q.dist = Distribution::IND;
    q.m = std::size_t(1) << 14;
    q.cnt = 1;
    q.d = 3;
    q.l = 0.0;
    q.seed = 910;
    const auto certain = gen_dataset(q);
    PointSet pts;
    for (const auto& obj : certain.objects) pts.push_back(obj.instances[0].coords);
    RatioBox rb;
    rb.dim = 3;
    rb.ranges = {{0.36, 2.75}, {0.36, 2.75}};
    const double t_naive = time_of([&] { eclipse_naive(pts, rb); });
    const double t_pruned = time_of([&] { eclipse_pruned(pts, rb); });

    std::ostringstream os;
    os << "informative, non-gating: fused kdtt " << (t_fused < t_unfused ? "faster" : "slower")
       << " than unfused (" << t_fused << "s vs " << t_unfused << "s); pruned eclipse "
       << (t_pruned < t_naive ? "faster" : "slower") << " than naive at n=2^14 (" << t_pruned
       << "s vs " << t_naive << "s); full-scale absolute runtimes out of scope by design";
    return os.str();
}

}  // namespace

int main() {
    std::printf("acceptance suite\n");
    criterion(1, "worked-example reproduction", run_criterion1);
    criterion(2, "oracle equivalence on 200 random datasets", run_criterion2);
    criterion(3, "cross-algorithm agreement at scale", run_criterion3);
    criterion(4, "dominance-test equivalence over 10^5 triples", run_criterion4);
    criterion(5, "hardness-construction fidelity", run_criterion5);
    criterion(6, "angular reduction", run_criterion6);
    criterion(7, "eclipse at the default workload", run_criterion7);
    criterion(8, "monotonicity under added constraints", run_criterion8);
    criterion(9, "non-reproducibility note and relative orderings", run_criterion9);
    if (failures == 0)
        std::printf("all criteria passed\n");
    else
        std::printf("%d criteria FAILED\n", failures);
    return failures;
}
