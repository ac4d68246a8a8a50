#pragma once

// Shared fixtures and brute-force oracles for the test suites.

#include <algorithm>
#include <random>
#include <vector>

#include "arsp/dominance.hpp"
#include "arsp/polytope.hpp"
#include "arsp/rational.hpp"
#include "arsp/types.hpp"

namespace arsp::testing {

inline Instance make_inst(int oid, int iid, std::vector<double> coords, double prob) {
    Instance t;
    t.object_id = oid;
    t.instance_id = iid;
    t.coords = std::move(coords);
    t.prob = prob;
    return t;
}

/// The running-example dataset: 4 objects, 10 instances in the plane.
/// T2's third instance sits at (9,12) and T3's first at (6,5); under the
/// ratio box [0.5,2] the first object ends up with probability 2/9 carried
/// entirely by its first instance.
inline UncertainDataset fig1_dataset() {
    UncertainDataset ds;
    ds.dim = 2;
    UncertainObject t1;
    t1.object_id = 1;
    t1.instances = {make_inst(1, 1, {2, 16}, 0.5), make_inst(1, 2, {8, 15}, 0.5)};
    UncertainObject t2;
    t2.object_id = 2;
    t2.instances = {make_inst(2, 1, {2, 14}, 1.0 / 3), make_inst(2, 2, {12, 14}, 1.0 / 3),
                    make_inst(2, 3, {9, 12}, 1.0 / 3)};
    UncertainObject t3;
    t3.object_id = 3;
    t3.instances = {make_inst(3, 1, {6, 5}, 1.0 / 3), make_inst(3, 2, {8, 8}, 1.0 / 3),
                    make_inst(3, 3, {10, 10}, 1.0 / 3)};
    UncertainObject t4;
    t4.object_id = 4;
    t4.instances = {make_inst(4, 1, {5, 15}, 0.5), make_inst(4, 2, {13, 7}, 0.5)};
    ds.objects = {t1, t2, t3, t4};
    return ds;
}

inline RatioBox fig1_ratio() {
    RatioBox rb;
    rb.dim = 2;
    rb.ranges = {{0.5, 2.0}};
    return rb;
}

/// Exact probabilities of the fig1 instances in canonical order.
inline ExactProbs fig1_exact_probs() {
    const Rational half(1, 2), third(1, 3);
    return {half, half, third, third, third, third, third, third, half, half};
}

/// Exact per-instance rskyline probabilities under the [0.5,2] ratio box,
/// frozen from the possible-world oracle.
inline std::vector<std::pair<InstanceKey, Rational>> fig1_expected_exact() {
    return {
        {{1, 1}, Rational(2, 9)},  {{1, 2}, Rational(0)},     {{2, 1}, Rational(2, 9)},
        {{2, 2}, Rational(0)},     {{2, 3}, Rational(0)},     {{3, 1}, Rational(1, 3)},
        {{3, 2}, Rational(1, 3)},  {{3, 3}, Rational(2, 9)},  {{4, 1}, Rational(1, 18)},
        {{4, 2}, Rational(1, 6)},
    };
}

struct RandomDatasetParams {
    std::size_t m = 4;
    int max_instances = 3;
    int d = 2;
    double certain_fraction = 0.5;  // objects with total probability 1
    double tie_fraction = 0.0;      // instances copying an earlier coordinate
    double coord_lo = 0.0;
    double coord_hi = 1.0;
};

/// Small random datasets for cross-algorithm checks; independent of the
/// library's generator on purpose.
inline UncertainDataset random_dataset(std::uint64_t seed, const RandomDatasetParams& p) {
    std::mt19937_64 gen(seed);
    std::uniform_real_distribution<double> coord(p.coord_lo, p.coord_hi);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    UncertainDataset ds;
    ds.dim = p.d;
    std::vector<std::vector<double>> all_coords;
    for (std::size_t o = 0; o < p.m; ++o) {
        UncertainObject obj;
        obj.object_id = static_cast<int>(o + 1);
        const int ni = 1 + static_cast<int>(gen() % p.max_instances);
        const bool certain = unit(gen) < p.certain_fraction;
        // certain objects use a dyadic ladder 1/2, 1/4, ..., 1/2^k, 1/2^k so
        // the probabilities sum to exactly 1 in double arithmetic
        std::vector<double> probs(ni);
        if (certain) {
            double rest = 1.0;
            for (int j = 0; j + 1 < ni; ++j) {
                probs[j] = rest / 2;
                rest /= 2;
            }
            probs[ni - 1] = rest;
            std::shuffle(probs.begin(), probs.end(), gen);
        } else {
            std::vector<double> weights(ni);
            double wsum = 0.0;
            for (auto& w : weights) {
                w = 1.0 + double(gen() % 4);
                wsum += w;
            }
            const double scale = 0.2 + 0.7 * unit(gen);
            for (int j = 0; j < ni; ++j) probs[j] = scale * weights[j] / wsum;
        }
        for (int j = 0; j < ni; ++j) {
            Instance t;
            t.object_id = obj.object_id;
            t.instance_id = j + 1;
            t.prob = probs[j];
            if (!all_coords.empty() && unit(gen) < p.tie_fraction) {
                t.coords = all_coords[gen() % all_coords.size()];
            } else {
                t.coords.resize(p.d);
                for (auto& c : t.coords) c = coord(gen);
            }
            all_coords.push_back(t.coords);
            obj.instances.push_back(std::move(t));
        }
        ds.objects.push_back(std::move(obj));
    }
    return ds;
}

inline RatioBox random_ratio_box(std::uint64_t seed, int d) {
    std::mt19937_64 gen(seed);
    std::uniform_real_distribution<double> unit(0.05, 1.0);
    RatioBox rb;
    rb.dim = d;
    for (int i = 0; i < d - 1; ++i) {
        const double a = unit(gen) * 3.0;
        const double b = a + unit(gen) * 3.0;
        rb.ranges.push_back({a, b});
    }
    return rb;
}

/// Brute-force dominator mass: sum of p(s) over instances of other objects
/// whose score vector is coordinatewise <= the target's.
inline double brute_sigma(const FlatView& flat, const ScoreMatrix& sm, std::size_t target,
                          std::uint32_t obj) {
    double s = 0.0;
    for (std::size_t i = 0; i < flat.size(); ++i) {
        if (flat.object_pos(i) != obj || flat.object_pos(i) == flat.object_pos(target)) continue;
        if (sm.leq(i, target)) s += flat.prob(i);
    }
    return s;
}

}  // namespace arsp::testing
