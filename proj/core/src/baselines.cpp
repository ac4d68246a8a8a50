#include "arsp/baselines.hpp"

#include <algorithm>
#include <numeric>

#include "arsp/parallel.hpp"

namespace arsp {

namespace {

// Arithmetic shared by the float path and the exact-rational oracle path.
// Floats clamp near-1 sums to exactly 1 (guards drift on objects with total
// probability 1); rationals are exact and never clamp.
struct DoubleOps {
    using value = double;
    static double from(double p, std::size_t) { return p; }
    static double clamp(double x) { return clamp_to_one(x); }
};

struct RationalOps {
    using value = Rational;
    const ExactProbs* probs;
    Rational from(double p, std::size_t flat_idx) const {
        if (probs) return (*probs)[flat_idx];
        return rational_from_double(p);
    }
    static const Rational& clamp(const Rational& x) { return x; }
};

template <typename Ops, typename Result>
void enum_impl(const UncertainDataset& ds, const VertexSet& V, const EnumOptions& opt,
               const Ops& ops, Result& out) {
    const FlatView flat(ds);
    const ScoreMatrix sm(flat, V);
    const std::size_t m = flat.objects();
    using T = typename Ops::value;

    // per-object flat base offsets, probabilities and totals
    std::vector<std::size_t> base(m, 0);
    std::vector<std::vector<T>> probs(m);
    std::vector<T> totals(m);
    {
        std::size_t g = 0;
        for (std::size_t o = 0; o < m; ++o) {
            base[o] = g;
            const auto& insts = ds.objects[o].instances;
            T total(0);
            for (std::size_t j = 0; j < insts.size(); ++j, ++g) {
                probs[o].push_back(ops.from(insts[j].prob, g));
                total += probs[o].back();
            }
            totals[o] = Ops::clamp(total);
        }
    }

    std::vector<int> radix(m);
    double world_count = 1.0;
    for (std::size_t o = 0; o < m; ++o) {
        const bool has_absent = totals[o] < T(1);
        radix[o] = static_cast<int>(probs[o].size()) + (has_absent ? 1 : 0);
        world_count *= radix[o];
    }
    if (world_count > opt.max_worlds) throw TooManyWorldsError(world_count);

    std::vector<int> digit(m, 0);
    std::vector<std::size_t> present;  // global indices of chosen instances
    present.reserve(m);
    while (true) {
        T pr(1);
        present.clear();
        for (std::size_t o = 0; o < m; ++o) {
            if (digit[o] == static_cast<int>(probs[o].size())) {
                pr *= T(1) - totals[o];  // object absent
            } else {
                pr *= probs[o][digit[o]];
                present.push_back(base[o] + digit[o]);
            }
        }
        // rskyline membership: nothing else in the world maps below-or-equal
        for (std::size_t a : present) {
            bool dominated = false;
            for (std::size_t b : present) {
                if (b == a) continue;
                if (sm.leq(b, a)) {
                    dominated = true;
                    break;
                }
            }
            if (!dominated) out[a] += pr;
        }
        std::size_t o = 0;
        while (o < m && ++digit[o] == radix[o]) digit[o++] = 0;
        if (o == m) break;
    }
}

template <typename Ops, typename Result>
void loop_impl(const UncertainDataset& ds, const VertexSet& V, const Ops& ops, Result& out,
               bool parallel) {
    const FlatView flat(ds);
    const ScoreMatrix sm(flat, V);
    const std::size_t n = flat.size();
    const std::size_t m = flat.objects();
    using T = typename Ops::value;

    std::vector<T> prob(n);
    for (std::size_t i = 0; i < n; ++i) prob[i] = ops.from(flat.prob(i), i);

    // Sort by score under the first vertex; the remaining vertex scores and
    // the instance identity break ties so the order is deterministic and no
    // later instance can F-dominate an earlier one unless their score vectors
    // coincide entirely.
    std::vector<std::uint32_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
        auto ra = sm.row(a), rb = sm.row(b);
        for (std::size_t k = 0; k < ra.size(); ++k)
            if (ra[k] != rb[k]) return ra[k] < rb[k];
        const auto& ia = flat.instance(a);
        const auto& ib = flat.instance(b);
        if (ia.object_id != ib.object_id) return ia.object_id < ib.object_id;
        return ia.instance_id < ib.instance_id;
    });

    // group_end[k): end of the run of positions sharing position k's score
    // vector. Coincident instances mutually F-dominate, so each member also
    // tests the rest of its group.
    std::vector<std::size_t> group_end(n);
    {
        std::size_t k = 0;
        while (k < n) {
            std::size_t e = k + 1;
            while (e < n && sm.row(order[e]).size() == sm.row(order[k]).size() &&
                   std::equal(sm.row(order[e]).begin(), sm.row(order[e]).end(),
                              sm.row(order[k]).begin()))
                ++e;
            for (std::size_t j = k; j < e; ++j) group_end[j] = e;
            k = e;
        }
    }

    auto process = [&](std::size_t kb, std::size_t ke) {
        std::vector<T> sigma(m, T(0));
        std::vector<std::uint32_t> touched;
        for (std::size_t k = kb; k < ke; ++k) {
            const std::uint32_t t = order[k];
            const std::uint32_t own = flat.object_pos(t);
            touched.clear();
            for (std::size_t p = 0; p < group_end[k]; ++p) {
                const std::uint32_t s = order[p];
                if (s == t) continue;
                const std::uint32_t so = flat.object_pos(s);
                if (so == own) continue;
                if (!sm.leq(s, t)) continue;
                if (sigma[so] == T(0)) touched.push_back(so);
                sigma[so] += prob[s];
            }
            T pr = prob[t];
            for (auto j : touched) {
                pr *= T(1) - Ops::clamp(sigma[j]);
                sigma[j] = T(0);
            }
            out[t] = pr;
        }
    };

    if (parallel) {
        parallel_for_chunks(n, process);
    } else {
        process(0, n);
    }
}

}  // namespace

double world_probability(const UncertainDataset& ds, const std::vector<int>& choice) {
    if (choice.size() != ds.objects.size()) throw BadParamError("choice size != object count");
    double pr = 1.0;
    for (std::size_t o = 0; o < choice.size(); ++o) {
        const auto& obj = ds.objects[o];
        if (choice[o] < 0)
            pr *= 1.0 - clamp_to_one(obj.total_prob());
        else
            pr *= obj.instances.at(choice[o]).prob;
    }
    return pr;
}

Rational world_probability_exact(const UncertainDataset& ds, const std::vector<int>& choice,
                                 const ExactProbs* probs) {
    if (choice.size() != ds.objects.size()) throw BadParamError("choice size != object count");
    RationalOps ops{probs};
    Rational pr(1);
    std::size_t g = 0;
    for (std::size_t o = 0; o < choice.size(); ++o) {
        const auto& obj = ds.objects[o];
        Rational total(0);
        Rational chosen(0);
        for (std::size_t j = 0; j < obj.instances.size(); ++j, ++g) {
            Rational p = ops.from(obj.instances[j].prob, g);
            total += p;
            if (choice[o] == static_cast<int>(j)) chosen = p;
        }
        pr *= choice[o] < 0 ? Rational(1) - total : chosen;
    }
    return pr;
}

ArspResult enum_arsp(const UncertainDataset& ds, const VertexSet& V, const EnumOptions& opt) {
    ArspResult out(ds);
    enum_impl(ds, V, opt, DoubleOps{}, out);
    return out;
}

ExactArspResult enum_arsp_exact(const UncertainDataset& ds, const VertexSet& V,
                                const EnumOptions& opt, const ExactProbs* probs) {
    ExactArspResult out(ds);
    enum_impl(ds, V, opt, RationalOps{probs}, out);
    return out;
}

ArspResult loop_arsp(const UncertainDataset& ds, const VertexSet& V) {
    ArspResult out(ds);
    loop_impl(ds, V, DoubleOps{}, out, true);
    return out;
}

ExactArspResult loop_arsp_exact(const UncertainDataset& ds, const VertexSet& V,
                                const ExactProbs* probs) {
    ExactArspResult out(ds);
    loop_impl(ds, V, RationalOps{probs}, out, false);
    return out;
}

}  // namespace arsp
