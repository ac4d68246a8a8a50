#include "arsp/kdtt.hpp"

#include <algorithm>
#include <cstring>
#include <numeric>

namespace arsp {

namespace {

struct Box {
    std::vector<double> lo, hi;
    bool degenerate() const { return lo == hi; }
};

struct Traversal {
    const FlatView& flat;
    const ScoreMatrix& sm;
    const KdttOptions& opt;
    ArspResult& out;
    int dp;

    std::vector<std::uint32_t> order;  // the P array, reordered by partitioning

    // path state
    std::vector<double> sigma;
    double beta = 1.0;
    int chi = 0;
    struct Undo {
        std::uint32_t obj;
        double sigma;
        double beta;
        int chi;
    };
    std::vector<Undo> undo;

    // prebuilt tree (fused == false)
    struct Node {
        std::uint32_t begin = 0, end = 0;
        Box box;
        std::int32_t child_begin = -1;  // into child_index
        std::uint32_t child_count = 0;
    };
    std::vector<Node> nodes;
    std::vector<std::int32_t> child_index;

    Box range_box(std::uint32_t b, std::uint32_t e) const {
        Box box;
        auto r0 = sm.row(order[b]);
        box.lo.assign(r0.begin(), r0.end());
        box.hi = box.lo;
        for (std::uint32_t i = b + 1; i < e; ++i) {
            auto r = sm.row(order[i]);
            for (int k = 0; k < dp; ++k) {
                if (r[k] < box.lo[k]) box.lo[k] = r[k];
                if (r[k] > box.hi[k]) box.hi[k] = r[k];
            }
        }
        return box;
    }

    bool leq_point(std::uint32_t idx, const std::vector<double>& corner) const {
        auto r = sm.row(idx);
        for (int k = 0; k < dp; ++k)
            if (r[k] > corner[k]) return false;
        return true;
    }

    bool at_corner(std::uint32_t idx, const std::vector<double>& corner) const {
        auto r = sm.row(idx);
        for (int k = 0; k < dp; ++k)
            if (r[k] != corner[k]) return false;
        return true;
    }

    void consume(std::uint32_t idx) {
        const std::uint32_t obj = flat.object_pos(idx);
        undo.push_back({obj, sigma[obj], beta, chi});
        if (sigma[obj] == 1.0) return;  // residual mass of an already saturated object
        const double ns = clamp_to_one(sigma[obj] + flat.prob(idx));
        if (ns == 1.0) {
            ++chi;
            beta /= 1.0 - sigma[obj];
        } else {
            beta *= (1.0 - ns) / (1.0 - sigma[obj]);
        }
        sigma[obj] = ns;
    }

    void rollback(std::size_t mark) {
        while (undo.size() > mark) {
            const Undo& u = undo.back();
            sigma[u.obj] = u.sigma;
            beta = u.beta;
            chi = u.chi;
            undo.pop_back();
        }
    }

    void verify_sigma(const std::vector<double>& pmin) const {
        std::vector<double> want(sigma.size(), 0.0);
        for (std::size_t i = 0; i < flat.size(); ++i)
            if (leq_point(static_cast<std::uint32_t>(i), pmin))
                want[flat.object_pos(i)] += flat.prob(i);
        for (std::size_t j = 0; j < want.size(); ++j)
            if (std::fabs(clamp_to_one(want[j]) - sigma[j]) > 1e-9)
                throw std::logic_error("kdtt sigma bookkeeping diverged from brute force");
    }

    // Per-instance value once traversal stops at this node. Instances of the
    // single saturated object can only sit exactly at the node's min corner;
    // their own-object saturation must not zero them out.
    void emit_range(std::uint32_t b, std::uint32_t e, const std::vector<double>& pmin) {
        for (std::uint32_t i = b; i < e; ++i) {
            const std::uint32_t idx = order[i];
            const std::uint32_t obj = flat.object_pos(idx);
            if (chi == 0) {
                out[idx] = beta * flat.prob(idx) / (1.0 - sigma[obj]);
            } else if (chi == 1 && sigma[obj] == 1.0 && at_corner(idx, pmin)) {
                out[idx] = beta * flat.prob(idx);
            }
            // otherwise zero, which the result already holds
        }
    }

    // --- partitioning -------------------------------------------------------

    // kd split: round-robin axis, positional median, ties resolved by the
    // axis value then instance identity.
    std::uint32_t kd_partition(std::uint32_t b, std::uint32_t e, int depth) {
        const int axis = depth % dp;
        const std::uint32_t mid = b + (e - b) / 2;
        std::nth_element(order.begin() + b, order.begin() + mid, order.begin() + e,
                         [&](std::uint32_t x, std::uint32_t y) {
                             const double vx = sm.row(x)[axis], vy = sm.row(y)[axis];
                             if (vx != vy) return vx < vy;
                             const auto& ix = flat.instance(x);
                             const auto& iy = flat.instance(y);
                             if (ix.object_id != iy.object_id) return ix.object_id < iy.object_id;
                             return ix.instance_id < iy.instance_id;
                         });
        return mid;
    }

    // quadtree split: bucket by the side of the box center per axis, low side
    // on ties; buckets ordered by code, stable within.
    std::vector<std::uint32_t> quad_partition(std::uint32_t b, std::uint32_t e, const Box& box) {
        std::vector<double> center(dp);
        for (int k = 0; k < dp; ++k) center[k] = 0.5 * (box.lo[k] + box.hi[k]);
        auto code_of = [&](std::uint32_t idx) {
            std::uint64_t code = 0;
            auto r = sm.row(idx);
            for (int k = 0; k < dp; ++k)
                if (r[k] > center[k]) code |= std::uint64_t(1) << k;
            return code;
        };
        std::vector<std::pair<std::uint64_t, std::uint32_t>> tagged;
        tagged.reserve(e - b);
        for (std::uint32_t i = b; i < e; ++i) tagged.emplace_back(code_of(order[i]), order[i]);
        std::stable_sort(tagged.begin(), tagged.end(),
                         [](const auto& x, const auto& y) { return x.first < y.first; });
        std::vector<std::uint32_t> bounds{b};
        for (std::uint32_t i = 0; i < tagged.size(); ++i) {
            order[b + i] = tagged[i].second;
            if (i > 0 && tagged[i].first != tagged[i - 1].first)
                bounds.push_back(b + i);
        }
        bounds.push_back(e);
        if (bounds.size() == 2) {
            // collapsed center (floating point corner case): force progress
            const std::uint32_t mid = kd_partition(b, e, 0);
            return {b, mid, e};
        }
        return bounds;
    }

    // --- prebuilt tree ------------------------------------------------------

    std::int32_t build(std::uint32_t b, std::uint32_t e, int depth) {
        const std::int32_t me = static_cast<std::int32_t>(nodes.size());
        nodes.push_back({b, e, range_box(b, e), -1, 0});
        if (e - b == 1 || nodes[me].box.degenerate()) return me;
        std::vector<std::uint32_t> bounds;
        if (opt.variant == KdttOptions::Variant::kd) {
            const std::uint32_t mid = kd_partition(b, e, depth);
            bounds = {b, mid, e};
        } else {
            bounds = quad_partition(b, e, nodes[me].box);
        }
        std::vector<std::int32_t> kids;
        for (std::size_t i = 0; i + 1 < bounds.size(); ++i)
            kids.push_back(build(bounds[i], bounds[i + 1], depth + 1));
        nodes[me].child_begin = static_cast<std::int32_t>(child_index.size());
        nodes[me].child_count = static_cast<std::uint32_t>(kids.size());
        child_index.insert(child_index.end(), kids.begin(), kids.end());
        return me;
    }

    // --- traversal ----------------------------------------------------------

    void visit_fused(std::uint32_t b, std::uint32_t e, int depth,
                     const std::vector<std::uint32_t>& c_par) {
        const Box box = range_box(b, e);
        const std::size_t mark = undo.size();
        if (opt.stats) ++opt.stats->nodes_visited;
        std::vector<std::uint32_t> c;
        for (std::uint32_t idx : c_par) {
            if (leq_point(idx, box.lo))
                consume(idx);
            else if (leq_point(idx, box.hi))
                c.push_back(idx);
        }
        if (opt.check_sigma) verify_sigma(box.lo);

        if (e - b == 1 || box.degenerate() || (opt.prune && chi > 0)) {
            if (opt.stats) ++opt.stats->terminals;
            emit_range(b, e, box.lo);
        } else if (opt.variant == KdttOptions::Variant::kd) {
            const std::uint32_t mid = kd_partition(b, e, depth);
            visit_fused(b, mid, depth + 1, c);
            visit_fused(mid, e, depth + 1, c);
        } else {
            const auto bounds = quad_partition(b, e, box);
            for (std::size_t i = 0; i + 1 < bounds.size(); ++i)
                visit_fused(bounds[i], bounds[i + 1], depth + 1, c);
        }
        rollback(mark);
    }

    void visit_built(std::int32_t node_idx, const std::vector<std::uint32_t>& c_par) {
        const Node& nd = nodes[node_idx];
        const std::size_t mark = undo.size();
        if (opt.stats) ++opt.stats->nodes_visited;
        std::vector<std::uint32_t> c;
        for (std::uint32_t idx : c_par) {
            if (leq_point(idx, nd.box.lo))
                consume(idx);
            else if (leq_point(idx, nd.box.hi))
                c.push_back(idx);
        }
        if (opt.check_sigma) verify_sigma(nd.box.lo);

        if (nd.child_count == 0 || (opt.prune && chi > 0)) {
            if (opt.stats) ++opt.stats->terminals;
            emit_range(nd.begin, nd.end, nd.box.lo);
        } else {
            for (std::uint32_t i = 0; i < nd.child_count; ++i)
                visit_built(child_index[nd.child_begin + i], c);
        }
        rollback(mark);
    }
};

}  // namespace

ArspResult kdtt_arsp(const UncertainDataset& ds, const VertexSet& V, const KdttOptions& opt) {
    if (V.dprime() < 1) throw EmptyRegionError();
    ArspResult out(ds);
    const FlatView flat(ds);
    if (flat.size() == 0) return out;
    const ScoreMatrix sm(flat, V);

    Traversal tr{flat, sm, opt, out, V.dprime(), {}, {}, 1.0, 0, {}, {}, {}};
    tr.order.resize(flat.size());
    std::iota(tr.order.begin(), tr.order.end(), 0);
    tr.sigma.assign(flat.objects(), 0.0);

    std::vector<std::uint32_t> c_root(flat.size());
    std::iota(c_root.begin(), c_root.end(), 0);

    if (opt.fused) {
        tr.visit_fused(0, static_cast<std::uint32_t>(flat.size()), 0, c_root);
    } else {
        const std::int32_t root = tr.build(0, static_cast<std::uint32_t>(flat.size()), 0);
        tr.visit_built(root, c_root);
    }
    return out;
}

}  // namespace arsp
