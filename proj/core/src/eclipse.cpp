#include "arsp/eclipse.hpp"

#include <algorithm>
#include <numeric>

#include "arsp/dominance.hpp"

namespace arsp {

namespace {

struct UniqueRep {
    std::size_t idx;  // first original index of the coordinate group
    std::size_t multiplicity;
};

// Skyline over distinct coordinate vectors. Duplicated vectors knock each
// other out of the final skyline but still act as dominators, so both the
// representative list and the per-group multiplicity are needed.
std::vector<UniqueRep> unique_skyline(const PointSet& pts) {
    std::vector<std::size_t> order(pts.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (pts[a] != pts[b]) return pts[a] < pts[b];
        return a < b;
    });

    std::vector<UniqueRep> reps;
    for (std::size_t k = 0; k < order.size();) {
        std::size_t e = k + 1;
        while (e < order.size() && pts[order[e]] == pts[order[k]]) ++e;
        reps.push_back({order[k], e - k});
        k = e;
    }

    // sum-sort scan: with distinct coordinates every dominator has a strictly
    // smaller coordinate sum, so testing against accepted reps suffices
    std::sort(reps.begin(), reps.end(), [&](const UniqueRep& a, const UniqueRep& b) {
        const double sa = std::accumulate(pts[a.idx].begin(), pts[a.idx].end(), 0.0);
        const double sb = std::accumulate(pts[b.idx].begin(), pts[b.idx].end(), 0.0);
        if (sa != sb) return sa < sb;
        return pts[a.idx] < pts[b.idx];
    });
    std::vector<UniqueRep> accepted;
    for (const auto& r : reps) {
        bool dominated = false;
        for (const auto& a : accepted)
            if (classical_dominates(pts[a.idx], pts[r.idx])) {
                dominated = true;
                break;
            }
        if (!dominated) accepted.push_back(r);
    }
    return accepted;
}

struct KdNode {
    std::uint32_t begin, end;
    std::vector<double> lo, hi;
    std::int32_t left = -1, right = -1;
};

class DominatorTree {
public:
    DominatorTree(const PointSet& pts, std::vector<std::size_t> members) : pts_(pts) {
        members_ = std::move(members);
        if (!members_.empty()) root_ = build(0, static_cast<std::uint32_t>(members_.size()), 0);
    }

    /// Any member (other than skip_idx) F-dominating t?
    bool has_dominator(const std::vector<double>& t, std::size_t skip_idx,
                       const RatioBox& rb) const {
        if (root_ < 0) return false;
        return search(root_, t, skip_idx, rb);
    }

private:
    const PointSet& pts_;
    std::vector<std::size_t> members_;
    std::vector<KdNode> nodes_;
    std::int32_t root_ = -1;
    static constexpr std::uint32_t kLeafCap = 8;

    std::int32_t build(std::uint32_t b, std::uint32_t e, int depth) {
        const std::int32_t me = static_cast<std::int32_t>(nodes_.size());
        nodes_.push_back({b, e, {}, {}, -1, -1});
        {
            std::vector<double> lo = pts_[members_[b]], hi = pts_[members_[b]];
            for (std::uint32_t i = b + 1; i < e; ++i)
                for (std::size_t k = 0; k < lo.size(); ++k) {
                    lo[k] = std::min(lo[k], pts_[members_[i]][k]);
                    hi[k] = std::max(hi[k], pts_[members_[i]][k]);
                }
            nodes_[me].lo = std::move(lo);
            nodes_[me].hi = std::move(hi);
        }
        if (e - b <= kLeafCap) return me;
        const int axis = depth % static_cast<int>(nodes_[me].lo.size());
        const std::uint32_t mid = b + (e - b) / 2;
        std::nth_element(members_.begin() + b, members_.begin() + mid, members_.begin() + e,
                         [&](std::size_t x, std::size_t y) {
                             if (pts_[x][axis] != pts_[y][axis]) return pts_[x][axis] < pts_[y][axis];
                             return x < y;
                         });
        const std::int32_t l = build(b, mid, depth + 1);
        const std::int32_t r = build(mid, e, depth + 1);
        nodes_[me].left = l;
        nodes_[me].right = r;
        return me;
    }

    bool search(std::int32_t ni, const std::vector<double>& t, std::size_t skip_idx,
                const RatioBox& rb) const {
        const KdNode& nd = nodes_[ni];
        // min corner is the best any box point can do against t
        if (!f_dominates_ratio(rb, nd.lo, t)) return false;
        if (nd.left < 0) {
            for (std::uint32_t i = nd.begin; i < nd.end; ++i) {
                const std::size_t s = members_[i];
                if (s == skip_idx) continue;
                if (f_dominates_ratio(rb, pts_[s], t)) return true;
            }
            return false;
        }
        return search(nd.left, t, skip_idx, rb) || search(nd.right, t, skip_idx, rb);
    }
};

}  // namespace

std::vector<std::size_t> skyline(const PointSet& pts) {
    std::vector<std::size_t> out;
    for (const auto& r : unique_skyline(pts))
        if (r.multiplicity == 1) out.push_back(r.idx);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::size_t> eclipse_naive(const PointSet& pts, const RatioBox& rb) {
    std::vector<std::size_t> out;
    for (std::size_t t : skyline(pts)) {
        bool dominated = false;
        for (std::size_t s = 0; s < pts.size() && !dominated; ++s)
            if (s != t && f_dominates_ratio(rb, pts[s], pts[t])) dominated = true;
        if (!dominated) out.push_back(t);
    }
    return out;
}

std::vector<std::size_t> eclipse_pruned(const PointSet& pts, const RatioBox& rb) {
    const auto reps = unique_skyline(pts);
    std::vector<std::size_t> pool;
    pool.reserve(reps.size());
    for (const auto& r : reps) pool.push_back(r.idx);
    const DominatorTree tree(pts, pool);

    std::vector<std::size_t> out;
    for (const auto& r : reps) {
        if (r.multiplicity != 1) continue;
        if (!tree.has_dominator(pts[r.idx], r.idx, rb)) out.push_back(r.idx);
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace arsp
