#include "arsp/bnb.hpp"

#include <algorithm>
#include <memory>
#include <queue>

#include "arsp/agg_rtree.hpp"
#include "arsp/rtree.hpp"

namespace arsp {

namespace {

struct HeapEntry {
    double key;
    std::uint64_t seq;
    std::int32_t node;    // R-tree node, or -1
    std::int32_t inst;    // global instance index when node < 0
    bool operator>(const HeapEntry& o) const {
        if (key != o.key) return key > o.key;
        return seq > o.seq;
    }
};

}  // namespace

ArspResult bnb_arsp(const UncertainDataset& ds, const VertexSet& V, const BnbOptions& opt) {
    if (V.dprime() < 1) throw EmptyRegionError();
    ArspResult out(ds);
    const FlatView flat(ds);
    const std::size_t n = flat.size();
    const std::size_t m = flat.objects();
    if (n == 0) return out;
    const ScoreMatrix sm(flat, V);
    const int dp = V.dprime();
    const int d = ds.dim;

    std::vector<double> orig(n * d);
    for (std::size_t i = 0; i < n; ++i)
        std::copy(flat.instance(i).coords.begin(), flat.instance(i).coords.end(),
                  orig.begin() + i * d);
    const RTree rt(orig, d);

    const auto& w0 = V.vertices.front();
    auto node_key = [&](const RTree::Node& nd) { return score(w0, nd.box.lo); };

    // prune set: per-object running max corner in score space, activated once
    // the object's full mass has been emitted
    std::vector<std::vector<double>> corner(m);
    std::vector<double> emitted_total(m, 0.0);
    std::vector<std::uint32_t> active;

    auto corner_dominates = [&](std::span<const double> sv) {
        for (auto j : active) {
            const auto& c = corner[j];
            bool leq = true;
            for (int k = 0; k < dp; ++k)
                if (c[k] > sv[k]) {
                    leq = false;
                    break;
                }
            if (leq) return true;
        }
        return false;
    };
    auto node_pruned = [&](const RTree::Node& nd) {
        if (active.empty()) return false;
        std::vector<double> sv = score_vector(V, nd.box.lo);
        return corner_dominates(sv);
    };

    // aggregated score-space trees, created lazily per object
    std::vector<std::unique_ptr<AggRTree>> trees(m);
    std::vector<std::pair<std::vector<double>, double>>* shadow = nullptr;
    std::vector<std::vector<std::pair<std::vector<double>, double>>> shadow_store;
    if (opt.check_windows) {
        shadow_store.resize(m);
        shadow = shadow_store.data();
    }

    std::priority_queue<HeapEntry, std::vector<HeapEntry>, std::greater<HeapEntry>> heap;
    std::uint64_t seq = 0;
    heap.push({node_key(rt.root()), seq++, rt.root_index(), -1});

    std::vector<std::int32_t> batch;
    while (!heap.empty()) {
        const double key0 = heap.top().key;
        batch.clear();
        // drain every entry sharing the minimal key; expanding a node can
        // surface children or instances at the same key, which join the batch
        while (!heap.empty() && heap.top().key == key0) {
            const HeapEntry e = heap.top();
            heap.pop();
            if (e.node < 0) {
                batch.push_back(e.inst);
                continue;
            }
            const RTree::Node& nd = rt.node(e.node);
            if (node_pruned(nd)) continue;
            if (nd.leaf) {
                for (std::uint32_t i = nd.pt_begin; i < nd.pt_end; ++i) {
                    const std::uint32_t id = rt.ids()[i];
                    heap.push({sm.row(id)[0], seq++, -1, static_cast<std::int32_t>(id)});
                }
            } else {
                for (std::int32_t c = 0; c < nd.child_count; ++c) {
                    const RTree::Node& child = rt.node(nd.child_begin + c);
                    if (!node_pruned(child))
                        heap.push({node_key(child), seq++, nd.child_begin + c, -1});
                }
            }
        }
        if (batch.empty()) continue;

        // settle the batch in score-vector order; coincident score vectors
        // form groups whose members mutually dominate
        std::sort(batch.begin(), batch.end(), [&](std::int32_t a, std::int32_t b) {
            auto ra = sm.row(a), rb = sm.row(b);
            for (int k = 0; k < dp; ++k)
                if (ra[k] != rb[k]) return ra[k] < rb[k];
            const auto& ia = flat.instance(a);
            const auto& ib = flat.instance(b);
            if (ia.object_id != ib.object_id) return ia.object_id < ib.object_id;
            return ia.instance_id < ib.instance_id;
        });

        std::size_t gb = 0;
        while (gb < batch.size()) {
            std::size_t ge = gb + 1;
            while (ge < batch.size() &&
                   std::equal(sm.row(batch[ge]).begin(), sm.row(batch[ge]).end(),
                              sm.row(batch[gb]).begin()))
                ++ge;

            const auto group_sv = sm.row(batch[gb]);
            if (corner_dominates(group_sv)) {
                gb = ge;
                continue;  // zero; never inserted
            }

            // per-object mass inside the group
            std::vector<std::pair<std::uint32_t, double>> gmass;
            for (std::size_t g = gb; g < ge; ++g) {
                const std::uint32_t obj = flat.object_pos(batch[g]);
                auto it = std::find_if(gmass.begin(), gmass.end(),
                                       [&](const auto& x) { return x.first == obj; });
                if (it == gmass.end())
                    gmass.emplace_back(obj, flat.prob(batch[g]));
                else
                    it->second += flat.prob(batch[g]);
            }
            std::sort(gmass.begin(), gmass.end());

            for (std::size_t g = gb; g < ge; ++g) {
                const std::int32_t t = batch[g];
                const std::uint32_t own = flat.object_pos(t);
                const auto tv = sm.row(t);
                double pr = flat.prob(t);
                std::size_t gi = 0;
                for (std::uint32_t j = 0; j < m && pr != 0.0; ++j) {
                    double sigmaj = 0.0;
                    if (trees[j] && !trees[j]->empty()) sigmaj = trees[j]->dominated_sum(tv);
                    if (opt.check_windows && shadow) {
                        double want = 0.0;
                        for (const auto& [pt, p] : shadow[j]) {
                            bool leq = true;
                            for (int k = 0; k < dp; ++k)
                                if (pt[k] > tv[k]) {
                                    leq = false;
                                    break;
                                }
                            if (leq) want += p;
                        }
                        if (std::fabs(want - sigmaj) > 1e-9)
                            throw std::logic_error("bnb window sum diverged from brute force");
                    }
                    while (gi < gmass.size() && gmass[gi].first < j) ++gi;
                    if (gi < gmass.size() && gmass[gi].first == j) sigmaj += gmass[gi].second;
                    if (j == own || sigmaj == 0.0) continue;
                    pr *= 1.0 - clamp_to_one(sigmaj);
                }
                out[t] = pr;
            }

            // emit: index the group's score vectors and refresh prune data
            for (std::size_t g = gb; g < ge; ++g) {
                const std::int32_t t = batch[g];
                const std::uint32_t own = flat.object_pos(t);
                const auto tv = sm.row(t);
                if (!trees[own]) trees[own] = std::make_unique<AggRTree>(dp);
                trees[own]->insert(tv, flat.prob(t));
                if (shadow) shadow[own].emplace_back(std::vector<double>(tv.begin(), tv.end()),
                                                     flat.prob(t));
                if (corner[own].empty())
                    corner[own].assign(tv.begin(), tv.end());
                else
                    for (int k = 0; k < dp; ++k)
                        corner[own][k] = std::max(corner[own][k], tv[k]);
                emitted_total[own] += flat.prob(t);
                if (clamp_to_one(emitted_total[own]) == 1.0) {
                    if (std::find(active.begin(), active.end(), own) == active.end())
                        active.push_back(own);
                }
            }
            gb = ge;
        }
    }
    return out;
}

}  // namespace arsp
