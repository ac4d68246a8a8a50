#include "arsp/rtree.hpp"

#include <algorithm>
#include <cmath>

namespace arsp {

namespace {

// Sort-Tile-Recursive tiling: recursively slab-sorts ids by successive axes so
// that consecutive runs of `leaf_cap` points form spatially coherent leaves.
void str_tile(std::vector<std::uint32_t>& ids, std::size_t begin, std::size_t end,
              const std::vector<double>& pts, int dim, int axis, int leaf_cap) {
    const std::size_t count = end - begin;
    if (count <= static_cast<std::size_t>(leaf_cap) || axis >= dim) return;

    auto key = [&](std::uint32_t id) { return pts[std::size_t(id) * dim + axis]; };
    std::sort(ids.begin() + begin, ids.begin() + end, [&](std::uint32_t a, std::uint32_t b) {
        double ka = key(a), kb = key(b);
        if (ka != kb) return ka < kb;
        return a < b;
    });

    const std::size_t leaves = (count + leaf_cap - 1) / leaf_cap;
    const int remaining = dim - axis;
    const std::size_t slabs =
        std::max<std::size_t>(1, static_cast<std::size_t>(
                                     std::ceil(std::pow(double(leaves), 1.0 / remaining))));
    const std::size_t per_slab = ((leaves + slabs - 1) / slabs) * leaf_cap;
    for (std::size_t s = begin; s < end; s += per_slab)
        str_tile(ids, s, std::min(end, s + per_slab), pts, dim, axis + 1, leaf_cap);
}

}  // namespace

Mbr RTree::mbr_of_range(std::uint32_t b, std::uint32_t e) const {
    Mbr box = Mbr::of_point(point(ids_[b]));
    for (std::uint32_t i = b + 1; i < e; ++i) box.expand(point(ids_[i]));
    return box;
}

RTree::RTree(const std::vector<double>& flat_points, int dim) : dim_(dim), pts_(flat_points) {
    const std::size_t n = pts_.size() / dim_;
    if (n == 0) throw BadParamError("R-tree requires at least one point");
    ids_.resize(n);
    for (std::size_t i = 0; i < n; ++i) ids_[i] = static_cast<std::uint32_t>(i);
    str_tile(ids_, 0, n, pts_, dim_, 0, kFanout);

    // leaf level
    std::vector<std::int32_t> level;
    for (std::size_t b = 0; b < n; b += kFanout) {
        const std::uint32_t e = static_cast<std::uint32_t>(std::min(n, b + kFanout));
        Node leaf;
        leaf.leaf = true;
        leaf.pt_begin = static_cast<std::uint32_t>(b);
        leaf.pt_end = e;
        leaf.box = mbr_of_range(leaf.pt_begin, leaf.pt_end);
        level.push_back(static_cast<std::int32_t>(nodes_.size()));
        nodes_.push_back(std::move(leaf));
    }

    // pack upward; STR order keeps siblings spatially close
    while (level.size() > 1) {
        std::vector<std::int32_t> next;
        for (std::size_t b = 0; b < level.size(); b += kFanout) {
            const std::size_t e = std::min(level.size(), b + kFanout);
            Node inner;
            inner.leaf = false;
            inner.child_begin = level[b];
            inner.child_count = static_cast<std::int32_t>(e - b);
            inner.box = nodes_[level[b]].box;
            for (std::size_t i = b + 1; i < e; ++i) inner.box.expand(nodes_[level[i]].box);
            next.push_back(static_cast<std::int32_t>(nodes_.size()));
            nodes_.push_back(std::move(inner));
        }
        // each level is pushed contiguously, so child_begin + i == level[b + i]
        level = std::move(next);
    }
    root_ = level.front();
}

std::vector<std::uint32_t> RTree::window_query(std::span<const double> lo,
                                               std::span<const double> hi) const {
    std::vector<std::uint32_t> out;
    std::vector<std::int32_t> stack{root_};
    while (!stack.empty()) {
        const Node& nd = nodes_[stack.back()];
        stack.pop_back();
        if (!nd.box.intersects(lo, hi)) continue;
        if (nd.leaf) {
            for (std::uint32_t i = nd.pt_begin; i < nd.pt_end; ++i) {
                auto p = point(ids_[i]);
                bool in = true;
                for (std::size_t k = 0; k < p.size(); ++k)
                    if (p[k] < lo[k] || p[k] > hi[k]) {
                        in = false;
                        break;
                    }
                if (in) out.push_back(ids_[i]);
            }
        } else {
            for (std::int32_t c = 0; c < nd.child_count; ++c)
                stack.push_back(nd.child_begin + c);
        }
    }
    return out;
}

}  // namespace arsp
