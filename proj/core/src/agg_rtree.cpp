#include "arsp/agg_rtree.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace arsp {

namespace {

double box_volume(const Mbr& b) {
    double v = 1.0;
    for (std::size_t i = 0; i < b.lo.size(); ++i) v *= b.hi[i] - b.lo[i];
    return v;
}

double enlargement(const Mbr& b, std::span<const double> p) {
    double grown = 1.0, current = 1.0;
    for (std::size_t i = 0; i < b.lo.size(); ++i) {
        const double lo = std::min(b.lo[i], p[i]);
        const double hi = std::max(b.hi[i], p[i]);
        grown *= hi - lo;
        current *= b.hi[i] - b.lo[i];
    }
    return grown - current;
}

// Guttman quadratic split on a list of (box, weight) items; ties resolved by
// index so insertion order fully determines the tree.
void quadratic_partition(const std::vector<Mbr>& boxes, std::vector<std::size_t>& group_a,
                         std::vector<std::size_t>& group_b, Mbr& box_a, Mbr& box_b,
                         std::size_t min_fill) {
    const std::size_t fill = boxes.size();
    std::size_t seed_a = 0, seed_b = 1;
    double worst = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < fill; ++i)
        for (std::size_t j = i + 1; j < fill; ++j) {
            Mbr joint = boxes[i];
            joint.expand(boxes[j]);
            const double waste = box_volume(joint) - box_volume(boxes[i]) - box_volume(boxes[j]);
            if (waste > worst) {
                worst = waste;
                seed_a = i;
                seed_b = j;
            }
        }
    box_a = boxes[seed_a];
    box_b = boxes[seed_b];
    group_a = {seed_a};
    group_b = {seed_b};
    for (std::size_t i = 0; i < fill; ++i) {
        if (i == seed_a || i == seed_b) continue;
        const std::size_t left = fill - i - (i < seed_a ? 1 : 0) - (i < seed_b ? 1 : 0);
        bool to_a;
        if (group_a.size() + left <= min_fill)
            to_a = true;
        else if (group_b.size() + left <= min_fill)
            to_a = false;
        else {
            Mbr ga = box_a, gb = box_b;
            ga.expand(boxes[i]);
            gb.expand(boxes[i]);
            const double da = box_volume(ga) - box_volume(box_a);
            const double db = box_volume(gb) - box_volume(box_b);
            to_a = da != db ? da < db : group_a.size() <= group_b.size();
        }
        if (to_a) {
            group_a.push_back(i);
            box_a.expand(boxes[i]);
        } else {
            group_b.push_back(i);
            box_b.expand(boxes[i]);
        }
    }
}

}  // namespace

std::int32_t AggRTree::choose_leaf(std::span<const double> p) const {
    std::int32_t cur = root_;
    while (!nodes_[cur].leaf) {
        const auto& kids = nodes_[cur].children;
        std::int32_t best = kids.front();
        double best_enl = enlargement(nodes_[best].box, p);
        for (std::size_t i = 1; i < kids.size(); ++i) {
            double enl = enlargement(nodes_[kids[i]].box, p);
            if (enl < best_enl || (enl == best_enl && box_volume(nodes_[kids[i]].box) <
                                                          box_volume(nodes_[best].box))) {
                best = kids[i];
                best_enl = enl;
            }
        }
        cur = best;
    }
    return cur;
}

void AggRTree::refresh_box(std::int32_t idx) {
    Node& nd = nodes_[idx];
    if (nd.leaf) {
        nd.box = Mbr::of_point(nd.entries.front().point);
        for (std::size_t i = 1; i < nd.entries.size(); ++i) nd.box.expand(nd.entries[i].point);
    } else {
        nd.box = nodes_[nd.children.front()].box;
        for (std::size_t i = 1; i < nd.children.size(); ++i)
            nd.box.expand(nodes_[nd.children[i]].box);
    }
}

void AggRTree::insert(std::span<const double> point, double prob) {
    if (static_cast<int>(point.size()) != dim_)
        throw DimensionMismatchError("aggregated R-tree point width mismatch");
    if (root_ < 0) {
        Node leaf;
        leaf.leaf = true;
        leaf.box = Mbr::of_point(point);
        nodes_.push_back(std::move(leaf));
        root_ = 0;
    }
    std::int32_t leaf = choose_leaf(point);
    nodes_[leaf].entries.push_back({{point.begin(), point.end()}, prob});
    nodes_[leaf].box.expand(point);
    nodes_[leaf].sum += prob;
    for (std::int32_t up = nodes_[leaf].parent; up >= 0; up = nodes_[up].parent) {
        nodes_[up].box.expand(point);
        nodes_[up].sum += prob;
    }
    ++count_;
    if (nodes_[leaf].entries.size() > kFanout) split(leaf);
}

void AggRTree::split(std::int32_t idx) {
    while (idx >= 0) {
        const std::size_t fill =
            nodes_[idx].leaf ? nodes_[idx].entries.size() : nodes_[idx].children.size();
        if (fill <= kFanout) {
            idx = nodes_[idx].parent;
            continue;
        }

        const bool leaf = nodes_[idx].leaf;
        std::vector<Entry> entries;
        std::vector<std::int32_t> children;
        std::vector<Mbr> boxes;
        boxes.reserve(fill);
        if (leaf) {
            entries = std::move(nodes_[idx].entries);
            nodes_[idx].entries.clear();
            for (const auto& e : entries) boxes.push_back(Mbr::of_point(e.point));
        } else {
            children = std::move(nodes_[idx].children);
            nodes_[idx].children.clear();
            for (auto c : children) boxes.push_back(nodes_[c].box);
        }

        std::vector<std::size_t> ga, gb;
        Mbr box_a, box_b;
        quadratic_partition(boxes, ga, gb, box_a, box_b, kFanout / 2);

        const std::int32_t sib_idx = static_cast<std::int32_t>(nodes_.size());
        nodes_.emplace_back();  // may reallocate; re-reference below
        Node& sib = nodes_[sib_idx];
        Node& cur = nodes_[idx];
        sib.leaf = leaf;
        sib.parent = cur.parent;
        cur.box = box_a;
        sib.box = box_b;
        cur.sum = 0.0;
        sib.sum = 0.0;
        if (leaf) {
            for (auto i : ga) {
                cur.sum += entries[i].prob;
                cur.entries.push_back(std::move(entries[i]));
            }
            for (auto i : gb) {
                sib.sum += entries[i].prob;
                sib.entries.push_back(std::move(entries[i]));
            }
        } else {
            for (auto i : ga) {
                cur.sum += nodes_[children[i]].sum;
                cur.children.push_back(children[i]);
            }
            for (auto i : gb) {
                sib.sum += nodes_[children[i]].sum;
                sib.children.push_back(children[i]);
            }
            for (auto c : cur.children) nodes_[c].parent = idx;
            for (auto c : sib.children) nodes_[c].parent = sib_idx;
        }

        if (cur.parent < 0) {
            Node new_root;
            new_root.leaf = false;
            new_root.children = {idx, sib_idx};
            new_root.sum = cur.sum + sib.sum;
            new_root.box = cur.box;
            new_root.box.expand(sib.box);
            const std::int32_t root_idx = static_cast<std::int32_t>(nodes_.size());
            nodes_.push_back(std::move(new_root));
            nodes_[idx].parent = root_idx;
            nodes_[sib_idx].parent = root_idx;
            root_ = root_idx;
            return;
        }
        const std::int32_t parent = cur.parent;
        nodes_[parent].children.push_back(sib_idx);
        refresh_box(parent);
        idx = parent;
    }
}

double AggRTree::window_sum_rec(std::int32_t idx, std::span<const double> lo,
                                std::span<const double> hi) const {
    const Node& nd = nodes_[idx];
    if (!nd.box.intersects(lo, hi)) return 0.0;
    if (nd.box.inside(lo, hi)) return nd.sum;
    if (nd.leaf) {
        double s = 0.0;
        for (const auto& e : nd.entries) {
            bool in = true;
            for (std::size_t k = 0; k < e.point.size(); ++k)
                if (e.point[k] < lo[k] || e.point[k] > hi[k]) {
                    in = false;
                    break;
                }
            if (in) s += e.prob;
        }
        return s;
    }
    double s = 0.0;
    for (auto c : nd.children) s += window_sum_rec(c, lo, hi);
    return s;
}

double AggRTree::window_sum(std::span<const double> lo, std::span<const double> hi) const {
    if (root_ < 0) return 0.0;
    for (std::size_t i = 0; i < lo.size(); ++i)
        if (lo[i] > hi[i]) return 0.0;
    return window_sum_rec(root_, lo, hi);
}

double AggRTree::dominated_sum(std::span<const double> hi) const {
    std::vector<double> lo(dim_, -std::numeric_limits<double>::infinity());
    return window_sum(lo, hi);
}

bool AggRTree::sums_consistent(double tol) const {
    if (root_ < 0) return true;
    std::vector<std::int32_t> stack{root_};
    while (!stack.empty()) {
        const Node& nd = nodes_[stack.back()];
        stack.pop_back();
        double s = 0.0;
        if (nd.leaf) {
            for (const auto& e : nd.entries) s += e.prob;
        } else {
            for (auto c : nd.children) {
                s += nodes_[c].sum;
                stack.push_back(c);
            }
        }
        if (std::fabs(s - nd.sum) > tol) return false;
    }
    return true;
}

}  // namespace arsp
