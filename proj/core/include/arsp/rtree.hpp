#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "arsp/types.hpp"

namespace arsp {

struct Mbr {
    std::vector<double> lo;
    std::vector<double> hi;

    static Mbr of_point(std::span<const double> p) {
        return {{p.begin(), p.end()}, {p.begin(), p.end()}};
    }
    void expand(std::span<const double> p) {
        for (std::size_t i = 0; i < lo.size(); ++i) {
            if (p[i] < lo[i]) lo[i] = p[i];
            if (p[i] > hi[i]) hi[i] = p[i];
        }
    }
    void expand(const Mbr& o) {
        for (std::size_t i = 0; i < lo.size(); ++i) {
            if (o.lo[i] < lo[i]) lo[i] = o.lo[i];
            if (o.hi[i] > hi[i]) hi[i] = o.hi[i];
        }
    }
    bool contains(std::span<const double> p) const {
        for (std::size_t i = 0; i < lo.size(); ++i)
            if (p[i] < lo[i] || p[i] > hi[i]) return false;
        return true;
    }
    // closed-box overlap / containment against a query window [qlo, qhi]
    bool intersects(std::span<const double> qlo, std::span<const double> qhi) const {
        for (std::size_t i = 0; i < lo.size(); ++i)
            if (hi[i] < qlo[i] || lo[i] > qhi[i]) return false;
        return true;
    }
    bool inside(std::span<const double> qlo, std::span<const double> qhi) const {
        for (std::size_t i = 0; i < lo.size(); ++i)
            if (lo[i] < qlo[i] || hi[i] > qhi[i]) return false;
        return true;
    }
};

/// Static R-tree over a point set, STR bulk loaded, fanout 16.
/// Leaves own index ranges into the builder-supplied point ids.
class RTree {
public:
    static constexpr int kFanout = 16;

    struct Node {
        Mbr box;
        bool leaf = false;
        std::int32_t child_begin = -1;  // nodes_ index of first child
        std::int32_t child_count = 0;
        std::uint32_t pt_begin = 0;  // into ids() when leaf
        std::uint32_t pt_end = 0;
    };

    RTree() = default;
    /// points: n rows of width dim, row i = coordinates of external id i.
    RTree(const std::vector<double>& flat_points, int dim);

    int dim() const { return dim_; }
    bool empty() const { return nodes_.empty(); }
    const Node& root() const { return nodes_[root_]; }
    const Node& node(std::int32_t i) const { return nodes_[i]; }
    std::int32_t root_index() const { return root_; }
    const std::vector<std::uint32_t>& ids() const { return ids_; }
    std::span<const double> point(std::uint32_t external_id) const {
        return {pts_.data() + std::size_t(external_id) * dim_, std::size_t(dim_)};
    }

    /// All external ids whose point lies in the closed window [lo, hi].
    std::vector<std::uint32_t> window_query(std::span<const double> lo,
                                            std::span<const double> hi) const;

private:
    int dim_ = 0;
    std::vector<double> pts_;
    std::vector<std::uint32_t> ids_;  // leaf ordering after STR tiling
    std::vector<Node> nodes_;
    std::int32_t root_ = -1;

    Mbr mbr_of_range(std::uint32_t b, std::uint32_t e) const;
};

}  // namespace arsp
