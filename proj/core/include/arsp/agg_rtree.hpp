#pragma once

#include <memory>
#include <span>
#include <vector>

#include "arsp/rtree.hpp"

namespace arsp {

/// Dynamic R-tree over weighted points; every node caches its subtree
/// probability mass so window mass queries skip fully covered subtrees.
/// Quadratic split, fanout 16. Single writer, no concurrent readers while
/// inserting.
class AggRTree {
public:
    static constexpr int kFanout = 16;

    explicit AggRTree(int dim) : dim_(dim) {}

    int dim() const { return dim_; }
    std::size_t size() const { return count_; }
    bool empty() const { return count_ == 0; }
    double total() const { return root_ >= 0 ? nodes_[root_].sum : 0.0; }

    void insert(std::span<const double> point, double prob);

    /// Probability mass over the closed box [lo, hi].
    double window_sum(std::span<const double> lo, std::span<const double> hi) const;

    /// Mass over (-inf, hi] in every dimension.
    double dominated_sum(std::span<const double> hi) const;

    /// Test support: walks the tree checking that every cached sum matches the
    /// sum of its children (leaves: of their entries) within tol.
    bool sums_consistent(double tol = 1e-12) const;

private:
    struct Entry {
        std::vector<double> point;
        double prob;
    };
    struct Node {
        Mbr box;
        double sum = 0.0;
        bool leaf = true;
        std::int32_t parent = -1;
        std::vector<std::int32_t> children;  // when internal
        std::vector<Entry> entries;          // when leaf
    };

    int dim_;
    std::size_t count_ = 0;
    std::vector<Node> nodes_;
    std::int32_t root_ = -1;

    std::int32_t choose_leaf(std::span<const double> p) const;
    void split(std::int32_t idx);
    void refresh_box(std::int32_t idx);
    double window_sum_rec(std::int32_t idx, std::span<const double> lo,
                          std::span<const double> hi) const;
};

}  // namespace arsp
