#pragma once

#include "arsp/dominance.hpp"
#include "arsp/polytope.hpp"
#include "arsp/types.hpp"

namespace arsp {

struct KdttStats {
    std::size_t nodes_visited = 0;
    std::size_t terminals = 0;  // nodes where the walk stopped and emitted
};

struct KdttOptions {
    enum class Variant { kd, quad };
    Variant variant = Variant::kd;
    /// true: partitioning happens during the traversal, so pruned subtrees are
    /// never even built. false: the whole space-partitioning tree is built
    /// first and then traversed (the unoptimized form, kept for comparison).
    bool fused = true;
    /// Subtree pruning once some object's full mass dominates the node's
    /// min corner. Disabling it must not change the result.
    bool prune = true;
    /// Test hook: re-derive every sigma entry by brute force at each node and
    /// throw std::logic_error on mismatch.
    bool check_sigma = false;
    KdttStats* stats = nullptr;
};

/// Space-partitioning traversal over the score-space image of the dataset.
/// Instances map to d'-dimensional score vectors, where F-dominance becomes
/// coordinatewise dominance; a preorder walk maintains per-object dominating
/// mass (sigma), the running product beta over unsaturated objects, and the
/// saturated-object counter chi, undoing all deltas on exit from each node.
ArspResult kdtt_arsp(const UncertainDataset& ds, const VertexSet& V, const KdttOptions& opt = {});

}  // namespace arsp
