#pragma once

#include "arsp/dominance.hpp"
#include "arsp/polytope.hpp"
#include "arsp/types.hpp"

namespace arsp {

struct BnbOptions {
    /// Test hook: cross-check every window query against a brute-force scan
    /// over the instances inserted so far; throws std::logic_error on mismatch.
    bool check_windows = false;
};

/// Best-first traversal of the original-space R-tree with on-the-fly score
/// mapping. Per-object aggregated score-space R-trees answer the dominating
/// mass queries; objects whose full mass has been emitted contribute a
/// max-corner to the pruning set, and anything score-dominated by an active
/// corner is zero and never expanded. Instances sharing the heap key are
/// drained together and settled in score-vector order so that equal-key
/// dominators are never missed.
ArspResult bnb_arsp(const UncertainDataset& ds, const VertexSet& V, const BnbOptions& opt = {});

}  // namespace arsp
