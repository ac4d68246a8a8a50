#pragma once

#include <vector>

#include "arsp/polytope.hpp"
#include "arsp/types.hpp"

namespace arsp {

using PointSet = std::vector<std::vector<double>>;

/// Classical skyline under non-strict dominance with identity: duplicated
/// coordinate vectors dominate each other, so neither copy survives.
std::vector<std::size_t> skyline(const PointSet& pts);

/// Skyline members with no F-dominator anywhere in the set (the definition,
/// checked pairwise).
std::vector<std::size_t> eclipse_naive(const PointSet& pts, const RatioBox& rb);

/// Same set via a kd-tree existence search over the non-dominated coordinate
/// set. A subtree is skipped when even its min corner fails the ratio
/// dominance test against the candidate, which no point inside can then pass.
std::vector<std::size_t> eclipse_pruned(const PointSet& pts, const RatioBox& rb);

}  // namespace arsp
