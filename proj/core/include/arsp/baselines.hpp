#pragma once

#include "arsp/dominance.hpp"
#include "arsp/polytope.hpp"
#include "arsp/rational.hpp"
#include "arsp/types.hpp"

namespace arsp {

struct EnumOptions {
    double max_worlds = 1e6;
};

/// Probability of one possible world. choice[o] selects the instance position
/// within object o, or -1 for "absent" (only meaningful when the object's
/// total probability is below 1).
double world_probability(const UncertainDataset& ds, const std::vector<int>& choice);
Rational world_probability_exact(const UncertainDataset& ds, const std::vector<int>& choice,
                                 const ExactProbs* probs = nullptr);

/// Ground truth by possible-world enumeration. Worlds are walked with a
/// mixed-radix counter carrying an extra "absent" digit for objects whose
/// total probability is below 1. Refuses beyond max_worlds.
ArspResult enum_arsp(const UncertainDataset& ds, const VertexSet& V, const EnumOptions& opt = {});
ExactArspResult enum_arsp_exact(const UncertainDataset& ds, const VertexSet& V,
                                const EnumOptions& opt = {}, const ExactProbs* probs = nullptr);

/// Sorted pairwise product baseline: instances in score order, each tested
/// against everything that can F-dominate it, probabilities combined by the
/// per-object product form.
ArspResult loop_arsp(const UncertainDataset& ds, const VertexSet& V);
ExactArspResult loop_arsp_exact(const UncertainDataset& ds, const VertexSet& V,
                                const ExactProbs* probs = nullptr);

}  // namespace arsp
