#pragma once

#include <span>
#include <vector>

#include "arsp/polytope.hpp"
#include "arsp/types.hpp"

namespace arsp {

/// Dot product of a weight with a point; the linear score.
double score(std::span<const double> w, std::span<const double> t);

/// Score vector S_V(t): one score per vertex of the preference region.
std::vector<double> score_vector(const VertexSet& V, std::span<const double> t);

/// Coordinatewise non-strict dominance on raw coordinates. Identity is the
/// caller's concern: equal coordinate vectors dominate each other.
bool classical_dominates(std::span<const double> t, std::span<const double> s);

/// Vertex-based F-dominance: t F-dominates s iff the score of t is <= the
/// score of s under every vertex weight. Comparisons are exact; epsilon
/// fuzzing would break transitivity.
bool f_dominates_vertices(const VertexSet& V, std::span<const double> t,
                          std::span<const double> s);

/// O(d) weight-ratio F-dominance:
///   t[d] - s[d] <= sum_i (s[i] > t[i] ? lo_i : hi_i) * (s[i] - t[i]).
bool f_dominates_ratio(const RatioBox& rb, std::span<const double> t, std::span<const double> s);

/// Row-major n x d' score matrix over the canonical instance order.
class ScoreMatrix {
public:
    ScoreMatrix() = default;
    ScoreMatrix(const FlatView& flat, const VertexSet& V);

    std::size_t rows() const { return n_; }
    int cols() const { return dprime_; }
    std::span<const double> row(std::size_t i) const {
        return {data_.data() + i * dprime_, static_cast<std::size_t>(dprime_)};
    }

    /// Non-strict coordinatewise dominance between two mapped rows.
    bool leq(std::size_t a, std::size_t b) const {
        auto ra = row(a), rb = row(b);
        for (int k = 0; k < dprime_; ++k)
            if (ra[k] > rb[k]) return false;
        return true;
    }

private:
    std::size_t n_ = 0;
    int dprime_ = 0;
    std::vector<double> data_;
};

}  // namespace arsp
