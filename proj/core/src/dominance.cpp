#include "arsp/dominance.hpp"

namespace arsp {

double score(std::span<const double> w, std::span<const double> t) {
    if (w.size() != t.size()) throw DimensionMismatchError("weight/point width mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) s += w[i] * t[i];
    return s;
}

std::vector<double> score_vector(const VertexSet& V, std::span<const double> t) {
    std::vector<double> out(V.vertices.size());
    for (std::size_t k = 0; k < V.vertices.size(); ++k) out[k] = score(V.vertices[k], t);
    return out;
}

bool classical_dominates(std::span<const double> t, std::span<const double> s) {
    if (t.size() != s.size()) throw DimensionMismatchError("point width mismatch");
    for (std::size_t i = 0; i < t.size(); ++i)
        if (t[i] > s[i]) return false;
    return true;
}

bool f_dominates_vertices(const VertexSet& V, std::span<const double> t,
                          std::span<const double> s) {
    if (t.size() != s.size()) throw DimensionMismatchError("point width mismatch");
    for (const auto& w : V.vertices)
        if (score(w, t) > score(w, s)) return false;
    return true;
}

bool f_dominates_ratio(const RatioBox& rb, std::span<const double> t, std::span<const double> s) {
    const std::size_t d = static_cast<std::size_t>(rb.dim);
    if (t.size() != d || s.size() != d) throw DimensionMismatchError("point width mismatch");
    double rhs = 0.0;
    for (std::size_t i = 0; i + 1 < d; ++i) {
        const double diff = s[i] - t[i];
        rhs += (s[i] > t[i] ? rb.ranges[i].lo : rb.ranges[i].hi) * diff;
    }
    return t[d - 1] - s[d - 1] <= rhs;
}

ScoreMatrix::ScoreMatrix(const FlatView& flat, const VertexSet& V)
    : n_(flat.size()), dprime_(V.dprime()) {
    data_.resize(n_ * static_cast<std::size_t>(dprime_));
    for (std::size_t i = 0; i < n_; ++i) {
        const auto& coords = flat.instance(i).coords;
        for (int k = 0; k < dprime_; ++k)
            data_[i * dprime_ + k] = score(V.vertices[k], coords);
    }
}

}  // namespace arsp
