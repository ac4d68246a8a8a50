#pragma once

#include <gmpxx.h>

#include <vector>

#include "arsp/types.hpp"

namespace arsp {

/// Exact rational arithmetic for the verification oracle. Conversion from a
/// double is exact (every finite double is a binary rational); tests that need
/// decimal fractions like 1/3 supply them directly.
using Rational = mpq_class;

inline Rational rational_from_double(double x) {
    Rational r(x);
    r.canonicalize();
    return r;
}

inline double rational_to_double(const Rational& r) { return r.get_d(); }

/// Per-instance exact probabilities in canonical (dataset) order. When absent,
/// the oracle converts the stored doubles exactly.
using ExactProbs = std::vector<Rational>;

/// ArspResult counterpart holding exact values.
class ExactArspResult {
public:
    ExactArspResult() = default;
    explicit ExactArspResult(const UncertainDataset& ds)
        : keys_(ArspResult(ds).keys()), values_(keys_.size(), Rational(0)) {}

    std::size_t size() const { return values_.size(); }
    Rational& operator[](std::size_t i) { return values_[i]; }
    const Rational& operator[](std::size_t i) const { return values_[i]; }
    const std::vector<InstanceKey>& keys() const { return keys_; }

    Rational value(int object_id, int instance_id) const {
        for (std::size_t i = 0; i < keys_.size(); ++i)
            if (keys_[i].object_id == object_id && keys_[i].instance_id == instance_id)
                return values_[i];
        throw std::out_of_range("no such instance");
    }

    Rational object_value(int object_id) const {
        Rational s(0);
        for (std::size_t i = 0; i < keys_.size(); ++i)
            if (keys_[i].object_id == object_id) s += values_[i];
        return s;
    }

    ArspResult to_double(const UncertainDataset& ds) const {
        ArspResult out(ds);
        for (std::size_t i = 0; i < values_.size(); ++i) out[i] = values_[i].get_d();
        return out;
    }

private:
    std::vector<InstanceKey> keys_;
    std::vector<Rational> values_;
};

}  // namespace arsp
