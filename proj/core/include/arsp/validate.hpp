#pragma once

#include <string>
#include <vector>

#include "arsp/types.hpp"

namespace arsp {

struct Violation {
    int object_id = 0;
    int instance_id = 0;  // -1 for object-level violations
    std::string rule;
    bool warning = false;  // warnings do not make the dataset invalid
};

/// Checks every type invariant of the dataset model. Violations are data,
/// not failures: no error-level entries means the dataset is well formed.
/// Tie-heavy data (coordinate-identical instances across objects) is flagged
/// as a warning, since under non-strict F-dominance such ties discount both
/// sides and can empty an rskyline.
std::vector<Violation> validate_dataset(const UncertainDataset& ds);

inline bool dataset_ok(const std::vector<Violation>& v) {
    for (const auto& x : v)
        if (!x.warning) return false;
    return true;
}

}  // namespace arsp
