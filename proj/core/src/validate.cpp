#include "arsp/validate.hpp"

#include <map>
#include <set>

namespace arsp {

std::vector<Violation> validate_dataset(const UncertainDataset& ds) {
    std::vector<Violation> out;
    std::set<int> seen_objects;
    std::map<std::vector<double>, std::set<int>> coord_owners;

    for (const auto& obj : ds.objects) {
        if (!seen_objects.insert(obj.object_id).second)
            out.push_back({obj.object_id, -1, "duplicate object_id"});
        if (obj.instances.empty()) {
            out.push_back({obj.object_id, -1, "object has no instances"});
            continue;
        }
        double total = 0.0;
        std::set<int> seen_instances;
        for (const auto& t : obj.instances) {
            if (t.object_id != obj.object_id)
                out.push_back({obj.object_id, t.instance_id,
                               "instance object_id differs from its object"});
            if (!seen_instances.insert(t.instance_id).second)
                out.push_back({obj.object_id, t.instance_id, "duplicate instance_id"});
            if (!(t.prob > 0.0))
                out.push_back({obj.object_id, t.instance_id, "prob must be > 0"});
            if (t.prob > 1.0)
                out.push_back({obj.object_id, t.instance_id, "prob must be <= 1"});
            if (static_cast<int>(t.coords.size()) != ds.dim)
                out.push_back({obj.object_id, t.instance_id,
                               "coords length differs from dataset dimensionality"});
            for (double c : t.coords)
                if (!std::isfinite(c)) {
                    out.push_back({obj.object_id, t.instance_id, "non-finite coordinate"});
                    break;
                }
            total += t.prob;
            if (static_cast<int>(t.coords.size()) == ds.dim)
                coord_owners[t.coords].insert(obj.object_id);
        }
        if (total > 1.0 + kOneClampTol)
            out.push_back({obj.object_id, -1, "total probability exceeds 1"});
    }

    // Tie flag: identical coordinates across objects mutually F-dominate under
    // the non-strict definition, discounting both sides.
    for (const auto& [coords, owners] : coord_owners) {
        if (owners.size() > 1)
            out.push_back({*owners.begin(), -1,
                           "coordinate-identical instances across objects (mutual F-dominance)",
                           true});
    }
    return out;
}

}  // namespace arsp
