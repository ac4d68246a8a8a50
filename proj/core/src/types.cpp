#include "arsp/types.hpp"

#include <algorithm>

namespace arsp {

FlatView::FlatView(const UncertainDataset& ds) {
    inst_.reserve(ds.instance_count());
    obj_pos_.reserve(ds.instance_count());
    obj_total_.reserve(ds.objects.size());
    obj_ids_.reserve(ds.objects.size());
    for (std::size_t o = 0; o < ds.objects.size(); ++o) {
        const auto& obj = ds.objects[o];
        obj_total_.push_back(obj.total_prob());
        obj_ids_.push_back(obj.object_id);
        for (const auto& t : obj.instances) {
            inst_.push_back(&t);
            obj_pos_.push_back(static_cast<std::uint32_t>(o));
        }
    }
}

ArspResult::ArspResult(const UncertainDataset& ds) {
    keys_.reserve(ds.instance_count());
    for (const auto& obj : ds.objects)
        for (const auto& t : obj.instances) {
            lookup_.emplace(pack(t.object_id, t.instance_id), keys_.size());
            keys_.push_back({t.object_id, t.instance_id});
        }
    values_.assign(keys_.size(), 0.0);
}

double ArspResult::value(int object_id, int instance_id) const {
    auto it = lookup_.find(pack(object_id, instance_id));
    if (it == lookup_.end())
        throw std::out_of_range("no such instance (" + std::to_string(object_id) + "," +
                                std::to_string(instance_id) + ")");
    return values_[it->second];
}

double ArspResult::object_value(int object_id) const {
    double s = 0.0;
    bool seen = false;
    for (std::size_t i = 0; i < keys_.size(); ++i) {
        if (keys_[i].object_id == object_id) {
            s += values_[i];
            seen = true;
        }
    }
    if (!seen) throw std::out_of_range("no such object " + std::to_string(object_id));
    return s;
}

double ArspResult::max_abs_diff(const ArspResult& a, const ArspResult& b) {
    if (a.size() != b.size()) throw DimensionMismatchError("results cover different instance sets");
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a.keys_[i] != b.keys_[i])
            throw DimensionMismatchError("results cover different instance sets");
        worst = std::max(worst, std::fabs(a.values_[i] - b.values_[i]));
    }
    return worst;
}

}  // namespace arsp
