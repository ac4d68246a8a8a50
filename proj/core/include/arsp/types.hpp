#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace arsp {

/// Attribute values are "lower is better" throughout; ingestion negates
/// maximization attributes before anything else sees them.
struct Instance {
    int object_id = 0;
    int instance_id = 0;
    std::vector<double> coords;
    double prob = 0.0;  // existence probability, in (0, 1]
};

struct UncertainObject {
    int object_id = 0;
    std::vector<Instance> instances;

    double total_prob() const {
        double s = 0.0;
        for (const auto& t : instances) s += t.prob;
        return s;
    }
};

struct UncertainDataset {
    int dim = 0;
    std::vector<UncertainObject> objects;

    std::size_t object_count() const { return objects.size(); }
    std::size_t instance_count() const {
        std::size_t n = 0;
        for (const auto& o : objects) n += o.instances.size();
        return n;
    }
};

struct InstanceKey {
    int object_id = 0;
    int instance_id = 0;
    friend bool operator==(const InstanceKey&, const InstanceKey&) = default;
    friend auto operator<=>(const InstanceKey&, const InstanceKey&) = default;
};

// Object totals that drift within this tolerance of 1 are treated as exactly 1
// by the float algorithm paths (sigma saturation, prune-set activation).
inline constexpr double kOneClampTol = 1e-12;

inline double clamp_to_one(double x) {
    return std::fabs(x - 1.0) <= kOneClampTol ? 1.0 : x;
}

// ---------------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------------

struct EmptyRegionError : std::runtime_error {
    EmptyRegionError() : std::runtime_error("preference region is empty") {}
};

struct DimensionMismatchError : std::runtime_error {
    explicit DimensionMismatchError(const std::string& what) : std::runtime_error(what) {}
};

struct TooManyWorldsError : std::runtime_error {
    double world_count;
    explicit TooManyWorldsError(double count)
        : std::runtime_error("possible-world enumeration refused: " + std::to_string(count) +
                             " worlds"),
          world_count(count) {}
};

struct NotPlanarError : std::runtime_error {
    NotPlanarError() : std::runtime_error("operation requires a 2-dimensional dataset") {}
};

struct ProfileMismatchError : std::runtime_error {
    explicit ProfileMismatchError(const std::string& what) : std::runtime_error(what) {}
};

struct BadParamError : std::invalid_argument {
    explicit BadParamError(const std::string& what) : std::invalid_argument(what) {}
};

struct ParseError : std::runtime_error {
    std::size_t row;
    ParseError(std::size_t row_number, const std::string& what)
        : std::runtime_error("row " + std::to_string(row_number) + ": " + what), row(row_number) {}
};

struct BadMappingError : std::runtime_error {
    explicit BadMappingError(const std::string& what) : std::runtime_error(what) {}
};

// ---------------------------------------------------------------------------
// Flat view: canonical instance order shared by every algorithm and result
// ---------------------------------------------------------------------------

class FlatView {
public:
    explicit FlatView(const UncertainDataset& ds);

    std::size_t size() const { return inst_.size(); }
    std::size_t objects() const { return obj_total_.size(); }
    const Instance& instance(std::size_t i) const { return *inst_[i]; }
    std::uint32_t object_pos(std::size_t i) const { return obj_pos_[i]; }
    double prob(std::size_t i) const { return inst_[i]->prob; }
    double object_total(std::size_t obj) const { return obj_total_[obj]; }
    int object_id(std::size_t obj) const { return obj_ids_[obj]; }

private:
    std::vector<const Instance*> inst_;
    std::vector<std::uint32_t> obj_pos_;
    std::vector<double> obj_total_;
    std::vector<int> obj_ids_;
};

// ---------------------------------------------------------------------------
// Result model
// ---------------------------------------------------------------------------

/// Per-instance rskyline probabilities in canonical (dataset) order plus
/// per-object aggregates. Every instance of the source dataset is present.
class ArspResult {
public:
    ArspResult() = default;
    explicit ArspResult(const UncertainDataset& ds);

    std::size_t size() const { return values_.size(); }
    double& operator[](std::size_t i) { return values_[i]; }
    double operator[](std::size_t i) const { return values_[i]; }
    const std::vector<double>& values() const { return values_; }
    const std::vector<InstanceKey>& keys() const { return keys_; }

    double value(int object_id, int instance_id) const;
    double object_value(int object_id) const;

    /// Largest per-instance |a - b|; results must come from the same dataset.
    static double max_abs_diff(const ArspResult& a, const ArspResult& b);

private:
    std::vector<InstanceKey> keys_;
    std::vector<double> values_;
    std::unordered_map<std::uint64_t, std::size_t> lookup_;

    static std::uint64_t pack(int object_id, int instance_id) {
        return (std::uint64_t(std::uint32_t(object_id)) << 32) | std::uint32_t(instance_id);
    }
    friend class FlatView;
};

}  // namespace arsp
