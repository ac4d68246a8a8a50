#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "arsp/polytope.hpp"
#include "arsp/types.hpp"

namespace arsp {

/// Region code of s around target t: bit i (1-based dimension i < d, most
/// significant first) is 0 when s[i] < t[i] and 1 otherwise. Codes index the
/// ratio-box corners in lexicographic order, so code 0 pairs with
/// (l_1..l_{d-1}) and code 2^{d-1}-1 with (h_1..h_{d-1}).
std::uint32_t region_code(std::span<const double> t, std::span<const double> s);

/// Instances of other objects bucketed by region code around the target.
std::vector<std::vector<std::uint32_t>> region_partition(const FlatView& flat,
                                                         std::size_t target);

/// The region-k bounding hyperplane
///   x[d] = offset - sum_i coeffs[i] * x[i],
/// with coeffs[i] = l_i when bit i of k is 0 and h_i otherwise, passing
/// through the target. Everything in region k that F-dominates the target
/// lies on or below it.
struct HalfspacePlane {
    std::vector<double> coeffs;  // d-1 values from {l_i, h_i}
    double offset = 0.0;
};

HalfspacePlane hyperplane_for(std::span<const double> t, std::uint32_t k, const RatioBox& rb);

/// Linear-scan half-space reporting over one region bucket: the region-k
/// instances on or below the region's hyperplane. The test evaluates the
/// same expression as the O(d) ratio dominance test, so the union over k
/// is exactly the dominator set of the target.
std::vector<std::uint32_t> halfspace_report_scan(const FlatView& flat, std::size_t target,
                                                 std::uint32_t k, const RatioBox& rb,
                                                 const std::vector<std::uint32_t>& region);

/// d=2 angular machinery: around each target, instances of other objects are
/// ordered by the angle of (s - t) against the +x ray; a ratio box becomes a
/// closed angular interval, so dominators form one contiguous run.
class AngularIndex {
public:
    enum class Profile { singleton, general };

    struct Target {
        std::vector<double> angles;          // sorted, in [0, 2*pi)
        std::vector<std::uint32_t> inst;     // instance per angle entry
        std::vector<std::uint32_t> coincident;  // zero-offset instances
        // singleton profile: Kahan-compensated prefix of log1p(-p) over
        // non-certain entries plus positions of certain (p == 1) entries
        std::vector<double> log_prefix;  // size angles.size() + 1, [0] = 0
        std::vector<std::uint32_t> unit_pos;
        double coincident_log = 0.0;
        std::uint32_t coincident_units = 0;
    };

    Profile profile = Profile::general;
    std::vector<Target> targets;  // by global instance index
};

AngularIndex dual2d_preprocess(const UncertainDataset& ds,
                               AngularIndex::Profile profile = AngularIndex::Profile::general);

/// Closed query interval [pi - atan(l1), 2*pi - atan(h1)] for a d=2 ratio box.
std::pair<double, double> angular_interval(const RatioBox& rb);

ArspResult dual2d_arsp(const UncertainDataset& ds, const RatioBox& rb,
                       AngularIndex::Profile profile, const AngularIndex* prebuilt = nullptr);

/// Angle of (s - t) against the +x base ray, normalized to [0, 2*pi).
double angle_around(std::span<const double> t, std::span<const double> s);

}  // namespace arsp
