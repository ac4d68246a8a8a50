#include "arsp/dual2d.hpp"

#include "arsp/dominance.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "arsp/parallel.hpp"

namespace arsp {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

std::uint32_t region_code(std::span<const double> t, std::span<const double> s) {
    const int d = static_cast<int>(t.size());
    std::uint32_t code = 0;
    for (int i = 0; i + 1 < d; ++i) {
        code <<= 1;
        if (s[i] >= t[i]) code |= 1;  // ties take the ">=" side
    }
    return code;
}

std::vector<std::vector<std::uint32_t>> region_partition(const FlatView& flat,
                                                         std::size_t target) {
    const auto& t = flat.instance(target);
    const int d = static_cast<int>(t.coords.size());
    if (d < 2) throw DimensionMismatchError("region partition requires d >= 2");
    std::vector<std::vector<std::uint32_t>> regions(std::size_t(1) << (d - 1));
    for (std::size_t i = 0; i < flat.size(); ++i) {
        if (flat.object_pos(i) == flat.object_pos(target)) continue;
        regions[region_code(t.coords, flat.instance(i).coords)].push_back(
            static_cast<std::uint32_t>(i));
    }
    return regions;
}

HalfspacePlane hyperplane_for(std::span<const double> t, std::uint32_t k, const RatioBox& rb) {
    check_ratio_box(rb);
    const int d = rb.dim;
    if (static_cast<int>(t.size()) != d) throw DimensionMismatchError("target width mismatch");
    if (k >= (std::uint32_t(1) << (d - 1))) throw BadParamError("region code out of range");
    HalfspacePlane plane;
    plane.coeffs.resize(d - 1);
    plane.offset = t[d - 1];
    for (int i = 0; i < d - 1; ++i) {
        const bool high = (k >> (d - 2 - i)) & 1;
        plane.coeffs[i] = high ? rb.ranges[i].hi : rb.ranges[i].lo;
        plane.offset += plane.coeffs[i] * t[i];
    }
    return plane;
}

std::vector<std::uint32_t> halfspace_report_scan(const FlatView& flat, std::size_t target,
                                                 std::uint32_t k, const RatioBox& rb,
                                                 const std::vector<std::uint32_t>& region) {
    const auto& t = flat.instance(target).coords;
    const int d = rb.dim;
    std::vector<double> coeffs(d - 1);
    for (int i = 0; i < d - 1; ++i) {
        const bool high = (k >> (d - 2 - i)) & 1;
        coeffs[i] = high ? rb.ranges[i].hi : rb.ranges[i].lo;
    }
    std::vector<std::uint32_t> out;
    for (auto idx : region) {
        const auto& s = flat.instance(idx).coords;
        // same expression as the O(d) ratio test with s as the dominator
        double rhs = 0.0;
        for (int i = 0; i < d - 1; ++i) rhs += coeffs[i] * (t[i] - s[i]);
        if (s[d - 1] - t[d - 1] <= rhs) out.push_back(idx);
    }
    return out;
}

double angle_around(std::span<const double> t, std::span<const double> s) {
    const double dx = s[0] - t[0];
    const double dy = s[1] - t[1];
    double theta = std::atan2(dy, dx);
    if (theta < 0.0) theta += kTwoPi;
    return theta;
}

std::pair<double, double> angular_interval(const RatioBox& rb) {
    check_ratio_box(rb);
    if (rb.dim != 2) throw NotPlanarError();
    return {std::numbers::pi - std::atan(rb.ranges[0].lo), kTwoPi - std::atan(rb.ranges[0].hi)};
}

AngularIndex dual2d_preprocess(const UncertainDataset& ds, AngularIndex::Profile profile) {
    if (ds.dim != 2) throw NotPlanarError();
    const FlatView flat(ds);
    const std::size_t n = flat.size();
    if (profile == AngularIndex::Profile::singleton)
        for (const auto& obj : ds.objects)
            if (obj.instances.size() != 1)
                throw ProfileMismatchError("singleton profile requires one instance per object");

    AngularIndex index;
    index.profile = profile;
    index.targets.resize(n);

    parallel_for_chunks(n, [&](std::size_t b, std::size_t e) {
        std::vector<std::pair<double, std::uint32_t>> tmp;
        for (std::size_t ti = b; ti < e; ++ti) {
            auto& tgt = index.targets[ti];
            const auto& tc = flat.instance(ti).coords;
            tmp.clear();
            for (std::size_t s = 0; s < n; ++s) {
                if (flat.object_pos(s) == flat.object_pos(ti)) continue;
                const auto& sc = flat.instance(s).coords;
                if (sc[0] == tc[0] && sc[1] == tc[1]) {
                    // zero offset: mutual non-strict dominance, no angle
                    if (profile == AngularIndex::Profile::general) {
                        tgt.coincident.push_back(static_cast<std::uint32_t>(s));
                    } else {
                        const double p = flat.prob(s);
                        if (p == 1.0)
                            ++tgt.coincident_units;
                        else
                            tgt.coincident_log += std::log1p(-p);
                    }
                    continue;
                }
                tmp.emplace_back(angle_around(tc, sc), static_cast<std::uint32_t>(s));
            }
            std::sort(tmp.begin(), tmp.end());
            tgt.angles.resize(tmp.size());
            tgt.inst.resize(tmp.size());
            for (std::size_t i = 0; i < tmp.size(); ++i) {
                tgt.angles[i] = tmp[i].first;
                tgt.inst[i] = tmp[i].second;
            }
            if (profile == AngularIndex::Profile::singleton) {
                tgt.log_prefix.resize(tmp.size() + 1);
                tgt.log_prefix[0] = 0.0;
                double sum = 0.0, comp = 0.0;  // Kahan
                for (std::size_t i = 0; i < tmp.size(); ++i) {
                    const double p = flat.prob(tmp[i].second);
                    if (p == 1.0) {
                        tgt.unit_pos.push_back(static_cast<std::uint32_t>(i));
                    } else {
                        const double term = std::log1p(-p) - comp;
                        const double next = sum + term;
                        comp = (next - sum) - term;
                        sum = next;
                    }
                    tgt.log_prefix[i + 1] = sum;
                }
            }
        }
    });
    return index;
}

ArspResult dual2d_arsp(const UncertainDataset& ds, const RatioBox& rb,
                       AngularIndex::Profile profile, const AngularIndex* prebuilt) {
    if (ds.dim != 2) throw NotPlanarError();
    check_ratio_box(rb);
    if (rb.dim != 2) throw NotPlanarError();

    AngularIndex local;
    const AngularIndex* index = prebuilt;
    if (!index) {
        local = dual2d_preprocess(ds, profile);
        index = &local;
    } else if (index->profile != profile) {
        throw ProfileMismatchError("prebuilt index was made for the other profile");
    }

    const FlatView flat(ds);
    const std::size_t n = flat.size();
    ArspResult out(ds);
    const auto [qlo, qhi] = angular_interval(rb);

    // Entries within eps of an interval endpoint are settled by the exact
    // O(d) predicate; the angle comparison alone can land on either side of
    // a boundary point depending on libm rounding.
    constexpr double kEdgeEps = 1e-9;
    struct Window {
        std::ptrdiff_t outer_lo, inner_lo, inner_hi, outer_hi;  // [outer_lo, outer_hi)
    };
    auto window_of = [&](const std::vector<double>& angles) {
        Window w;
        w.outer_lo = std::lower_bound(angles.begin(), angles.end(), qlo - kEdgeEps) -
                     angles.begin();
        w.inner_lo = std::lower_bound(angles.begin(), angles.end(), qlo + kEdgeEps) -
                     angles.begin();
        w.outer_hi = std::upper_bound(angles.begin(), angles.end(), qhi + kEdgeEps) -
                     angles.begin();
        w.inner_hi = std::upper_bound(angles.begin(), angles.end(), qhi - kEdgeEps) -
                     angles.begin();
        if (w.inner_hi < w.inner_lo) w.inner_hi = w.inner_lo;  // degenerate interval
        return w;
    };
    auto edge_dominates = [&](std::size_t ti, std::uint32_t s) {
        return f_dominates_ratio(rb, flat.instance(s).coords, flat.instance(ti).coords);
    };

    if (profile == AngularIndex::Profile::singleton) {
        parallel_for_chunks(n, [&](std::size_t b, std::size_t e) {
            for (std::size_t ti = b; ti < e; ++ti) {
                const auto& tgt = index->targets[ti];
                if (tgt.coincident_units > 0) continue;
                const Window w = window_of(tgt.angles);
                const auto units_in = [&](std::ptrdiff_t lo, std::ptrdiff_t hi) {
                    return std::lower_bound(tgt.unit_pos.begin(), tgt.unit_pos.end(),
                                            static_cast<std::uint32_t>(hi)) -
                           std::lower_bound(tgt.unit_pos.begin(), tgt.unit_pos.end(),
                                            static_cast<std::uint32_t>(lo));
                };
                double lg = tgt.log_prefix[w.inner_hi] - tgt.log_prefix[w.inner_lo] +
                            tgt.coincident_log;
                bool zero = units_in(w.inner_lo, w.inner_hi) > 0;
                auto edge = [&](std::ptrdiff_t lo, std::ptrdiff_t hi) {
                    for (std::ptrdiff_t k = lo; k < hi && !zero; ++k) {
                        const std::uint32_t s = tgt.inst[k];
                        if (!edge_dominates(ti, s)) continue;
                        const double p = flat.prob(s);
                        if (p == 1.0)
                            zero = true;
                        else
                            lg += std::log1p(-p);
                    }
                };
                edge(w.outer_lo, w.inner_lo);
                edge(w.inner_hi, w.outer_hi);
                if (!zero) out[ti] = flat.prob(ti) * std::exp(lg);
            }
        });
        return out;
    }

    // general profile: sweep the angular range accumulating per-object mass
    const std::size_t m = flat.objects();
    parallel_for_chunks(n, [&](std::size_t b, std::size_t e) {
        std::vector<double> sigma(m, 0.0);
        std::vector<std::uint32_t> touched;
        for (std::size_t ti = b; ti < e; ++ti) {
            const auto& tgt = index->targets[ti];
            touched.clear();
            auto add = [&](std::uint32_t s) {
                const std::uint32_t obj = flat.object_pos(s);
                if (sigma[obj] == 0.0) touched.push_back(obj);
                sigma[obj] += flat.prob(s);
            };
            const Window w = window_of(tgt.angles);
            for (auto k = w.inner_lo; k < w.inner_hi; ++k) add(tgt.inst[k]);
            for (auto k = w.outer_lo; k < w.inner_lo; ++k)
                if (edge_dominates(ti, tgt.inst[k])) add(tgt.inst[k]);
            for (auto k = w.inner_hi; k < w.outer_hi; ++k)
                if (edge_dominates(ti, tgt.inst[k])) add(tgt.inst[k]);
            for (auto s : tgt.coincident) add(s);
            double pr = flat.prob(ti);
            for (auto j : touched) {
                pr *= 1.0 - clamp_to_one(sigma[j]);
                sigma[j] = 0.0;
            }
            out[ti] = pr;
        }
    });
    return out;
}

}  // namespace arsp
