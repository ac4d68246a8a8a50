#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "arsp/polytope.hpp"
#include "arsp/types.hpp"

namespace arsp {

/// Deterministic random source. The distributions are implemented here rather
/// than with std:: distribution objects so that a seed produces the same
/// stream on every platform and standard library.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed ? seed : 0x9e3779b97f4a7c15ull) {}

    std::uint64_t next_u64();
    double uniform01();  // [0, 1)
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }
    std::uint64_t uniform_int(std::uint64_t n);  // [0, n)
    double normal(double mean, double sd);       // Box-Muller

private:
    std::uint64_t state_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

enum class Distribution { IND, ANTI, CORR };

struct GenParams {
    Distribution dist = Distribution::IND;
    std::size_t m = 0;   // objects
    int cnt = 1;         // max instances per object
    int d = 2;           // dimensionality
    double l = 0.2;      // max hyper-rectangle edge length
    double phi = 0.0;    // fraction of objects with total probability < 1
    std::uint64_t seed = 0;
};

struct GenReport {
    std::size_t phi_exempt = 0;  // single-instance objects spared from removal
};

/// Synthetic benchmark generator. Object centers follow the requested
/// distribution in [0,1]^d:
///   IND  - uniform
///   CORR - a shared uniform diagonal position plus small normal jitter
///          per attribute (positive pairwise attribute correlation)
///   ANTI - a normal position on the anti-diagonal plane plus a zero-sum
///          uniform spread across attributes (negative pairwise correlation)
/// Each object draws an edge length from a normal with mean l/2 and sd l/8,
/// redrawn until it lands in [0, l]; instance counts are uniform on
/// {1..cnt}; instances are uniform in the object's box (clamped to [0,1])
/// with probability 1/n_i. The first floor(phi*m) objects then lose their
/// last instance, keeping the remaining probabilities, so their totals drop
/// below 1; single-instance objects are exempt and counted in the report.
UncertainDataset gen_dataset(const GenParams& p, GenReport* report = nullptr);

enum class ConstraintKind { WR, IM };

/// WR: weak rankings w[i] >= w[i+1] for i = 1..c (c <= d-1).
/// IM: interactive constraints; a hidden weight is drawn on the simplex and
/// each of c random point-pair hyperplanes is oriented to keep it feasible.
/// The hidden weight is written to *hidden when supplied (WR leaves it empty).
LinearConstraintSystem gen_constraints(ConstraintKind kind, int d, int c, std::uint64_t seed,
                                       std::vector<double>* hidden = nullptr);

/// Hardness-style instance: one certain singleton object per vector in B and
/// one object holding xi(a) for every a in A with probability 1/|A|, where
/// xi maps bit 0 -> 3/2 and bit 1 -> 1/2. Under the full simplex (empty
/// constraint system) some xi(a) has zero rskyline probability exactly when
/// an orthogonal pair exists across A x B.
std::pair<UncertainDataset, LinearConstraintSystem> gen_ov_instance(
    const std::vector<std::vector<int>>& A, const std::vector<std::vector<int>>& B);

/// Column mapping for real-data ingestion (parsed from key=value lines):
///   group_by=<column>            object grouping column
///   attrs=<col1,col2,...>        attribute columns
///   orient=<min|max,...>         per-attribute orientation (default min)
///   confidence=<column>          optional per-row confidence label column
///   conf.<label>=<probability>   label-to-probability table
/// Without a confidence column every instance in a group gets 1/|group|.
struct IngestMapping {
    std::string group_by;
    std::vector<std::string> attrs;
    std::vector<bool> maximize;  // aligned with attrs
    std::string confidence_col;  // empty = equal probabilities
    std::map<std::string, double> confidence_map;
};

IngestMapping parse_mapping_file(const std::string& path);
UncertainDataset ingest_csv(const std::string& path, const IngestMapping& mapping);

}  // namespace arsp
