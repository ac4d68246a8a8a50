#pragma once

#include <iosfwd>
#include <string>

#include "arsp/polytope.hpp"
#include "arsp/types.hpp"

namespace arsp {

/// Dataset CSV: header `object_id,instance_id,prob,a1,...,ad`, UTF-8,
/// '.' decimal point. Writing uses 17 significant digits so a round trip
/// reproduces every double exactly.
UncertainDataset read_dataset_csv(const std::string& path);
UncertainDataset read_dataset_csv(std::istream& in);
void write_dataset_csv(const UncertainDataset& ds, const std::string& path);
void write_dataset_csv(const UncertainDataset& ds, std::ostream& out);

/// Constraint file: first line `d <int>`, then either a single
/// `ratio l1 h1 ... l(d-1) h(d-1)` line or one `c1 ... cd <= rhs` row per
/// constraint.
PreferenceSpec read_constraints(const std::string& path);
PreferenceSpec read_constraints(std::istream& in);
void write_constraints(const PreferenceSpec& spec, const std::string& path);
void write_constraints(const PreferenceSpec& spec, std::ostream& out);

/// Result CSV: `object_id,instance_id,prob_rsky`, 12 significant digits,
/// sorted by (object_id, instance_id).
void write_result_csv(const ArspResult& result, const std::string& path);
void write_result_csv(const ArspResult& result, std::ostream& out);
ArspResult read_result_csv(const std::string& path, const UncertainDataset& ds);

}  // namespace arsp
