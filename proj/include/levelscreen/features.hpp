#pragma once

#include <optional>
#include <string>
#include <vector>

#include "levelscreen/level.hpp"
#include "levelscreen/registry.hpp"
#include "levelscreen/types.hpp"

namespace levelscreen {

enum class ColumnStat { Count, ValueSum, ValueMean, ValueMax };

std::string to_string(ColumnStat stat);

struct FeatureColumn {
  std::string name;       // e.g. "cloud.value_mean"
  ElementGroup group = ElementGroup::Obstacle;
  std::string kind_id;
  ColumnStat stat = ColumnStat::Count;
};

// Column layout derived from the registry: one count column per kind in
// registry order, then value_sum/value_mean/value_max for each value-bearing
// kind in registry order. The default registry yields 61 columns.
class FeatureSchema {
 public:
  static FeatureSchema from_registry(const ElementRegistry& registry);

  const std::vector<FeatureColumn>& columns() const { return columns_; }
  int registry_version() const { return registry_version_; }
  Index size() const { return static_cast<Index>(columns_.size()); }

  std::optional<Index> column_index(const std::string& name) const;
  std::vector<Index> group_columns(ElementGroup group) const;

 private:
  std::vector<FeatureColumn> columns_;
  int registry_version_ = 0;
};

struct FeatureVector {
  Vector values;
  VectorX<bool> missing;
  std::string level_id;
};

struct DataMatrix {
  Matrix values;               // rows = levels, cols = schema columns
  Mask missing;                // same shape; true = recoded-as-missing
  std::vector<std::string> level_ids;
  std::optional<IntVector> labels;  // 1 = selected, 0 = excluded
  FeatureSchema schema;

  Index rows() const { return values.rows(); }
  Index cols() const { return values.cols(); }
  bool labeled() const { return labels.has_value(); }

  DataMatrix take_rows(const std::vector<Index>& idx) const;
};

// Counts per kind plus value statistics over that kind's element values.
// Kinds absent from the level get count 0 and missing value statistics.
FeatureVector extract_features(const GameLevel& level,
                               const FeatureSchema& schema,
                               const ElementRegistry& registry);

DataMatrix extract_matrix(const std::vector<GameLevel>& levels,
                          const FeatureSchema& schema,
                          const ElementRegistry& registry,
                          bool with_labels);

enum class ImputePolicy { ZeroFill };

// Zero-fills missing value statistics; the mask is retained for audit.
// Count columns pass through unchanged.
DataMatrix impute_and_encode(const DataMatrix& matrix,
                             ImputePolicy policy = ImputePolicy::ZeroFill);

struct GroupColumnStats {
  std::string column;
  double nonzero_rate = 0.0;
};

struct GroupSummary {
  ElementGroup group;
  std::vector<GroupColumnStats> columns;
};

std::vector<GroupSummary> group_summary(const DataMatrix& matrix);
std::string format_group_summary(const std::vector<GroupSummary>& groups);

// CSV persistence: a comment header carrying format and registry versions,
// a header row of column names, one row per level with missing values as
// empty cells, optional trailing label column. The mask goes to a sidecar
// file of the same shape.
void save_matrix(const DataMatrix& matrix, const std::string& path);
DataMatrix load_matrix(const std::string& path,
                       const ElementRegistry& registry);
std::string matrix_to_csv(const DataMatrix& matrix);
std::string mask_to_csv(const DataMatrix& matrix);
std::string mask_sidecar_path(const std::string& matrix_path);

}  // namespace levelscreen
