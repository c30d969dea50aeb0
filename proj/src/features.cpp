#include "levelscreen/features.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

#include "levelscreen/errors.hpp"
#include "levelscreen/io_util.hpp"

namespace levelscreen {

std::string to_string(ColumnStat stat) {
  switch (stat) {
    case ColumnStat::Count: return "count";
    case ColumnStat::ValueSum: return "value_sum";
    case ColumnStat::ValueMean: return "value_mean";
    case ColumnStat::ValueMax: return "value_max";
  }
  return "count";
}

FeatureSchema FeatureSchema::from_registry(const ElementRegistry& registry) {
  FeatureSchema schema;
  schema.registry_version_ = registry.version();
  for (const auto& kind : registry.kinds()) {
    schema.columns_.push_back(
        {kind.id + ".count", kind.group, kind.id, ColumnStat::Count});
  }
  for (const auto& kind : registry.kinds()) {
    if (!kind.value_bearing) continue;
    schema.columns_.push_back(
        {kind.id + ".value_sum", kind.group, kind.id, ColumnStat::ValueSum});
    schema.columns_.push_back(
        {kind.id + ".value_mean", kind.group, kind.id, ColumnStat::ValueMean});
    schema.columns_.push_back(
        {kind.id + ".value_max", kind.group, kind.id, ColumnStat::ValueMax});
  }
  return schema;
}

std::optional<Index> FeatureSchema::column_index(
    const std::string& name) const {
  for (std::size_t i = 0; i < columns_.size(); ++i) {
    if (columns_[i].name == name) return static_cast<Index>(i);
  }
  return std::nullopt;
}

std::vector<Index> FeatureSchema::group_columns(ElementGroup group) const {
  std::vector<Index> cols;
  for (std::size_t i = 0; i < columns_.size(); ++i) {
    if (columns_[i].group == group) cols.push_back(static_cast<Index>(i));
  }
  return cols;
}

DataMatrix DataMatrix::take_rows(const std::vector<Index>& idx) const {
  DataMatrix out;
  out.schema = schema;
  out.values.resize(static_cast<Index>(idx.size()), values.cols());
  out.missing.resize(static_cast<Index>(idx.size()), missing.cols());
  out.level_ids.reserve(idx.size());
  if (labels.has_value()) {
    out.labels = IntVector(static_cast<Index>(idx.size()));
  }
  for (std::size_t r = 0; r < idx.size(); ++r) {
    Index src = idx[r];
    out.values.row(static_cast<Index>(r)) = values.row(src);
    out.missing.row(static_cast<Index>(r)) = missing.row(src);
    out.level_ids.push_back(level_ids[static_cast<std::size_t>(src)]);
    if (labels.has_value()) (*out.labels)(static_cast<Index>(r)) = (*labels)(src);
  }
  return out;
}

FeatureVector extract_features(const GameLevel& level,
                               const FeatureSchema& schema,
                               const ElementRegistry& registry) {
  if (schema.registry_version() != registry.version()) {
    throw VersionError("schema registry_version " +
                       std::to_string(schema.registry_version()) +
                       " does not match registry version " +
                       std::to_string(registry.version()));
  }

  FeatureVector fv;
  fv.level_id = level.level_id;
  fv.values = Vector::Zero(schema.size());
  fv.missing = VectorX<bool>::Constant(schema.size(), false);

  for (Index c = 0; c < schema.size(); ++c) {
    const FeatureColumn& col = schema.columns()[static_cast<std::size_t>(c)];
    double count = 0.0;
    double sum = 0.0;
    double max = 0.0;
    bool any_value = false;
    for (const auto& element : level.elements) {
      if (element.kind != col.kind_id) continue;
      count += 1.0;
      if (element.value.has_value()) {
        double v = static_cast<double>(*element.value);
        sum += v;
        max = any_value ? std::max(max, v) : v;
        any_value = true;
      }
    }
    switch (col.stat) {
      case ColumnStat::Count:
        fv.values(c) = count;
        break;
      case ColumnStat::ValueSum:
      case ColumnStat::ValueMean:
      case ColumnStat::ValueMax:
        if (count == 0.0) {
          fv.missing(c) = true;
        } else if (col.stat == ColumnStat::ValueSum) {
          fv.values(c) = sum;
        } else if (col.stat == ColumnStat::ValueMean) {
          fv.values(c) = sum / count;
        } else {
          fv.values(c) = any_value ? max : 0.0;
        }
        break;
    }
  }
  return fv;
}

DataMatrix extract_matrix(const std::vector<GameLevel>& levels,
                          const FeatureSchema& schema,
                          const ElementRegistry& registry,
                          bool with_labels) {
  DataMatrix matrix;
  matrix.schema = schema;
  matrix.values.resize(static_cast<Index>(levels.size()), schema.size());
  matrix.missing.resize(static_cast<Index>(levels.size()), schema.size());
  if (with_labels) matrix.labels = IntVector(static_cast<Index>(levels.size()));
  for (std::size_t i = 0; i < levels.size(); ++i) {
    FeatureVector fv = extract_features(levels[i], schema, registry);
    matrix.values.row(static_cast<Index>(i)) = fv.values.transpose();
    matrix.missing.row(static_cast<Index>(i)) = fv.missing.transpose().array();
    matrix.level_ids.push_back(fv.level_id);
    if (with_labels) {
      if (!levels[i].label.has_value()) {
        throw DataError("level " + levels[i].level_id +
                        " has no label but a labeled matrix was requested");
      }
      (*matrix.labels)(static_cast<Index>(i)) =
          *levels[i].label == Label::Selected ? 1 : 0;
    }
  }
  return matrix;
}

DataMatrix impute_and_encode(const DataMatrix& matrix, ImputePolicy policy) {
  (void)policy;  // only ZeroFill exists
  DataMatrix out = matrix;
  out.values = matrix.missing.select(Matrix::Zero(matrix.rows(), matrix.cols()),
                                     matrix.values);
  return out;
}

std::vector<GroupSummary> group_summary(const DataMatrix& matrix) {
  const ElementGroup groups[] = {ElementGroup::PlayerCharacter,
                                 ElementGroup::Goal,
                                 ElementGroup::PhysicsObject,
                                 ElementGroup::Obstacle};
  std::vector<GroupSummary> out;
  for (ElementGroup g : groups) {
    GroupSummary summary;
    summary.group = g;
    for (Index c : matrix.schema.group_columns(g)) {
      GroupColumnStats stats;
      stats.column = matrix.schema.columns()[static_cast<std::size_t>(c)].name;
      if (matrix.rows() > 0) {
        Index nonzero = 0;
        for (Index r = 0; r < matrix.rows(); ++r) {
          if (!matrix.missing(r, c) && matrix.values(r, c) != 0.0) ++nonzero;
        }
        stats.nonzero_rate =
            static_cast<double>(nonzero) / static_cast<double>(matrix.rows());
      }
      summary.columns.push_back(std::move(stats));
    }
    out.push_back(std::move(summary));
  }
  return out;
}

std::string format_group_summary(const std::vector<GroupSummary>& groups) {
  std::ostringstream out;
  for (const auto& g : groups) {
    out << to_string(g.group) << " (" << g.columns.size() << " columns)\n";
    for (const auto& c : g.columns) {
      char buf[32];
      std::snprintf(buf, sizeof(buf), "%.3f", c.nonzero_rate);
      out << "  " << c.column << " nonzero_rate=" << buf << "\n";
    }
  }
  return out.str();
}

namespace {

// Shortest round-trip formatting keeps matrix files byte-stable and exact.
std::string format_value(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

double parse_value(std::string_view text, const std::string& context) {
  double v = 0.0;
  auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size()) {
    throw DataError("bad numeric cell '" + std::string(text) + "' in " +
                    context);
  }
  return v;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.push_back("");
  return cells;
}

}  // namespace

std::string matrix_to_csv(const DataMatrix& matrix) {
  std::ostringstream out;
  out << "# levelscreen-matrix format=1 registry_version="
      << matrix.schema.registry_version() << " columns="
      << matrix.schema.size() << " labeled=" << (matrix.labeled() ? 1 : 0)
      << "\n";
  out << "level_id";
  for (const auto& col : matrix.schema.columns()) out << "," << col.name;
  if (matrix.labeled()) out << ",label";
  out << "\n";
  for (Index r = 0; r < matrix.rows(); ++r) {
    out << matrix.level_ids[static_cast<std::size_t>(r)];
    for (Index c = 0; c < matrix.cols(); ++c) {
      out << ",";
      if (!matrix.missing(r, c)) out << format_value(matrix.values(r, c));
    }
    if (matrix.labeled()) out << "," << (*matrix.labels)(r);
    out << "\n";
  }
  return out.str();
}

std::string mask_to_csv(const DataMatrix& matrix) {
  std::ostringstream out;
  out << "# levelscreen-mask format=1 registry_version="
      << matrix.schema.registry_version() << "\n";
  out << "level_id";
  for (const auto& col : matrix.schema.columns()) out << "," << col.name;
  out << "\n";
  for (Index r = 0; r < matrix.rows(); ++r) {
    out << matrix.level_ids[static_cast<std::size_t>(r)];
    for (Index c = 0; c < matrix.cols(); ++c) {
      out << "," << (matrix.missing(r, c) ? 1 : 0);
    }
    out << "\n";
  }
  return out.str();
}

std::string mask_sidecar_path(const std::string& matrix_path) {
  return matrix_path + ".mask";
}

void save_matrix(const DataMatrix& matrix, const std::string& path) {
  write_file_atomic(path, matrix_to_csv(matrix));
  write_file_atomic(mask_sidecar_path(path), mask_to_csv(matrix));
}

DataMatrix load_matrix(const std::string& path,
                       const ElementRegistry& registry) {
  std::istringstream in(read_file(path));
  std::string line;
  if (!std::getline(in, line) || line.rfind("# levelscreen-matrix", 0) != 0) {
    throw SchemaError("not a matrix file: " + path);
  }
  int registry_version = -1;
  {
    std::istringstream header(line);
    std::string token;
    while (header >> token) {
      if (token.rfind("registry_version=", 0) == 0) {
        registry_version = std::stoi(token.substr(17));
      }
    }
  }
  if (registry_version != registry.version()) {
    throw VersionError("matrix registry_version " +
                       std::to_string(registry_version) +
                       " does not match registry version " +
                       std::to_string(registry.version()));
  }

  FeatureSchema schema = FeatureSchema::from_registry(registry);
  if (!std::getline(in, line)) throw SchemaError("matrix missing header row");
  std::vector<std::string> header_cells = split_csv_line(line);
  bool labeled = !header_cells.empty() && header_cells.back() == "label";
  std::size_t expected =
      1 + static_cast<std::size_t>(schema.size()) + (labeled ? 1 : 0);
  if (header_cells.size() != expected || header_cells[0] != "level_id") {
    throw SchemaError("matrix header does not match schema");
  }
  for (Index c = 0; c < schema.size(); ++c) {
    if (header_cells[static_cast<std::size_t>(c) + 1] !=
        schema.columns()[static_cast<std::size_t>(c)].name) {
      throw SchemaError("matrix column '" +
                        header_cells[static_cast<std::size_t>(c) + 1] +
                        "' does not match schema column '" +
                        schema.columns()[static_cast<std::size_t>(c)].name +
                        "'");
    }
  }

  std::vector<std::vector<std::string>> rows;
  while (std::getline(in, line)) {
    if (!line.empty()) rows.push_back(split_csv_line(line));
  }

  DataMatrix matrix;
  matrix.schema = schema;
  matrix.values = Matrix::Zero(static_cast<Index>(rows.size()), schema.size());
  matrix.missing = Mask::Constant(static_cast<Index>(rows.size()),
                                  schema.size(), false);
  if (labeled) matrix.labels = IntVector(static_cast<Index>(rows.size()));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const auto& cells = rows[r];
    if (cells.size() != expected) {
      throw DataError("matrix row " + std::to_string(r) + " has " +
                      std::to_string(cells.size()) + " cells, expected " +
                      std::to_string(expected));
    }
    matrix.level_ids.push_back(cells[0]);
    for (Index c = 0; c < schema.size(); ++c) {
      const std::string& cell = cells[static_cast<std::size_t>(c) + 1];
      if (cell.empty()) {
        matrix.missing(static_cast<Index>(r), c) = true;
      } else {
        matrix.values(static_cast<Index>(r), c) =
            parse_value(cell, "row " + std::to_string(r));
      }
    }
    if (labeled) {
      const std::string& cell = cells.back();
      if (cell != "0" && cell != "1") {
        throw DataError("matrix label must be 0 or 1, got '" + cell + "'");
      }
      (*matrix.labels)(static_cast<Index>(r)) = cell == "1" ? 1 : 0;
    }
  }
  return matrix;
}

}  // namespace levelscreen
