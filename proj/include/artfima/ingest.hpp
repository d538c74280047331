#pragma once
//
// CSV ingestion with channel merging and the transform pipeline used for
// real data: log, demean, subseries. Every step is recorded in the series
// meta so a result is reproducible from its sidecar.
//

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "artfima/types.hpp"

namespace artfima {

struct Transform {
  enum class Kind { log, demean, subseries };
  Kind kind = Kind::log;
  std::size_t start = 0;  // subseries bounds, 0-based inclusive
  std::size_t end = 0;
};

enum class MergeRule {
  single,         // exactly one channel expected
  mean_else_max,  // mean of the readings present; a single reading stands as is
};

struct IngestSpec {
  std::vector<std::string> paths;
  std::vector<std::string> columns;  // selected per file by header name
  MergeRule merge = MergeRule::single;
  std::vector<Transform> transforms;
};

SeriesData ingest(const IngestSpec& spec);

// Transform application shared by ingest and tests.
void apply_transforms(SeriesData& series, const std::vector<Transform>& transforms);

// Raw CSV column access: header-addressed, empty/NA/NaN cells become missing.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::optional<double>>> columns;
  std::size_t rows = 0;
};

CsvTable read_csv(const std::string& path);
void write_series_csv(const std::string& path, const SeriesData& series,
                      const std::string& value_column = "x");
void write_table_csv(const std::string& path, const std::vector<std::string>& header,
                     const std::vector<std::vector<double>>& columns);

// 17 significant digits, round-trip exact for doubles.
std::string format_double(double v);

}  // namespace artfima
