#include "artfima/ingest.hpp"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace artfima {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && (s[a] == ' ' || s[a] == '\t' || s[a] == '\r')) ++a;
  while (b > a && (s[b - 1] == ' ' || s[b - 1] == '\t' || s[b - 1] == '\r')) --b;
  return s.substr(a, b - a);
}

std::vector<std::string> split_row(const std::string& line) {
  std::vector<std::string> cells;
  std::string cur;
  for (char ch : line) {
    if (ch == ',') {
      cells.push_back(trim(cur));
      cur.clear();
    } else {
      cur += ch;
    }
  }
  cells.push_back(trim(cur));
  return cells;
}

bool is_missing(const std::string& cell) {
  if (cell.empty()) return true;
  std::string low = cell;
  std::transform(low.begin(), low.end(), low.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return low == "na" || low == "nan" || low == "null";
}

}  // namespace

CsvTable read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("io-error: cannot open " + path);
  std::string line;
  if (!std::getline(in, line))
    throw std::runtime_error("parse-error: " + path + ": empty file, header row required");
  CsvTable table;
  table.header = split_row(line);
  table.columns.assign(table.header.size(), {});

  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() && in.peek() == std::char_traits<char>::eof()) break;
    const std::vector<std::string> cells = split_row(line);
    if (cells.size() != table.header.size())
      throw std::runtime_error("parse-error: " + path + ": line " + std::to_string(lineno) +
                               ": expected " + std::to_string(table.header.size()) +
                               " cells, got " + std::to_string(cells.size()));
    for (std::size_t c = 0; c < cells.size(); ++c) {
      if (is_missing(cells[c])) {
        table.columns[c].push_back(std::nullopt);
        continue;
      }
      errno = 0;
      char* end = nullptr;
      const double v = std::strtod(cells[c].c_str(), &end);
      if (end == cells[c].c_str() || *end != '\0' || errno == ERANGE)
        throw std::runtime_error("parse-error: " + path + ": line " + std::to_string(lineno) +
                                 ": cannot parse '" + cells[c] + "' as a number");
      table.columns[c].push_back(v);
    }
    ++table.rows;
  }
  return table;
}

namespace {

std::size_t column_index(const CsvTable& table, const std::string& name, const std::string& path) {
  for (std::size_t c = 0; c < table.header.size(); ++c)
    if (table.header[c] == name) return c;
  throw std::runtime_error("invalid-column: '" + name + "' not found in " + path);
}

}  // namespace

void apply_transforms(SeriesData& series, const std::vector<Transform>& transforms) {
  for (const Transform& tr : transforms) {
    switch (tr.kind) {
      case Transform::Kind::log: {
        for (std::size_t i = 0; i < series.values.size(); ++i) {
          if (!(series.values[i] > 0.0))
            throw std::runtime_error("transform-error: non-positive value under log at row " +
                                     std::to_string(i));
          series.values[i] = std::log(series.values[i]);
        }
        series.meta["transforms"].push_back({{"kind", "log"}});
        break;
      }
      case Transform::Kind::demean: {
        double mean = 0.0;
        for (double v : series.values) mean += v;
        mean /= std::max<std::size_t>(1, series.values.size());
        for (double& v : series.values) v -= mean;
        series.meta["transforms"].push_back({{"kind", "demean"}, {"mean", mean}});
        break;
      }
      case Transform::Kind::subseries: {
        if (tr.start > tr.end || tr.end >= series.values.size())
          throw std::invalid_argument("invalid-transform: subseries [" + std::to_string(tr.start) +
                                      ", " + std::to_string(tr.end) + "] out of range for length " +
                                      std::to_string(series.values.size()));
        series.values = std::vector<double>(series.values.begin() + static_cast<std::ptrdiff_t>(tr.start),
                                            series.values.begin() + static_cast<std::ptrdiff_t>(tr.end) + 1);
        series.meta["transforms"].push_back(
            {{"kind", "subseries"}, {"start", tr.start}, {"end", tr.end}});
        break;
      }
    }
  }
}

SeriesData ingest(const IngestSpec& spec) {
  if (spec.paths.empty()) throw std::invalid_argument("empty-request: no input files");
  if (spec.columns.empty()) throw std::invalid_argument("empty-request: no columns selected");
  if (spec.columns.size() != 1 && spec.paths.size() != 1 &&
      spec.columns.size() != spec.paths.size())
    throw std::invalid_argument(
        "invalid-config: give one column for all files, or one per file, or several from one file");

  // one channel per (path, column) pairing
  std::vector<std::vector<std::optional<double>>> channels;
  auto add_channel = [&](const std::string& path, const std::string& column) {
    const CsvTable table = read_csv(path);
    channels.push_back(table.columns[column_index(table, column, path)]);
  };
  if (spec.paths.size() == 1) {
    for (const std::string& col : spec.columns) add_channel(spec.paths[0], col);
  } else if (spec.columns.size() == 1) {
    for (const std::string& path : spec.paths) add_channel(path, spec.columns[0]);
  } else {
    for (std::size_t i = 0; i < spec.paths.size(); ++i) add_channel(spec.paths[i], spec.columns[i]);
  }

  if (spec.merge == MergeRule::single && channels.size() != 1)
    throw std::invalid_argument("invalid-config: merge rule 'single' expects exactly one channel");
  const std::size_t rows = channels[0].size();
  for (const auto& ch : channels)
    if (ch.size() != rows)
      throw std::runtime_error("invalid-data: channel lengths differ across inputs");

  SeriesData out;
  std::size_t dropped = 0;
  for (std::size_t r = 0; r < rows; ++r) {
    double acc = 0.0;
    std::size_t present = 0;
    for (const auto& ch : channels)
      if (ch[r].has_value()) {
        acc += *ch[r];
        ++present;
      }
    if (present == 0) {
      ++dropped;  // no reading on any channel: the row carries no information
      continue;
    }
    out.values.push_back(acc / static_cast<double>(present));
  }
  if (out.values.empty()) throw std::runtime_error("invalid-data: no usable rows after merging");

  out.meta["source"] = spec.paths;
  out.meta["columns"] = spec.columns;
  out.meta["merge"] = spec.merge == MergeRule::single ? "single" : "mean_else_max";
  out.meta["rows_total"] = rows;
  out.meta["rows_dropped"] = dropped;
  out.meta["transforms"] = nlohmann::json::array();
  apply_transforms(out, spec.transforms);
  return out;
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_series_csv(const std::string& path, const SeriesData& series,
                      const std::string& value_column) {
  std::ofstream outf(path);
  if (!outf) throw std::runtime_error("io-error: cannot write " + path);
  outf << "t," << value_column << "\n";
  for (std::size_t i = 0; i < series.values.size(); ++i)
    outf << i << "," << format_double(series.values[i]) << "\n";
  if (!outf) throw std::runtime_error("io-error: write failed for " + path);
}

void write_table_csv(const std::string& path, const std::vector<std::string>& header,
                     const std::vector<std::vector<double>>& columns) {
  if (header.size() != columns.size())
    throw std::invalid_argument("invalid-config: header/column count mismatch");
  std::size_t rows = 0;
  for (const auto& c : columns) rows = std::max(rows, c.size());
  for (const auto& c : columns)
    if (c.size() != rows) throw std::invalid_argument("invalid-config: ragged table columns");
  std::ofstream outf(path);
  if (!outf) throw std::runtime_error("io-error: cannot write " + path);
  for (std::size_t c = 0; c < header.size(); ++c)
    outf << header[c] << (c + 1 == header.size() ? '\n' : ',');
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < columns.size(); ++c)
      outf << format_double(columns[c][r]) << (c + 1 == columns.size() ? '\n' : ',');
  if (!outf) throw std::runtime_error("io-error: write failed for " + path);
}

}  // namespace artfima
