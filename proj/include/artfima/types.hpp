#pragma once

#include <string>
#include <vector>

#include "json.hpp"

namespace artfima {

// A time series plus a free-form provenance record (source, seed, params,
// transform history). Meta travels with the data through the CLI pipeline
// and is serialized as a JSON sidecar.
struct SeriesData {
  std::vector<double> values;
  nlohmann::json meta = nlohmann::json::object();

  std::size_t size() const { return values.size(); }
};

void ensure_finite(const std::vector<double>& x, const std::string& what);

}  // namespace artfima
