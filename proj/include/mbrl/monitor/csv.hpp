#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "mbrl/expmgr/recorder.hpp"

namespace mbrl {

// Raised when a caller asks for a record key that was never written.
class UnknownKeyError : public Error {
 public:
  using Error::Error;
};

// Writes `step,wall_time,value,anomaly` rows for one record key, where step
// is the snapshot of x_key at append time. Returns the number of data rows.
long export_csv(const Recorder& recorder, const std::string& key,
                const std::filesystem::path& path,
                const std::string& x_key = GlobalStatus::kTotalRealSamples);

struct CsvSeries {
  std::string name;
  std::vector<double> x, y;          // anomaly rows excluded
  long anomalies = 0;
};

// Reads a CSV written by export_csv.
CsvSeries read_csv_series(const std::filesystem::path& path, const std::string& name);

}  // namespace mbrl
