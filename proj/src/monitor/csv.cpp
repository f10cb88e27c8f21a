#include "mbrl/monitor/csv.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace mbrl {
namespace {

std::string fmt_number(double v) {
  if (std::isfinite(v) && v == std::floor(v) && std::abs(v) < 9.007199254740992e15) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%lld", static_cast<long long>(v));
    return buf;
  }
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

long export_csv(const Recorder& recorder, const std::string& key,
                const std::filesystem::path& path, const std::string& x_key) {
  const auto entries = recorder.entries_for(key);
  if (!recorder.has_key(key) && !entries.empty())
    throw UnknownKeyError("export_csv: inconsistent recorder state");
  // An empty result for a key that never appeared is an error only when the
  // recorder has entries under other keys; a fully empty recorder exports a
  // header-only file.
  if (entries.empty() && recorder.size() > 0 && !recorder.has_key(key))
    throw UnknownKeyError("export_csv: unknown record key '" + key + "'");

  std::ofstream out(path);
  if (!out) throw IoError("export_csv: cannot open " + path.string());
  out << "step,wall_time,value,anomaly\n";
  char t[40];
  for (const RecordEntry* e : entries) {
    double step = 0.0;
    bool found = false;
    for (const auto& [k, v] : e->snapshot)
      if (k == x_key) {
        step = v;
        found = true;
        break;
      }
    if (!found)
      throw UnknownKeyError("export_csv: x-axis counter '" + x_key + "' not in snapshot");
    std::snprintf(t, sizeof(t), "%.6f", e->time_s);
    out << fmt_number(step) << ',' << t << ',' << fmt_number(e->value) << ','
        << (e->anomaly ? 1 : 0) << '\n';
  }
  if (!out) throw IoError("export_csv: write failed for " + path.string());
  return static_cast<long>(entries.size());
}

CsvSeries read_csv_series(const std::filesystem::path& path, const std::string& name) {
  std::ifstream in(path);
  if (!in) throw IoError("read_csv_series: cannot open " + path.string());
  std::string line;
  if (!std::getline(in, line) || line != "step,wall_time,value,anomaly")
    throw IoError("read_csv_series: unexpected header in " + path.string());
  CsvSeries s;
  s.name = name;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string step, wall, value, anomaly;
    if (!std::getline(row, step, ',') || !std::getline(row, wall, ',') ||
        !std::getline(row, value, ',') || !std::getline(row, anomaly, ','))
      throw IoError("read_csv_series: malformed row in " + path.string());
    if (anomaly != "0") {
      ++s.anomalies;
      continue;
    }
    s.x.push_back(std::strtod(step.c_str(), nullptr));
    s.y.push_back(std::strtod(value.c_str(), nullptr));
  }
  return s;
}

}  // namespace mbrl
