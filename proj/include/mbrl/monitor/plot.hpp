#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "mbrl/expmgr/recorder.hpp"
#include "mbrl/monitor/csv.hpp"

namespace mbrl {

struct PlotSpec {
  std::vector<std::string> keys;
  std::string x_key = GlobalStatus::kTotalRealSamples;
  std::filesystem::path out;
  int width = 800;
  int height = 480;
};

struct PlotSeries {
  std::string name;
  std::vector<double> x, y;
};

// Self-contained SVG line chart: axes, one polyline per series, legend.
// Deterministic layout and numeric formatting, so equal inputs produce
// byte-identical files. Empty input (no series or no points) is an error
// and writes nothing.
void plot_series(const PlotSpec& spec, const std::vector<PlotSeries>& series);

// Convenience: pull the spec's keys out of a recorder (anomalies skipped).
void plot_records(const PlotSpec& spec, const Recorder& recorder);

}  // namespace mbrl
