#include "mbrl/monitor/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace mbrl {
namespace {

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c",
                          "#9467bd", "#ff7f0e", "#8c564b"};
constexpr int kPaletteSize = 6;

std::string fmt2(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

std::string fmt_tick(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

}  // namespace

void plot_series(const PlotSpec& spec, const std::vector<PlotSeries>& series) {
  if (series.empty()) throw Error("plot_series: no series to plot");
  std::size_t points = 0;
  for (const PlotSeries& s : series) {
    if (s.x.size() != s.y.size()) throw ContractError("plot_series: x/y length mismatch");
    points += s.x.size();
  }
  if (points == 0) throw Error("plot_series: empty series");

  double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
  double ymin = xmin, ymax = -xmin;
  for (const PlotSeries& s : series)
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      xmin = std::min(xmin, s.x[i]);
      xmax = std::max(xmax, s.x[i]);
      ymin = std::min(ymin, s.y[i]);
      ymax = std::max(ymax, s.y[i]);
    }
  if (xmin == xmax) {
    xmin -= 1.0;
    xmax += 1.0;
  }
  if (ymin == ymax) {
    ymin -= 1.0;
    ymax += 1.0;
  }

  const double ml = 70, mr = 20, mt = 20, mb = 45;
  const double W = spec.width, H = spec.height;
  const double pw = W - ml - mr, ph = H - mt - mb;
  auto px = [&](double x) { return ml + (x - xmin) / (xmax - xmin) * pw; };
  auto py = [&](double y) { return mt + ph - (y - ymin) / (ymax - ymin) * ph; };

  std::ostringstream o;
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << spec.width << "\" height=\""
    << spec.height << "\" viewBox=\"0 0 " << spec.width << " " << spec.height << "\">\n";
  o << "<rect width=\"" << spec.width << "\" height=\"" << spec.height
    << "\" fill=\"white\"/>\n";
  // axes
  o << "<line x1=\"" << fmt2(ml) << "\" y1=\"" << fmt2(mt + ph) << "\" x2=\"" << fmt2(ml + pw)
    << "\" y2=\"" << fmt2(mt + ph) << "\" stroke=\"black\"/>\n";
  o << "<line x1=\"" << fmt2(ml) << "\" y1=\"" << fmt2(mt) << "\" x2=\"" << fmt2(ml)
    << "\" y2=\"" << fmt2(mt + ph) << "\" stroke=\"black\"/>\n";
  // ticks
  for (int i = 0; i <= 4; ++i) {
    const double fx = xmin + (xmax - xmin) * i / 4.0;
    const double gx = px(fx);
    o << "<line x1=\"" << fmt2(gx) << "\" y1=\"" << fmt2(mt + ph) << "\" x2=\"" << fmt2(gx)
      << "\" y2=\"" << fmt2(mt + ph + 5) << "\" stroke=\"black\"/>\n";
    o << "<text x=\"" << fmt2(gx) << "\" y=\"" << fmt2(mt + ph + 18)
      << "\" font-size=\"11\" text-anchor=\"middle\">" << fmt_tick(fx) << "</text>\n";
    const double fy = ymin + (ymax - ymin) * i / 4.0;
    const double gy = py(fy);
    o << "<line x1=\"" << fmt2(ml - 5) << "\" y1=\"" << fmt2(gy) << "\" x2=\"" << fmt2(ml)
      << "\" y2=\"" << fmt2(gy) << "\" stroke=\"black\"/>\n";
    o << "<text x=\"" << fmt2(ml - 8) << "\" y=\"" << fmt2(gy + 4)
      << "\" font-size=\"11\" text-anchor=\"end\">" << fmt_tick(fy) << "</text>\n";
  }
  // x-axis label
  o << "<text x=\"" << fmt2(ml + pw / 2) << "\" y=\"" << fmt2(H - 8)
    << "\" font-size=\"12\" text-anchor=\"middle\">" << spec.x_key << "</text>\n";
  // series
  for (std::size_t si = 0; si < series.size(); ++si) {
    const PlotSeries& s = series[si];
    if (s.x.empty()) continue;
    const char* color = kPalette[si % kPaletteSize];
    o << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (i) o << ' ';
      o << fmt2(px(s.x[i])) << ',' << fmt2(py(s.y[i]));
    }
    o << "\"/>\n";
  }
  // legend
  for (std::size_t si = 0; si < series.size(); ++si) {
    const char* color = kPalette[si % kPaletteSize];
    const double ly = mt + 14 + 16 * static_cast<double>(si);
    o << "<line x1=\"" << fmt2(ml + pw - 130) << "\" y1=\"" << fmt2(ly - 4) << "\" x2=\""
      << fmt2(ml + pw - 110) << "\" y2=\"" << fmt2(ly - 4) << "\" stroke=\"" << color
      << "\" stroke-width=\"2\"/>\n";
    o << "<text x=\"" << fmt2(ml + pw - 104) << "\" y=\"" << fmt2(ly)
      << "\" font-size=\"11\">" << series[si].name << "</text>\n";
  }
  o << "</svg>\n";

  std::ofstream out(spec.out);
  if (!out) throw IoError("plot_series: cannot open " + spec.out.string());
  out << o.str();
  if (!out) throw IoError("plot_series: write failed for " + spec.out.string());
}

void plot_records(const PlotSpec& spec, const Recorder& recorder) {
  std::vector<PlotSeries> series;
  for (const std::string& key : spec.keys) {
    if (!recorder.has_key(key))
      throw UnknownKeyError("plot_records: unknown record key '" + key + "'");
    PlotSeries s;
    s.name = key;
    for (const RecordEntry* e : recorder.entries_for(key)) {
      if (e->anomaly) continue;
      double x = 0.0;
      bool found = false;
      for (const auto& [k, v] : e->snapshot)
        if (k == spec.x_key) {
          x = v;
          found = true;
          break;
        }
      if (!found)
        throw UnknownKeyError("plot_records: x-axis counter '" + spec.x_key +
                              "' not in snapshot");
      s.x.push_back(x);
      s.y.push_back(e->value);
    }
    series.push_back(std::move(s));
  }
  plot_series(spec, series);
}

}  // namespace mbrl
