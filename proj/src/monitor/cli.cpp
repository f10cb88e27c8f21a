#include "mbrl/monitor/cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "mbrl/expmgr/experiment.hpp"
#include "mbrl/monitor/plot.hpp"

namespace mbrl {
namespace {

constexpr int kOk = 0;
constexpr int kUsage = 1;
constexpr int kValidation = 2;
constexpr int kRuntime = 3;

std::vector<std::string> split_csv(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

int cmd_run(const std::string& config_path, const RunOptions& options) {
  const ExperimentConfig cfg = ExperimentConfig::parse_file(config_path);
  const auto dir = experiment_run(cfg, options);
  std::cout << dir.string() << "\n";
  return kOk;
}

int cmd_validate(const std::string& config_path) {
  const ExperimentConfig cfg = ExperimentConfig::parse_file(config_path);
  std::cout << "OK (" << cfg.key_count() << " keys)\n";
  return kOk;
}

int cmd_plot(const std::string& run_dir, const std::string& keys_csv,
             const std::string& out_file, int width, int height) {
  const auto keys = split_csv(keys_csv);
  if (keys.empty()) throw UnknownKeyError("plot: --keys is empty");
  std::vector<PlotSeries> series;
  for (const std::string& key : keys) {
    const auto csv_path = std::filesystem::path(run_dir) / "records" / (key + ".csv");
    if (!std::filesystem::exists(csv_path))
      throw UnknownKeyError("plot: no records for key '" + key + "' in " + run_dir);
    const CsvSeries s = read_csv_series(csv_path, key);
    series.push_back(PlotSeries{s.name, s.x, s.y});
  }
  PlotSpec spec;
  spec.keys = keys;
  spec.out = out_file.empty() ? std::filesystem::path(run_dir) / "plot.svg"
                              : std::filesystem::path(out_file);
  spec.width = width;
  spec.height = height;
  plot_series(spec, series);
  std::cout << spec.out.string() << "\n";
  return kOk;
}

int cmd_inspect(const std::string& run_dir) {
  const auto path = std::filesystem::path(run_dir) / "report.json";
  std::ifstream in(path);
  if (!in) throw IoError("inspect: cannot open " + path.string());
  nlohmann::json j;
  in >> j;
  std::cout << "experiment: " << j.value("experiment", std::string("?")) << "\n";
  std::cout << "status:     " << j.value("status", std::string("?")) << "\n";
  std::cout << "seed:       " << j.value("seed", 0ull) << "\n";
  std::cout << "env:        " << j.value("env", std::string("?")) << "\n";
  std::cout << "algorithm:  " << j.value("algorithm", std::string("?")) << "\n";
  std::cout << "flow:       " << j.value("flow", std::string("?")) << "\n";
  std::cout << "cycles:     " << j.value("cycles", 0ll) << "\n";
  if (j.contains("totals"))
    for (auto& [k, v] : j["totals"].items()) std::cout << k << ": " << v << "\n";
  if (j.contains("last_test_return")) {
    std::cout << "last_test_return: ";
    if (j["last_test_return"].is_null())
      std::cout << "none\n";
    else
      std::cout << j["last_test_return"].get<double>() << "\n";
  }
  return kOk;
}

}  // namespace

int cli_dispatch(const std::vector<std::string>& args) {
  CLI::App app{"modular model-based reinforcement learning experiments"};
  app.require_subcommand(1);

  std::string config_path, run_dir, keys, out;
  int width = 800, height = 480;
  RunOptions options;
  std::uint64_t seed = 0;

  auto* run = app.add_subcommand("run", "run an experiment from a config file");
  run->add_option("config", config_path, "experiment config file")->required();
  auto* seed_opt = run->add_option("--seed", seed, "override the config seed");
  run->add_option("--out", out, "override the result directory");
  run->add_flag("--overwrite", options.overwrite, "replace a completed run");

  auto* validate = app.add_subcommand("validate", "parse and validate a config file");
  validate->add_option("config", config_path, "experiment config file")->required();

  auto* plot = app.add_subcommand("plot", "render recorded series from a run directory");
  plot->add_option("run_dir", run_dir, "result directory of a finished run")->required();
  plot->add_option("--keys", keys, "comma-separated record keys")->required();
  plot->add_option("--out", out, "output SVG path (default <run-dir>/plot.svg)");
  plot->add_option("--width", width, "plot width in pixels");
  plot->add_option("--height", height, "plot height in pixels");

  auto* inspect = app.add_subcommand("inspect", "print the final report of a run");
  inspect->add_option("run_dir", run_dir, "result directory of a finished run")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    app.exit(e);  // prints usage/help
    return e.get_exit_code() == 0 ? kOk : kUsage;
  }

  try {
    if (app.got_subcommand(run)) {
      if (!std::filesystem::exists(config_path)) {
        std::cerr << "no such config file: " << config_path << "\n";
        return kUsage;
      }
      if (seed_opt->count() > 0) options.seed = seed;
      if (!out.empty()) options.out_dir = out;
      return cmd_run(config_path, options);
    }
    if (app.got_subcommand(validate)) {
      if (!std::filesystem::exists(config_path)) {
        std::cerr << "no such config file: " << config_path << "\n";
        return kUsage;
      }
      return cmd_validate(config_path);
    }
    if (app.got_subcommand(plot)) return cmd_plot(run_dir, keys, out, width, height);
    if (app.got_subcommand(inspect)) return cmd_inspect(run_dir);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kValidation;
  } catch (const UnknownKeyError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kRuntime;
  }
  return kUsage;
}

}  // namespace mbrl
