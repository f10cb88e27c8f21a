#pragma once

#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include "mbrl/expmgr/recorder.hpp"

namespace mbrl {

enum class LogLevel { info, warning, error };
const char* log_level_name(LogLevel l);

// Line-oriented experiment log (console + log.txt). One event per line with
// a stable field order: level, time, message, fields, counter snapshot.
// Sink I/O failures fall back to the console; logging never takes down a
// run. Events serialize through this single writer.
class Logger {
 public:
  using Fields = std::vector<std::pair<std::string, std::string>>;

  Logger(LogLevel min_level, bool console, std::optional<std::filesystem::path> file,
         const Clock* clock);

  void emit(LogLevel level, const std::string& message, const Fields& fields = {},
            const GlobalStatus* status = nullptr);

  void info(const std::string& m, const Fields& f = {}, const GlobalStatus* s = nullptr) {
    emit(LogLevel::info, m, f, s);
  }
  void warning(const std::string& m, const Fields& f = {}, const GlobalStatus* s = nullptr) {
    emit(LogLevel::warning, m, f, s);
  }
  void error(const std::string& m, const Fields& f = {}, const GlobalStatus* s = nullptr) {
    emit(LogLevel::error, m, f, s);
  }

  static std::string format_line(LogLevel level, double time_s, const std::string& message,
                                 const Fields& fields, const GlobalStatus* status);

 private:
  LogLevel min_level_;
  bool console_;
  std::optional<std::ofstream> file_;
  bool file_failed_ = false;
  const Clock* clock_;
};

}  // namespace mbrl
