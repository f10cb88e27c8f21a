#include "mbrl/monitor/logger.hpp"

#include <cstdio>
#include <iostream>

namespace mbrl {

const char* log_level_name(LogLevel l) {
  switch (l) {
    case LogLevel::info: return "info";
    case LogLevel::warning: return "warning";
    case LogLevel::error: return "error";
  }
  return "?";
}

Logger::Logger(LogLevel min_level, bool console,
               std::optional<std::filesystem::path> file, const Clock* clock)
    : min_level_(min_level), console_(console), clock_(clock) {
  if (file) {
    file_.emplace(*file);
    if (!*file_) {
      file_.reset();
      file_failed_ = true;
      std::cerr << "level=error log sink unavailable, falling back to console: "
                << file->string() << "\n";
    }
  }
}

std::string Logger::format_line(LogLevel level, double time_s, const std::string& message,
                                const Fields& fields, const GlobalStatus* status) {
  char t[40];
  std::snprintf(t, sizeof(t), "%.6f", time_s);
  std::string line = "level=";
  line += log_level_name(level);
  line += " time=";
  line += t;
  line += " msg=\"" + message + "\"";
  for (const auto& [k, v] : fields) line += " " + k + "=" + v;
  if (status) {
    line += " |";
    for (const auto& [k, v] : status->snapshot()) {
      char num[40];
      if (v == static_cast<long long>(v))
        std::snprintf(num, sizeof(num), "%lld", static_cast<long long>(v));
      else
        std::snprintf(num, sizeof(num), "%.6g", v);
      line += " " + k + "=" + num;
    }
  }
  return line;
}

void Logger::emit(LogLevel level, const std::string& message, const Fields& fields,
                  const GlobalStatus* status) {
  if (static_cast<int>(level) < static_cast<int>(min_level_)) return;
  const double t = clock_ ? clock_->now() : 0.0;
  const std::string line = format_line(level, t, message, fields, status);
  if (console_ || (file_failed_ && level == LogLevel::error))
    (level == LogLevel::info ? std::cout : std::cerr) << line << "\n";
  if (file_) {
    *file_ << line << "\n";
    file_->flush();  // errors must land immediately; the rate is tiny anyway
    if (!*file_) {
      file_.reset();
      file_failed_ = true;
      std::cerr << "level=error log sink failed, falling back to console\n";
    }
  }
}

}  // namespace mbrl
