#include "qhb/log.hpp"

#include <atomic>
#include <cstdlib>
#include <iostream>
#include <mutex>

namespace qhb {

namespace {

LogLevel from_env() {
  const char* v = std::getenv("BLOWUP_LOG");
  if (!v) return LogLevel::Warn;
  std::string s(v);
  if (s == "quiet" || s == "0") return LogLevel::Quiet;
  if (s == "warn" || s == "1") return LogLevel::Warn;
  if (s == "info" || s == "2") return LogLevel::Info;
  if (s == "debug" || s == "3") return LogLevel::Debug;
  return LogLevel::Warn;
}

std::atomic<int>& level_slot() {
  static std::atomic<int> level{static_cast<int>(from_env())};
  return level;
}

const char* tag(LogLevel l) {
  switch (l) {
    case LogLevel::Debug: return "debug";
    case LogLevel::Info: return "info";
    case LogLevel::Warn: return "warn";
    default: return "";
  }
}

}  // namespace

LogLevel log_level() { return static_cast<LogLevel>(level_slot().load(std::memory_order_relaxed)); }

void set_log_level(LogLevel level) { level_slot().store(static_cast<int>(level)); }

void log_write(LogLevel level, const std::string& line) {
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  std::cerr << "[" << tag(level) << "] " << line << '\n';
}

}  // namespace qhb
