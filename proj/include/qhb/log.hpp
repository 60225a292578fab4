#pragma once

#include <sstream>
#include <string>

namespace qhb {

enum class LogLevel { Quiet = 0, Warn = 1, Info = 2, Debug = 3 };

// Level from BLOWUP_LOG (quiet|warn|info|debug or 0-3); warn when unset.
LogLevel log_level();
void set_log_level(LogLevel level);
void log_write(LogLevel level, const std::string& line);

template <class... Args>
void log_at(LogLevel level, const Args&... args) {
  if (static_cast<int>(level) > static_cast<int>(log_level())) return;
  std::ostringstream os;
  os.precision(17);
  ((os << args << ' '), ...);
  std::string s = os.str();
  if (!s.empty()) s.pop_back();
  log_write(level, s);
}

template <class... Args>
void log_debug(const Args&... args) { log_at(LogLevel::Debug, args...); }
template <class... Args>
void log_info(const Args&... args) { log_at(LogLevel::Info, args...); }
template <class... Args>
void log_warn(const Args&... args) { log_at(LogLevel::Warn, args...); }

}  // namespace qhb
