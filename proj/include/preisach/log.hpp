#pragma once

// Minimal stderr logging; verbosity from PREISACH_LOG
// ("error", "warn", "info", "debug" or 0..3). Default: warn.

#include <cstdlib>
#include <iostream>
#include <string>
#include <string_view>

namespace preisach::log {

enum class Level { error = 0, warn = 1, info = 2, debug = 3 };

inline Level parse_level(std::string_view s) {
    if (s == "error" || s == "0") return Level::error;
    if (s == "info" || s == "2") return Level::info;
    if (s == "debug" || s == "3") return Level::debug;
    return Level::warn;
}

inline Level& threshold() {
    static Level level = [] {
        const char* env = std::getenv("PREISACH_LOG");
        return env ? parse_level(env) : Level::warn;
    }();
    return level;
}

inline void write(Level level, std::string_view tag, const std::string& msg) {
    if (static_cast<int>(level) <= static_cast<int>(threshold())) std::cerr << "[" << tag << "] " << msg << '\n';
}

inline void error(const std::string& msg) { write(Level::error, "error", msg); }
inline void warn(const std::string& msg) { write(Level::warn, "warn", msg); }
inline void info(const std::string& msg) { write(Level::info, "info", msg); }
inline void debug(const std::string& msg) { write(Level::debug, "debug", msg); }

} // namespace preisach::log
