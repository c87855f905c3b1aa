#pragma once

#include <string>

#include "chord/json_io.hpp"

namespace chord {

inline constexpr const char* kToolVersion = "0.1.0";

// FNV-1a over the canonical (sorted-key) dump; stable across platforms.
std::string config_hash(const Json& config);

// Reports are deterministic given the config: timings are emitted as null
// unless explicitly requested, keeping byte-identical reruns.
Json make_report(const std::string& command, const Json& config, const Json& results,
                 bool with_timings = false, int64_t elapsed_ms = 0);

std::string dump_report(const Json& report);
void write_report(const Json& report, const std::string& out_path);  // "-" = stdout

}  // namespace chord
