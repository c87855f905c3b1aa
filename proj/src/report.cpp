#include "chord/report.hpp"

#include <fstream>
#include <iostream>

namespace chord {

std::string config_hash(const Json& config) {
  std::string dump = config.dump();
  uint64_t h = 1469598103934665603ull;
  for (unsigned char c : dump) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

Json make_report(const std::string& command, const Json& config, const Json& results,
                 bool with_timings, int64_t elapsed_ms) {
  Json rep{{"command", command},
           {"config", config},
           {"config_hash", config_hash(config)},
           {"version", kToolVersion},
           {"results", results}};
  if (with_timings)
    rep["timings"] = Json{{"elapsed_ms", elapsed_ms}};
  else
    rep["timings"] = nullptr;
  return rep;
}

std::string dump_report(const Json& report) { return report.dump(2) + "\n"; }

void write_report(const Json& report, const std::string& out_path) {
  std::string text = dump_report(report);
  if (out_path.empty() || out_path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw std::invalid_argument("cannot write " + out_path);
  out << text;
}

}  // namespace chord
