#pragma once

#include <cstdint>
#include <optional>
#include <string>

namespace smx {

struct ValidationInfo {
  bool matched = false;
  double max_abs_diff = 0.0;
};

/// One solver run, as reported by the command-line tool. Serialization is
/// deterministic (sorted keys, shortest round-trip numbers), so two runs
/// of the same problem differ only in wall_time_seconds.
struct RunReport {
  std::string problem;    // apsp, aplp, mcp, maxrp, minrp, mst, gtc, knn
  std::string op;         // opcode name, e.g. "min-plus"
  long n = 0;             // output columns (vertices for graph problems)
  long m = 0;             // output rows
  long k = 0;             // fold depth of one pass
  std::string algorithm;  // bf, leyzorek, or single-pass
  std::string precision;  // exact32 or mixed16
  long iterations = 0;
  std::uint64_t tile_ops = 0;
  std::uint64_t loads = 0;
  std::uint64_t stores = 0;
  double wall_time_seconds = 0.0;
  bool converged = false;
  std::optional<ValidationInfo> validation;
};

std::string to_json_string(const RunReport& report);
RunReport report_from_json(const std::string& text);

}  // namespace smx
