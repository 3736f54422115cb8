#include "smx/report.hpp"

#include "json.hpp"
#include "smx/errors.hpp"

namespace smx {

std::string to_json_string(const RunReport& r) {
  nlohmann::json j{
      {"problem", r.problem},
      {"op", r.op},
      {"n", r.n},
      {"m", r.m},
      {"k", r.k},
      {"algorithm", r.algorithm},
      {"precision", r.precision},
      {"iterations", r.iterations},
      {"tile_ops", r.tile_ops},
      {"loads", r.loads},
      {"stores", r.stores},
      {"wall_time_seconds", r.wall_time_seconds},
      {"converged", r.converged},
  };
  if (r.validation)
    j["validation"] = {{"matched", r.validation->matched},
                       {"max_abs_diff", r.validation->max_abs_diff}};
  else
    j["validation"] = nullptr;
  return j.dump(2) + "\n";
}

RunReport report_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("report JSON: ") + e.what());
  }
  try {
    RunReport r;
    r.problem = j.at("problem").get<std::string>();
    r.op = j.at("op").get<std::string>();
    r.n = j.at("n").get<long>();
    r.m = j.at("m").get<long>();
    r.k = j.at("k").get<long>();
    r.algorithm = j.at("algorithm").get<std::string>();
    r.precision = j.at("precision").get<std::string>();
    r.iterations = j.at("iterations").get<long>();
    r.tile_ops = j.at("tile_ops").get<std::uint64_t>();
    r.loads = j.at("loads").get<std::uint64_t>();
    r.stores = j.at("stores").get<std::uint64_t>();
    r.wall_time_seconds = j.at("wall_time_seconds").get<double>();
    r.converged = j.at("converged").get<bool>();
    if (j.contains("validation") && !j.at("validation").is_null()) {
      ValidationInfo v;
      v.matched = j.at("validation").at("matched").get<bool>();
      v.max_abs_diff = j.at("validation").at("max_abs_diff").get<double>();
      r.validation = v;
    }
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("report JSON fields: ") + e.what());
  }
}

}  // namespace smx
