#pragma once

#include <json.hpp>

#include "solution.hpp"

namespace multiwinner {

inline nlohmann::json ratio_json(const Ratio& r) {
  return {{"num", r.num}, {"den", r.den}, {"value", r.value()}};
}

inline nlohmann::json report_json(const SolutionReport& rep) {
  nlohmann::json j;
  j["schema_version"] = 1;
  j["rule"] = rep.rule;
  j["algorithm"] = rep.algorithm;
  j["n"] = rep.n;
  j["m"] = rep.m;
  j["k"] = rep.k;
  j["committee"] = rep.committee;
  j["assignment"] = rep.assignment.rep;
  j["l1"] = rep.l1;
  j["l_inf"] = rep.l_inf;
  j["l_min"] = rep.l_min;
  j["ideal"] = rep.ideal;
  j["ratio_to_ideal"] = ratio_json(rep.ratio_to_ideal());
  if (rep.c_opt) {
    j["c_opt"] = *rep.c_opt;
    j["ratio_to_opt"] = ratio_json(*rep.ratio_to_opt());
  }
  if (rep.seed) j["seed"] = *rep.seed;
  if (!rep.params.empty()) j["params"] = rep.params;
  if (rep.delta) j["delta"] = *rep.delta;
  if (rep.l_min_delta) j["l_min_delta"] = *rep.l_min_delta;
  if (rep.delta_bound) j["delta_bound"] = *rep.delta_bound;
  j["time_ms"] = rep.time_ms;
  return j;
}

}  // namespace multiwinner
