#pragma once

#include "typesched/model.hpp"

#include <json.hpp>

#include <string>

namespace typesched {

// {"D": int, "types": [{"machine_count": int}], "jobs": [{"costs": [[r, ...], ...]}]}
// with rationals as "a/b" strings or plain integers.
Instance instance_from_json(const nlohmann::json& doc);
nlohmann::json instance_to_json(const Instance& inst);

Instance read_instance(const std::string& path);
void write_instance(const Instance& inst, const std::string& path);

nlohmann::json schedule_to_json(const Schedule& s);
Schedule schedule_from_json(const nlohmann::json& doc);

Rational rational_from_json(const nlohmann::json& value);
nlohmann::json rational_to_json(const Rational& value);

// FNV-1a over the canonical JSON dump; stable across runs and platforms.
std::string instance_digest(const Instance& inst);

}  // namespace typesched
