#include "typesched/instance_io.hpp"

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace typesched {

using nlohmann::json;

Rational rational_from_json(const json& value) {
  if (value.is_number_integer()) return Rational(mpz_class(std::to_string(value.get<long long>())));
  if (value.is_string()) return parse_rational(value.get<std::string>());
  throw std::invalid_argument("rational must be an integer or an \"a/b\" string, got " +
                              value.dump());
}

json rational_to_json(const Rational& value) {
  if (is_integer(value) && value.get_num().fits_slong_p()) return value.get_num().get_si();
  return to_string(value);
}

Instance instance_from_json(const json& doc) {
  Instance inst;
  inst.dims = doc.at("D").get<std::size_t>();
  for (const auto& t : doc.at("types")) inst.types.push_back({t.at("machine_count").get<std::size_t>()});
  for (const auto& j : doc.at("jobs")) {
    Job job;
    for (const auto& per_type : j.at("costs")) {
      std::vector<Rational> row;
      if (per_type.is_array()) {
        for (const auto& c : per_type) row.push_back(rational_from_json(c));
      } else {
        // one-dimensional shorthand
        row.push_back(rational_from_json(per_type));
      }
      job.costs.push_back(std::move(row));
    }
    inst.jobs.push_back(std::move(job));
  }
  return inst;
}

json instance_to_json(const Instance& inst) {
  json doc;
  doc["D"] = inst.dims;
  doc["types"] = json::array();
  for (const auto& t : inst.types) doc["types"].push_back({{"machine_count", t.machine_count}});
  doc["jobs"] = json::array();
  for (const auto& job : inst.jobs) {
    json costs = json::array();
    for (const auto& row : job.costs) {
      json r = json::array();
      for (const auto& c : row) r.push_back(rational_to_json(c));
      costs.push_back(std::move(r));
    }
    doc["jobs"].push_back({{"costs", std::move(costs)}});
  }
  return doc;
}

Instance read_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open instance file " + path);
  return instance_from_json(json::parse(in));
}

void write_instance(const Instance& inst, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write instance file " + path);
  out << instance_to_json(inst).dump(2) << '\n';
}

json schedule_to_json(const Schedule& s) {
  json out = json::array();
  for (const auto& m : s.assignment) out.push_back({m.type, m.index});
  return out;
}

Schedule schedule_from_json(const json& doc) {
  Schedule s;
  for (const auto& entry : doc)
    s.assignment.push_back({entry.at(0).get<std::size_t>(), entry.at(1).get<std::size_t>()});
  return s;
}

std::string instance_digest(const Instance& inst) {
  const std::string text = instance_to_json(inst).dump();
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace typesched
