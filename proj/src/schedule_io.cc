#include "vermilion/schedule_io.h"

#include <json.hpp>

#include "vermilion/error.h"
#include "vermilion/matrix_io.h"

namespace vermilion {

std::string_view PhaseTag(Phase phase) {
  switch (phase) {
    case Phase::kRoundRobin: return "rr";
    case Phase::kAware: return "aware";
    case Phase::kOblivious: return "obl";
  }
  return "obl";
}

namespace {

Phase PhaseFromTag(const std::string& tag) {
  if (tag == "rr") return Phase::kRoundRobin;
  if (tag == "aware") return Phase::kAware;
  if (tag == "obl") return Phase::kOblivious;
  throw Error(ErrorCode::kParse, "unknown phase tag '" + tag + "'");
}

}  // namespace

std::string ScheduleToJson(const PeriodicSchedule& s) {
  nlohmann::ordered_json doc;
  doc["n"] = s.n;
  doc["d"] = s.degree;
  doc["k"] = s.k;
  doc["slot_ns"] = s.timing.slot_ns;
  doc["reconfig_ns"] = s.timing.reconfig_ns;
  doc["seed"] = s.seed;
  doc["padding"] = s.padding;
  auto planes = nlohmann::ordered_json::array();
  auto phases = nlohmann::ordered_json::array();
  for (int p = 0; p < static_cast<int>(s.planes.size()); ++p) {
    auto plane = nlohmann::ordered_json::array();
    auto tags = nlohmann::ordered_json::array();
    for (std::size_t t = 0; t < s.planes[p].size(); ++t) {
      plane.push_back(s.planes[p][t].dst);
      tags.push_back(PhaseTag(s.phases[p][t]));
    }
    planes.push_back(std::move(plane));
    phases.push_back(std::move(tags));
  }
  doc["planes"] = std::move(planes);
  doc["phases"] = std::move(phases);
  return doc.dump() + "\n";
}

PeriodicSchedule ScheduleFromJson(const std::string& text) {
  PeriodicSchedule s;
  try {
    const auto doc = nlohmann::json::parse(text);
    s.n = doc.at("n").get<int>();
    s.degree = doc.at("d").get<int>();
    s.k = doc.value("k", 0);
    s.timing.slot_ns = doc.at("slot_ns").get<double>();
    s.timing.reconfig_ns = doc.at("reconfig_ns").get<double>();
    s.seed = doc.value("seed", std::uint64_t{0});
    s.padding = doc.value("padding", 0);
    for (const auto& plane : doc.at("planes")) {
      std::vector<Matching> slots;
      for (const auto& dst : plane) slots.push_back(Matching{dst.get<std::vector<int>>()});
      s.planes.push_back(std::move(slots));
    }
    for (const auto& plane : doc.at("phases")) {
      std::vector<Phase> tags;
      for (const auto& tag : plane) tags.push_back(PhaseFromTag(tag.get<std::string>()));
      s.phases.push_back(std::move(tags));
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParse, std::string("schedule JSON: ") + e.what());
  }
  ValidateSchedule(s);
  return s;
}

PeriodicSchedule ReadScheduleFile(const std::string& path) {
  return ScheduleFromJson(ReadFileToString(path));
}

}  // namespace vermilion
