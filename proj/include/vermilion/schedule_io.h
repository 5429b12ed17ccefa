#ifndef VERMILION_SCHEDULE_IO_H_
#define VERMILION_SCHEDULE_IO_H_

#include <string>

#include "vermilion/schedule.h"

namespace vermilion {

// {"n":..,"d":..,"k":..,"slot_ns":..,"reconfig_ns":..,"seed":..,
//  "planes":[[[dst..]..]..],"phases":[["rr"|"aware"|"obl"..]..]}
std::string ScheduleToJson(const PeriodicSchedule& s);
// Throws Error{Parse} on malformed documents; the result is validated.
PeriodicSchedule ScheduleFromJson(const std::string& text);
PeriodicSchedule ReadScheduleFile(const std::string& path);

std::string_view PhaseTag(Phase phase);

}  // namespace vermilion

#endif  // VERMILION_SCHEDULE_IO_H_
