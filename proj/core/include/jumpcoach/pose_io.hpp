#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>

#include "jumpcoach/calibration.hpp"
#include "jumpcoach/pose.hpp"

namespace jumpcoach {

// Pose stream files are JSON Lines, one frame per line:
//   {"t":0.0,"head":[x,y,z],"lhand":[...],"rhand":[...],"waist":[...],
//    "lshin":[...],"rshin":[...],"valid":[true,true,true,true,true,true]}
// Timestamps must strictly increase. Blank lines are ignored.

PoseStream readPoseJsonl(std::istream& in);
PoseStream readPoseJsonlFile(const std::filesystem::path& path);

std::string toJsonLine(const PoseFrame& frame);
void writePoseJsonl(std::ostream& out, std::span<const PoseFrame> frames);
void writePoseJsonlFile(const std::filesystem::path& path, std::span<const PoseFrame> frames);

// Calibration files are a single JSON object with the profile fields;
// standingShinY is [left, right] and zoneCenter is [x, z].
std::string calibrationToJson(const CalibrationProfile& cal);
/// Throws SchemaViolation on missing or malformed fields, InvalidArgument
/// when the profile breaks its invariants.
CalibrationProfile calibrationFromJson(std::string_view text);
CalibrationProfile readCalibrationFile(const std::filesystem::path& path);

}  // namespace jumpcoach
