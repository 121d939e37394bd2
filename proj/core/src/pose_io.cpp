#include "jumpcoach/pose_io.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <iterator>
#include <nlohmann/json.hpp>
#include <ostream>

#include "jumpcoach/error.hpp"

namespace jumpcoach {

namespace {

using ordered_json = nlohmann::ordered_json;

Vec3 readPoint(const nlohmann::json& j, std::string_view key, std::size_t line) {
  auto it = j.find(std::string(key));
  if (it == j.end()) throw ParseError(line, "missing \"" + std::string(key) + "\"");
  if (!it->is_array() || it->size() != 3) {
    throw ParseError(line, "\"" + std::string(key) + "\" must be an array of 3 numbers");
  }
  Vec3 v;
  double* out[3] = {&v.x, &v.y, &v.z};
  for (std::size_t i = 0; i < 3; ++i) {
    const auto& c = (*it)[i];
    if (!c.is_number()) throw ParseError(line, "\"" + std::string(key) + "\" has a non-numeric component");
    *out[i] = c.get<double>();
    if (!std::isfinite(*out[i])) throw ParseError(line, "non-finite coordinate");
  }
  return v;
}

}  // namespace

PoseStream readPoseJsonl(std::istream& in) {
  PoseStream frames;
  std::string text;
  std::size_t line = 0;
  while (std::getline(in, text)) {
    ++line;
    if (text.find_first_not_of(" \t\r") == std::string::npos) continue;

    nlohmann::json j;
    try {
      j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
      throw ParseError(line, std::string("malformed JSON: ") + e.what());
    }
    if (!j.is_object()) throw ParseError(line, "frame must be a JSON object");

    PoseFrame f;
    auto t = j.find("t");
    if (t == j.end() || !t->is_number()) throw ParseError(line, "missing numeric \"t\"");
    f.t = t->get<double>();
    if (!std::isfinite(f.t) || f.t < 0.0) throw ParseError(line, "\"t\" must be finite and non-negative");

    for (TrackerPoint p : kAllTrackers) f[p] = readPoint(j, trackerName(p), line);

    if (auto v = j.find("valid"); v != j.end()) {
      if (!v->is_array() || v->size() != kTrackerCount) throw ParseError(line, "\"valid\" must hold 6 booleans");
      for (std::size_t i = 0; i < kTrackerCount; ++i) {
        if (!(*v)[i].is_boolean()) throw ParseError(line, "\"valid\" must hold 6 booleans");
        f.valid[i] = (*v)[i].get<bool>();
      }
    }
    for (std::size_t i = 0; i < kTrackerCount; ++i) {
      if (f.valid[i] && f.points[i].y < kMinPlausibleY) {
        throw ParseError(line, std::string(trackerName(kAllTrackers[i])) + " below plausible floor range");
      }
    }
    if (!frames.empty() && !(f.t > frames.back().t)) {
      throw ParseError(line, "timestamps must strictly increase");
    }
    frames.push_back(f);
  }
  return frames;
}

PoseStream readPoseJsonlFile(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::InvalidArgument, "cannot open " + path.string());
  return readPoseJsonl(in);
}

std::string toJsonLine(const PoseFrame& frame) {
  ordered_json j;
  j["t"] = frame.t;
  for (TrackerPoint p : kAllTrackers) {
    const Vec3& v = frame[p];
    j[std::string(trackerName(p))] = {v.x, v.y, v.z};
  }
  j["valid"] = frame.valid;
  return j.dump();
}

void writePoseJsonl(std::ostream& out, std::span<const PoseFrame> frames) {
  for (const auto& f : frames) out << toJsonLine(f) << '\n';
}

void writePoseJsonlFile(const std::filesystem::path& path, std::span<const PoseFrame> frames) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::InvalidArgument, "cannot write " + path.string());
  writePoseJsonl(out, frames);
}

std::string calibrationToJson(const CalibrationProfile& cal) {
  ordered_json j;
  j["playerHeight"] = cal.playerHeight;
  j["standingWaistY"] = cal.standingWaistY;
  j["standingShinY"] = {cal.standingShinY[0], cal.standingShinY[1]};
  j["shoulderY"] = cal.shoulderY;
  j["hipWidth"] = cal.hipWidth;
  j["floorY"] = cal.floorY;
  j["zoneCenter"] = {cal.zoneCenter.x, cal.zoneCenter.z};
  j["zoneRadius"] = cal.zoneRadius;
  return j.dump(2) + "\n";
}

CalibrationProfile calibrationFromJson(std::string_view text) {
  CalibrationProfile cal;
  try {
    const auto j = nlohmann::json::parse(text);
    cal.playerHeight = j.at("playerHeight").get<double>();
    cal.standingWaistY = j.at("standingWaistY").get<double>();
    cal.standingShinY[0] = j.at("standingShinY").at(0).get<double>();
    cal.standingShinY[1] = j.at("standingShinY").at(1).get<double>();
    cal.shoulderY = j.value("shoulderY", shoulderHeightFor(cal.playerHeight, cal.standingWaistY));
    cal.hipWidth = j.at("hipWidth").get<double>();
    cal.floorY = j.value("floorY", 0.0);
    cal.zoneCenter = {j.at("zoneCenter").at(0).get<double>(), j.at("zoneCenter").at(1).get<double>()};
    cal.zoneRadius = j.value("zoneRadius", kDefaultZoneRadiusM);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::SchemaViolation, std::string("calibration: ") + e.what());
  }
  cal.validate();
  return cal;
}

CalibrationProfile readCalibrationFile(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::InvalidArgument, "cannot open " + path.string());
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return calibrationFromJson(text);
}

}  // namespace jumpcoach
