#include "jumpcoach/technique.hpp"

#include <array>
#include <nlohmann/json.hpp>
#include <utility>

#include "jumpcoach/error.hpp"

namespace jumpcoach {

namespace {

using Field = double TechniqueThresholds::*;

constexpr std::array<std::pair<std::string_view, Field>, 23> kFields = {{
    {"minAirborneS", &TechniqueThresholds::minAirborneS},
    {"minRiseM", &TechniqueThresholds::minRiseM},
    {"marginS", &TechniqueThresholds::marginS},
    {"feetSyncPassS", &TechniqueThresholds::feetSyncPassS},
    {"feetSyncZeroS", &TechniqueThresholds::feetSyncZeroS},
    {"landingWindowS", &TechniqueThresholds::landingWindowS},
    {"landingPassM", &TechniqueThresholds::landingPassM},
    {"landingZeroM", &TechniqueThresholds::landingZeroM},
    {"kneeWindowS", &TechniqueThresholds::kneeWindowS},
    {"kneePassRatio", &TechniqueThresholds::kneePassRatio},
    {"kneeZeroRatio", &TechniqueThresholds::kneeZeroRatio},
    {"armLeadS", &TechniqueThresholds::armLeadS},
    {"armSyncPassS", &TechniqueThresholds::armSyncPassS},
    {"armSyncZeroS", &TechniqueThresholds::armSyncZeroS},
    {"armHeightGapPassM", &TechniqueThresholds::armHeightGapPassM},
    {"armHeightGapZeroM", &TechniqueThresholds::armHeightGapZeroM},
    {"armBandBelowM", &TechniqueThresholds::armBandBelowM},
    {"armBandAboveM", &TechniqueThresholds::armBandAboveM},
    {"armBandRampM", &TechniqueThresholds::armBandRampM},
    {"armArcPassM", &TechniqueThresholds::armArcPassM},
    {"armArcZeroM", &TechniqueThresholds::armArcZeroM},
    {"concentricSearchS", &TechniqueThresholds::concentricSearchS},
    {"filterCutoffHz", &TechniqueThresholds::filterCutoffHz},
}};

const Field* find(std::string_view name) {
  for (const auto& [n, f] : kFields) {
    if (n == name) return &f;
  }
  return nullptr;
}

}  // namespace

bool TechniqueThresholds::set(std::string_view name, double value) {
  const Field* f = find(name);
  if (!f) return false;
  this->**f = value;
  return true;
}

std::optional<double> TechniqueThresholds::get(std::string_view name) const {
  const Field* f = find(name);
  if (!f) return std::nullopt;
  return this->**f;
}

std::vector<std::string> TechniqueThresholds::names() {
  std::vector<std::string> out;
  for (const auto& [n, f] : kFields) out.emplace_back(n);
  return out;
}

void to_json(nlohmann::json& j, const TechniqueThresholds& t) {
  j = nlohmann::json::object();
  for (const auto& n : TechniqueThresholds::names()) j[n] = *t.get(n);
}

void from_json(const nlohmann::json& j, TechniqueThresholds& t) {
  if (!j.is_object()) throw Error(ErrorCode::InvalidArgument, "thresholds must be an object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (!it->is_number()) throw Error(ErrorCode::InvalidArgument, "threshold " + it.key() + " must be numeric");
    if (!t.set(it.key(), it->get<double>())) throw Error(ErrorCode::InvalidArgument, "unknown threshold " + it.key());
  }
}

double rampScore(double value, double pass, double zero) {
  if (value <= pass) return 1.0;
  if (value >= zero || zero <= pass) return 0.0;
  return 1.0 - (value - pass) / (zero - pass);
}

}  // namespace jumpcoach
