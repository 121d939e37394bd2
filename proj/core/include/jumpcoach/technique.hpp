#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace jumpcoach {

/// Every tolerance used by jump detection and the technique criteria. Each
/// field can be overridden by name (see `set`), which is how the CLI exposes
/// them without a rebuild.
struct TechniqueThresholds {
  // Detection.
  double minAirborneS = 0.120;
  double minRiseM = 0.10;
  double marginS = 0.5;            // samples kept around each jump

  // Both feet leave and land together.
  double feetSyncPassS = 0.050;
  double feetSyncZeroS = 0.200;

  // Shin dip below its standing level after landing.
  double landingWindowS = 0.250;
  double landingPassM = 0.025;
  double landingZeroM = 0.100;

  // Shin separation over hip width after landing.
  double kneeWindowS = 0.300;
  double kneePassRatio = 0.80;
  double kneeZeroRatio = 0.50;

  // Arm swing.
  double armLeadS = 0.5;           // swing search starts this long before takeoff
  double armSyncPassS = 0.100;
  double armSyncZeroS = 0.200;
  double armHeightGapPassM = 0.15;
  double armHeightGapZeroM = 0.30;
  double armBandBelowM = 0.25;     // band is [shoulderY - below, shoulderY + above]
  double armBandAboveM = 0.15;
  double armBandRampM = 0.25;      // score falls to 0 this far outside the band
  double armArcPassM = 0.01;       // total descent tolerated while rising
  double armArcZeroM = 0.05;
  double concentricSearchS = 1.0;

  double filterCutoffHz = 6.0;

  /// Overrides one field; false for unknown names.
  bool set(std::string_view name, double value);
  std::optional<double> get(std::string_view name) const;
  static std::vector<std::string> names();

  friend bool operator==(const TechniqueThresholds&, const TechniqueThresholds&) = default;
};

void to_json(nlohmann::json& j, const TechniqueThresholds& t);
/// Applies every key of `j`; unknown keys throw InvalidArgument.
void from_json(const nlohmann::json& j, TechniqueThresholds& t);

/// 1 at or below `pass`, falling linearly to 0 at `zero`.
double rampScore(double value, double pass, double zero);

}  // namespace jumpcoach
