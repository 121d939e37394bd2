#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "jumpcoach/calibration.hpp"
#include "jumpcoach/pose.hpp"
#include "jumpcoach/technique.hpp"

namespace jumpcoach {

inline constexpr double kGravity = 9.81;

enum class Criterion { FeetSync = 0, SoftLanding, KneeAlignment, ArmSwing };
inline constexpr std::size_t kCriterionCount = 4;
inline constexpr std::array<Criterion, kCriterionCount> kAllCriteria = {
    Criterion::FeetSync, Criterion::SoftLanding, Criterion::KneeAlignment, Criterion::ArmSwing};

std::string_view toString(Criterion c);
std::optional<Criterion> criterionFromString(std::string_view s);

struct CriterionResult {
  double score = 1.0;
  bool pass = true;

  friend bool operator==(const CriterionResult&, const CriterionResult&) = default;
};

struct ArmSwingDetail {
  bool syncOk = true;
  bool bandOk = true;
  bool arcOk = true;
  bool tooHigh = false;
  bool tooLow = false;
  double peakGapS = 0.0;
  double peakHeightGapM = 0.0;
  double meanPeakM = 0.0;     // body-relative, comparable to shoulderY
  double descentM = 0.0;      // hand drop while the body extends

  friend bool operator==(const ArmSwingDetail&, const ArmSwingDetail&) = default;
};

struct JumpRecord {
  double takeoffT = 0.0;      // first foot leaves
  double landingT = 0.0;      // first foot back down
  double airtimeS = 0.0;
  double heightM = 0.0;
  std::array<double, 2> legTakeoffT{};   // indexed by Leg
  std::array<double, 2> legLandingT{};
  std::array<CriterionResult, kCriterionCount> criteria{};
  ArmSwingDetail arms;
  /// Raw frames over [takeoffT - margin, landingT + margin], clipped to the stream.
  PoseStream samples;

  const CriterionResult& result(Criterion c) const { return criteria[static_cast<std::size_t>(c)]; }
  CriterionResult& result(Criterion c) { return criteria[static_cast<std::size_t>(c)]; }
  /// Both feet off the ground: [latest liftoff, earliest touchdown].
  double flightStart() const;
  double flightEnd() const;

  friend bool operator==(const JumpRecord&, const JumpRecord&) = default;
};

/// Segments jumps: both feet airborne for at least `minAirborneS` while the
/// waist rises at least `minRiseM` above standing. Height and criteria are
/// left at their defaults; see analyzeJumps.
std::vector<JumpRecord> detectJumps(std::span<const PoseFrame> stream, const CalibrationProfile& cal,
                                    const TechniqueThresholds& th = {});

/// Peak waist rise over standing, from the low-passed flight samples. The
/// flight is treated as ballistic: a parabola of fixed curvature -g/2 is fitted
/// to the filtered samples and its vertex taken as the peak.
double jumpHeight(const JumpRecord& record, const CalibrationProfile& cal, const TechniqueThresholds& th = {});

CriterionResult evalFeetSync(const JumpRecord& record, const TechniqueThresholds& th = {});
CriterionResult evalSoftLanding(const JumpRecord& record, const CalibrationProfile& cal,
                                const TechniqueThresholds& th = {});
CriterionResult evalKneeAlignment(const JumpRecord& record, const CalibrationProfile& cal,
                                  const TechniqueThresholds& th = {});
CriterionResult evalArmSwing(const JumpRecord& record, const CalibrationProfile& cal,
                             const TechniqueThresholds& th = {}, ArmSwingDetail* detail = nullptr);

/// Fills height and all four criteria.
void evaluateJump(JumpRecord& record, const CalibrationProfile& cal, const TechniqueThresholds& th = {});

/// detectJumps followed by evaluateJump on each record.
std::vector<JumpRecord> analyzeJumps(std::span<const PoseFrame> stream, const CalibrationProfile& cal,
                                     const TechniqueThresholds& th = {});

/// Low-passed record samples, time re-based to the first sample so the
/// replay loops from 0.
PoseStream replayExport(const JumpRecord& record, double cutoffHz = 6.0);

struct JumpFeedback {
  Criterion worst = Criterion::KneeAlignment;
  std::string instruction;
  double techniqueScore = 0.0;
  double improvementDelta = 0.0;
  int jumpScore = 0;
  double heightM = 0.0;

  friend bool operator==(const JumpFeedback&, const JumpFeedback&) = default;
};

double techniqueScore(const JumpRecord& record);
/// Lowest score; ties go to knee, then landing, then arms, then feet.
Criterion worstCriterion(const std::array<CriterionResult, kCriterionCount>& criteria);
int jumpScore(double technique, double heightM);
std::string instructionFor(Criterion c, const ArmSwingDetail& arms = {});
JumpFeedback makeFeedback(const JumpRecord& current, const JumpRecord* previous = nullptr);

}  // namespace jumpcoach
