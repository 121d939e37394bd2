#include "jumpcoach/jump.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "jumpcoach/contact.hpp"
#include "jumpcoach/error.hpp"
#include "jumpcoach/filter.hpp"

namespace jumpcoach {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr std::size_t legIndex(Leg leg) { return leg == Leg::Left ? 0 : 1; }

double clamp01(double x) { return std::clamp(x, 0.0, 1.0); }

struct Parabola {
  double tm = 0.0;   // expansion point
  double a = 0.0;    // value at tm
  double b = 0.0;    // slope at tm

  double operator()(double t) const {
    const double s = t - tm;
    return a + b * s - 0.5 * kGravity * s * s;
  }
  double vertex() const { return a + b * b / (2.0 * kGravity); }
};

/// Least-squares fit of y = a + b s - g s^2 / 2 (curvature fixed).
Parabola fitBallistic(std::span<const double> t, std::span<const double> y) {
  Parabola p;
  const double n = static_cast<double>(t.size());
  double mean = 0.0;
  for (double v : t) mean += v;
  p.tm = mean / n;
  double sz = 0.0, ss = 0.0, ssz = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    const double s = t[i] - p.tm;
    const double z = y[i] + 0.5 * kGravity * s * s;
    sz += z;
    ss += s * s;
    ssz += s * z;
  }
  p.a = sz / n;
  p.b = ss > 0.0 ? ssz / ss : 0.0;
  return p;
}

std::optional<double> nextTouchdown(const ContactTimeline& tl, Leg leg, std::size_t fromIndex) {
  for (const ContactEvent& ev : tl.events) {
    if (ev.index >= fromIndex && ev.leg == leg && ev.touchdown) return ev.t;
  }
  return std::nullopt;
}

/// Body-relative series: `point` y minus the waist's rise over standing.
std::vector<double> bodyRelativeY(std::span<const PoseFrame> frames, TrackerPoint point, double standingWaistY) {
  std::vector<double> out(frames.size());
  for (std::size_t i = 0; i < frames.size(); ++i) {
    out[i] = frames[i][point].y - (frames[i][TrackerPoint::Waist].y - standingWaistY);
  }
  return out;
}

std::vector<double> channelY(std::span<const PoseFrame> frames, TrackerPoint point) {
  std::vector<double> out(frames.size());
  for (std::size_t i = 0; i < frames.size(); ++i) out[i] = frames[i][point].y;
  return out;
}

std::vector<double> smooth(std::span<const PoseFrame> frames, std::vector<double> x, double cutoffHz) {
  if (x.size() < 2) return x;
  const Biquad s = Biquad::butterworthLowPass(cutoffHz, 1.0 / medianInterval(frames));
  return filtfilt(s, x);
}

}  // namespace

std::string_view toString(Criterion c) {
  switch (c) {
    case Criterion::FeetSync: return "feetSync";
    case Criterion::SoftLanding: return "softLanding";
    case Criterion::KneeAlignment: return "kneeAlignment";
    case Criterion::ArmSwing: return "armSwing";
  }
  return "?";
}

std::optional<Criterion> criterionFromString(std::string_view s) {
  for (Criterion c : kAllCriteria) {
    if (toString(c) == s) return c;
  }
  return std::nullopt;
}

double JumpRecord::flightStart() const { return std::max(legTakeoffT[0], legTakeoffT[1]); }

double JumpRecord::flightEnd() const {
  const double a = legLandingT[0], b = legLandingT[1];
  if (std::isnan(a)) return b;
  if (std::isnan(b)) return a;
  return std::min(a, b);
}

std::vector<JumpRecord> detectJumps(std::span<const PoseFrame> stream, const CalibrationProfile& cal,
                                    const TechniqueThresholds& th) {
  std::vector<JumpRecord> out;
  if (stream.empty()) return out;
  const ContactTimeline tl = analyzeContacts(stream, cal);

  std::array<double, 2> lastLiftoff{kNaN, kNaN};
  std::size_t ev = 0;
  bool airborne = false;
  std::size_t flightBegin = 0;
  std::array<double, 2> liftoffs{};

  for (std::size_t i = 0; i < stream.size(); ++i) {
    for (; ev < tl.events.size() && tl.events[ev].index <= i; ++ev) {
      if (!tl.events[ev].touchdown) lastLiftoff[legIndex(tl.events[ev].leg)] = tl.events[ev].t;
    }
    const ContactState& s = tl.states[i];
    const bool both = !s.leftGrounded && !s.rightGrounded;
    if (both && !airborne) {
      airborne = true;
      flightBegin = i;
      liftoffs = lastLiftoff;
      continue;
    }
    if (both || !airborne) continue;
    airborne = false;
    if (std::isnan(liftoffs[0]) || std::isnan(liftoffs[1])) continue;

    JumpRecord r;
    r.legTakeoffT = liftoffs;
    for (Leg leg : {Leg::Left, Leg::Right}) {
      r.legLandingT[legIndex(leg)] = nextTouchdown(tl, leg, i).value_or(kNaN);
    }
    r.takeoffT = std::min(liftoffs[0], liftoffs[1]);
    r.landingT = r.flightEnd();
    r.airtimeS = r.landingT - r.takeoffT;
    if (r.flightEnd() - r.flightStart() < th.minAirborneS) continue;

    double peak = -std::numeric_limits<double>::infinity();
    for (std::size_t k = flightBegin; k < i; ++k) {
      if (stream[k].isValid(TrackerPoint::Waist)) peak = std::max(peak, stream[k][TrackerPoint::Waist].y);
    }
    if (peak - cal.standingWaistY < th.minRiseM) continue;

    const auto window = sliceByTime(stream, r.takeoffT - th.marginS, r.landingT + th.marginS);
    r.samples.assign(window.begin(), window.end());
    out.push_back(std::move(r));
  }
  return out;
}

double jumpHeight(const JumpRecord& record, const CalibrationProfile& cal, const TechniqueThresholds& th) {
  const double from = record.flightStart();
  const double to = record.flightEnd();
  std::vector<double> ft, fy;
  for (const PoseFrame& f : record.samples) {
    if (f.t >= from && f.t <= to && f.isValid(TrackerPoint::Waist)) {
      ft.push_back(f.t);
      fy.push_back(f[TrackerPoint::Waist].y);
    }
  }
  if (ft.size() < 3) throw Error(ErrorCode::MissingWaistData, "fewer than 3 waist samples in flight");
  const Parabola raw = fitBallistic(ft, fy);

  // Outside the flight (and across dropouts) the series continues along the
  // fitted arc, so the filter sees no landing transient at the flight edges.
  std::vector<double> series(record.samples.size());
  for (std::size_t i = 0; i < series.size(); ++i) {
    const PoseFrame& f = record.samples[i];
    const bool use = f.t >= from && f.t <= to && f.isValid(TrackerPoint::Waist);
    series[i] = use ? f[TrackerPoint::Waist].y : raw(f.t);
  }
  const auto filtered = smooth(record.samples, std::move(series), th.filterCutoffHz);

  ft.clear();
  fy.clear();
  for (std::size_t i = 0; i < filtered.size(); ++i) {
    const double t = record.samples[i].t;
    if (t >= from && t <= to) {
      ft.push_back(t);
      fy.push_back(filtered[i]);
    }
  }
  const Parabola fit = fitBallistic(ft, fy);
  return std::max(0.0, fit.vertex() - cal.standingWaistY);
}

CriterionResult evalFeetSync(const JumpRecord& record, const TechniqueThresholds& th) {
  for (double v : {record.legTakeoffT[0], record.legTakeoffT[1], record.legLandingT[0], record.legLandingT[1]}) {
    if (std::isnan(v)) throw Error(ErrorCode::MissingShinData, "contact time missing for one leg");
  }
  const double takeoffGap = std::abs(record.legTakeoffT[0] - record.legTakeoffT[1]);
  const double landingGap = std::abs(record.legLandingT[0] - record.legLandingT[1]);
  const double gap = std::max(takeoffGap, landingGap);
  return {clamp01(1.0 - gap / th.feetSyncZeroS), gap <= th.feetSyncPassS + 1e-12};
}

CriterionResult evalSoftLanding(const JumpRecord& record, const CalibrationProfile& cal,
                                const TechniqueThresholds& th) {
  double d = 0.0;
  bool any = false;
  for (Leg leg : {Leg::Left, Leg::Right}) {
    double start = record.legLandingT[legIndex(leg)];
    if (std::isnan(start)) start = record.landingT;
    double lowest = std::numeric_limits<double>::infinity();
    for (const PoseFrame& f : sliceByTime(record.samples, start, start + th.landingWindowS)) {
      if (f.isValid(shinOf(leg))) lowest = std::min(lowest, f[shinOf(leg)].y);
    }
    if (!std::isfinite(lowest)) continue;
    any = true;
    d = std::max(d, cal.shinY(leg) - lowest);
  }
  if (!any) throw Error(ErrorCode::MissingShinData, "no shin samples after landing");
  return {clamp01(1.0 - d / th.landingZeroM), d <= th.landingPassM + 1e-12};
}

CriterionResult evalKneeAlignment(const JumpRecord& record, const CalibrationProfile& cal,
                                  const TechniqueThresholds& th) {
  double minSep = std::numeric_limits<double>::infinity();
  for (const PoseFrame& f : sliceByTime(record.samples, record.landingT, record.landingT + th.kneeWindowS)) {
    if (!f.isValid(TrackerPoint::LeftShin) || !f.isValid(TrackerPoint::RightShin)) continue;
    minSep = std::min(minSep, std::abs(f[TrackerPoint::RightShin].x - f[TrackerPoint::LeftShin].x));
  }
  if (!std::isfinite(minSep)) throw Error(ErrorCode::MissingShinData, "no shin pairs after landing");
  const double r = minSep / cal.hipWidth;
  return {clamp01((r - th.kneeZeroRatio) / (1.0 - th.kneeZeroRatio)), r >= th.kneePassRatio - 1e-12};
}

CriterionResult evalArmSwing(const JumpRecord& record, const CalibrationProfile& cal, const TechniqueThresholds& th,
                             ArmSwingDetail* detail) {
  const double from = record.takeoffT - th.armLeadS;
  const double to = record.landingT;
  std::size_t validHands = 0;
  for (const PoseFrame& f : sliceByTime(record.samples, from, to)) {
    if (f.isValid(TrackerPoint::LeftHand) && f.isValid(TrackerPoint::RightHand)) ++validHands;
  }
  if (validHands < 3) throw Error(ErrorCode::MissingHandData, "hand samples missing around takeoff");

  constexpr std::array<TrackerPoint, 3> kPoints = {TrackerPoint::LeftHand, TrackerPoint::RightHand,
                                                   TrackerPoint::Waist};
  const PoseStream frames =
      holdDropouts(record.samples, kPoints, std::numeric_limits<double>::infinity()).frames;
  const std::size_t i0 = lowerIndex(frames, from);
  const std::size_t i1 = std::min(lowerIndex(frames, to + 1e-9), frames.size());
  const std::size_t takeoffIdx = std::min(lowerIndex(frames, record.takeoffT), frames.size() - 1);

  const auto waist = smooth(frames, channelY(frames, TrackerPoint::Waist), th.filterCutoffHz);
  std::size_t concentric = takeoffIdx;
  for (std::size_t i = lowerIndex(frames, record.takeoffT - th.concentricSearchS); i <= takeoffIdx; ++i) {
    if (waist[i] < waist[concentric]) concentric = i;
  }

  ArmSwingDetail d;
  std::array<double, 2> peakT{}, peakY{};
  for (Leg side : {Leg::Left, Leg::Right}) {
    const auto h = smooth(frames, bodyRelativeY(frames, handOf(side), cal.standingWaistY), th.filterCutoffHz);
    std::size_t best = i0;
    for (std::size_t i = i0; i < i1; ++i) {
      if (h[i] > h[best]) best = i;
    }
    peakT[legIndex(side)] = frames[best].t;
    peakY[legIndex(side)] = h[best];
    double descent = 0.0;
    for (std::size_t i = concentric + 1; i <= takeoffIdx; ++i) descent += std::max(0.0, h[i - 1] - h[i]);
    d.descentM = std::max(d.descentM, descent);
  }

  d.peakGapS = std::abs(peakT[0] - peakT[1]);
  d.peakHeightGapM = std::abs(peakY[0] - peakY[1]);
  d.syncOk = d.peakGapS <= th.armSyncPassS + 1e-12 && d.peakHeightGapM <= th.armHeightGapPassM + 1e-12;
  const double syncScore = std::min(rampScore(d.peakGapS, th.armSyncPassS, th.armSyncZeroS),
                                    rampScore(d.peakHeightGapM, th.armHeightGapPassM, th.armHeightGapZeroM));

  d.meanPeakM = 0.5 * (peakY[0] + peakY[1]);
  const double lo = cal.shoulderY - th.armBandBelowM;
  const double hi = cal.shoulderY + th.armBandAboveM;
  d.tooHigh = d.meanPeakM > hi;
  d.tooLow = d.meanPeakM < lo;
  d.bandOk = !d.tooHigh && !d.tooLow;
  const double outside = d.tooHigh ? d.meanPeakM - hi : (d.tooLow ? lo - d.meanPeakM : 0.0);
  const double bandScore = rampScore(outside, 0.0, th.armBandRampM);

  d.arcOk = d.descentM <= th.armArcPassM + 1e-12;
  const double arcScore = rampScore(d.descentM, th.armArcPassM, th.armArcZeroM);

  if (detail) *detail = d;
  return {(syncScore + bandScore + arcScore) / 3.0, d.syncOk && d.bandOk && d.arcOk};
}

void evaluateJump(JumpRecord& record, const CalibrationProfile& cal, const TechniqueThresholds& th) {
  record.heightM = jumpHeight(record, cal, th);
  record.result(Criterion::FeetSync) = evalFeetSync(record, th);
  record.result(Criterion::SoftLanding) = evalSoftLanding(record, cal, th);
  record.result(Criterion::KneeAlignment) = evalKneeAlignment(record, cal, th);
  record.result(Criterion::ArmSwing) = evalArmSwing(record, cal, th, &record.arms);
}

std::vector<JumpRecord> analyzeJumps(std::span<const PoseFrame> stream, const CalibrationProfile& cal,
                                     const TechniqueThresholds& th) {
  auto jumps = detectJumps(stream, cal, th);
  for (JumpRecord& r : jumps) evaluateJump(r, cal, th);
  return jumps;
}

PoseStream replayExport(const JumpRecord& record, double cutoffHz) {
  if (record.samples.empty()) return {};
  PoseStream out = holdDropouts(record.samples, kAllTrackers, std::numeric_limits<double>::infinity()).frames;
  out = lowpass(out, cutoffHz);
  const double t0 = out.front().t;
  for (PoseFrame& f : out) f.t -= t0;
  return out;
}

double techniqueScore(const JumpRecord& record) {
  double sum = 0.0;
  for (const auto& c : record.criteria) sum += c.score;
  return sum / static_cast<double>(kCriterionCount);
}

Criterion worstCriterion(const std::array<CriterionResult, kCriterionCount>& criteria) {
  constexpr std::array<Criterion, kCriterionCount> kPriority = {Criterion::KneeAlignment, Criterion::SoftLanding,
                                                                Criterion::ArmSwing, Criterion::FeetSync};
  Criterion worst = kPriority.front();
  for (Criterion c : kPriority) {
    if (criteria[static_cast<std::size_t>(c)].score < criteria[static_cast<std::size_t>(worst)].score) worst = c;
  }
  return worst;
}

int jumpScore(double technique, double heightM) {
  const double h = std::clamp(heightM / 0.5, 0.0, 1.0);
  return static_cast<int>(std::lround(1000.0 * (0.5 * clamp01(technique) + 0.5 * h)));
}

std::string instructionFor(Criterion c, const ArmSwingDetail& arms) {
  switch (c) {
    case Criterion::FeetSync: return "Push off and land with both feet at the same time.";
    case Criterion::SoftLanding: return "Land softly: bend your knees and let your legs absorb the impact.";
    case Criterion::KneeAlignment: return "Keep your knees in line between feet and hips, do not let them cave in.";
    case Criterion::ArmSwing:
      if (arms.tooHigh) return "Stop the arm swing at chest height, your arms went too high.";
      if (arms.tooLow) return "Swing your arms further up, to about chest height.";
      return "Swing both arms together in a forward-upward arc.";
  }
  return {};
}

JumpFeedback makeFeedback(const JumpRecord& current, const JumpRecord* previous) {
  JumpFeedback fb;
  fb.techniqueScore = techniqueScore(current);
  fb.improvementDelta = previous ? fb.techniqueScore - techniqueScore(*previous) : 0.0;
  fb.worst = worstCriterion(current.criteria);
  fb.instruction = instructionFor(fb.worst, current.arms);
  fb.heightM = current.heightM;
  fb.jumpScore = jumpScore(fb.techniqueScore, current.heightM);
  return fb;
}

}  // namespace jumpcoach
