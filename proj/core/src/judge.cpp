#include "jumpcoach/judge.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "jumpcoach/error.hpp"

namespace jumpcoach {

std::string_view toString(Outcome o) { return o == Outcome::Hit ? "Hit" : "Miss"; }

std::string_view toString(Violation v) {
  switch (v) {
    case Violation::WrongFoot: return "WrongFoot";
    case Violation::BothFeetInField: return "BothFeetInField";
    case Violation::PoseNotHeld: return "PoseNotHeld";
    case Violation::BodyContact: return "BodyContact";
    case Violation::NoAction: return "NoAction";
  }
  return "?";
}

std::optional<Violation> violationFromString(std::string_view s) {
  for (Violation v : {Violation::WrongFoot, Violation::BothFeetInField, Violation::PoseNotHeld,
                      Violation::BodyContact, Violation::NoAction}) {
    if (toString(v) == s) return v;
  }
  return std::nullopt;
}

namespace {

constexpr std::array<TrackerPoint, 2> kShins = {TrackerPoint::LeftShin, TrackerPoint::RightShin};

JudgedNote base(const Note& note, double due, Tier tier) {
  JudgedNote j;
  j.note = note;
  j.time = due;
  j.tier = tier;
  return j;
}

JudgedNote miss(JudgedNote j, Violation v) {
  j.outcome = Outcome::Miss;
  j.violation = v;
  return j;
}

JudgedNote hit(JudgedNote j, double contactT) {
  j.outcome = Outcome::Hit;
  j.errorMs = (contactT - j.time) * 1000.0;
  j.violation.reset();
  return j;
}

/// Repairs short dropouts in [from, to] (plus settle context before and
/// `tailS` after, for event refinement) and rejects streams that do not cover
/// the interval.
PoseStream usableSlice(std::span<const PoseFrame> stream, double from, double to, double settleS, double tailS,
                       std::span<const TrackerPoint> points) {
  if (stream.empty() || stream.front().t > from + 1e-9 || stream.back().t < to - 1e-9) {
    throw Error(ErrorCode::StreamGap, "stream does not cover [" + std::to_string(from) + ", " +
                                          std::to_string(to) + "]");
  }
  auto slice = sliceByTime(stream, from - settleS, to + tailS);
  DropoutRepair repaired = holdDropouts(slice, points);
  for (const auto& [a, b] : repaired.unusable) {
    if (b >= from && a <= to) {
      throw Error(ErrorCode::StreamGap, "tracking dropout at t=" + std::to_string(a));
    }
  }
  return std::move(repaired.frames);
}

std::pair<bool, bool> requiredFeet(NoteKind k) {
  switch (k) {
    case NoteKind::LeftFoot: return {true, false};
    case NoteKind::RightFoot: return {false, true};
    default: return {true, true};
  }
}

}  // namespace

JudgedNote judgeTap(std::span<const PoseFrame> stream, const Note& note, double dueTime,
                    const CalibrationProfile& cal, Tier tier, const JudgeConfig& config) {
  const double from = dueTime - config.windowS;
  const double to = dueTime + config.windowS;
  const PoseStream frames = usableSlice(stream, from, to, config.settleS, config.contact.refineSearchS, kShins);
  const auto& g = config.geometry;
  const ContactTimeline contacts = analyzeContacts(frames, cal, tapField(g), config.contact);

  const Leg required = note.kind == NoteKind::RightFoot ? Leg::Right : Leg::Left;
  const FieldRect lane = tapLane(note.lane, g);
  JudgedNote j = base(note, dueTime, tier);

  bool wrongFoot = false;
  for (const ContactEvent& ev : contacts.events) {
    if (!ev.touchdown || ev.t < from || ev.t > to) continue;
    const PoseFrame& f = frames[ev.index];
    if (!lane.contains(f[shinOf(ev.leg)], cal.zoneCenter)) continue;
    if (ev.leg != required) {
      wrongFoot = true;
      continue;
    }
    if (contacts.states[ev.index].inField(otherLeg(required))) return miss(j, Violation::BothFeetInField);
    return hit(j, ev.t);
  }
  return miss(j, wrongFoot ? Violation::WrongFoot : Violation::NoAction);
}

JudgedNote judgeHop(std::span<const PoseFrame> stream, const Note& note, double dueTime,
                    const std::optional<HeldNote>& previous, const CalibrationProfile& cal, Tier tier,
                    const JudgeConfig& config) {
  const double from = dueTime - config.windowS;
  const double to = dueTime + config.windowS;
  const double holdFrom = previous ? previous->time + config.windowS : from;
  const double start = std::min(holdFrom, from);
  const PoseStream frames = usableSlice(stream, start, to, config.settleS, config.contact.refineSearchS, kShins);
  const auto& g = config.geometry;
  const FieldRect field = hopField(g);
  const ContactTimeline contacts = analyzeContacts(frames, cal, field, config.contact);
  JudgedNote j = base(note, dueTime, tier);

  if (previous && holdFrom < from) {
    const auto [holdL, holdR] = requiredFeet(previous->note.kind);
    for (std::size_t i = 0; i < frames.size(); ++i) {
      if (frames[i].t < holdFrom || frames[i].t > from) continue;
      const ContactState& s = contacts.states[i];
      if ((s.leftGrounded && !holdL) || (s.rightGrounded && !holdR)) return miss(j, Violation::PoseNotHeld);
    }
  }

  const auto [needL, needR] = requiredFeet(note.kind);
  const double laneCenter = hopLaneCenter(note.lane, g);
  const double halfWidth = 0.5 * g.hopLaneWidth;
  bool anyTouchdown = false;
  bool wrongSet = false;
  for (const ContactEvent& ev : contacts.events) {
    if (!ev.touchdown || ev.t < from || ev.t > to) continue;
    anyTouchdown = true;
    const ContactState& s = contacts.states[ev.index];
    if (s.leftGrounded != needL || s.rightGrounded != needR) {
      wrongSet = true;
      continue;
    }
    const PoseFrame& f = frames[ev.index];
    const Vec3& l = f[TrackerPoint::LeftShin];
    const Vec3& r = f[TrackerPoint::RightShin];
    double lateral;
    if (needL && needR) {
      lateral = 0.5 * (lateralOf(l, cal.zoneCenter) + lateralOf(r, cal.zoneCenter));
    } else {
      lateral = lateralOf(needL ? l : r, cal.zoneCenter);
    }
    const bool onLane = std::abs(lateral - laneCenter) <= halfWidth;
    const bool inField = (!needL || field.contains(l, cal.zoneCenter)) && (!needR || field.contains(r, cal.zoneCenter));
    if (onLane && inField) return hit(j, ev.t);
  }
  if (!anyTouchdown) return miss(j, Violation::NoAction);
  return miss(j, wrongSet ? Violation::WrongFoot : Violation::NoAction);
}

JudgedNote judgeObstacle(std::span<const PoseFrame> stream, const Note& note, double dueTime,
                         const CalibrationProfile& cal, Tier tier, double halfCrossingS, const JudgeConfig& config) {
  const double from = dueTime - halfCrossingS;
  const double to = dueTime + halfCrossingS;
  const PoseStream frames = usableSlice(stream, from, to, 0.0, 0.0, kAllTrackers);
  JudgedNote j = base(note, dueTime, tier);
  const double r = config.geometry.bodyRadius;
  for (const PoseFrame& f : frames) {
    if (f.t < from || f.t > to) continue;
    const Aabb box = obstacleVolume(note, tier, cal, dueTime, f.t, config.geometry);
    for (const Capsule& c : bodyCapsules(f, cal, r)) {
      if (intersects(c, box)) return miss(j, Violation::BodyContact);
    }
  }
  return hit(j, dueTime);
}

JudgedNote suspendedNote(const Note& note, double dueTime, Tier tier) {
  JudgedNote j = miss(base(note, dueTime, tier), Violation::NoAction);
  j.suspended = true;
  return j;
}

LevelScore levelScore(std::span<const JudgedNote> judged) {
  LevelScore s;
  s.total = static_cast<int>(judged.size());
  for (const auto& j : judged) {
    if (j.outcome != Outcome::Hit) continue;
    ++s.hits;
    s.score += 100.0 * (1.0 + 0.25 * index(j.tier));
  }
  s.hitRatio = s.total == 0 ? 1.0 : static_cast<double>(s.hits) / s.total;
  return s;
}

}  // namespace jumpcoach
