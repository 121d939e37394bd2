#include "jumpcoach/contact.hpp"

#include <algorithm>

namespace jumpcoach {

bool FieldRect::contains(const Vec3& p, const Vec2& center) const {
  const double lat = lateralOf(p, center);
  const double fwd = forwardOf(p, center);
  return lat >= lateralMin && lat <= lateralMax && fwd >= forwardMin && fwd <= forwardMax;
}

namespace {

bool nextGrounded(double y, double base, const ContactConfig& cfg, std::optional<bool> previous) {
  const double touch = base + cfg.groundBandM;
  if (!previous) return y < touch;
  if (*previous) return y < touch + cfg.hysteresisM;
  return y < touch;
}

double refineTouchdown(std::span<const PoseFrame> frames, std::size_t i, TrackerPoint shin, double level,
                       double abortAbove, double maxS) {
  const double t0 = frames[i].t;
  for (std::size_t j = i; j < frames.size() && frames[j].t - t0 <= maxS; ++j) {
    const double y = frames[j][shin].y;
    if (y >= abortAbove) break;
    if (y > level) continue;
    if (j == 0) return frames[j].t;
    const double yp = frames[j - 1][shin].y;
    if (yp <= level) return frames[j].t;
    const double a = (yp - level) / (yp - y);
    return frames[j - 1].t + a * (frames[j].t - frames[j - 1].t);
  }
  return t0;
}

double refineLiftoff(std::span<const PoseFrame> frames, std::size_t i, TrackerPoint shin, double level,
                     double abortAbove, double maxS) {
  const double t0 = frames[i].t;
  for (std::size_t k = i; k-- > 0;) {
    if (t0 - frames[k].t > maxS) break;
    const double y = frames[k][shin].y;
    if (y >= abortAbove) break;
    if (y > level) continue;
    const double yn = frames[k + 1][shin].y;
    if (yn <= level) return frames[k + 1].t;
    const double a = (level - y) / (yn - y);
    return frames[k].t + a * (frames[k + 1].t - frames[k].t);
  }
  return t0;
}

}  // namespace

ContactState contactState(const PoseFrame& frame, const CalibrationProfile& cal,
                          const std::optional<ContactState>& previous, const FieldRect& field,
                          const ContactConfig& config) {
  ContactState s = previous.value_or(ContactState{});
  for (Leg leg : {Leg::Left, Leg::Right}) {
    const TrackerPoint shin = shinOf(leg);
    const std::size_t li = leg == Leg::Left ? 0 : 1;
    if (!frame.isValid(shin) && previous) continue;
    std::optional<bool> prev;
    if (previous) prev = previous->grounded(leg);
    const bool g = nextGrounded(frame[shin].y, cal.shinY(leg), config, prev);
    (leg == Leg::Left ? s.leftGrounded : s.rightGrounded) = g;
    s.inPlayField[li] = field.contains(frame[shin], cal.zoneCenter);
  }
  return s;
}

ContactTimeline analyzeContacts(std::span<const PoseFrame> frames, const CalibrationProfile& cal,
                                const FieldRect& field, const ContactConfig& config,
                                const std::optional<ContactState>& initial) {
  ContactTimeline out;
  out.states.reserve(frames.size());
  std::optional<ContactState> prev = initial;
  for (std::size_t i = 0; i < frames.size(); ++i) {
    const ContactState s = contactState(frames[i], cal, prev, field, config);
    if (prev) {
      for (Leg leg : {Leg::Left, Leg::Right}) {
        if (s.grounded(leg) == prev->grounded(leg)) continue;
        const TrackerPoint shin = shinOf(leg);
        const double level = cal.shinY(leg) + config.touchLevelM;
        const double airborne = cal.shinY(leg) + config.groundBandM + config.hysteresisM;
        ContactEvent ev;
        ev.leg = leg;
        ev.touchdown = s.grounded(leg);
        ev.index = i;
        ev.t = ev.touchdown ? refineTouchdown(frames, i, shin, level, airborne, config.refineSearchS)
                            : refineLiftoff(frames, i, shin, level, airborne, config.refineSearchS);
        out.events.push_back(ev);
      }
    }
    out.states.push_back(s);
    prev = s;
  }
  return out;
}

}  // namespace jumpcoach
