#include "jumpcoach/sim/player.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "jumpcoach/calibration.hpp"
#include "jumpcoach/error.hpp"
#include "jumpcoach/jump.hpp"

namespace jumpcoach {

std::string_view toString(FlawKind k) {
  switch (k) {
    case FlawKind::StaggeredFeet: return "StaggeredFeet";
    case FlawKind::HardLanding: return "HardLanding";
    case FlawKind::KneeCollapse: return "KneeCollapse";
    case FlawKind::ArmOverswing: return "ArmOverswing";
    case FlawKind::ArmAsync: return "ArmAsync";
  }
  return "?";
}

std::optional<FlawKind> flawKindFromString(std::string_view s) {
  for (FlawKind k : {FlawKind::StaggeredFeet, FlawKind::HardLanding, FlawKind::KneeCollapse, FlawKind::ArmOverswing,
                     FlawKind::ArmAsync}) {
    if (toString(k) == s) return k;
  }
  return std::nullopt;
}

double PlayerModel::successProbability(Tier tier) const {
  if (baseSkill >= 1.0) return 1.0;
  return std::clamp(baseSkill + tierSkillDelta * (1 - index(tier)), 0.0, 1.0);
}

std::optional<double> PlayerModel::flaw(FlawKind k) const {
  for (const Flaw& f : flaws) {
    if (f.kind == k) return f.value;
  }
  return std::nullopt;
}

void PlayerModel::validate() const {
  auto bad = [](const std::string& m) { throw Error(ErrorCode::InvalidArgument, m); };
  if (!(heightM >= 1.2 && heightM <= 2.3)) bad("player height must be within [1.2, 2.3] m");
  if (!(baseSkill >= 0.0 && baseSkill <= 1.0)) bad("skill must be within [0, 1]");
  if (!(tierSkillDelta >= 0.0 && tierSkillDelta <= 0.5)) bad("tier skill delta must be within [0, 0.5]");
  if (!(timingJitterMs >= 0.0 && timingJitterMs <= 100.0)) bad("timing jitter must be within [0, 100] ms");
  if (!(noiseSigmaM >= 0.0 && noiseSigmaM <= 0.05)) bad("noise sigma must be within [0, 0.05] m");
  if (!(driftRatePerAction >= 0.0 && driftRatePerAction <= 0.2)) bad("drift rate must be within [0, 0.2] m");
  if (!(jumpAirtimeS > 0.1 && jumpAirtimeS < 1.0)) bad("jump airtime must be within (0.1, 1.0) s");
  for (const Flaw& f : flaws) {
    const bool ok = [&] {
      switch (f.kind) {
        case FlawKind::StaggeredFeet: return f.value > 0.0 && f.value < 300.0;
        case FlawKind::HardLanding: return f.value > 0.0 && f.value < 150.0;
        case FlawKind::KneeCollapse: return f.value > 0.0 && f.value < 1.0;
        case FlawKind::ArmOverswing: return f.value > 0.0 && f.value < 1.0;
        case FlawKind::ArmAsync: return f.value > 0.0 && f.value < 400.0;
      }
      return false;
    }();
    if (!ok) bad("flaw " + std::string(toString(f.kind)) + " value out of range");
  }
}

double BallisticJumpSpec::apexM() const { return kGravity * airtimeS * airtimeS / 8.0; }

SimBody SimBody::forHeight(double h) {
  SimBody b;
  b.height = h;
  b.waistY = 0.55 * h;
  b.shinY = kShinMountOffsetM;
  b.hipWidth = 0.14 * h;
  b.shoulderY = shoulderHeightFor(h, b.waistY);
  b.handRest = -0.10 * h;
  b.handLateral = 0.5 * b.hipWidth + 0.12;
  return b;
}

namespace {

constexpr std::size_t L = 0;
constexpr std::size_t R = 1;
constexpr double kTuckM = 0.08;
constexpr double kFlightTuckM = 0.05;
constexpr double kRaisedFootM = 0.12;
constexpr double kRecenterS = 1.5;
constexpr double kMissOffsetM = 0.25;

double side(std::size_t leg) { return leg == L ? -1.0 : 1.0; }

}  // namespace

SimPlayer::SimPlayer(const PlayerModel& model, std::uint64_t seed, const PlayfieldGeometry& geometry)
    : model_(model),
      geometry_(geometry),
      body_(SimBody::forHeight(model.heightM)),
      noiseRng_(seed),
      actionRng_(seed ^ 0x9e3779b97f4a7c15ULL),
      waistY_(body_.waistY) {
  model_.validate();
  for (std::size_t leg : {L, R}) {
    shinDx_[leg] = sim::Track(side(leg) * 0.5 * body_.hipWidth);
    shinY_[leg] = sim::Track(body_.shinY);
    handY_[leg] = sim::Track(body_.handRest);
  }
}

double SimPlayer::time() const { return static_cast<double>(frame_) / kNominalRateHz; }

std::optional<PoseFrame> SimPlayer::next() {
  const double t = time();
  ++frame_;
  PoseFrame f;
  f.t = t;
  const double rx = rootX_.sample(t);
  const double rz = rootZ_.sample(t);
  const double wy = waistY_.sample(t);
  f[TrackerPoint::Waist] = {rx, wy, rz};
  f[TrackerPoint::Head] = {rx, wy + (body_.height - body_.waistY), rz};
  for (std::size_t leg : {L, R}) {
    const Leg l = leg == L ? Leg::Left : Leg::Right;
    f[shinOf(l)] = {rx + shinDx_[leg].sample(t), shinY_[leg].sample(t), rz + shinDz_[leg].sample(t)};
    f[handOf(l)] = {rx + side(leg) * body_.handLateral, wy + handY_[leg].sample(t), rz + handZ_[leg].sample(t)};
  }
  if (model_.noiseSigmaM > 0.0) {
    std::normal_distribution<double> noise(0.0, model_.noiseSigmaM);
    for (Vec3& p : f.points) {
      p.x += noise(noiseRng_);
      p.y += noise(noiseRng_);
      p.z += noise(noiseRng_);
    }
  }
  // Anything scheduled from now on starts after this frame.
  const double open = time();
  for (sim::Track* tr : {&rootX_, &rootZ_, &waistY_}) tr->setOpenFrom(open);
  for (std::size_t leg : {L, R}) {
    for (sim::Track* tr : {&shinDx_[leg], &shinDz_[leg], &shinY_[leg], &handY_[leg], &handZ_[leg]}) {
      tr->setOpenFrom(open);
    }
  }
  return f;
}

void SimPlayer::cueNote(const NoteCue& cue) {
  double jitter = 0.0;
  if (model_.timingJitterMs > 0.0) {
    std::normal_distribution<double> j(0.0, model_.timingJitterMs / 1000.0);
    jitter = j(actionRng_);
  }
  std::bernoulli_distribution success(model_.successProbability(cue.tier));
  const bool ok = success(actionRng_);
  switch (cue.level) {
    case LevelKind::Tap: tap(cue, cue.dueT + jitter, ok); break;
    case LevelKind::Hop: hop(cue, cue.dueT + jitter, ok); break;
    case LevelKind::Obstacle: {
      // The obstacle reaches the body earlier when the player stands forward of the zone center.
      const double crossing = cue.dueT + rootZ_.at(cue.dueT) / geometry_.obstacleSpeed;
      obstacle(cue, crossing + jitter, ok);
      break;
    }
  }
}

void SimPlayer::drift(double from, double duration) {
  if (model_.driftRatePerAction <= 0.0) return;
  rootZ_.append(from, duration, rootZ_.finalValue() - model_.driftRatePerAction);
}

void SimPlayer::tap(const NoteCue& cue, double tb, bool success) {
  if (!success) return;
  const std::size_t leg = cue.note.kind == NoteKind::RightFoot ? R : L;
  const double dx = tapLaneCenter(cue.note.lane, geometry_) - rootX_.finalValue();
  const double dz = -tapTargetForward(geometry_) - rootZ_.finalValue();
  const double s = body_.shinY;

  shinY_[leg].append(tb - 0.2, 0.1, s + 0.10);
  shinY_[leg].append(tb - 0.1, 0.1, s, 0.0, -2.0);
  shinY_[leg].append(tb + 0.08, 0.1, s + 0.08);
  shinY_[leg].append(tb + 0.18, 0.1, s);
  shinDx_[leg].append(tb - 0.2, 0.2, dx);
  shinDz_[leg].append(tb - 0.2, 0.2, dz);
  shinDx_[leg].append(tb + 0.08, 0.2, side(leg) * 0.5 * body_.hipWidth);
  shinDz_[leg].append(tb + 0.08, 0.2, 0.0);
  drift(tb - 0.2, 0.4);
}

void SimPlayer::hop(const NoteCue& cue, double tb, bool success) {
  const bool single = isSingleLeg(cue.note.kind);
  const std::array<bool, 2> need{cue.note.kind != NoteKind::RightFoot, cue.note.kind != NoteKind::LeftFoot};
  double laneX = hopLaneCenter(cue.note.lane, geometry_);
  // A botched hop lands one lane-width beside the target, toward the middle.
  if (!success) laneX += cue.note.lane >= kHopLanes / 2 ? -kMissOffsetM : kMissOffsetM;

  const double air = single ? 0.20 : 0.28;
  const double t0 = tb - air;
  const double v = 0.5 * kGravity * air;
  const double u = 4.0 * (kGravity * air * air / 8.0 + kTuckM) / air;  // feet tuck above the waist arc
  const double s = body_.shinY;

  waistY_.append(t0, air, body_.waistY, v, -v);
  rootX_.append(t0, air, laneX);
  for (std::size_t leg : {L, R}) {
    const double dx = single ? (need[leg] ? 0.0 : side(leg) * body_.hipWidth) : side(leg) * 0.5 * body_.hipWidth;
    shinDx_[leg].append(t0, air, dx);
    if (need[leg]) {
      if (raised_[leg]) shinY_[leg].append(t0, air, s, 0.0, -2.0);
      else shinY_[leg].append(t0, air, s, u, -u);
    } else if (!raised_[leg]) {
      shinY_[leg].append(t0, air, s + kRaisedFootM, u, 0.0);
    }
    raised_[leg] = !need[leg];
  }
  drift(t0, air);
}

void SimPlayer::obstacle(const NoteCue& cue, double tc, bool success) {
  if (!success) return;
  const double h = body_.height;
  const double frac = obstacleFraction(cue.note, cue.tier);
  const double r = geometry_.bodyRadius;
  switch (cue.note.kind) {
    case NoteKind::Hurdle: {
      // Clear the bar with margin over the whole time the feet overlap it.
      const double overlap = (0.5 * geometry_.obstacleThickness + r) / geometry_.obstacleSpeed + 0.04;
      const double apex = frac * h + 0.5 * kGravity * overlap * overlap + 0.03;
      BallisticJumpSpec spec;
      spec.airtimeS = std::sqrt(8.0 * apex / kGravity);
      spec.countermovementDepthM = 0.10;
      spec.landingDepthM = 0.05;
      spec.armSwing = false;
      scheduleJump(tc - 0.5 * spec.airtimeS, spec, false);
      break;
    }
    case NoteKind::CeilingBar: {
      const double depth = h + r + 0.05 - frac * h;
      waistY_.append(tc - 0.55, 0.4, body_.waistY - depth);
      waistY_.append(tc + 0.15, 0.4, body_.waistY);
      break;
    }
    case NoteKind::WallLeft:
    case NoteKind::WallRight: {
      const double x0 = rootX_.finalValue();
      const double clear = 0.5 * body_.hipWidth + r + 0.05 - frac * h;
      const double target = cue.note.kind == NoteKind::WallLeft ? std::max(x0, clear) : std::min(x0, -clear);
      rootX_.append(tc - 0.45, 0.3, target);
      rootX_.append(tc + 0.15, 0.3, x0);
      break;
    }
    default: break;
  }
  drift(tc - 0.3, 0.6);
}

void SimPlayer::scheduleJump(double t0, const BallisticJumpSpec& spec, bool withFlaws) {
  const double air = spec.airtimeS;
  const double v = 0.5 * kGravity * air;
  const double depth = spec.countermovementDepthM;
  const double tp = std::clamp(3.0 * depth / v, 0.2, 0.45);
  const double cm = spec.armSwing ? 0.4 : 0.25;
  const double cmStart = t0 - tp - cm;
  const double t1 = t0 + air;
  const double w = body_.waistY;
  const double s = body_.shinY;

  auto flaw = [&](FlawKind k) { return withFlaws ? model_.flaw(k) : std::nullopt; };

  waistY_.append(cmStart, cm, w - depth);
  waistY_.append(t0 - tp, tp, w, 0.0, v);
  waistY_.append(t0, air, w, v, -v);
  waistY_.append(t1, 0.25, w - spec.landingDepthM, -v, 0.0);
  waistY_.append(t1 + 0.25, 0.5, w);

  const double stagger = flaw(FlawKind::StaggeredFeet).value_or(0.0) / 1000.0;
  const double impact = flaw(FlawKind::HardLanding).value_or(0.0) / 1000.0;
  for (std::size_t leg : {L, R}) {
    const double lag = leg == L ? stagger : 0.0;
    // Shins rise a little above the waist arc: the knees tuck in flight.
    const double u = 4.0 * (spec.apexM() + kFlightTuckM) / air;
    shinY_[leg].append(t0 + lag, air, s, u, -u);
    if (impact > 0.0) {
      shinY_[leg].append(t1 + lag, 0.04, s - impact);
      shinY_[leg].append(t1 + lag + 0.04, 0.04, s);
    }
    if (auto ratio = flaw(FlawKind::KneeCollapse)) {
      shinDx_[leg].append(t1, 0.1, side(leg) * 0.5 * *ratio * body_.hipWidth);
      shinDx_[leg].append(t1 + 0.1, 0.1, side(leg) * 0.5 * body_.hipWidth);
    }
  }

  if (spec.armSwing) {
    const double peak = body_.shoulderY - w + flaw(FlawKind::ArmOverswing).value_or(0.0);
    const double async = flaw(FlawKind::ArmAsync).value_or(0.0) / 1000.0;
    const double rest = body_.handRest;
    for (std::size_t hand : {L, R}) {
      const double lag = hand == L ? async : 0.0;
      handY_[hand].append(cmStart + lag, cm - 0.15, rest - 0.05);
      handZ_[hand].append(cmStart + lag, cm - 0.15, 0.25);
      handY_[hand].append(t0 - tp - 0.1 + lag, tp + 0.1, peak);
      handZ_[hand].append(t0 - tp - 0.1 + lag, tp + 0.1, -0.35);
      handY_[hand].append(t0 + lag, air, rest + 0.25);
      handY_[hand].append(t1 + lag, 0.5, rest);
      handZ_[hand].append(t1 + lag, 0.5, 0.0);
    }
  }
  drift(t0, air);
}

void SimPlayer::recenter(double t) {
  rootX_.append(t, kRecenterS, 0.0);
  rootZ_.append(t, kRecenterS, 0.0);
}

void SimPlayer::cueRest(double fromT, double /*toT*/) {
  for (std::size_t leg : {L, R}) {
    if (raised_[leg]) shinY_[leg].append(fromT, 0.3, body_.shinY);
    shinDx_[leg].append(fromT, 0.3, side(leg) * 0.5 * body_.hipWidth);
    raised_[leg] = false;
  }
  recenter(fromT);
}

void SimPlayer::cueJumps(double fromT, int count) {
  BallisticJumpSpec spec;
  spec.airtimeS = model_.jumpAirtimeS;
  for (int k = 0; k < count; ++k) scheduleJump(fromT + kJumpLeadS + kJumpSpacingS * k, spec, true);
}

void SimPlayer::cueStatus(SafetyStatus status, double t) {
  if (status == SafetyStatus::Paused) recenter(t);
}

namespace {

constexpr double kStandS = 3.0;
constexpr double kFirstTakeoffS = 4.5;
constexpr double kTailS = 1.5;

PoseStream runUntil(SimPlayer& p, double endT) {
  PoseStream out;
  out.reserve(static_cast<std::size_t>(endT * kNominalRateHz) + 2);
  while (p.time() <= endT + 1e-9) out.push_back(*p.next());
  return out;
}

}  // namespace

PoseStream generateStanding(const PlayerModel& model, std::uint64_t seed, double durationS) {
  SimPlayer p(model, seed);
  return runUntil(p, durationS);
}

double generatedTakeoffT(std::size_t k) { return kFirstTakeoffS + SimPlayer::kJumpSpacingS * static_cast<double>(k); }

PoseStream generateJumps(std::span<const BallisticJumpSpec> specs, const PlayerModel& model, std::uint64_t seed) {
  for (const auto& s : specs) {
    if (!(s.airtimeS > 0.1 && s.airtimeS < 1.0)) {
      throw Error(ErrorCode::InvalidAirtime, "airtime " + std::to_string(s.airtimeS) + " s outside (0.1, 1.0)");
    }
  }
  SimPlayer p(model, seed);
  double end = kStandS;
  for (std::size_t k = 0; k < specs.size(); ++k) {
    const double t0 = generatedTakeoffT(k);
    p.scheduleJump(t0, specs[k], true);
    end = t0 + specs[k].airtimeS + kTailS;
  }
  return runUntil(p, end);
}

PoseStream generateJump(const BallisticJumpSpec& spec, const PlayerModel& model, std::uint64_t seed) {
  return generateJumps(std::span(&spec, 1), model, seed);
}

}  // namespace jumpcoach
