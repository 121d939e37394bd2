#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string_view>
#include <vector>

#include "jumpcoach/beatmap.hpp"
#include "jumpcoach/playfield.hpp"
#include "jumpcoach/pose.hpp"
#include "jumpcoach/sim/track.hpp"
#include "jumpcoach/source.hpp"

namespace jumpcoach {

/// Technique flaws the synthetic player can be told to make. Units of `value`:
/// StaggeredFeet ms, HardLanding mm, KneeCollapse separation ratio,
/// ArmOverswing m, ArmAsync ms.
enum class FlawKind { StaggeredFeet, HardLanding, KneeCollapse, ArmOverswing, ArmAsync };

std::string_view toString(FlawKind k);
std::optional<FlawKind> flawKindFromString(std::string_view s);

struct Flaw {
  FlawKind kind = FlawKind::StaggeredFeet;
  double value = 0.0;

  friend bool operator==(const Flaw&, const Flaw&) = default;
};

struct PlayerModel {
  double heightM = 1.80;
  /// Per-note success probability at Medium. 1.0 or more means no mistakes on any tier.
  double baseSkill = 1.0;
  double tierSkillDelta = 0.15;
  double timingJitterMs = 15.0;
  double noiseSigmaM = 0.002;
  double driftRatePerAction = 0.0;   // m forward per executed action
  double jumpAirtimeS = 0.55;
  std::vector<Flaw> flaws;

  double successProbability(Tier tier) const;
  std::optional<double> flaw(FlawKind k) const;
  /// Throws InvalidArgument for out-of-range fields.
  void validate() const;

  friend bool operator==(const PlayerModel&, const PlayerModel&) = default;
};

struct BallisticJumpSpec {
  double airtimeS = 0.55;
  double countermovementDepthM = 0.30;
  double landingDepthM = 0.12;
  bool armSwing = true;

  /// g * t^2 / 8.
  double apexM() const;
};

/// Anthropometry of the synthetic player, all derived from its height. The
/// floor is at y = 0 and the zone center at the origin.
struct SimBody {
  double height = 1.80;
  double waistY = 0.99;
  double shinY = 0.35;
  double hipWidth = 0.252;
  double shoulderY = 0.0;
  double handRest = 0.0;      // hand height relative to the waist
  double handLateral = 0.0;

  static SimBody forHeight(double heightM);
};

/// Closed-loop synthetic player. It emits 90 Hz frames and reacts to the
/// game's cues: each cued note is either executed (Bernoulli per note, by the
/// tier's success probability) or botched in a level-specific way.
class SimPlayer : public PoseSource {
 public:
  SimPlayer(const PlayerModel& model, std::uint64_t seed, const PlayfieldGeometry& geometry = {});

  std::optional<PoseFrame> next() override;
  void cueNote(const NoteCue& cue) override;
  void cueRest(double fromT, double toT) override;
  void cueJumps(double fromT, int count) override;
  void cueStatus(SafetyStatus status, double t) override;

  /// Schedules one jump taking off at `takeoffT`; model flaws apply when `withFlaws`.
  void scheduleJump(double takeoffT, const BallisticJumpSpec& spec, bool withFlaws);

  const SimBody& body() const { return body_; }
  double time() const;

  static constexpr double kJumpSpacingS = 3.5;
  static constexpr double kJumpLeadS = 2.0;

 private:
  void tap(const NoteCue& cue, double tb, bool success);
  void hop(const NoteCue& cue, double tb, bool success);
  void obstacle(const NoteCue& cue, double tb, bool success);
  void drift(double from, double duration);
  void recenter(double t);

  PlayerModel model_;
  PlayfieldGeometry geometry_;
  SimBody body_;
  std::mt19937_64 noiseRng_;
  std::mt19937_64 actionRng_;
  std::uint64_t frame_ = 0;

  sim::Track rootX_, rootZ_, waistY_;
  std::array<sim::Track, 2> shinDx_, shinDz_, shinY_;
  std::array<sim::Track, 2> handY_, handZ_;
  std::array<bool, 2> raised_{false, false};
};

/// Standing still for `durationS` (a calibration window).
PoseStream generateStanding(const PlayerModel& model, std::uint64_t seed, double durationS);

/// A 3 s standing window, then one jump per spec every kJumpSpacingS, then
/// 1.5 s of standing. Throws InvalidAirtime unless every airtime is in (0.1, 1.0).
PoseStream generateJumps(std::span<const BallisticJumpSpec> specs, const PlayerModel& model, std::uint64_t seed);
PoseStream generateJump(const BallisticJumpSpec& spec, const PlayerModel& model, std::uint64_t seed);

/// Takeoff time of the k-th jump in generateJumps output.
double generatedTakeoffT(std::size_t k);

}  // namespace jumpcoach
