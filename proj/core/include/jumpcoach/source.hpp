#pragma once

#include <optional>
#include <span>
#include <vector>

#include "jumpcoach/beatmap.hpp"
#include "jumpcoach/pose.hpp"
#include "jumpcoach/safety.hpp"

namespace jumpcoach {

/// What the game shows the player for one note.
struct NoteCue {
  LevelKind level = LevelKind::Tap;
  Note note;
  Tier tier = Tier::Easy;
  double dueT = 0.0;
};

/// Frame supplier for a session. Cues let a closed-loop generator react to
/// the game; recorded streams ignore them.
class PoseSource {
 public:
  virtual ~PoseSource() = default;

  /// Next frame in time order; nullopt once exhausted.
  virtual std::optional<PoseFrame> next() = 0;

  virtual void cueNote(const NoteCue&) {}
  virtual void cueRest(double /*fromT*/, double /*toT*/) {}
  virtual void cueJumps(double /*fromT*/, int /*count*/) {}
  virtual void cueStatus(SafetyStatus /*status*/, double /*t*/) {}
};

class RecordedSource : public PoseSource {
 public:
  explicit RecordedSource(std::span<const PoseFrame> frames) : frames_(frames) {}
  std::optional<PoseFrame> next() override;

 private:
  std::span<const PoseFrame> frames_;
  std::size_t pos_ = 0;
};

/// Forwards to another source and keeps every frame handed out.
class RecordingSource : public PoseSource {
 public:
  explicit RecordingSource(PoseSource& inner) : inner_(inner) {}

  std::optional<PoseFrame> next() override;
  void cueNote(const NoteCue& c) override { inner_.cueNote(c); }
  void cueRest(double a, double b) override { inner_.cueRest(a, b); }
  void cueJumps(double t, int n) override { inner_.cueJumps(t, n); }
  void cueStatus(SafetyStatus s, double t) override { inner_.cueStatus(s, t); }

  const PoseStream& frames() const { return frames_; }
  PoseStream take() { return std::move(frames_); }

 private:
  PoseSource& inner_;
  PoseStream frames_;
};

/// Replays `prefix` first, then continues with `rest`.
class PrefixedSource : public PoseSource {
 public:
  PrefixedSource(PoseStream prefix, PoseSource& rest) : prefix_(std::move(prefix)), rest_(rest) {}

  std::optional<PoseFrame> next() override;
  void cueNote(const NoteCue& c) override { rest_.cueNote(c); }
  void cueRest(double a, double b) override { rest_.cueRest(a, b); }
  void cueJumps(double t, int n) override { rest_.cueJumps(t, n); }
  void cueStatus(SafetyStatus s, double t) override { rest_.cueStatus(s, t); }

 private:
  PoseStream prefix_;
  std::size_t pos_ = 0;
  PoseSource& rest_;
};

}  // namespace jumpcoach
