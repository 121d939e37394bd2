#include "jumpcoach/difficulty.hpp"

#include <algorithm>

#include "jumpcoach/error.hpp"

namespace jumpcoach {

DifficultyController::DifficultyController(double startT, Tier start) : tier_(start) {
  log_.push_back({start, startT, startT});
}

Tier DifficultyController::update(Outcome outcome, double now, bool mayTransition) {
  if (finished_) throw Error(ErrorCode::InvalidArgument, "difficulty update after level end");
  window_.push_back(outcome);
  if (window_.size() > kWindow) window_.pop_front();
  if (!mayTransition || window_.size() < kWindow) return tier_;

  const auto hits = std::count(window_.begin(), window_.end(), Outcome::Hit);
  const double precision = static_cast<double>(hits) / static_cast<double>(kWindow);
  int next = index(tier_);
  if (precision >= kUpPrecision && next < kTierCount - 1) {
    ++next;
  } else if (1.0 - precision > kDownMissRate && next > 0) {
    --next;
  }
  if (next != index(tier_)) {
    log_.back().exitT = now;
    tier_ = tierFromIndex(next);
    log_.push_back({tier_, now, now});
    window_.clear();
  }
  return tier_;
}

void DifficultyController::finish(double endT) {
  if (finished_) return;
  log_.back().exitT = std::max(endT, log_.back().enterT);
  finished_ = true;
}

DwellFractions DifficultyController::dwellFractions() const {
  if (!finished_) throw Error(ErrorCode::LevelNotFinished, "level still running");
  return jumpcoach::dwellFractions(log_);
}

DwellFractions dwellFractions(const std::vector<DwellInterval>& log) {
  DwellFractions f{0.0, 0.0, 0.0};
  double total = 0.0;
  for (const auto& d : log) {
    const double len = d.exitT - d.enterT;
    f[static_cast<std::size_t>(index(d.tier))] += len;
    total += len;
  }
  if (total <= 0.0) {
    // Zero-length level: attribute it to the tier it started in.
    f = {0.0, 0.0, 0.0};
    if (!log.empty()) f[static_cast<std::size_t>(index(log.front().tier))] = 1.0;
    return f;
  }
  for (double& x : f) x /= total;
  return f;
}

}  // namespace jumpcoach
