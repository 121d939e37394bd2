#include "jumpcoach/source.hpp"

namespace jumpcoach {

std::optional<PoseFrame> RecordedSource::next() {
  if (pos_ >= frames_.size()) return std::nullopt;
  return frames_[pos_++];
}

std::optional<PoseFrame> RecordingSource::next() {
  auto f = inner_.next();
  if (f) frames_.push_back(*f);
  return f;
}

std::optional<PoseFrame> PrefixedSource::next() {
  if (pos_ < prefix_.size()) return prefix_[pos_++];
  return rest_.next();
}

}  // namespace jumpcoach
