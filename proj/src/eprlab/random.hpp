// Copyright 2026 The eprlab Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <array>
#include <cstdint>

namespace eprlab {

using PhiloxCounter = std::array<std::uint32_t, 4>;
using PhiloxKey = std::array<std::uint32_t, 2>;

// Philox4x32 with 10 rounds (Salmon et al., SC 2011).
PhiloxCounter philox4x32_10(PhiloxCounter counter, PhiloxKey key);

// Identifies one independent substream: the master seed is the Philox key
// and the label occupies the top two counter words, so distinct labels can
// never overlap regardless of how many events each run draws.
struct StreamKey {
  std::uint64_t seed = 0;
  std::uint64_t label = 0;

  friend bool operator==(const StreamKey&, const StreamKey&) = default;
};

// Slot layout of one event's stream. Every event reserves all slots whether
// or not a given run uses them, so event i always sees the same numbers.
namespace slot {
inline constexpr unsigned kLambda = 0;
inline constexpr unsigned kPositionA = 1;
inline constexpr unsigned kPositionB = 2;
inline constexpr unsigned kDirectionA = 3;
inline constexpr unsigned kDirectionB = 4;
inline constexpr unsigned kOutcome1 = 5;
inline constexpr unsigned kOutcome2 = 6;
inline constexpr unsigned kCount = 8;
}  // namespace slot

/*!
 * Fixed-length, slot-addressed uniform stream for a single event.
 *
 * The counter is (event low word, event high 16 bits | block, label low,
 * label high); each Philox block yields two 53-bit uniforms. Event indices
 * must stay below 2^48.
 */
class EventStream {
 public:
  static constexpr std::uint64_t kMaxEvents = std::uint64_t{1} << 48;

  EventStream(StreamKey key, std::uint64_t event);

  // Uniform double in [0, 1) for the given slot.
  double uniform(unsigned slot);

 private:
  PhiloxKey key_;
  std::uint64_t event_;
  std::uint64_t label_;
  unsigned cached_block_ = ~0u;
  PhiloxCounter cached_{};
};

// Standalone 64-bit mixing, used to derive labels from angle bit patterns.
std::uint64_t mix64(std::uint64_t x);

}  // namespace eprlab
