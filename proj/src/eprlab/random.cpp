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

#include "eprlab/random.hpp"

#include <cassert>

namespace eprlab {
namespace {

constexpr std::uint32_t kPhiloxM0 = 0xD2511F53;
constexpr std::uint32_t kPhiloxM1 = 0xCD9E8D57;
constexpr std::uint32_t kPhiloxW0 = 0x9E3779B9;
constexpr std::uint32_t kPhiloxW1 = 0xBB67AE85;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& lo,
                    std::uint32_t& hi) {
  const std::uint64_t product = std::uint64_t{a} * b;
  lo = static_cast<std::uint32_t>(product);
  hi = static_cast<std::uint32_t>(product >> 32);
}

inline PhiloxCounter round(const PhiloxCounter& c, const PhiloxKey& k) {
  std::uint32_t lo0, hi0, lo1, hi1;
  mulhilo(kPhiloxM0, c[0], lo0, hi0);
  mulhilo(kPhiloxM1, c[2], lo1, hi1);
  return {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
}

}  // namespace

PhiloxCounter philox4x32_10(PhiloxCounter counter, PhiloxKey key) {
  counter = round(counter, key);
  for (int r = 1; r < 10; ++r) {
    key[0] += kPhiloxW0;
    key[1] += kPhiloxW1;
    counter = round(counter, key);
  }
  return counter;
}

EventStream::EventStream(StreamKey key, std::uint64_t event)
    : key_{static_cast<std::uint32_t>(key.seed),
           static_cast<std::uint32_t>(key.seed >> 32)},
      event_(event),
      label_(key.label) {
  assert(event < kMaxEvents);
}

double EventStream::uniform(unsigned slot) {
  assert(slot < slot::kCount);
  const unsigned block = slot / 2;
  if (block != cached_block_) {
    const PhiloxCounter counter{
        static_cast<std::uint32_t>(event_),
        static_cast<std::uint32_t>((event_ >> 32) << 16) | block,
        static_cast<std::uint32_t>(label_),
        static_cast<std::uint32_t>(label_ >> 32)};
    cached_ = philox4x32_10(counter, key_);
    cached_block_ = block;
  }
  const unsigned w = (slot % 2) * 2;
  const std::uint64_t bits =
      (std::uint64_t{cached_[w]} << 32) | std::uint64_t{cached_[w + 1]};
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

std::uint64_t mix64(std::uint64_t x) {
  // SplitMix64 finalizer.
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

}  // namespace eprlab
