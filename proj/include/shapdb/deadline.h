// Copyright 2026 The shapdb Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SHAPDB_DEADLINE_H_
#define SHAPDB_DEADLINE_H_

#include <chrono>
#include <cstdint>
#include <limits>
#include <string>

#include "shapdb/errors.h"

namespace shapdb {

// A wall-clock budget polled cooperatively by long-running loops.
class Deadline {
 public:
  using Clock = std::chrono::steady_clock;

  static Deadline Never() { return Deadline(Clock::time_point::max()); }
  static Deadline After(double seconds) {
    if (!(seconds < 1e9)) return Never();
    if (seconds <= 0) return Deadline(Clock::time_point::min());
    return Deadline(Clock::now() +
                    std::chrono::duration_cast<Clock::duration>(
                        std::chrono::duration<double>(seconds)));
  }

  bool unlimited() const { return at_ == Clock::time_point::max(); }
  bool Expired() const { return !unlimited() && Clock::now() >= at_; }

  // Throws TimeoutError once expired; only reads the clock every `stride`
  // calls so it can sit in inner loops.
  void Poll(const char* where) const {
    if (unlimited()) return;
    if (++polls_ % kStride != 0 && at_ != Clock::time_point::min()) return;
    if (Expired()) throw TimeoutError(std::string("deadline expired in ") + where);
  }

 private:
  explicit Deadline(Clock::time_point at) : at_(at) {}

  static constexpr std::uint32_t kStride = 64;

  Clock::time_point at_;
  mutable std::uint32_t polls_ = 0;
};

}  // namespace shapdb

#endif  // SHAPDB_DEADLINE_H_
