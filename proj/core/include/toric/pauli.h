// Copyright 2026 The Toric Mismatch Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace toric {

/// Per-qubit X/Z flags over the 2n^2 edge qubits. A Y error is both flags.
class PauliErrorPattern {
   public:
    PauliErrorPattern() = default;
    explicit PauliErrorPattern(std::size_t qubit_count) : flags_(qubit_count, 0) {}

    std::size_t size() const { return flags_.size(); }

    bool x(std::size_t q) const { return flags_[q] & kX; }
    bool z(std::size_t q) const { return flags_[q] & kZ; }
    bool y(std::size_t q) const { return (flags_[q] & (kX | kZ)) == (kX | kZ); }

    void set_x(std::size_t q, bool on = true) { set(q, kX, on); }
    void set_z(std::size_t q, bool on = true) { set(q, kZ, on); }

    void clear() { std::fill(flags_.begin(), flags_.end(), 0); }

    std::size_t count_x() const;
    std::size_t count_z() const;

    bool operator==(const PauliErrorPattern&) const = default;

   private:
    static constexpr std::uint8_t kX = 1;
    static constexpr std::uint8_t kZ = 2;

    void set(std::size_t q, std::uint8_t bit, bool on) {
        if (on)
            flags_[q] |= bit;
        else
            flags_[q] &= static_cast<std::uint8_t>(~bit);
    }

    std::vector<std::uint8_t> flags_;
};

}  // namespace toric
