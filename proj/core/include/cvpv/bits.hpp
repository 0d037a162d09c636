// Copyright 2026 The cvpv-sim Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cvpv/errors.hpp"

namespace cvpv {

using Bytes = std::vector<std::uint8_t>;

/// Fixed-length bit string, MSB-first within each byte. Unused trailing
/// bits of the last byte are kept zero so byte equality equals bit equality.
class Bits {
  public:
    Bits() = default;
    explicit Bits(std::size_t nbits) : bytes_((nbits + 7) / 8, 0), nbits_(nbits) {}
    Bits(Bytes bytes, std::size_t nbits);

    static Bits from_u64(std::uint64_t value, std::size_t nbits);
    static Bits from_string(const std::string& zeros_and_ones);

    std::size_t size() const { return nbits_; }
    bool empty() const { return nbits_ == 0; }
    const Bytes& bytes() const { return bytes_; }

    bool get(std::size_t i) const;
    void set(std::size_t i, bool v);

    Bits operator^(const Bits& other) const;
    bool operator==(const Bits& other) const = default;

    Bits concat(const Bits& other) const;
    Bits slice(std::size_t offset, std::size_t nbits) const;

    /// Value of the whole string as an integer, MSB first. Requires size <= 64.
    std::uint64_t to_u64() const;

    std::string to_string() const; // "0101..."
    std::string to_hex() const;

  private:
    void mask_tail();

    Bytes bytes_;
    std::size_t nbits_ = 0;
};

} // namespace cvpv
