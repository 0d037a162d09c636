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
#include <string_view>

#include "cvpv/bits.hpp"
#include "cvpv/sha256.hpp"

namespace cvpv {

/// 256-bit seed. Every random choice in the library is derived from one of
/// these through a named domain, so runs are reproducible bit for bit.
struct Seed {
    Digest value{};

    static Seed from_hex(const std::string& hex_chars);
    static Seed from_bytes(const Bytes& b);
    std::string to_hex() const { return hex(value); }
    bool operator==(const Seed&) const = default;
};

/// Derive a child seed from (parent, domain, index). Disjoint domains give
/// independent-looking streams.
Seed derive_seed(const Seed& parent, std::string_view domain, std::uint64_t index = 0);

/// Counter-mode byte stream keyed by a seed and a domain string.
class PrfStream {
  public:
    PrfStream(const Seed& seed, std::string_view domain, std::uint64_t index = 0);
    explicit PrfStream(const Bytes& key, std::string_view domain, std::uint64_t index = 0);

    std::uint8_t next_byte();
    std::uint64_t next_u64();
    Bytes next_bytes(std::size_t n);
    Bits next_bits(std::size_t nbits);

  private:
    void refill();

    Digest key_{};
    std::uint64_t counter_ = 0;
    Digest block_{};
    std::size_t pos_ = 32; // forces refill on first use
};

/// Deterministic RNG on top of PrfStream.
class PrfRng {
  public:
    PrfRng(const Seed& seed, std::string_view domain, std::uint64_t index = 0)
        : stream_(seed, domain, index) {}

    std::uint64_t next_u64() { return stream_.next_u64(); }

    /// Uniform double in [0, 1), 53 random bits.
    double uniform();

    /// Uniform integer in [0, bound).
    std::uint64_t uniform_int(std::uint64_t bound);

    bool bernoulli(double p) { return uniform() < p; }

    Bits bits(std::size_t nbits) { return stream_.next_bits(nbits); }

  private:
    PrfStream stream_;
};

} // namespace cvpv
