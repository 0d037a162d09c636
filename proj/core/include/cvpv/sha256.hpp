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

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace cvpv {

using Digest = std::array<std::uint8_t, 32>;

/// Incremental FIPS 180-4 SHA-256.
class Sha256 {
  public:
    Sha256();
    void update(const void* data, std::size_t len);
    void update(const std::vector<std::uint8_t>& data) {
        update(data.data(), data.size());
    }
    void update_u64(std::uint64_t v); // big-endian
    Digest finish();

  private:
    void process_block(const std::uint8_t* block);

    std::array<std::uint32_t, 8> state_;
    std::array<std::uint8_t, 64> buffer_;
    std::size_t buffered_ = 0;
    std::uint64_t total_bytes_ = 0;
};

Digest sha256(const void* data, std::size_t len);
Digest sha256(const std::vector<std::uint8_t>& data);

std::string hex(const std::uint8_t* data, std::size_t len);
std::string hex(const Digest& d);

} // namespace cvpv
