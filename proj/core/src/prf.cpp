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

#include "cvpv/prf.hpp"

#include <cstring>

namespace cvpv {

namespace {

Digest keyed_digest(const void* key, std::size_t key_len, std::string_view domain,
                    std::uint64_t index) {
    Sha256 h;
    h.update_u64(key_len);
    h.update(key, key_len);
    h.update_u64(domain.size());
    h.update(domain.data(), domain.size());
    h.update_u64(index);
    return h.finish();
}

} // namespace

Seed Seed::from_hex(const std::string& hex_chars) {
    if (hex_chars.size() > 64)
        throw LengthMismatch("Seed::from_hex: more than 64 hex characters");
    Seed s;
    // Right-align so short human-typed seeds like "2a" are valid.
    std::size_t off = 64 - hex_chars.size();
    for (std::size_t i = 0; i < hex_chars.size(); ++i) {
        char c = hex_chars[i];
        int v;
        if (c >= '0' && c <= '9') v = c - '0';
        else if (c >= 'a' && c <= 'f') v = c - 'a' + 10;
        else if (c >= 'A' && c <= 'F') v = c - 'A' + 10;
        else throw LengthMismatch("Seed::from_hex: invalid hex character");
        std::size_t pos = off + i;
        if (pos % 2 == 0)
            s.value[pos / 2] |= static_cast<std::uint8_t>(v << 4);
        else
            s.value[pos / 2] |= static_cast<std::uint8_t>(v);
    }
    return s;
}

Seed Seed::from_bytes(const Bytes& b) {
    Seed s;
    s.value = sha256(b);
    return s;
}

Seed derive_seed(const Seed& parent, std::string_view domain, std::uint64_t index) {
    Seed s;
    s.value = keyed_digest(parent.value.data(), parent.value.size(), domain, index);
    return s;
}

PrfStream::PrfStream(const Seed& seed, std::string_view domain, std::uint64_t index) {
    key_ = keyed_digest(seed.value.data(), seed.value.size(), domain, index);
}

PrfStream::PrfStream(const Bytes& key, std::string_view domain, std::uint64_t index) {
    key_ = keyed_digest(key.data(), key.size(), domain, index);
}

void PrfStream::refill() {
    Sha256 h;
    h.update(key_.data(), key_.size());
    h.update_u64(counter_++);
    block_ = h.finish();
    pos_ = 0;
}

std::uint8_t PrfStream::next_byte() {
    if (pos_ >= 32)
        refill();
    return block_[pos_++];
}

std::uint64_t PrfStream::next_u64() {
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i)
        v = (v << 8) | next_byte();
    return v;
}

Bytes PrfStream::next_bytes(std::size_t n) {
    Bytes out(n);
    for (std::size_t i = 0; i < n; ++i)
        out[i] = next_byte();
    return out;
}

Bits PrfStream::next_bits(std::size_t nbits) {
    Bytes raw = next_bytes((nbits + 7) / 8);
    return Bits(std::move(raw), nbits);
}

double PrfRng::uniform() {
    return static_cast<double>(stream_.next_u64() >> 11) * 0x1.0p-53;
}

std::uint64_t PrfRng::uniform_int(std::uint64_t bound) {
    if (bound == 0)
        throw DomainError("PrfRng::uniform_int: bound must be positive");
    // Rejection sampling keeps the distribution exact.
    std::uint64_t limit = ~std::uint64_t(0) - (~std::uint64_t(0) % bound);
    std::uint64_t v;
    do {
        v = stream_.next_u64();
    } while (v >= limit && limit != 0);
    return v % bound;
}

} // namespace cvpv
