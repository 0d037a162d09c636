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

#include "cvpv/bits.hpp"

#include "cvpv/sha256.hpp"

namespace cvpv {

Bits::Bits(Bytes bytes, std::size_t nbits) : bytes_(std::move(bytes)), nbits_(nbits) {
    if (bytes_.size() != (nbits + 7) / 8)
        throw LengthMismatch("Bits: byte buffer does not match bit length");
    mask_tail();
}

Bits Bits::from_u64(std::uint64_t value, std::size_t nbits) {
    if (nbits > 64)
        throw LengthMismatch("Bits::from_u64: more than 64 bits requested");
    Bits b(nbits);
    for (std::size_t i = 0; i < nbits; ++i)
        b.set(nbits - 1 - i, (value >> i) & 1);
    return b;
}

Bits Bits::from_string(const std::string& s) {
    Bits b(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] != '0' && s[i] != '1')
            throw LengthMismatch("Bits::from_string: expected only 0/1");
        b.set(i, s[i] == '1');
    }
    return b;
}

bool Bits::get(std::size_t i) const {
    if (i >= nbits_)
        throw IndexOutOfRange("Bits::get: index out of range");
    return (bytes_[i / 8] >> (7 - i % 8)) & 1;
}

void Bits::set(std::size_t i, bool v) {
    if (i >= nbits_)
        throw IndexOutOfRange("Bits::set: index out of range");
    std::uint8_t mask = std::uint8_t(1) << (7 - i % 8);
    if (v)
        bytes_[i / 8] |= mask;
    else
        bytes_[i / 8] &= static_cast<std::uint8_t>(~mask);
}

Bits Bits::operator^(const Bits& other) const {
    if (nbits_ != other.nbits_)
        throw LengthMismatch("Bits: xor of unequal lengths");
    Bits out(nbits_);
    for (std::size_t i = 0; i < bytes_.size(); ++i)
        out.bytes_[i] = bytes_[i] ^ other.bytes_[i];
    return out;
}

Bits Bits::concat(const Bits& other) const {
    Bits out(nbits_ + other.nbits_);
    for (std::size_t i = 0; i < nbits_; ++i)
        out.set(i, get(i));
    for (std::size_t i = 0; i < other.nbits_; ++i)
        out.set(nbits_ + i, other.get(i));
    return out;
}

Bits Bits::slice(std::size_t offset, std::size_t nbits) const {
    if (offset + nbits > nbits_)
        throw IndexOutOfRange("Bits::slice: range out of bounds");
    Bits out(nbits);
    for (std::size_t i = 0; i < nbits; ++i)
        out.set(i, get(offset + i));
    return out;
}

std::uint64_t Bits::to_u64() const {
    if (nbits_ > 64)
        throw LengthMismatch("Bits::to_u64: string longer than 64 bits");
    std::uint64_t v = 0;
    for (std::size_t i = 0; i < nbits_; ++i)
        v = (v << 1) | (get(i) ? 1u : 0u);
    return v;
}

std::string Bits::to_string() const {
    std::string s;
    s.reserve(nbits_);
    for (std::size_t i = 0; i < nbits_; ++i)
        s.push_back(get(i) ? '1' : '0');
    return s;
}

std::string Bits::to_hex() const {
    return hex(bytes_.data(), bytes_.size());
}

void Bits::mask_tail() {
    std::size_t rem = nbits_ % 8;
    if (rem != 0 && !bytes_.empty())
        bytes_.back() &= static_cast<std::uint8_t>(0xff << (8 - rem));
}

} // namespace cvpv
