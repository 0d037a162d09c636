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

#include "cvpv/oracle.hpp"

namespace cvpv {

void OracleParams::validate() const {
    if (input_bits == 0 || output_bits == 0 || key_bits == 0)
        throw ConfigInvalid("oracle parameters must be positive");
    if (key_bits % 8 != 0)
        throw ConfigInvalid("oracle key length must be a whole number of bytes");
}

RandomOracle::RandomOracle(OracleParams params, Seed seed, Bytes key)
    : params_(params), seed_(seed), key_(std::move(key)) {
    params_.validate();
    if (key_.size() != params_.key_bits / 8)
        throw LengthMismatch("oracle key has wrong length");
}

Bytes RandomOracle::sample_key(const Seed& seed, std::size_t key_bits) {
    return PrfStream(seed, "oracle-key").next_bytes(key_bits / 8);
}

void RandomOracle::register_party(PartyId p) { logs_[p]; }

Bits RandomOracle::evaluate(const Bits& z) {
    if (params_.lazy) {
        auto it = lazy_table_.find(z.bytes());
        if (it != lazy_table_.end())
            return it->second;
        PrfStream fresh(seed_, "oracle-lazy", lazy_counter_++);
        Bits out = fresh.next_bits(params_.output_bits);
        lazy_table_.emplace(z.bytes(), out);
        return out;
    }
    Sha256 h;
    h.update(seed_.value.data(), seed_.value.size());
    h.update_u64(key_.size());
    h.update(key_);
    h.update_u64(z.size());
    h.update(z.bytes());
    Seed point{h.finish()};
    return PrfStream(point, "oracle-out").next_bits(params_.output_bits);
}

Bits RandomOracle::query(PartyId party, const Bits& z, Time t) {
    if (z.size() != params_.input_bits)
        throw LengthMismatch("oracle query: input has wrong bit length");
    logs_[party].push_back(QueryRecord{z, t});
    return evaluate(z);
}

Bits RandomOracle::otp_encode(PartyId party, const Bits& z, const Bits& ch, Time t) {
    if (ch.size() != params_.output_bits)
        throw LengthMismatch("otp_encode: pad text has wrong bit length");
    return query(party, z, t) ^ ch;
}

Bits RandomOracle::otp_decode(PartyId party, const Bits& z, const Bits& s, Time t) {
    return otp_encode(party, z, s, t);
}

const std::vector<RandomOracle::QueryRecord>&
RandomOracle::query_log(PartyId party) const {
    auto it = logs_.find(party);
    if (it == logs_.end())
        throw UnknownParty("query_log: party never registered");
    return it->second;
}

} // namespace cvpv
