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

#include <map>
#include <vector>

#include "cvpv/bits.hpp"
#include "cvpv/prf.hpp"
#include "cvpv/spacetime.hpp"

namespace cvpv {

struct OracleParams {
    std::size_t input_bits = 128;  // m, sized at 2*lambda by default
    std::size_t output_bits = 128; // n
    std::size_t key_bits = 64;     // lambda
    /// Lazy-sampling mode assigns fresh pseudo-random outputs in query order
    /// and memoizes them; the default evaluates a keyed PRF so the function
    /// is fixed up front.
    bool lazy = false;

    void validate() const;
};

/// Shared hash-family service G_k: {0,1}^m -> {0,1}^n with per-party query
/// logging. All parties see the same function; outputs are a deterministic
/// function of (seed, key, input).
class RandomOracle {
  public:
    RandomOracle(OracleParams params, Seed seed, Bytes key);

    static Bytes sample_key(const Seed& seed, std::size_t key_bits);

    const OracleParams& params() const { return params_; }
    const Bytes& key() const { return key_; }

    void register_party(PartyId p);

    Bits query(PartyId party, const Bits& z, Time t = kTimeMinusInfinity);

    /// s = G_k(z) xor ch. Decoding is the same operation applied to s.
    Bits otp_encode(PartyId party, const Bits& z, const Bits& ch,
                    Time t = kTimeMinusInfinity);
    Bits otp_decode(PartyId party, const Bits& z, const Bits& s,
                    Time t = kTimeMinusInfinity);

    struct QueryRecord {
        Bits input;
        Time time;
    };
    const std::vector<QueryRecord>& query_log(PartyId party) const;

  private:
    Bits evaluate(const Bits& z);

    OracleParams params_;
    Seed seed_;
    Bytes key_;
    std::map<PartyId, std::vector<QueryRecord>> logs_;
    std::map<Bytes, Bits> lazy_table_;
    std::uint64_t lazy_counter_ = 0;
};

} // namespace cvpv
