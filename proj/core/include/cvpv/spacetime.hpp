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
#include <functional>
#include <limits>
#include <map>
#include <queue>
#include <string>
#include <vector>

#include "cvpv/bits.hpp"
#include "cvpv/errors.hpp"

namespace cvpv {

using PartyId = int;
using Time = double;

inline constexpr Time kTimeMinusInfinity = -std::numeric_limits<Time>::infinity();

/// Coordinate on the 1-D line, in light-seconds (c = 1).
struct Position {
    double x = 0.0;
};

inline double distance(Position a, Position b) { return std::abs(a.x - b.x); }

/// One delivered message. `sender_knowledge` counts how many events had been
/// delivered to the sender when the payload was fixed, which is what
/// causal ancestry is reconstructed from.
struct Event {
    std::size_t id = 0;
    Time t_send = 0;
    Time t_arrive = 0;
    PartyId sender = -1;
    PartyId receiver = -1;
    std::string kind;
    Bytes payload;
    std::size_t sender_knowledge = 0;
    std::uint64_t seq = 0;
};

class EventLog {
  public:
    const std::vector<Event>& events() const { return events_; }
    std::size_t size() const { return events_.size(); }
    const Event& at(std::size_t id) const;

    /// All prior events whose payloads transitively influenced this event's
    /// payload. Sorted ascending by event id.
    std::vector<std::size_t> causal_ancestry(std::size_t event_id) const;

    /// One JSON object per line: {t, sender, receiver, kind, payload_hash}.
    std::string to_jsonl(const std::vector<std::string>& party_labels) const;

    void append(Event e) { events_.push_back(std::move(e)); }

  private:
    std::vector<Event> events_;
};

class Simulation;

/// Handler-side view of the simulation during a delivery batch.
class Context {
  public:
    Time now() const { return now_; }
    PartyId self() const { return self_; }

    /// Queue a message. The payload is fixed now, so its causal ancestry is
    /// the sender's knowledge at this moment even if t_send lies in the
    /// future. t_send must not be in the past.
    void send(PartyId to, std::string kind, Bytes payload, Time t_send);
    void send_now(PartyId to, std::string kind, Bytes payload);

  private:
    friend class Simulation;
    Context(Simulation& sim, PartyId self, Time now) : sim_(sim), self_(self), now_(now) {}
    Simulation& sim_;
    PartyId self_;
    Time now_;
};

/// All simultaneous arrivals for one receiver are delivered before the
/// handler fires once, so a party waiting on several messages sees them
/// atomically.
using Handler = std::function<void(Context&, const std::vector<const Event*>& batch)>;

struct PartyDecl {
    PartyId id = -1;
    std::string label;
    Position position;
    Handler handler; // may be empty for a pure sink
    double compute_delay = 0.0;
};

/// Deterministic single-threaded event loop on the 1-D line. Messages travel
/// at c = 1; delivery order is (t_arrive, receiver, sender, seq).
class Simulation {
  public:
    void add_party(PartyDecl p);
    const PartyDecl& party(PartyId id) const;
    std::vector<std::string> party_labels() const;

    /// Schedule a message whose payload was fixed before the protocol
    /// started (pre-shared state, t = -inf knowledge).
    void post(PartyId from, PartyId to, std::string kind, Bytes payload, Time t_send);

    /// Deliver every message with t_arrive <= t_end. Returns the ordered log.
    EventLog run_until(Time t_end);

    /// Events delivered to `party` so far (ids into the log), in order.
    const std::vector<std::size_t>& delivered_to(PartyId party) const;

  private:
    friend class Context;

    struct Pending {
        Time t_send;
        Time t_arrive;
        PartyId sender;
        PartyId receiver;
        std::string kind;
        Bytes payload;
        std::size_t sender_knowledge;
        std::uint64_t seq;
    };
    struct PendingOrder {
        bool operator()(const Pending& a, const Pending& b) const {
            if (a.t_arrive != b.t_arrive) return a.t_arrive > b.t_arrive;
            if (a.receiver != b.receiver) return a.receiver > b.receiver;
            if (a.sender != b.sender) return a.sender > b.sender;
            return a.seq > b.seq;
        }
    };

    void enqueue(PartyId from, PartyId to, std::string kind, Bytes payload,
                 Time t_send, Time now, std::size_t knowledge);

    std::map<PartyId, PartyDecl> parties_;
    std::map<PartyId, std::vector<std::size_t>> delivered_;
    std::priority_queue<Pending, std::vector<Pending>, PendingOrder> queue_;
    EventLog log_;
    std::uint64_t next_seq_ = 0;
    Time current_time_ = kTimeMinusInfinity;
};

} // namespace cvpv
