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

#include "cvpv/spacetime.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <set>

#include "cvpv/sha256.hpp"

namespace cvpv {

namespace {

std::string format_time(Time t) {
    char buf[40];
    auto res = std::to_chars(buf, buf + sizeof(buf), t);
    return std::string(buf, res.ptr);
}

std::string payload_hash(const Bytes& payload) {
    Digest d = sha256(payload);
    return hex(d.data(), 8);
}

} // namespace

const Event& EventLog::at(std::size_t id) const {
    if (id >= events_.size())
        throw UnknownEvent("EventLog: no event with id " + std::to_string(id));
    return events_[id];
}

std::vector<std::size_t> EventLog::causal_ancestry(std::size_t event_id) const {
    if (event_id >= events_.size())
        throw UnknownEvent("causal_ancestry: unknown event");

    // Direct parents of an event are the first `sender_knowledge` events that
    // had been delivered to its sender. Walk the closure.
    std::set<std::size_t> seen;
    std::vector<std::size_t> frontier{event_id};
    while (!frontier.empty()) {
        std::size_t cur = frontier.back();
        frontier.pop_back();
        const Event& e = events_[cur];
        std::size_t found = 0;
        for (std::size_t i = 0; i < cur && found < e.sender_knowledge; ++i) {
            if (events_[i].receiver == e.sender) {
                ++found;
                if (seen.insert(i).second)
                    frontier.push_back(i);
            }
        }
    }
    return {seen.begin(), seen.end()};
}

std::string EventLog::to_jsonl(const std::vector<std::string>& party_labels) const {
    auto label = [&](PartyId id) -> std::string {
        if (id >= 0 && static_cast<std::size_t>(id) < party_labels.size())
            return party_labels[id];
        return std::to_string(id);
    };
    std::string out;
    for (const Event& e : events_) {
        out += "{\"t\":" + format_time(e.t_arrive) +
               ",\"sender\":\"" + label(e.sender) +
               "\",\"receiver\":\"" + label(e.receiver) +
               "\",\"kind\":\"" + e.kind +
               "\",\"payload_hash\":\"" + payload_hash(e.payload) + "\"}\n";
    }
    return out;
}

void Simulation::add_party(PartyDecl p) {
    if (!std::isfinite(p.position.x))
        throw ConfigInvalid("party position must be finite");
    if (parties_.count(p.id))
        throw ConfigInvalid("duplicate party id");
    delivered_[p.id];
    parties_[p.id] = std::move(p);
}

const PartyDecl& Simulation::party(PartyId id) const {
    auto it = parties_.find(id);
    if (it == parties_.end())
        throw UnknownParty("no party with id " + std::to_string(id));
    return it->second;
}

std::vector<std::string> Simulation::party_labels() const {
    PartyId max_id = -1;
    for (const auto& [id, p] : parties_)
        max_id = std::max(max_id, id);
    std::vector<std::string> labels(static_cast<std::size_t>(max_id + 1));
    for (const auto& [id, p] : parties_)
        labels[static_cast<std::size_t>(id)] = p.label;
    return labels;
}

void Simulation::enqueue(PartyId from, PartyId to, std::string kind, Bytes payload,
                         Time t_send, Time now, std::size_t knowledge) {
    const PartyDecl& sender = party(from);
    const PartyDecl& receiver = party(to);
    Time effective_send = t_send;
    if (now != kTimeMinusInfinity)
        effective_send = std::max(t_send, now + sender.compute_delay);
    if (effective_send < now)
        throw CausalityViolation("t_send is in the sender's past");
    Time t_arrive = effective_send + distance(sender.position, receiver.position);
    queue_.push(Pending{effective_send, t_arrive, from, to, std::move(kind),
                        std::move(payload), knowledge, next_seq_++});
}

void Simulation::post(PartyId from, PartyId to, std::string kind, Bytes payload,
                      Time t_send) {
    enqueue(from, to, std::move(kind), std::move(payload), t_send,
            kTimeMinusInfinity, 0);
}

void Context::send(PartyId to, std::string kind, Bytes payload, Time t_send) {
    if (t_send < now_)
        throw CausalityViolation("t_send is in the sender's past");
    sim_.enqueue(self_, to, std::move(kind), std::move(payload), t_send, now_,
                 sim_.delivered_[self_].size());
}

void Context::send_now(PartyId to, std::string kind, Bytes payload) {
    send(to, std::move(kind), std::move(payload), now_);
}

const std::vector<std::size_t>& Simulation::delivered_to(PartyId party_id) const {
    auto it = delivered_.find(party_id);
    if (it == delivered_.end())
        throw UnknownParty("delivered_to: unknown party");
    return it->second;
}

EventLog Simulation::run_until(Time t_end) {
    while (!queue_.empty() && queue_.top().t_arrive <= t_end) {
        Time t = queue_.top().t_arrive;
        PartyId receiver = queue_.top().receiver;
        current_time_ = t;

        // Deliver every simultaneous arrival for this receiver, then fire the
        // handler once with the whole batch.
        std::vector<const Event*> batch;
        std::vector<std::size_t> batch_ids;
        while (!queue_.empty() && queue_.top().t_arrive == t &&
               queue_.top().receiver == receiver) {
            Pending p = queue_.top();
            queue_.pop();
            Event e;
            e.id = log_.size();
            e.t_send = p.t_send;
            e.t_arrive = p.t_arrive;
            e.sender = p.sender;
            e.receiver = p.receiver;
            e.kind = std::move(p.kind);
            e.payload = std::move(p.payload);
            e.sender_knowledge = p.sender_knowledge;
            e.seq = p.seq;
            batch_ids.push_back(e.id);
            log_.append(std::move(e));
            delivered_[receiver].push_back(batch_ids.back());
        }
        for (std::size_t id : batch_ids)
            batch.push_back(&log_.at(id));

        const PartyDecl& p = party(receiver);
        if (p.handler) {
            Context ctx(*this, receiver, t);
            p.handler(ctx, batch);
        }
    }
    return log_;
}

} // namespace cvpv
