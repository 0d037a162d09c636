#include <doctest.h>

#include <cvpv/spacetime.hpp>

using namespace cvpv;

namespace {

Bytes payload(std::initializer_list<std::uint8_t> b) { return Bytes(b); }

Simulation two_party_sim(double x0, double x1, Handler h0 = {}, Handler h1 = {}) {
    Simulation sim;
    sim.add_party({0, "A", {x0}, std::move(h0)});
    sim.add_party({1, "B", {x1}, std::move(h1)});
    return sim;
}

} // namespace

TEST_CASE("arrival time is send time plus distance, exactly") {
    SUBCASE("distance 2") {
        auto sim = two_party_sim(0.0, 2.0);
        sim.post(0, 1, "msg", payload({1}), 0.0);
        EventLog log = sim.run_until(10.0);
        REQUIRE(log.size() == 1);
        CHECK(log.at(0).t_arrive == 2.0);
    }
    SUBCASE("zero distance") {
        auto sim = two_party_sim(0.5, 0.5);
        sim.post(0, 1, "msg", payload({1}), 3.0);
        EventLog log = sim.run_until(10.0);
        REQUIRE(log.size() == 1);
        CHECK(log.at(0).t_arrive == 3.0);
    }
    SUBCASE("distance 1, fractional send") {
        auto sim = two_party_sim(0.0, 1.0);
        sim.post(0, 1, "msg", payload({1}), 0.25);
        EventLog log = sim.run_until(10.0);
        REQUIRE(log.size() == 1);
        CHECK(log.at(0).t_arrive == 1.25);
    }
}

TEST_CASE("run_until honors the horizon and empty queues") {
    auto sim = two_party_sim(0.0, 1.0);
    sim.post(0, 1, "m1", payload({1}), 0.0); // arrives 1
    sim.post(0, 1, "m2", payload({2}), 1.0); // arrives 2
    EventLog log = sim.run_until(1.5);
    CHECK(log.size() == 1);
    CHECK(log.at(0).kind == "m1");

    Simulation empty;
    CHECK(empty.run_until(100.0).size() == 0);
}

TEST_CASE("delivery order is deterministic, ties by (receiver, sender, seq)") {
    std::vector<std::string> first_order;
    std::vector<std::string> second_order;
    for (int rep = 0; rep < 2; ++rep) {
        auto& order = rep == 0 ? first_order : second_order;
        Simulation sim;
        sim.add_party({0, "A", {0.0}});
        sim.add_party({1, "B", {1.0}});
        sim.add_party(
            {2, "C", {1.0}, [&order](Context&, const std::vector<const Event*>& batch) {
                 for (const Event* e : batch)
                     order.push_back(e->kind);
             }});
        sim.post(1, 2, "from-B", payload({1}), 1.0); // arrives 1
        sim.post(0, 2, "from-A", payload({2}), 0.0); // also arrives 1
        sim.run_until(5.0);
    }
    REQUIRE(first_order.size() == 2);
    CHECK(first_order[0] == "from-A"); // lower sender id first
    CHECK(first_order == second_order);
}

TEST_CASE("simultaneous arrivals form a single batch") {
    int batches = 0;
    std::size_t batch_size = 0;
    Simulation sim;
    sim.add_party({0, "V0", {0.0}});
    sim.add_party({1, "V1", {2.0}});
    sim.add_party({2, "P", {1.0},
                   [&](Context&, const std::vector<const Event*>& batch) {
                       ++batches;
                       batch_size = batch.size();
                   }});
    sim.post(0, 2, "x", payload({1}), 0.0);
    sim.post(1, 2, "y", payload({2}), 0.0);
    sim.run_until(5.0);
    CHECK(batches == 1);
    CHECK(batch_size == 2);
}

TEST_CASE("scheduling into the past is a causality violation") {
    Simulation sim;
    sim.add_party({0, "A", {0.0}});
    bool threw = false;
    sim.add_party({1, "B", {1.0}, [&](Context& ctx, const std::vector<const Event*>&) {
                       try {
                           ctx.send(0, "late", payload({9}), ctx.now() - 0.5);
                       } catch (const CausalityViolation&) {
                           threw = true;
                       }
                   }});
    sim.post(0, 1, "go", payload({1}), 0.0);
    sim.run_until(5.0);
    CHECK(threw);
}

TEST_CASE("causal ancestry tracks handler inputs") {
    // V0 and V1 send shares to P; P replies to V0 after seeing both. The
    // reply's ancestry must contain both share deliveries.
    Simulation sim;
    sim.add_party({0, "V0", {0.0}});
    sim.add_party({1, "V1", {2.0}});
    int shares_seen = 0;
    sim.add_party({2, "P", {1.0},
                   [&](Context& ctx, const std::vector<const Event*>& batch) {
                       shares_seen += static_cast<int>(batch.size());
                       if (shares_seen == 2)
                           ctx.send_now(0, "answer", payload({7}));
                   }});
    sim.post(0, 2, "x", payload({1}), 0.0);
    sim.post(1, 2, "y", payload({2}), 0.0);
    EventLog log = sim.run_until(5.0);
    REQUIRE(log.size() == 3);
    const Event& answer = log.at(2);
    CHECK(answer.kind == "answer");
    auto anc = log.causal_ancestry(answer.id);
    CHECK(anc == std::vector<std::size_t>{0, 1});

    // a party that received nothing has empty ancestry
    auto anc0 = log.causal_ancestry(0);
    CHECK(anc0.empty());

    CHECK_THROWS_AS(log.causal_ancestry(99), UnknownEvent);
}

TEST_CASE("ancestry excludes events outside the light cone") {
    // Adversary at x=0 answers at t=1; an event emitted at x=1 after t=0
    // cannot be an ancestor.
    Simulation sim;
    sim.add_party({0, "V", {0.0}});
    sim.add_party({1, "Adv", {0.0},
                   [&](Context& ctx, const std::vector<const Event*>& batch) {
                       if (batch[0]->kind == "go")
                           ctx.send(0, "answer", payload({3}), 1.0);
                   }});
    sim.add_party({2, "Far", {1.0}});
    sim.post(0, 1, "go", payload({1}), 0.0);    // delivered t=0
    sim.post(2, 1, "late", payload({2}), 0.5);  // emitted after t=0, arrives 1.5
    EventLog log = sim.run_until(5.0);
    const Event* answer = nullptr;
    std::size_t late_id = 0;
    for (const Event& e : log.events()) {
        if (e.kind == "answer") answer = &e;
        if (e.kind == "late") late_id = e.id;
    }
    REQUIRE(answer != nullptr);
    auto anc = log.causal_ancestry(answer->id);
    for (std::size_t a : anc)
        CHECK(a != late_id);
}

TEST_CASE("payload fixed at scheduling time pins ancestry") {
    // A message scheduled early but sent late does not absorb later inputs.
    Simulation sim;
    sim.add_party({0, "V", {0.0}});
    sim.add_party({1, "P", {0.0},
                   [&](Context& ctx, const std::vector<const Event*>& batch) {
                       if (batch[0]->kind == "first")
                           ctx.send(0, "delayed", payload({1}), 4.0);
                   }});
    sim.post(0, 1, "first", payload({1}), 0.0);
    sim.post(0, 1, "second", payload({2}), 1.0);
    EventLog log = sim.run_until(10.0);
    const Event* delayed = nullptr;
    std::size_t second_id = 0;
    for (const Event& e : log.events()) {
        if (e.kind == "delayed") delayed = &e;
        if (e.kind == "second") second_id = e.id;
    }
    REQUIRE(delayed != nullptr);
    CHECK(delayed->t_arrive == 4.0);
    auto anc = log.causal_ancestry(delayed->id);
    for (std::size_t a : anc)
        CHECK(a != second_id);
    CHECK(anc.size() == 1);
}

TEST_CASE("identical runs give byte-identical logs") {
    auto run = [] {
        Simulation sim;
        sim.add_party({0, "V0", {0.0}});
        sim.add_party({1, "V1", {2.0}});
        sim.add_party({2, "P", {1.0},
                       [](Context& ctx, const std::vector<const Event*>& batch) {
                           if (batch.size() == 2) {
                               ctx.send_now(0, "ans", {9});
                               ctx.send_now(1, "ans", {9});
                           }
                       }});
        sim.post(0, 2, "x", {1}, 0.0);
        sim.post(1, 2, "y", {2}, 0.0);
        EventLog log = sim.run_until(10.0);
        return log.to_jsonl(sim.party_labels());
    };
    CHECK(run() == run());
}

TEST_CASE("per-party compute delay shifts emissions") {
    Simulation sim;
    sim.add_party({0, "V", {0.0}});
    sim.add_party({1, "P", {1.0},
                   [](Context& ctx, const std::vector<const Event*>&) {
                       ctx.send_now(0, "ans", {1});
                   },
                   0.25});
    sim.post(0, 1, "go", {1}, 0.0);
    EventLog log = sim.run_until(10.0);
    REQUIRE(log.size() == 2);
    CHECK(log.at(1).t_send == 1.25);
    CHECK(log.at(1).t_arrive == 2.25);
}

TEST_CASE("light cone invariant holds over a whole log") {
    Simulation sim;
    sim.add_party({0, "V0", {0.0}});
    sim.add_party({1, "V1", {2.0}});
    sim.add_party({2, "P", {0.5},
                   [](Context& ctx, const std::vector<const Event*>& batch) {
                       for (const Event* e : batch)
                           if (e->kind == "x")
                               ctx.send_now(1, "fwd", e->payload);
                   }});
    sim.post(0, 2, "x", {1}, 0.0);
    sim.post(1, 2, "y", {2}, 0.0);
    EventLog log = sim.run_until(10.0);
    for (const Event& e : log.events()) {
        double dist = std::abs(sim.party(e.sender).position.x -
                               sim.party(e.receiver).position.x);
        CHECK(e.t_arrive == e.t_send + dist);
    }
}
