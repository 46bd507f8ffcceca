#include <doctest.h>

#include <algorithm>
#include <map>
#include <stdexcept>

#include "tdoslab/random.hpp"
#include "tdoslab/scheduler.hpp"

using namespace tdoslab;

namespace {
const ActorId kC0{ActorKind::client, 0};
const ActorId kC1{ActorKind::client, 1};
}  // namespace

TEST_CASE("insert keeps the queue sorted by delivery time") {
    Scheduler s;
    SUBCASE("singleton") {
        s.insert(1.0, kC0, MsgKind::poll);
        const auto q = s.snapshot_sorted();
        REQUIRE(q.size() == 1);
        CHECK(q[0].due == 1.0);
        CHECK(q[0].target == kC0);
    }
    SUBCASE("equal times resolve FIFO") {
        s.insert(1.0, kC0, MsgKind::poll);
        s.insert(1.0, kC1, MsgKind::poll);
        const auto q = s.snapshot_sorted();
        REQUIRE(q.size() == 2);
        CHECK(q[0].target == kC0);
        CHECK(q[1].target == kC1);
    }
    SUBCASE("earlier event sorts ahead of an older one") {
        s.insert(2.0, kC0, MsgKind::poll);
        s.insert(1.0, kC1, MsgKind::poll);
        const auto q = s.snapshot_sorted();
        REQUIRE(q.size() == 2);
        CHECK(q[0].target == kC1);
        CHECK(q[0].due == 1.0);
        CHECK(q[1].target == kC0);
        CHECK(q[1].due == 2.0);
    }
}

TEST_CASE("insert rejects events scheduled in the past") {
    Scheduler s;
    s.insert(2.0, kC0, MsgKind::poll);
    REQUIRE(s.tick().has_value());
    CHECK(s.now() == 2.0);
    CHECK_THROWS_AS(s.insert(1.0, kC0, MsgKind::poll), std::invalid_argument);
    CHECK_NOTHROW(s.insert(2.0, kC0, MsgKind::poll));  // due == now is fine
}

TEST_CASE("tick pops the head and advances the clock to its delivery time") {
    Scheduler s;
    s.insert(1.0, kC0, MsgKind::poll);
    s.insert(3.0, kC1, MsgKind::ringing);

    auto e = s.tick();
    REQUIRE(e.has_value());
    CHECK(e->due == 1.0);
    CHECK(e->target == kC0);
    CHECK(s.now() == 1.0);
    CHECK(s.size() == 1);

    SUBCASE("single remaining event drains the queue at its time") {
        auto e2 = s.tick();
        REQUIRE(e2.has_value());
        CHECK(e2->due == 3.0);
        CHECK(s.now() == 3.0);
        CHECK(s.empty());
    }
}

TEST_CASE("equal-due events pop in insertion order") {
    Scheduler s;
    s.insert(1.0, kC0, MsgKind::poll);
    s.insert(1.0, kC1, MsgKind::poll);
    CHECK(s.tick()->target == kC0);
    CHECK(s.tick()->target == kC1);
}

TEST_CASE("empty queue signals completion rather than failing") {
    Scheduler s;
    CHECK_FALSE(s.tick().has_value());
    CHECK(s.peek() == nullptr);
}

TEST_CASE("clock is monotone and every event pops exactly once") {
    Scheduler s;
    RandomStream rs(99);
    std::map<std::uint64_t, int> inserted;  // seq -> count popped
    for (int i = 0; i < 1000; ++i) {
        const double due = s.now() + rs.uniform_double() * 5.0;
        s.insert(due, kC0, MsgKind::poll);
        // interleave pops to move the clock forward
        if (rs.bernoulli(0.5)) {
            auto e = s.tick();
            REQUIRE(e.has_value());
            ++inserted[e->seq];
        }
    }
    double prev = 0.0;
    while (auto e = s.tick()) {
        CHECK(e->due >= prev);
        prev = e->due;
        ++inserted[e->seq];
    }
    CHECK(inserted.size() == 1000);
    CHECK(std::all_of(inserted.begin(), inserted.end(),
                      [](const auto& kv) { return kv.second == 1; }));
}
