#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "tdoslab/domain.hpp"

namespace tdoslab {

enum class MsgKind : std::uint8_t {
    poll,         // to a caller: place your call; to a generator: spawn tick
    invite,       // to the server, carries the caller in `from`
    trying,
    ringing,
    bye,          // to the server, carries the caller in `from`
    round,
    unavailable,  // rejection notice to a caller
    drop_notice,  // eviction notice to a caller
};

struct Event {
    SimTime due = 0.0;
    ActorId target;
    MsgKind kind = MsgKind::poll;
    ActorId from;        // meaningful for invite/bye
    std::uint64_t seq = 0;

    bool operator==(const Event&) const = default;
};

/// Timestamped message queue with a global clock. Events pop in (due, seq)
/// order, so equal delivery times resolve FIFO by insertion.
class Scheduler {
public:
    SimTime now() const { return now_; }
    bool empty() const { return heap_.empty(); }
    std::size_t size() const { return heap_.size(); }

    /// Throws std::invalid_argument when `due` lies before the clock.
    void insert(SimTime due, ActorId target, MsgKind kind, ActorId from = {});
    void insert(std::span<const Event> events);

    /// Earliest queued event, or nullptr when drained.
    const Event* peek() const;

    /// Pops the earliest event and advances the clock to its delivery time.
    /// An empty queue yields nullopt: the simulation is complete.
    std::optional<Event> tick();

    /// Remaining events in delivery order (for inspection; the queue keeps
    /// heap order internally).
    std::vector<Event> snapshot_sorted() const;

private:
    static bool later(const Event& a, const Event& b);

    SimTime now_ = 0.0;
    std::uint64_t next_seq_ = 0;
    std::vector<Event> heap_;  // min-heap on (due, seq)
};

}  // namespace tdoslab
