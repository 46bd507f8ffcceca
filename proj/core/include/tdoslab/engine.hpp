#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tdoslab/domain.hpp"
#include "tdoslab/random.hpp"
#include "tdoslab/scheduler.hpp"
#include "tdoslab/strategy.hpp"

namespace tdoslab {

enum class ServerMode : std::uint8_t { seven, no_defense };

ServerMode mode_for(SelectionStrategy strategy);

/// Buffer composition at a round boundary.
struct OccupancySample {
    SimTime time = 0.0;
    int attacker_slots = 0;
    int total_slots = 0;

    bool operator==(const OccupancySample&) const = default;
};

struct RunTrace {
    std::vector<CallRecord> records;
    std::vector<OccupancySample> occupancy;
    ScenarioConfig config;
    std::uint64_t seed = 0;
    std::string rng_algorithm;
};

/// The server actor: the admission counter (factor), the bounded buffer,
/// and the round machinery. In no_defense mode it is a plain loss server.
class ServerState {
public:
    ServerState(DefenseParams params, ServerMode mode);

    /// Rebuilds a server mid-flight; used to replay published traces.
    static ServerState restore(DefenseParams params, ServerMode mode,
                               std::vector<BufferEntry> entries, double factor);

    double factor() const { return factor_; }
    ServerMode mode() const { return mode_; }
    const DefenseParams& params() const { return params_; }
    const ServerBuffer& buffer() const { return buffer_; }

    struct InviteResult {
        enum class Kind : std::uint8_t {
            appended,       // room available, entry queued as waiting
            replaced,       // admitted over a victim, which was evicted
            rejected,       // admission draw failed; buffer untouched
            rejected_full,  // no_defense server with a full buffer
        };
        Kind kind = Kind::appended;
        std::optional<BufferEntry> victim;
    };

    /// Applies one INVITE. With a full buffer in seven mode the admission
    /// draw uses the pre-increment factor and the factor then increments
    /// whichever way the draw went; an admitted request takes the victim's
    /// slot. Not-full buffers append and leave the factor alone.
    InviteResult receive_invite(ActorId from, SimTime now, RandomStream& rs,
                                const VictimSelector& selector);

    /// Ends the round: answers every waiting entry (phase -> in_call,
    /// stamp := now), resets the factor, and returns the actors to ring,
    /// in buffer order.
    std::vector<ActorId> finish_round(SimTime now);

    void mark_incall(ActorId actor, SimTime now);

    /// Removes the in-call entry for `actor` (a BYE). Returns nullopt when
    /// the actor is not buffered, e.g. already evicted.
    std::optional<BufferEntry> remove_in_call(ActorId actor);

    int attacker_slots() const;

private:
    DefenseParams params_;
    ServerMode mode_;
    ServerBuffer buffer_;
    double factor_ = 0.0;
};

/// Runs one scenario to its horizon and returns the full trace.
/// Deterministic in (config, seed).
RunTrace run_scenario(const ScenarioConfig& cfg);

/// As above with the victim selector overridden (test hook).
RunTrace run_scenario(const ScenarioConfig& cfg, const VictimSelector& selector);

}  // namespace tdoslab
