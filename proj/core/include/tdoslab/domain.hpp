#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace tdoslab {

/// Abstract simulation time. One unit is whatever the scenario says it is
/// (minutes for the desk-scale scenarios, seconds for the sized-up ones).
using SimTime = double;

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class ActorKind : std::uint8_t {
    client,
    attacker,
    server,
    client_generator,
    attacker_generator,
};

struct ActorId {
    ActorKind kind = ActorKind::server;
    std::uint32_t index = 0;

    auto operator<=>(const ActorId&) const = default;
};

constexpr ActorId server_actor() { return ActorId{ActorKind::server, 0}; }

constexpr bool is_caller(ActorId id) {
    return id.kind == ActorKind::client || id.kind == ActorKind::attacker;
}

std::string to_string(ActorId id);

enum class CallPhase : std::uint8_t { wait, in_call };

/// One slot in the server's buffer. `incall_since` is set exactly when the
/// call is answered (phase flips to in_call); waiting entries carry no stamp.
struct BufferEntry {
    ActorId actor;
    CallPhase phase = CallPhase::wait;
    std::optional<SimTime> incall_since;

    bool operator==(const BufferEntry&) const = default;
};

/// Bounded, ordered buffer of at most `capacity` calls, one per actor.
class ServerBuffer {
public:
    explicit ServerBuffer(int capacity);

    int capacity() const { return capacity_; }
    int size() const { return static_cast<int>(entries_.size()); }
    bool empty() const { return entries_.empty(); }
    bool full() const { return size() >= capacity_; }
    const std::vector<BufferEntry>& entries() const { return entries_; }
    const BufferEntry& at(std::size_t i) const { return entries_.at(i); }

    /// Appends at the tail. Throws if full or if the actor is already present.
    void append(BufferEntry entry);

    /// Swaps in `entry` at `index`, returning the previous occupant.
    /// The newcomer takes the victim's slot, keeping the rest in place.
    BufferEntry replace(std::size_t index, BufferEntry entry);

    /// Removes the entry for `actor`, closing the gap. Returns the removed
    /// entry, or nullopt if the actor is not buffered.
    std::optional<BufferEntry> remove(ActorId actor);

    const BufferEntry* find(ActorId actor) const;

    /// Answers the actor's waiting call: phase := in_call, stamp := now.
    void mark_incall(ActorId actor, SimTime now);

private:
    void check_absent(ActorId actor) const;

    std::vector<BufferEntry> entries_;
    int capacity_;
};

enum class SelectionStrategy : std::uint8_t { none, uniform, roulette, tournament };

std::string to_string(SelectionStrategy s);
SelectionStrategy strategy_from_string(const std::string& s);

/// Knobs of the selective defense: buffer bound k, round length Ts, the
/// dropping-factor constants, the server's assumed mean call duration, and
/// which victim-selection strategy runs when the buffer overflows.
struct DefenseParams {
    int k = 24;
    SimTime ts = 0.1;
    double p_wait = 8.0;
    double p_in = 2.0;
    double alpha = 1.89;
    SimTime t_mean = 5.0;
    SelectionStrategy strategy = SelectionStrategy::none;
    int tournament_n = 12;

    void validate() const;
};

enum class DurationKind : std::uint8_t { exponential, lognormal, fixed };
enum class ArrivalProcess : std::uint8_t { poisson, deterministic };

std::string to_string(DurationKind k);
DurationKind duration_kind_from_string(const std::string& s);

enum class CallOutcome : std::uint8_t {
    pending,
    complete,
    incomplete,
    unsuccessful,
    censored,
};

/// Per-call lifecycle facts, kept for the quality measures.
struct CallRecord {
    ActorId actor;
    bool honest = false;
    SimTime invited_at = 0.0;
    std::optional<SimTime> incall_at;
    std::optional<double> intended_duration;  // never set for attackers
    CallOutcome outcome = CallOutcome::pending;
    std::optional<double> talked_fraction;    // incomplete honest calls only

    bool operator==(const CallRecord&) const = default;
};

struct ScenarioConfig {
    SimTime total = 40.0;
    SimTime delay = 0.1;
    double rate_total = 0.0;         // calls per time unit, both classes combined
    double attacker_share = 0.0;     // fraction of rate_total placed by attackers
    DurationKind duration_model = DurationKind::exponential;
    double lognormal_sigma = 0.8;
    ArrivalProcess arrivals = ArrivalProcess::poisson;
    DefenseParams defense;
    std::uint64_t seed = 0;
    bool retry_rejected = false;
    int max_retries = 0;

    double attacker_rate() const { return attacker_share * rate_total; }
    double legit_rate() const { return rate_total - attacker_rate(); }

    void validate() const;
};

}  // namespace tdoslab
