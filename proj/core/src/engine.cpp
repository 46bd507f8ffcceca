#include "tdoslab/engine.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <utility>

namespace tdoslab {

ServerMode mode_for(SelectionStrategy strategy) {
    return strategy == SelectionStrategy::none ? ServerMode::no_defense : ServerMode::seven;
}

ServerState::ServerState(DefenseParams params, ServerMode mode)
    : params_(params), mode_(mode), buffer_(params.k) {}

ServerState ServerState::restore(DefenseParams params, ServerMode mode,
                                 std::vector<BufferEntry> entries, double factor) {
    ServerState s(params, mode);
    for (auto& e : entries) s.buffer_.append(std::move(e));
    s.factor_ = factor;
    return s;
}

ServerState::InviteResult ServerState::receive_invite(ActorId from, SimTime now, RandomStream& rs,
                                                      const VictimSelector& selector) {
    if (!buffer_.full()) {
        buffer_.append(BufferEntry{from, CallPhase::wait, std::nullopt});
        return {InviteResult::Kind::appended, std::nullopt};
    }
    if (mode_ == ServerMode::no_defense)
        return {InviteResult::Kind::rejected_full, std::nullopt};

    // Admission draw uses the factor as it stands; the increment lands in
    // both branches afterwards.
    const bool admit = rs.bernoulli(admission_probability(params_.k, factor_));
    factor_ += 1.0;
    if (!admit) return {InviteResult::Kind::rejected, std::nullopt};

    const std::size_t victim_index = selector(buffer_, now, params_, rs);
    BufferEntry victim = buffer_.replace(victim_index, BufferEntry{from, CallPhase::wait, {}});
    return {InviteResult::Kind::replaced, std::move(victim)};
}

std::vector<ActorId> ServerState::finish_round(SimTime now) {
    std::vector<ActorId> ring;
    for (const auto& e : buffer_.entries()) {
        if (e.phase == CallPhase::wait) ring.push_back(e.actor);
    }
    for (ActorId actor : ring) buffer_.mark_incall(actor, now);
    factor_ = 0.0;
    return ring;
}

void ServerState::mark_incall(ActorId actor, SimTime now) {
    buffer_.mark_incall(actor, now);
}

std::optional<BufferEntry> ServerState::remove_in_call(ActorId actor) {
    const BufferEntry* entry = buffer_.find(actor);
    if (entry == nullptr || entry->phase != CallPhase::in_call) return std::nullopt;
    return buffer_.remove(actor);
}

int ServerState::attacker_slots() const {
    return static_cast<int>(std::count_if(
        buffer_.entries().begin(), buffer_.entries().end(),
        [](const BufferEntry& e) { return e.actor.kind == ActorKind::attacker; }));
}

namespace {

enum class CallStatus : std::uint8_t {
    none,
    invite,
    connected,
    complete,
    incomplete,
    unsuccessful,
};

struct Caller {
    ActorId id;
    CallStatus status = CallStatus::none;
    bool honest = false;
    std::optional<double> intended_duration;
    int retries_used = 0;
    std::size_t record_index = 0;
};

class Engine {
public:
    Engine(const ScenarioConfig& cfg, VictimSelector selector)
        : cfg_(cfg),
          mode_(mode_for(cfg.defense.strategy)),
          server_(cfg.defense, mode_),
          selector_(std::move(selector)),
          base_(cfg.seed),
          client_arrivals_(base_.derive("arrivals/client")),
          attacker_arrivals_(base_.derive("arrivals/attacker")),
          durations_(base_.derive("durations")),
          server_draws_(base_.derive("server")) {
        duration_model_ =
            make_duration_model(cfg.duration_model, cfg.defense.t_mean, cfg.lognormal_sigma);
    }

    RunTrace run() {
        if (cfg_.legit_rate() > 0)
            sched_.insert(0.0, ActorId{ActorKind::client_generator, 0}, MsgKind::poll);
        if (cfg_.attacker_rate() > 0)
            sched_.insert(0.0, ActorId{ActorKind::attacker_generator, 0}, MsgKind::poll);
        // The round event doubles as the occupancy sampler, so the
        // no-defense server keeps the same sampling grid.
        sched_.insert(cfg_.defense.ts, server_actor(), MsgKind::round);

        while (const Event* head = sched_.peek()) {
            if (head->due > cfg_.total) break;
            handle(*sched_.tick());
        }

        for (auto& rec : trace_.records)
            if (rec.outcome == CallOutcome::pending) rec.outcome = CallOutcome::censored;

        trace_.config = cfg_;
        trace_.seed = cfg_.seed;
        trace_.rng_algorithm = std::string(RandomStream::algorithm);
        return std::move(trace_);
    }

private:
    Caller& caller(ActorId id) {
        auto& pool = id.kind == ActorKind::client ? clients_ : attackers_;
        return pool.at(id.index);
    }

    CallRecord& record(const Caller& c) { return trace_.records[c.record_index]; }

    void handle(const Event& ev) {
        const SimTime now = sched_.now();
        switch (ev.target.kind) {
            case ActorKind::client_generator:
                on_generator_tick(ActorKind::client, now);
                return;
            case ActorKind::attacker_generator:
                on_generator_tick(ActorKind::attacker, now);
                return;
            case ActorKind::server:
                if (ev.kind == MsgKind::invite) on_server_invite(ev.from, now);
                else if (ev.kind == MsgKind::bye) on_server_bye(ev.from, now);
                else if (ev.kind == MsgKind::round) on_round(now);
                return;
            case ActorKind::client:
            case ActorKind::attacker:
                on_caller_event(caller(ev.target), ev.kind, now);
                return;
        }
    }

    void on_generator_tick(ActorKind kind, SimTime now) {
        const bool honest = kind == ActorKind::client;
        auto& pool = honest ? clients_ : attackers_;
        const ActorId id{kind, static_cast<std::uint32_t>(pool.size())};

        Caller c;
        c.id = id;
        c.honest = honest;
        if (honest) c.intended_duration = sample_duration(durations_, duration_model_);
        c.record_index = trace_.records.size();
        pool.push_back(c);

        CallRecord rec;
        rec.actor = id;
        rec.honest = honest;
        rec.invited_at = now;
        rec.intended_duration = c.intended_duration;
        trace_.records.push_back(rec);

        sched_.insert(now, id, MsgKind::poll);

        const double rate = honest ? cfg_.legit_rate() : cfg_.attacker_rate();
        auto& stream = honest ? client_arrivals_ : attacker_arrivals_;
        const ActorKind gen =
            honest ? ActorKind::client_generator : ActorKind::attacker_generator;
        sched_.insert(now + sample_interarrival(stream, rate, cfg_.arrivals), ActorId{gen, 0},
                      MsgKind::poll);
    }

    void on_caller_event(Caller& c, MsgKind kind, SimTime now) {
        switch (kind) {
            case MsgKind::poll:
                if (c.status == CallStatus::none) {
                    c.status = CallStatus::invite;
                    sched_.insert(now + cfg_.delay, server_actor(), MsgKind::invite, c.id);
                }
                return;
            case MsgKind::trying:
                return;  // acknowledgement only
            case MsgKind::ringing:
                if (c.status == CallStatus::invite) {
                    c.status = CallStatus::connected;
                    record(c).incall_at = now;
                    if (c.honest)
                        sched_.insert(now + *c.intended_duration, server_actor(), MsgKind::bye,
                                      c.id);
                    // Attackers hold the line: no BYE, ever.
                }
                return;
            case MsgKind::unavailable:
                if (c.status == CallStatus::invite) resolve_turned_away(c, now);
                return;
            case MsgKind::drop_notice:
                on_drop_notice(c, now);
                return;
            default:
                return;
        }
    }

    void on_drop_notice(Caller& c, SimTime now) {
        if (c.status == CallStatus::connected) {
            c.status = CallStatus::incomplete;
            auto& rec = record(c);
            rec.outcome = CallOutcome::incomplete;
            if (c.honest) {
                const double talked = (now - *rec.incall_at) / *rec.intended_duration;
                rec.talked_fraction = std::clamp(talked, 0.0, 1.0);
            }
        } else if (c.status == CallStatus::invite) {
            resolve_turned_away(c, now);
        }
    }

    // A caller bounced while still waiting: rejected outright or evicted
    // before the answer. Honest callers may retry when configured;
    // attackers never do (their generator keeps the pressure up).
    void resolve_turned_away(Caller& c, SimTime now) {
        if (c.honest && cfg_.retry_rejected && c.retries_used < cfg_.max_retries) {
            ++c.retries_used;
            c.status = CallStatus::none;
            sched_.insert(now + cfg_.delay, c.id, MsgKind::poll);
            return;
        }
        c.status = CallStatus::unsuccessful;
        record(c).outcome = CallOutcome::unsuccessful;
    }

    void on_server_invite(ActorId from, SimTime now) {
        const auto res = server_.receive_invite(from, now, server_draws_, selector_);
        using Kind = ServerState::InviteResult::Kind;
        switch (res.kind) {
            case Kind::appended:
                sched_.insert(now + cfg_.delay, from, MsgKind::trying);
                if (mode_ == ServerMode::no_defense) {
                    // A plain server answers on arrival; the ring still
                    // travels the network.
                    server_.mark_incall(from, now);
                    sched_.insert(now + cfg_.delay, from, MsgKind::ringing);
                }
                return;
            case Kind::replaced:
                // The Maude rule emits both follow-ups at gt, without the
                // network delay used on the not-full path.
                sched_.insert(now, from, MsgKind::trying);
                sched_.insert(now, res.victim->actor, MsgKind::drop_notice);
                return;
            case Kind::rejected:
            case Kind::rejected_full:
                sched_.insert(now + cfg_.delay, from, MsgKind::unavailable);
                return;
        }
    }

    void on_server_bye(ActorId from, SimTime) {
        if (!server_.remove_in_call(from)) return;  // already evicted
        Caller& c = caller(from);
        if (c.status == CallStatus::connected) {
            c.status = CallStatus::complete;
            auto& rec = record(c);
            if (rec.outcome == CallOutcome::pending) rec.outcome = CallOutcome::complete;
        }
    }

    void on_round(SimTime now) {
        if (mode_ == ServerMode::seven) {
            for (ActorId actor : server_.finish_round(now))
                sched_.insert(now, actor, MsgKind::ringing);
        }
        trace_.occupancy.push_back(
            OccupancySample{now, server_.attacker_slots(), server_.buffer().size()});
        sched_.insert(now + cfg_.defense.ts, server_actor(), MsgKind::round);
    }

    const ScenarioConfig& cfg_;
    ServerMode mode_;
    Scheduler sched_;
    ServerState server_;
    VictimSelector selector_;
    RandomStream base_;
    RandomStream client_arrivals_;
    RandomStream attacker_arrivals_;
    RandomStream durations_;
    RandomStream server_draws_;
    DurationModel duration_model_;
    std::vector<Caller> clients_;
    std::vector<Caller> attackers_;
    RunTrace trace_;
};

}  // namespace

RunTrace run_scenario(const ScenarioConfig& cfg) {
    cfg.validate();
    VictimSelector selector;
    if (cfg.defense.strategy != SelectionStrategy::none)
        selector = make_selector(cfg.defense.strategy);
    return Engine(cfg, std::move(selector)).run();
}

RunTrace run_scenario(const ScenarioConfig& cfg, const VictimSelector& selector) {
    cfg.validate();
    return Engine(cfg, selector).run();
}

}  // namespace tdoslab
