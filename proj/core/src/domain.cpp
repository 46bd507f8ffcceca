#include "tdoslab/domain.hpp"

#include <algorithm>
#include <cmath>

namespace tdoslab {

std::string to_string(ActorId id) {
    switch (id.kind) {
        case ActorKind::client: return "c" + std::to_string(id.index);
        case ActorKind::attacker: return "a" + std::to_string(id.index);
        case ActorKind::server: return "server";
        case ActorKind::client_generator: return "client-generator";
        case ActorKind::attacker_generator: return "attacker-generator";
    }
    return "?";
}

ServerBuffer::ServerBuffer(int capacity) : capacity_(capacity) {
    if (capacity < 1) throw std::invalid_argument("buffer capacity must be positive");
    entries_.reserve(static_cast<std::size_t>(capacity));
}

void ServerBuffer::check_absent(ActorId actor) const {
    if (find(actor) != nullptr)
        throw std::logic_error("buffer already holds an entry for " + to_string(actor));
}

void ServerBuffer::append(BufferEntry entry) {
    if (full()) throw std::logic_error("append to full buffer");
    check_absent(entry.actor);
    entries_.push_back(std::move(entry));
}

BufferEntry ServerBuffer::replace(std::size_t index, BufferEntry entry) {
    if (index >= entries_.size()) throw std::out_of_range("buffer index");
    if (entries_[index].actor != entry.actor) check_absent(entry.actor);
    BufferEntry evicted = entries_[index];
    entries_[index] = std::move(entry);
    return evicted;
}

std::optional<BufferEntry> ServerBuffer::remove(ActorId actor) {
    auto it = std::find_if(entries_.begin(), entries_.end(),
                           [&](const BufferEntry& e) { return e.actor == actor; });
    if (it == entries_.end()) return std::nullopt;
    BufferEntry removed = *it;
    entries_.erase(it);
    return removed;
}

const BufferEntry* ServerBuffer::find(ActorId actor) const {
    for (const auto& e : entries_)
        if (e.actor == actor) return &e;
    return nullptr;
}

void ServerBuffer::mark_incall(ActorId actor, SimTime now) {
    auto it = std::find_if(entries_.begin(), entries_.end(),
                           [&](const BufferEntry& e) { return e.actor == actor; });
    if (it == entries_.end()) throw std::logic_error("mark_incall: actor not buffered");
    it->phase = CallPhase::in_call;
    it->incall_since = now;
}

std::string to_string(SelectionStrategy s) {
    switch (s) {
        case SelectionStrategy::none: return "none";
        case SelectionStrategy::uniform: return "uniform";
        case SelectionStrategy::roulette: return "roulette";
        case SelectionStrategy::tournament: return "tournament";
    }
    return "?";
}

SelectionStrategy strategy_from_string(const std::string& s) {
    if (s == "none") return SelectionStrategy::none;
    if (s == "uniform") return SelectionStrategy::uniform;
    if (s == "roulette") return SelectionStrategy::roulette;
    if (s == "tournament") return SelectionStrategy::tournament;
    throw ConfigError("unknown strategy '" + s + "'");
}

std::string to_string(DurationKind k) {
    switch (k) {
        case DurationKind::exponential: return "exponential";
        case DurationKind::lognormal: return "lognormal";
        case DurationKind::fixed: return "fixed";
    }
    return "?";
}

DurationKind duration_kind_from_string(const std::string& s) {
    if (s == "exponential") return DurationKind::exponential;
    if (s == "lognormal") return DurationKind::lognormal;
    if (s == "fixed") return DurationKind::fixed;
    throw ConfigError("unknown duration model '" + s + "'");
}

void DefenseParams::validate() const {
    if (k < 1) throw ConfigError("defense.k must be a positive integer");
    if (!(ts > 0)) throw ConfigError("defense.Ts must be > 0");
    if (!(t_mean > 0)) throw ConfigError("defense.t_M must be > 0");
    if (!(p_wait > 0)) throw ConfigError("defense.p_wait must be > 0");
    if (!(p_in > 0)) throw ConfigError("defense.p_in must be > 0");
    if (!(p_wait > p_in)) throw ConfigError("defense.p_wait must exceed defense.p_in");
    if (!(alpha > 0)) throw ConfigError("defense.alpha must be > 0");
    if (strategy == SelectionStrategy::tournament && (tournament_n < 1 || tournament_n > k))
        throw ConfigError("defense.tournament_n must lie in [1, k]");
}

void ScenarioConfig::validate() const {
    if (!(total > 0)) throw ConfigError("scenario.total must be > 0");
    if (!(delay >= 0)) throw ConfigError("scenario.delay must be >= 0");
    if (!(rate_total >= 0)) throw ConfigError("scenario.rate_total must be >= 0");
    if (!(attacker_share >= 0 && attacker_share <= 1))
        throw ConfigError("scenario.attacker_share must lie in [0, 1]");
    if (duration_model == DurationKind::lognormal && !(lognormal_sigma > 0))
        throw ConfigError("scenario.sigma must be > 0");
    if (max_retries < 0) throw ConfigError("scenario.max_retries must be >= 0");
    defense.validate();
}

}  // namespace tdoslab
