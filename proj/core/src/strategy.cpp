#include "tdoslab/strategy.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace tdoslab {

double admission_probability(int k, double factor) {
    if (k < 1) throw std::invalid_argument("admission_probability: k must be >= 1");
    if (!(factor >= 0)) throw std::invalid_argument("admission_probability: factor must be >= 0");
    return static_cast<double>(k) / (static_cast<double>(k) + factor);
}

double drop_factor(CallPhase phase, double elapsed, const DefenseParams& p) {
    if (phase == CallPhase::wait) return p.p_wait;
    if (elapsed <= p.t_mean) return p.p_in;
    return p.p_wait + std::exp(p.alpha * elapsed / p.t_mean);
}

double entry_drop_factor(const BufferEntry& entry, SimTime now, const DefenseParams& p) {
    if (entry.phase == CallPhase::wait) return p.p_wait;
    return drop_factor(CallPhase::in_call, now - entry.incall_since.value(), p);
}

std::vector<double> buffer_weights(const ServerBuffer& buf, SimTime now, const DefenseParams& p) {
    std::vector<double> w;
    w.reserve(buf.entries().size());
    for (const auto& e : buf.entries()) w.push_back(entry_drop_factor(e, now, p));
    return w;
}

std::size_t pick_by_cumulative_weight(std::span<const double> weights, double r) {
    if (weights.empty()) throw std::invalid_argument("weighted pick over empty weights");
    double cumulative = 0.0;
    for (std::size_t i = 0; i + 1 < weights.size(); ++i) {
        cumulative += weights[i];
        if (r < cumulative) return i;
    }
    return weights.size() - 1;
}

std::size_t weighted_pick(std::span<const double> weights, RandomStream& rs) {
    const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
    if (!(total > 0)) throw std::invalid_argument("weighted pick: weights must sum > 0");
    return pick_by_cumulative_weight(weights, rs.uniform_double() * total);
}

namespace {

void require_nonempty(const ServerBuffer& buf) {
    if (buf.empty()) throw std::invalid_argument("victim selection over an empty buffer");
}

}  // namespace

std::size_t select_uniform(const ServerBuffer& buf, RandomStream& rs) {
    require_nonempty(buf);
    return static_cast<std::size_t>(rs.uniform_int(static_cast<std::uint64_t>(buf.size()) - 1));
}

std::size_t select_roulette(const ServerBuffer& buf, SimTime now, const DefenseParams& p,
                            RandomStream& rs) {
    require_nonempty(buf);
    const auto weights = buffer_weights(buf, now, p);
    return weighted_pick(weights, rs);
}

std::size_t select_tournament(const ServerBuffer& buf, SimTime now, const DefenseParams& p,
                              RandomStream& rs) {
    require_nonempty(buf);
    const std::size_t len = buf.entries().size();
    const std::size_t n = std::min<std::size_t>(static_cast<std::size_t>(p.tournament_n), len);

    // Partial Fisher-Yates: the first n positions become the tournament.
    std::vector<std::size_t> idx(len);
    std::iota(idx.begin(), idx.end(), 0);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t j =
            i + static_cast<std::size_t>(rs.uniform_int(static_cast<std::uint64_t>(len - 1 - i)));
        std::swap(idx[i], idx[j]);
    }

    double best = -1.0;
    std::vector<std::size_t> maxima;
    for (std::size_t i = 0; i < n; ++i) {
        const double d = entry_drop_factor(buf.at(idx[i]), now, p);
        if (d > best) {
            best = d;
            maxima.assign(1, idx[i]);
        } else if (d == best) {
            maxima.push_back(idx[i]);
        }
    }
    if (maxima.size() == 1) return maxima.front();
    return maxima[static_cast<std::size_t>(
        rs.uniform_int(static_cast<std::uint64_t>(maxima.size()) - 1))];
}

VictimSelector make_selector(SelectionStrategy strategy) {
    switch (strategy) {
        case SelectionStrategy::uniform:
            return [](const ServerBuffer& b, SimTime, const DefenseParams&, RandomStream& rs) {
                return select_uniform(b, rs);
            };
        case SelectionStrategy::roulette:
            return [](const ServerBuffer& b, SimTime now, const DefenseParams& p,
                      RandomStream& rs) { return select_roulette(b, now, p, rs); };
        case SelectionStrategy::tournament:
            return [](const ServerBuffer& b, SimTime now, const DefenseParams& p,
                      RandomStream& rs) { return select_tournament(b, now, p, rs); };
        case SelectionStrategy::none:
            break;
    }
    throw std::invalid_argument("no victim selector for strategy 'none'");
}

}  // namespace tdoslab
