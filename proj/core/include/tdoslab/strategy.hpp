#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "tdoslab/domain.hpp"
#include "tdoslab/random.hpp"

namespace tdoslab {

/// Probability of processing a new request when the buffer is exhausted:
/// k / (k + factor). Strictly decreasing in factor, 1 at factor 0.
double admission_probability(int k, double factor);

/// Dropping factor d(t): p_wait for waiting calls; for in-call entries p_in
/// while elapsed <= t_mean, then p_wait + exp(alpha * elapsed / t_mean).
double drop_factor(CallPhase phase, double elapsed, const DefenseParams& p);

/// d(t) for a buffered entry at time `now` (elapsed = now - incall stamp).
double entry_drop_factor(const BufferEntry& entry, SimTime now, const DefenseParams& p);

std::vector<double> buffer_weights(const ServerBuffer& buf, SimTime now, const DefenseParams& p);

/// Roulette core: lay the weights out as adjacent intervals in order and
/// return the index whose interval contains r, with 0 <= r < sum(weights).
std::size_t pick_by_cumulative_weight(std::span<const double> weights, double r);

/// Weighted draw over `weights` using one uniform from `rs`.
std::size_t weighted_pick(std::span<const double> weights, RandomStream& rs);

// Victim selectors. All return an index into the buffer and leave it
// untouched; all throw std::invalid_argument on an empty buffer.
std::size_t select_uniform(const ServerBuffer& buf, RandomStream& rs);
std::size_t select_roulette(const ServerBuffer& buf, SimTime now, const DefenseParams& p,
                            RandomStream& rs);

/// Draws n entries without replacement, returns the one with the greatest
/// dropping factor; ties resolve uniformly at random. n is clamped to the
/// buffer length, so a full-size tournament is the deterministic argmax.
std::size_t select_tournament(const ServerBuffer& buf, SimTime now, const DefenseParams& p,
                              RandomStream& rs);

using VictimSelector =
    std::function<std::size_t(const ServerBuffer&, SimTime, const DefenseParams&, RandomStream&)>;

/// Selector for the configured strategy (must not be `none`).
VictimSelector make_selector(SelectionStrategy strategy);

}  // namespace tdoslab
