#include "tdoslab/metrics.hpp"

namespace tdoslab {

MeasureSet compute_measures(const RunTrace& trace) {
    MeasureSet m;
    for (const auto& rec : trace.records) {
        if (!rec.honest) continue;
        ++m.counts.honest;
        switch (rec.outcome) {
            case CallOutcome::complete:
                ++m.counts.complete;
                break;
            case CallOutcome::incomplete:
                ++m.counts.incomplete;
                m.total_time_in_call += rec.talked_fraction.value_or(0.0);
                break;
            case CallOutcome::unsuccessful:
                ++m.counts.unsuccessful;
                break;
            case CallOutcome::censored:
                ++m.counts.censored;
                break;
            case CallOutcome::pending:
                throw std::logic_error("compute_measures: trace has pending records");
        }
    }
    m.counts.incall = m.counts.complete + m.counts.incomplete;

    const int resolved = m.counts.honest - m.counts.censored;
    if (resolved > 0) {
        const double d = resolved;
        m.complete = m.counts.complete / d;
        m.incomplete = (m.counts.incall - m.counts.complete) / d;
        m.unsuccessful = (d - m.counts.incall) / d;
    }

    if (m.counts.incomplete > 0) {
        m.avg_incall = m.total_time_in_call / m.counts.incomplete;
    } else {
        m.avg_incall = 1.0;  // nothing was interrupted
        m.avg_incall_vacuous = true;
    }

    m.mean_attacker_occupancy = time_weighted_mean(occupancy_series(trace), trace.config.total);
    return m;
}

std::vector<std::pair<SimTime, double>> occupancy_series(const RunTrace& trace) {
    const double k = trace.config.defense.k;
    std::vector<std::pair<SimTime, double>> series;
    series.reserve(trace.occupancy.size());
    for (const auto& s : trace.occupancy)
        series.emplace_back(s.time, static_cast<double>(s.attacker_slots) / k);
    return series;
}

double time_weighted_mean(const std::vector<std::pair<SimTime, double>>& series,
                          SimTime horizon) {
    if (series.empty()) return 0.0;
    double weighted = 0.0;
    double span = 0.0;
    for (std::size_t i = 0; i < series.size(); ++i) {
        const SimTime t = series[i].first;
        const SimTime next = i + 1 < series.size() ? series[i + 1].first : std::max(horizon, t);
        const double w = next - t;
        weighted += series[i].second * w;
        span += w;
    }
    if (span <= 0.0) return series.back().second;
    return weighted / span;
}

}  // namespace tdoslab
