#pragma once

namespace tdoslab {

/// Erlang-B blocking probability for offered load `erlangs` on `servers`
/// circuits, via the stable recursion B(E,0) = 1,
/// B(E,m) = E*B(E,m-1) / (m + E*B(E,m-1)).
double erlang_b(double erlangs, int servers);

struct SizingTarget {
    enum class Kind { utilization, blocking };
    Kind kind = Kind::utilization;
    double value = 0.8;

    static SizingTarget utilization(double rho) { return {Kind::utilization, rho}; }
    static SizingTarget blocking(double b) { return {Kind::blocking, b}; }
};

/// Arrival rate (calls per time unit) for a k-circuit server with mean
/// holding time t_mean. Utilization mode returns rho*k/t_mean; blocking
/// mode bisects for the largest rate whose Erlang-B blocking stays <= b
/// (relative precision 1e-6). Throws std::domain_error on infeasible or
/// degenerate targets.
double size_rate(int k, double t_mean, SizingTarget target);

}  // namespace tdoslab
