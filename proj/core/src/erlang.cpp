#include "tdoslab/erlang.hpp"

#include <stdexcept>

namespace tdoslab {

double erlang_b(double erlangs, int servers) {
    if (!(erlangs >= 0)) throw std::invalid_argument("erlang_b: offered load must be >= 0");
    if (servers < 0) throw std::invalid_argument("erlang_b: server count must be >= 0");
    double b = 1.0;
    for (int m = 1; m <= servers; ++m) b = erlangs * b / (m + erlangs * b);
    return b;
}

double size_rate(int k, double t_mean, SizingTarget target) {
    if (k < 1) throw std::domain_error("size_rate: k must be >= 1");
    if (!(t_mean > 0)) throw std::domain_error("size_rate: t_mean must be > 0");

    if (target.kind == SizingTarget::Kind::utilization) {
        const double rho = target.value;
        if (!(rho > 0)) throw std::domain_error("size_rate: utilization must be > 0");
        return rho * k / t_mean;
    }

    const double b = target.value;
    if (!(b > 0 && b < 1))
        throw std::domain_error("size_rate: blocking target must lie in (0, 1)");

    // Erlang-B is strictly increasing in the offered load, so bisect on E.
    double lo = 0.0;
    double hi = static_cast<double>(k);
    while (erlang_b(hi, k) <= b) hi *= 2.0;
    while ((hi - lo) > 1e-6 * hi) {
        const double mid = 0.5 * (lo + hi);
        (erlang_b(mid, k) <= b ? lo : hi) = mid;
    }
    if (!(lo > 0)) throw std::domain_error("size_rate: blocking target infeasible");
    return lo / t_mean;
}

}  // namespace tdoslab
