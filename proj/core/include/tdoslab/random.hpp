#pragma once

#include <array>
#include <cstdint>
#include <string_view>

#include "tdoslab/domain.hpp"

namespace tdoslab {

/// Seedable generator with reproducible sub-streams.
///
/// The algorithm is fixed so sequences replay bit-identically everywhere:
/// a splitmix64 chain expands the 64-bit seed into xoshiro256++ state, and
/// every sampler below is built on the raw 64-bit output (no stdlib
/// distributions, whose sequences vary across implementations).
class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed);

    std::uint64_t next_u64();

    /// Uniform on [0, 1), 53-bit resolution.
    double uniform_double();

    /// Uniform over {0, ..., n} inclusive, by rejection (no modulo bias).
    std::uint64_t uniform_int(std::uint64_t n);

    /// Throws std::invalid_argument unless 0 <= p <= 1.
    bool bernoulli(double p);

    /// Inverse-CDF exponential with the given mean.
    double exponential(double mean);

    /// Marsaglia polar normal.
    double normal(double mu, double sigma);

    /// Child stream determined by (origin seed, label[, index]) alone;
    /// draws made on the parent do not shift it.
    RandomStream derive(std::string_view label) const;
    RandomStream derive(std::string_view label, std::uint64_t index) const;

    std::uint64_t origin_seed() const { return origin_; }

    static constexpr std::string_view algorithm = "xoshiro256++/splitmix64";

private:
    std::uint64_t origin_;
    std::array<std::uint64_t, 4> state_;
    double spare_normal_ = 0.0;
    bool has_spare_normal_ = false;
};

/// Stable seed for a named sub-experiment, e.g. one replica of a run.
std::uint64_t derive_seed(std::uint64_t base, std::string_view label, std::uint64_t index);

/// A call-duration distribution with mean pinned to the server's assumed
/// mean duration: exponential uses lambda = 1/mean, lognormal derives
/// mu = ln(mean) - sigma^2/2, fixed always yields the mean itself.
struct DurationModel {
    DurationKind kind = DurationKind::fixed;
    double mean = 1.0;
    double sigma = 0.8;  // lognormal only

    double lambda() const { return 1.0 / mean; }
    double mu() const;

    static DurationModel exponential(double mean);
    static DurationModel lognormal(double mean, double sigma);
    static DurationModel fixed(double value);

    void validate() const;
};

DurationModel make_duration_model(DurationKind kind, double mean, double sigma);

double sample_duration(RandomStream& rs, const DurationModel& model);

/// Gap to the next arrival for a process of the given rate. Poisson mode
/// draws exponential gaps of mean 1/rate; deterministic mode returns 1/rate.
/// Throws std::invalid_argument when rate <= 0.
double sample_interarrival(RandomStream& rs, double rate, ArrivalProcess mode);

}  // namespace tdoslab
