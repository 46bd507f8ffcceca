#include "tdoslab/random.hpp"

#include <cmath>
#include <stdexcept>

namespace tdoslab {
namespace {

constexpr std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

constexpr std::uint64_t fmix64(std::uint64_t z) {
    z ^= z >> 33;
    z *= 0xff51afd7ed558ccdULL;
    z ^= z >> 33;
    z *= 0xc4ceb9fe1a85ec53ULL;
    z ^= z >> 33;
    return z;
}

constexpr std::uint64_t fnv1a(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (char c : s) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ULL;
    }
    return h;
}

constexpr std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
}

}  // namespace

RandomStream::RandomStream(std::uint64_t seed) : origin_(seed) {
    std::uint64_t sm = seed;
    for (auto& word : state_) word = splitmix64(sm);
}

std::uint64_t RandomStream::next_u64() {
    // xoshiro256++ step (Blackman & Vigna).
    const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
}

double RandomStream::uniform_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

std::uint64_t RandomStream::uniform_int(std::uint64_t n) {
    if (n == 0) {
        next_u64();  // still advances, keeping draw counts predictable
        return 0;
    }
    if (n == ~0ULL) return next_u64();
    const std::uint64_t bound = n + 1;
    const std::uint64_t limit = ~0ULL - (~0ULL % bound + 1) % bound;
    for (;;) {
        const std::uint64_t v = next_u64();
        if (v <= limit) return v % bound;
    }
}

bool RandomStream::bernoulli(double p) {
    if (!(p >= 0.0 && p <= 1.0))
        throw std::invalid_argument("bernoulli: p must lie in [0, 1]");
    return uniform_double() < p;
}

double RandomStream::exponential(double mean) {
    if (!(mean > 0)) throw std::invalid_argument("exponential: mean must be > 0");
    double u = uniform_double();
    return -mean * std::log1p(-u);  // u in [0,1) keeps the log finite
}

double RandomStream::normal(double mu, double sigma) {
    if (has_spare_normal_) {
        has_spare_normal_ = false;
        return mu + sigma * spare_normal_;
    }
    double u, v, s;
    do {
        u = 2.0 * uniform_double() - 1.0;
        v = 2.0 * uniform_double() - 1.0;
        s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double m = std::sqrt(-2.0 * std::log(s) / s);
    spare_normal_ = v * m;
    has_spare_normal_ = true;
    return mu + sigma * u * m;
}

RandomStream RandomStream::derive(std::string_view label) const {
    return RandomStream(fmix64(origin_ ^ fnv1a(label)));
}

RandomStream RandomStream::derive(std::string_view label, std::uint64_t index) const {
    return RandomStream(fmix64((origin_ ^ fnv1a(label)) + 0x9e3779b97f4a7c15ULL * (index + 1)));
}

std::uint64_t derive_seed(std::uint64_t base, std::string_view label, std::uint64_t index) {
    return fmix64((base ^ fnv1a(label)) + 0x9e3779b97f4a7c15ULL * (index + 1));
}

double DurationModel::mu() const {
    return std::log(mean) - 0.5 * sigma * sigma;
}

DurationModel DurationModel::exponential(double mean) {
    DurationModel m{DurationKind::exponential, mean, 0.8};
    m.validate();
    return m;
}

DurationModel DurationModel::lognormal(double mean, double sigma) {
    DurationModel m{DurationKind::lognormal, mean, sigma};
    m.validate();
    return m;
}

DurationModel DurationModel::fixed(double value) {
    DurationModel m{DurationKind::fixed, value, 0.8};
    m.validate();
    return m;
}

void DurationModel::validate() const {
    if (!(mean > 0)) throw std::invalid_argument("duration model: mean must be > 0");
    if (kind == DurationKind::lognormal && !(sigma > 0))
        throw std::invalid_argument("duration model: sigma must be > 0");
}

DurationModel make_duration_model(DurationKind kind, double mean, double sigma) {
    switch (kind) {
        case DurationKind::exponential: return DurationModel::exponential(mean);
        case DurationKind::lognormal: return DurationModel::lognormal(mean, sigma);
        case DurationKind::fixed: return DurationModel::fixed(mean);
    }
    throw std::invalid_argument("duration model: bad kind");
}

double sample_duration(RandomStream& rs, const DurationModel& model) {
    switch (model.kind) {
        case DurationKind::exponential: return rs.exponential(model.mean);
        case DurationKind::lognormal: return std::exp(rs.normal(model.mu(), model.sigma));
        case DurationKind::fixed: return model.mean;
    }
    throw std::invalid_argument("duration model: bad kind");
}

double sample_interarrival(RandomStream& rs, double rate, ArrivalProcess mode) {
    if (!(rate > 0)) throw std::invalid_argument("interarrival: rate must be > 0");
    switch (mode) {
        case ArrivalProcess::poisson: return rs.exponential(1.0 / rate);
        case ArrivalProcess::deterministic: return 1.0 / rate;
    }
    throw std::invalid_argument("interarrival: bad mode");
}

}  // namespace tdoslab
