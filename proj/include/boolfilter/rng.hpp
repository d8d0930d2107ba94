#pragma once

#include <cstdint>
#include <random>

namespace boolfilter {

/// splitmix64 finalizer, used to decorrelate derived seeds.
constexpr std::uint64_t mix64(std::uint64_t z)
{
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Seeded random stream. Streams for trial k of an experiment are derived
/// from (master seed, k) so results do not depend on execution order.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(mix64(seed)) {}

    static Rng derive(std::uint64_t master_seed, std::uint64_t stream)
    {
        return Rng(mix64(master_seed) ^ mix64(mix64(stream) + 0x632be59bd9b4e019ULL));
    }

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform on [0,1) with 53 random bits.
    double uniform()
    {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    bool bernoulli(double prob) { return uniform() < prob; }

    /// Uniform integer in [0, bound), bound > 0, by rejection.
    std::uint64_t below(std::uint64_t bound)
    {
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
        std::uint64_t v;
        do {
            v = engine_();
        } while (v >= limit);
        return v % bound;
    }

private:
    std::mt19937_64 engine_;
};

} // namespace boolfilter
