#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace gpfeat {

using Rng = std::mt19937_64;

namespace detail {

constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30U)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27U)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31U);
}

constexpr std::uint64_t fnv1a(std::string_view s) noexcept
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (char c : s) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ULL;
    }
    return h;
}

} // namespace detail

// Derives an independent seed from a parent seed and a stream label, so adding a
// new consumer of randomness never shifts the draws seen by existing ones.
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::string_view stream, std::uint64_t index = 0) noexcept
{
    return detail::splitmix64(detail::splitmix64(seed ^ detail::fnv1a(stream)) + index);
}

inline Rng make_stream(std::uint64_t seed, std::string_view stream, std::uint64_t index = 0)
{
    return Rng{derive_seed(seed, stream, index)};
}

// Named streams of one evolutionary run.
struct RunStreams {
    Rng init;
    Rng selection;
    Rng crossover;
    Rng mutation;

    explicit RunStreams(std::uint64_t seed)
        : init(make_stream(seed, "init"))
        , selection(make_stream(seed, "selection"))
        , crossover(make_stream(seed, "crossover"))
        , mutation(make_stream(seed, "mutation")) {}
};

inline std::size_t uniform_index(Rng& rng, std::size_t n)
{
    return std::uniform_int_distribution<std::size_t>{0, n - 1}(rng);
}

inline double uniform_real(Rng& rng, double lo, double hi)
{
    return std::uniform_real_distribution<double>{lo, hi}(rng);
}

inline bool bernoulli(Rng& rng, double p)
{
    return std::uniform_real_distribution<double>{0.0, 1.0}(rng) < p;
}

} // namespace gpfeat
