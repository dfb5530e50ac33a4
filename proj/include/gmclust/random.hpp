#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace gmclust {

/// Child seed for substream `stream` of `seed`. Distinct (seed, stream) pairs
/// give unrelated streams, so adding series or trials does not reshuffle the
/// others.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream)
{
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
    std::uint32_t out[2];
    seq.generate(out, out + 2);
    return (static_cast<std::uint64_t>(out[0]) << 32) | out[1];
}

inline std::uint64_t derive_seed(std::uint64_t seed, std::initializer_list<std::uint64_t> path)
{
    for (auto s : path)
        seed = derive_seed(seed, s);
    return seed;
}

inline std::mt19937_64 make_rng(std::uint64_t seed, std::uint64_t stream)
{
    return std::mt19937_64(derive_seed(seed, stream));
}

} // namespace gmclust
