#pragma once
/**
 * @file   seed.hpp
 * @brief  64-bit seed mixing (splitmix64 finaliser) for derived RNG streams.
 */

#include <cstdint>
#include <initializer_list>

namespace mrp
{
    [[nodiscard]] constexpr std::uint64_t splitmix64 (std::uint64_t x)
    {
        x += 0x9e3779b97f4a7c15ULL;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
        return x ^ (x >> 31);
    }

    /// Order-sensitive combination of several 64-bit values into one seed.
    [[nodiscard]] constexpr std::uint64_t mix_seed (std::initializer_list<std::uint64_t> parts)
    {
        std::uint64_t h = 0x6a09e667f3bcc909ULL;
        for (const auto p : parts)
            h = splitmix64 (h ^ splitmix64 (p));
        return h;
    }
} // namespace mrp
