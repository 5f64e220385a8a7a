#pragma once
/**
 * @file   scenario.hpp
 * @brief  JSON scenario files: pasture, mower and either explicit weeds or a generator recipe.
 */

#include <cstdint>
#include <filesystem>
#include <string>
#include <variant>
#include <vector>

#include "mrp/world.hpp"

namespace mrp
{
    struct WeedGenerator
    {
        std::size_t n = 0;
        world::Distribution distribution = world::Distribution::Uniform;
        double sigma = world::kDefaultClusterSigma;
        std::uint64_t seed = 0;

        friend bool operator== (const WeedGenerator &, const WeedGenerator &) = default;
    };

    struct Scenario
    {
        world::PastureSpec pasture;
        world::MowerSpec mower;
        std::variant<std::vector<world::Weed>, WeedGenerator> weeds = WeedGenerator{};

        /// Explicit weeds as given, or the generator's output.
        [[nodiscard]] std::vector<world::Weed> materialize () const;
        friend bool operator== (const Scenario &, const Scenario &) = default;
    };

    /**
     * Layout: {"pasture":{"L","W"}, "mower":{"R","B","v","Sd","Sw","ds"},
     * "weeds":[{"id","x","y"},...] | {"n","dist","sigma","seed"}}.
     * Missing mower/pasture keys fall back to the defaults.
     * @throws std::invalid_argument on malformed input.
     */
    [[nodiscard]] Scenario parse_scenario (const std::string &text);
    [[nodiscard]] std::string dump_scenario (const Scenario &s);

    [[nodiscard]] Scenario load_scenario (const std::filesystem::path &path);
    void save_scenario (const Scenario &s, const std::filesystem::path &path);
} // namespace mrp
